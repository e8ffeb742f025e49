"""Test suite for beacon-limit."""
