"""Tests for the link budget."""

import math

import pytest

from beacon_limit.link_budget import (
    aperture_area,
    db_to_linear,
    detected_noise_rate,
    detected_rates,
    detected_signal_rate,
    emitted_photon_rate,
    photon_energy,
    rate_params,
    transmittance,
    with_distance,
    with_extra_loss,
)
from beacon_limit.models import DomainError, LinkBudget, NANOMETER, SignalMode


@pytest.fixture
def budget():
    return LinkBudget()


class TestGeometry:

    def test_aperture_area(self):
        assert aperture_area(0.36) == pytest.approx(0.101788, rel=1e-5)

    def test_transmittance_at_1000_km(self, budget):
        assert transmittance(budget) == pytest.approx(5.2439e-16, rel=1e-3)

    def test_inverse_square_law(self, budget):
        near = transmittance(budget)
        far = transmittance(with_distance(budget, 2 * budget.distance))
        assert far == pytest.approx(near / 4.0, rel=1e-12)

    def test_db_to_linear(self):
        assert db_to_linear(0.0) == 1.0
        assert db_to_linear(10.0) == pytest.approx(0.1, rel=1e-15)
        assert db_to_linear(22.0) == pytest.approx(10 ** -2.2, rel=1e-12)

    def test_invalid_inputs(self):
        with pytest.raises(DomainError):
            aperture_area(0.0)
        with pytest.raises(DomainError):
            db_to_linear(math.inf)
        with pytest.raises(DomainError):
            LinkBudget(distance=0.0)
        with pytest.raises(DomainError):
            LinkBudget(pulse_width=1e-3, pulse_interval=500e-6)
        with pytest.raises(DomainError):
            LinkBudget(extra_loss=-1.0)


class TestPhotonRates:

    def test_photon_energy(self):
        assert photon_energy(638 * NANOMETER) == pytest.approx(3.1136e-19, rel=1e-4)

    def test_emitted_rate(self, budget):
        assert budget.duty_cycle == pytest.approx(0.002, rel=1e-12)
        assert emitted_photon_rate(budget) == pytest.approx(6.4235e15, rel=1e-3)

    def test_first_principles_close_to_calibration(self, budget):
        derived = detected_signal_rate(budget, SignalMode.FIRST_PRINCIPLES)
        assert derived == pytest.approx(3.0, rel=0.15)

    def test_calibrated_rate(self, budget):
        assert detected_signal_rate(budget) == pytest.approx(3.0, rel=1e-15)
        assert detected_signal_rate(with_distance(budget, 2000e3)) == pytest.approx(0.75, rel=1e-12)
        assert detected_signal_rate(with_extra_loss(budget, 10.0)) == pytest.approx(0.3, rel=1e-12)

    def test_noise_models(self, budget):
        assert detected_noise_rate(budget) == 0.01
        linear = LinkBudget(canonical_noise_rate=None)
        assert detected_noise_rate(linear) == pytest.approx(91.0 * 1e-4 / 10.0, rel=1e-12)
        wide = LinkBudget(canonical_noise_rate=None, filter_bandwidth=10 * NANOMETER)
        assert detected_noise_rate(wide) == pytest.approx(91.0, rel=1e-12)

    def test_detected_rates_summary(self, budget):
        rates = detected_rates(budget)
        assert rates.detected_signal_rate == pytest.approx(3.0)
        assert rates.detected_noise_rate == 0.01
        assert "gamma=" in rates.get_summary()


class TestRateParams:

    def test_calibrated(self, budget):
        rates = rate_params(budget)
        assert rates.transmittance == 1.0
        assert rates.signal_photon_rate == pytest.approx(3.0)
        assert rates.noise_photon_rate == 0.01
        assert rates.modulation_bandwidth == 1e6

    def test_first_principles(self, budget):
        rates = rate_params(LinkBudget(signal_mode=SignalMode.FIRST_PRINCIPLES, extra_loss=10.0))
        assert rates.transmittance == pytest.approx(5.2439e-17, rel=1e-3)
        assert rates.received_photon_rate == pytest.approx(0.3368, rel=1e-3)

    def test_helpers_do_not_mutate(self, budget):
        moved = with_distance(budget, 2842e3)
        assert budget.distance == 1000e3
        assert moved.distance == 2842e3
        assert with_extra_loss(budget, 22.0).extra_loss == 22.0
