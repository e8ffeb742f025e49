"""Tests for the capacity formulas."""

import math

import mpmath
import numpy as np
import pytest

from beacon_limit.capacity import (
    capacity,
    capacity_advantage,
    capacity_per_second,
    capacity_value,
    gordon,
    holevo_capacity,
    homodyne_snr,
    shannon_heterodyne,
    shannon_homodyne,
)
from beacon_limit.models import CapacityKind, ChannelUseParams, DomainError, RateParams


def reference_gordon(x: float) -> float:
    """Gordon function in bits evaluated with 50 significant digits."""
    with mpmath.workdps(50):
        v = mpmath.mpf(x)
        return float(((v + 1) * mpmath.log(v + 1) - v * mpmath.log(v)) / mpmath.log(2))


@pytest.fixture
def calibrated():
    """Detected beacon at 1000 km: 3 signal and 0.01 noise photons/s at 1 MHz."""
    return RateParams(transmittance=1.0, signal_photon_rate=3.0,
                      noise_photon_rate=0.01, modulation_bandwidth=1e6)


class TestGordon:

    def test_zero(self):
        assert gordon(0.0) == 0.0

    def test_one(self):
        assert gordon(1.0) == pytest.approx(2.0, rel=1e-15)

    @pytest.mark.parametrize("x", list(np.logspace(-12, 10, 120)))
    def test_matches_high_precision_oracle(self, x):
        expected = reference_gordon(float(x))
        assert gordon(float(x)) == pytest.approx(expected, rel=1e-10)

    def test_increasing_and_concave(self):
        xs = np.linspace(0.01, 50.0, 400)
        values = np.array([gordon(float(x)) for x in xs])
        assert np.all(np.diff(values) > 0)
        assert np.all(np.diff(values, n=2) < 0)

    @pytest.mark.parametrize("x", [-1e-9, -1.0, math.nan, math.inf])
    def test_rejects_invalid(self, x):
        with pytest.raises(DomainError):
            gordon(x)

    @pytest.mark.parametrize("x", list(np.logspace(-3, 3, 61)))
    def test_matches_textbook_form(self, x):
        x = float(x)
        textbook = (x + 1.0) * math.log2(x + 1.0) - x * math.log2(x)
        assert gordon(x) == pytest.approx(textbook, rel=1e-9)

    @pytest.mark.parametrize("x", [5e-324, 1e-310, 1e-300, 2e-300])
    def test_subnormal_argument_stays_finite(self, x):
        value = gordon(x)
        assert math.isfinite(value)
        assert value >= 0.0
        expected = (math.log1p(x) + x * (math.log1p(x) - math.log(x))) / math.log(2.0)
        assert value == pytest.approx(expected, rel=1e-9)

    def test_subnormal_received_photons(self):
        p = ChannelUseParams(transmittance=1e-16, mean_signal_photons=1e-300, mean_noise_photons=0.0)
        value = holevo_capacity(p)
        assert math.isfinite(value)
        assert 0.0 < value < 1e-300

        rate = capacity_per_second(RateParams(1e-16, 1e-290, 0.0, 1e6), CapacityKind.HOLEVO)
        assert math.isfinite(rate)
        assert 0.0 < rate < 1e-200

    def test_subnormal_noise(self):
        p = ChannelUseParams(transmittance=1.0, mean_signal_photons=1.0, mean_noise_photons=5e-324)
        assert holevo_capacity(p) == pytest.approx(gordon(1.0), rel=1e-12)


class TestChannelUseCapacities:

    def test_zero_signal_gives_zero(self):
        p = ChannelUseParams(transmittance=0.5, mean_signal_photons=0.0, mean_noise_photons=3.0)
        for kind in CapacityKind:
            assert capacity(p, kind) == 0.0

    def test_zero_transmittance_gives_zero(self):
        p = ChannelUseParams(transmittance=0.0, mean_signal_photons=10.0, mean_noise_photons=0.0)
        assert holevo_capacity(p) == 0.0
        assert shannon_homodyne(p) == 0.0
        assert shannon_heterodyne(p) == 0.0

    def test_noiseless_holevo_is_gordon(self):
        p = ChannelUseParams(transmittance=0.25, mean_signal_photons=4.0, mean_noise_photons=0.0)
        assert holevo_capacity(p) == pytest.approx(gordon(1.0), rel=1e-14)

    def test_shannon_closed_forms(self):
        p = ChannelUseParams(transmittance=1.0, mean_signal_photons=1.0, mean_noise_photons=0.0)
        # 1/2 log2(1 + 4) and log2(1 + 1)
        assert shannon_homodyne(p) == pytest.approx(0.5 * math.log2(5.0), rel=1e-14)
        assert shannon_heterodyne(p) == pytest.approx(1.0, rel=1e-14)

    def test_holevo_against_direct_difference(self):
        p = ChannelUseParams(transmittance=0.3, mean_signal_photons=2.0, mean_noise_photons=0.7)
        direct = gordon(0.3 * 2.0 + 0.7) - gordon(0.7)
        assert holevo_capacity(p) == pytest.approx(direct, rel=1e-12)

    def test_holevo_small_signal_over_large_noise(self):
        # g(N + s) - g(N) -> s * log2(1 + 1/N) as s -> 0
        p = ChannelUseParams(transmittance=1.0, mean_signal_photons=1e-12, mean_noise_photons=1e6)
        expected = 1e-12 * math.log2(1.0 + 1e-6)
        assert holevo_capacity(p) == pytest.approx(expected, rel=1e-6)

    def test_ordering_on_random_parameters(self):
        rng = np.random.default_rng(20240601)
        gammas = rng.uniform(0.0, 1.0, 10_000)
        signals = 10.0 ** rng.uniform(-8.0, 4.0, 10_000)
        noises = 10.0 ** rng.uniform(-8.0, 4.0, 10_000)
        for gamma, signal, noise in zip(gammas, signals, noises):
            p = ChannelUseParams(float(gamma), float(signal), float(noise))
            quantum = holevo_capacity(p)
            assert quantum >= shannon_homodyne(p) * (1 - 1e-9)
            assert quantum >= shannon_heterodyne(p) * (1 - 1e-9)

    def test_ordering_over_full_parameter_range(self):
        rng = np.random.default_rng(20240602)
        gammas = 10.0 ** rng.uniform(-16.0, 0.0, 5_000)
        signals = 10.0 ** rng.uniform(-8.0, 10.0, 5_000)
        noises = 10.0 ** rng.uniform(-8.0, 4.0, 5_000)
        noises[::10] = 0.0
        for gamma, signal, noise in zip(gammas, signals, noises):
            p = ChannelUseParams(float(gamma), float(signal), float(noise))
            quantum = holevo_capacity(p)
            assert math.isfinite(quantum)
            assert quantum >= shannon_homodyne(p) * (1 - 1e-9)
            assert quantum >= shannon_heterodyne(p) * (1 - 1e-9)

    @pytest.mark.parametrize("kind", list(CapacityKind))
    def test_monotone_in_transmittance(self, kind):
        gammas = np.logspace(-6, 0, 60)
        values = [capacity(ChannelUseParams(float(g), 10.0, 0.5), kind) for g in gammas]
        assert all(b > a for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("kind", [CapacityKind.HOMODYNE, CapacityKind.HETERODYNE])
    def test_shannon_monotone_in_signal(self, kind):
        signals = np.logspace(-4, 3, 60)
        values = [capacity(ChannelUseParams(0.8, float(e), 0.5), kind) for e in signals]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_monotone_in_signal_and_noise(self):
        signals = np.logspace(-4, 3, 60)
        by_signal = [holevo_capacity(ChannelUseParams(0.8, float(e), 0.5)) for e in signals]
        assert all(b > a for a, b in zip(by_signal, by_signal[1:]))

        noises = np.logspace(-4, 3, 60)
        by_noise = [holevo_capacity(ChannelUseParams(0.8, 1.0, float(n))) for n in noises]
        assert all(b < a for a, b in zip(by_noise, by_noise[1:]))

    def test_invalid_parameters(self):
        with pytest.raises(DomainError):
            ChannelUseParams(transmittance=1.5, mean_signal_photons=1.0, mean_noise_photons=0.0)
        with pytest.raises(DomainError):
            ChannelUseParams(transmittance=0.5, mean_signal_photons=-1.0, mean_noise_photons=0.0)
        with pytest.raises(DomainError):
            ChannelUseParams(transmittance=0.5, mean_signal_photons=1.0, mean_noise_photons=math.nan)


class TestPerSecond:

    def test_headline_capacities(self, calibrated):
        quantum = capacity_per_second(calibrated, CapacityKind.HOLEVO)
        classical = capacity_per_second(calibrated, CapacityKind.HOMODYNE)
        assert quantum == pytest.approx(59.27, rel=5e-3)
        assert classical == pytest.approx(8.65, rel=5e-3)
        assert 6.7 <= quantum / classical <= 7.0

    def test_capacity_advantage(self, calibrated):
        assert 6.7 <= capacity_advantage(calibrated) <= 7.0

    def test_noise_sensitivity(self, calibrated):
        noisy = RateParams(1.0, 3.0, 90.0, 1e6)
        assert capacity_per_second(noisy, CapacityKind.HOLEVO) == pytest.approx(40.3, rel=0.05)

    def test_capacity_value_units(self, calibrated):
        value = capacity_value(calibrated, CapacityKind.HOLEVO)
        assert value.kind is CapacityKind.HOLEVO
        assert value.bits_per_second == pytest.approx(value.bits_per_use * 1e6, rel=1e-15)

    def test_bandwidth_scaling_limit(self):
        # For B >> rates the Holevo rate saturates instead of growing with B
        low = capacity_per_second(RateParams(1.0, 3.0, 0.01, 1e6), CapacityKind.HOLEVO)
        high = capacity_per_second(RateParams(1.0, 3.0, 0.01, 1e7), CapacityKind.HOLEVO)
        assert high > low
        assert high / low < 1.5

    @pytest.mark.parametrize("kind", list(CapacityKind))
    def test_nondecreasing_in_bandwidth(self, kind):
        bandwidths = np.logspace(3, 9, 49)
        values = [capacity_per_second(RateParams(1.0, 3.0, 0.01, float(b)), kind) for b in bandwidths]
        assert all(b >= a * (1 - 1e-12) for a, b in zip(values, values[1:]))

    def test_zero_signal(self):
        rates = RateParams(1.0, 0.0, 0.01, 1e6)
        for kind in CapacityKind:
            assert capacity_per_second(rates, kind) == 0.0
        assert math.isnan(capacity_advantage(rates))

    def test_homodyne_snr_forms(self, calibrated):
        snr = homodyne_snr(calibrated)
        assert snr.printed == pytest.approx(6.0e-6, rel=1e-6)
        assert snr.consistent == pytest.approx(1.2e-5, rel=1e-6)
        assert snr.ratio == pytest.approx(2.0, rel=1e-6)

    def test_homodyne_snr_matches_capacity(self, calibrated):
        snr = homodyne_snr(calibrated)
        expected = 1e6 * 0.5 * math.log2(1.0 + snr.consistent)
        assert capacity_per_second(calibrated, CapacityKind.HOMODYNE) == pytest.approx(expected, rel=1e-9)

    def test_rate_params_validation(self):
        with pytest.raises(DomainError):
            RateParams(1.0, 3.0, 0.01, 0.0)
        with pytest.raises(DomainError):
            RateParams(1.0, -3.0, 0.01, 1e6)
