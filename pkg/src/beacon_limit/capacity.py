"""
Capacity formulas for the thermal-loss bosonic channel.

This module evaluates the Gordon function, the Holevo capacity reached by a
joint detection receiver, and the shot-noise-limited Shannon capacities of
homodyne and heterodyne reception. All results are in bits; per-second
values follow from C(gamma, E, N) -> B * C(gamma, E/B, N/B).
"""

import logging
import math

from .models import (
    CapacityKind,
    CapacityValue,
    ChannelUseParams,
    DomainError,
    HomodyneSnr,
    RateParams,
)

logger = logging.getLogger(__name__)

_LN2 = math.log(2.0)


def _log1p_reciprocal(x: float) -> float:
    """ln(1 + 1/x) for x > 0, also when 1/x overflows."""
    if x < 1e-300:
        # 1/x would overflow
        return math.log1p(x) - math.log(x)
    return math.log1p(1.0 / x)


def gordon(x: float) -> float:
    """
    Entropy in bits of a thermal state with mean photon number x.

    g(x) = (x+1)log2(x+1) - x log2(x), evaluated as
    log2(1+x) + x log2(1+1/x) so both terms stay accurate from 1e-15 to 1e12
    photons. g(0) = 0.

    Raises:
        DomainError: If x is negative or not finite
    """
    if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x) or x < 0:
        raise DomainError(f"gordon() requires a finite, non-negative argument, got {x!r}")
    if x == 0:
        return 0.0
    return (math.log1p(x) + x * _log1p_reciprocal(x)) / _LN2


def _gordon_increment(noise: float, received: float) -> float:
    """
    g(noise + received) - g(noise) without subtracting two large entropies.

    Expanding both Gordon terms gives
    (N+1)ln(1 + s/(N+1)) - N ln(1 + s/N) + s ln(1 + 1/(N+s)),
    which stays accurate when s is many orders of magnitude below N.
    """
    if received == 0:
        return 0.0
    if noise == 0:
        return gordon(received)
    ratio = received / noise
    if math.isinf(ratio):
        # noise is subnormal next to the signal
        noise_term = noise * (math.log(received) - math.log(noise))
    else:
        noise_term = noise * math.log1p(ratio)
    nats = (
        (noise + 1.0) * math.log1p(received / (noise + 1.0))
        - noise_term
        + received * _log1p_reciprocal(noise + received)
    )
    return max(0.0, nats / _LN2)


def holevo_capacity(p: ChannelUseParams) -> float:
    """
    Holevo capacity g(gamma*E + N) - g(N) in bits per channel use.

    Exactly zero when no signal reaches the receiver.
    """
    return _gordon_increment(p.mean_noise_photons, p.received_photons)


def shannon_homodyne(p: ChannelUseParams) -> float:
    """Shannon capacity with homodyne detection: 1/2 log2(1 + 4 gamma E/(2N+1))."""
    snr = 4.0 * p.received_photons / (2.0 * p.mean_noise_photons + 1.0)
    return 0.5 * math.log1p(snr) / _LN2


def shannon_heterodyne(p: ChannelUseParams) -> float:
    """Shannon capacity with heterodyne detection: log2(1 + gamma E/(N+1))."""
    snr = p.received_photons / (p.mean_noise_photons + 1.0)
    return math.log1p(snr) / _LN2


_FORMULAS = {
    CapacityKind.HOLEVO: holevo_capacity,
    CapacityKind.HOMODYNE: shannon_homodyne,
    CapacityKind.HETERODYNE: shannon_heterodyne,
}


def capacity(p: ChannelUseParams, kind: CapacityKind) -> float:
    """Capacity in bits per channel use for the selected formula."""
    try:
        formula = _FORMULAS[kind]
    except KeyError:
        raise DomainError(f"Unknown capacity kind: {kind!r}") from None
    return formula(p)


def capacity_per_second(r: RateParams, kind: CapacityKind) -> float:
    """Capacity in bits per second: B * C(gamma, E_rate/B, N_rate/B)."""
    return r.modulation_bandwidth * capacity(r.per_use(), kind)


def capacity_value(r: RateParams, kind: CapacityKind) -> CapacityValue:
    """Capacity in both units for a rate description."""
    per_use = capacity(r.per_use(), kind)
    value = CapacityValue(
        bits_per_use=per_use,
        bits_per_second=r.modulation_bandwidth * per_use,
        kind=kind,
    )
    logger.debug(f"{kind.value}: {value.bits_per_use:.6g} bits/use, "
                 f"{value.bits_per_second:.6g} bits/s")
    return value


def homodyne_snr(r: RateParams) -> HomodyneSnr:
    """
    Homodyne SNR from per-second rates.

    Returns both the printed form 2*gamma*E/(4N+B) and the form
    4*gamma*E/(2N+B) that the homodyne capacity actually implies; the two
    differ by roughly a factor of two and neither is silently corrected.
    """
    received = r.received_photon_rate
    noise = r.noise_photon_rate
    bandwidth = r.modulation_bandwidth
    return HomodyneSnr(
        printed=2.0 * received / (4.0 * noise + bandwidth),
        consistent=4.0 * received / (2.0 * noise + bandwidth),
    )


def capacity_advantage(r: RateParams) -> float:
    """
    Holevo over homodyne capacity ratio.

    Returns inf if only the Holevo capacity is positive and NaN if both are zero.
    """
    quantum = capacity_per_second(r, CapacityKind.HOLEVO)
    classical = capacity_per_second(r, CapacityKind.HOMODYNE)
    if classical > 0:
        return quantum / classical
    return math.inf if quantum > 0 else math.nan
