"""
Optical link budget for a weak isotropic satellite beacon.

Turns the beacon/receiver parameters, the link distance and any excess
attenuation into a transmittance and detected signal/noise photon rates.
"""

import dataclasses
import logging
import math
from typing import Optional

from .models import (
    DetectedRates,
    DomainError,
    LinkBudget,
    PLANCK_CONSTANT,
    RateParams,
    SignalMode,
    SPEED_OF_LIGHT,
)

logger = logging.getLogger(__name__)


def db_to_linear(loss: float) -> float:
    """Power loss in dB to a multiplicative factor, 10^(-loss/10)."""
    if not math.isfinite(loss):
        raise DomainError(f"loss must be finite, got {loss!r}")
    return 10.0 ** (-loss / 10.0)


def aperture_area(diameter: float) -> float:
    """Area of a circular aperture, pi * (D/2)^2."""
    if not math.isfinite(diameter) or diameter <= 0:
        raise DomainError(f"aperture diameter must be positive, got {diameter!r}")
    return math.pi * (diameter / 2.0) ** 2


def transmittance(lb: LinkBudget) -> float:
    """
    Geometric transmittance gamma = A * tau * eta / (Omega * r^2).

    tau is the filter transmission; atmospheric attenuation is carried
    separately as extra_loss and is not part of gamma.
    """
    if lb.distance <= 0:
        raise DomainError(f"distance must be positive, got {lb.distance!r}")
    area = aperture_area(lb.telescope_diameter)
    return (area * lb.filter_transmission * lb.detector_quantum_efficiency
            / (lb.emission_solid_angle * lb.distance ** 2))


def photon_energy(wavelength: float) -> float:
    """Energy of one photon, h*c/lambda, in joules."""
    return PLANCK_CONSTANT * SPEED_OF_LIGHT / wavelength


def emitted_photon_rate(lb: LinkBudget) -> float:
    """Mean emitted photons per second: P_peak * duty cycle / (h c / lambda)."""
    return lb.peak_power * lb.duty_cycle / photon_energy(lb.wavelength)


def detected_signal_rate(lb: LinkBudget, mode: Optional[SignalMode] = None) -> float:
    """
    Detected signal photons per second.

    first_principles: emitted rate * transmittance * extra loss factor.
    calibrated: the reference rate at the calibration distance, scaled by
    the inverse-square law and the extra loss factor.
    """
    mode = mode or lb.signal_mode
    loss_factor = db_to_linear(lb.extra_loss)
    if mode is SignalMode.FIRST_PRINCIPLES:
        return emitted_photon_rate(lb) * transmittance(lb) * loss_factor
    return (lb.calibrated_signal_rate
            * (lb.calibration_distance / lb.distance) ** 2
            * loss_factor)


def detected_noise_rate(lb: LinkBudget) -> float:
    """
    Background photons per second at the detector.

    Returns the canonical rate verbatim when one is configured, otherwise
    scales the reference rate linearly with filter bandwidth (no dark counts).
    """
    if lb.canonical_noise_rate is not None:
        return lb.canonical_noise_rate
    return lb.base_noise_rate * (lb.filter_bandwidth / lb.reference_filter_bandwidth)


def detected_rates(lb: LinkBudget) -> DetectedRates:
    """All derived link quantities for the configured signal mode."""
    rates = DetectedRates(
        transmittance=transmittance(lb),
        emitted_photon_rate=emitted_photon_rate(lb),
        detected_signal_rate=detected_signal_rate(lb),
        detected_noise_rate=detected_noise_rate(lb),
    )
    logger.debug(f"Link at {lb.distance / 1e3:.1f} km, {lb.extra_loss:.2f} dB: "
                 f"{rates.get_summary()}")
    return rates


def rate_params(lb: LinkBudget) -> RateParams:
    """
    Capacity inputs for this link.

    In first-principles mode the emitted rate is passed together with the
    lossy transmittance; in calibrated mode the detected rate is already
    known and the channel is taken as lossless.
    """
    if lb.signal_mode is SignalMode.FIRST_PRINCIPLES:
        return RateParams(
            transmittance=transmittance(lb) * db_to_linear(lb.extra_loss),
            signal_photon_rate=emitted_photon_rate(lb),
            noise_photon_rate=detected_noise_rate(lb),
            modulation_bandwidth=lb.modulation_bandwidth,
        )
    return RateParams(
        transmittance=1.0,
        signal_photon_rate=detected_signal_rate(lb),
        noise_photon_rate=detected_noise_rate(lb),
        modulation_bandwidth=lb.modulation_bandwidth,
    )


def with_distance(lb: LinkBudget, distance: float) -> LinkBudget:
    """Copy of lb at another link distance."""
    return dataclasses.replace(lb, distance=distance)


def with_extra_loss(lb: LinkBudget, extra_loss: float) -> LinkBudget:
    """Copy of lb with another excess attenuation in dB."""
    return dataclasses.replace(lb, extra_loss=extra_loss)
