"""
Data models for the beacon-limit toolkit.

This module contains the value types shared by the capacity, link budget,
pass geometry and identification modules, together with the error types
raised throughout the package. All value types are frozen dataclasses and
validate themselves on construction.
"""

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple
import math


class BeaconLimitError(Exception):
    """Base class for every error raised by beacon-limit."""


class DomainError(BeaconLimitError, ValueError):
    """An argument lies outside the domain of an operation."""


class ConfigError(BeaconLimitError):
    """
    A configuration document could not be turned into a RunConfig.

    Carries the offending key and the 1-based line number when known.
    """

    def __init__(self, message: str, key: Optional[str] = None, line: Optional[int] = None):
        self.message = message
        self.key = key
        self.line = line
        super().__init__(str(self))

    def __str__(self) -> str:
        location = []
        if self.line is not None:
            location.append(f"line {self.line}")
        if self.key is not None:
            location.append(f"key '{self.key}'")
        if location:
            return f"{self.message} ({', '.join(location)})"
        return self.message


class CapacityKind(Enum):
    """Capacity formulas available for a thermal-loss channel."""
    HOLEVO = "holevo"
    HOMODYNE = "homodyne"
    HETERODYNE = "heterodyne"


class Receiver(Enum):
    """Ground station receiver architectures."""
    SSR = "ssr"
    JDR = "jdr"

    @property
    def capacity_kind(self) -> CapacityKind:
        """Capacity formula the receiver operates at."""
        if self is Receiver.JDR:
            return CapacityKind.HOLEVO
        return CapacityKind.HOMODYNE


class SignalMode(Enum):
    """How the detected signal photon rate is obtained."""
    CALIBRATED = "calibrated"
    FIRST_PRINCIPLES = "first_principles"


class DesignCase(Enum):
    """Outcome of designing the compound code for a given elevation."""
    ZENITH_ONLY = "case1_zenith_only"
    TOO_SLOW = "case2_too_slow"
    FEASIBLE = "case3_feasible"


class OutputFormat(Enum):
    """Report output formats."""
    TABLE = "table"
    CSV = "csv"
    JSON = "json"


def _require_finite(name: str, value: float) -> None:
    if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(value):
        raise DomainError(f"{name} must be a finite number, got {value!r}")


def _require_positive(name: str, value: float) -> None:
    _require_finite(name, value)
    if value <= 0:
        raise DomainError(f"{name} must be strictly positive, got {value!r}")


def _require_non_negative(name: str, value: float) -> None:
    _require_finite(name, value)
    if value < 0:
        raise DomainError(f"{name} must be non-negative, got {value!r}")


def _require_fraction(name: str, value: float) -> None:
    _require_finite(name, value)
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {value!r}")


# SI physical constants (exact by definition)
PLANCK_CONSTANT = 6.62607015e-34  # J*s
SPEED_OF_LIGHT = 299792458.0  # m/s

# Earth model: mean radius, standard gravitational parameter
EARTH_MEAN_RADIUS = 6371e3  # m
EARTH_MU = 3.986004418e14  # m^3/s^2

NANOMETER = 1e-9
KILOMETER = 1e3


@dataclass(frozen=True)
class ChannelUseParams:
    """
    Per-channel-use description of a thermal-loss bosonic channel.

    transmittance is the end-to-end power fraction, mean_signal_photons the
    sender's mean photon number per use and mean_noise_photons the thermal
    background per use at the detector.
    """
    transmittance: float
    mean_signal_photons: float
    mean_noise_photons: float

    def __post_init__(self) -> None:
        _require_fraction("transmittance", self.transmittance)
        _require_non_negative("mean_signal_photons", self.mean_signal_photons)
        _require_non_negative("mean_noise_photons", self.mean_noise_photons)

    @property
    def received_photons(self) -> float:
        """Mean received signal photons per use (gamma * E)."""
        return self.transmittance * self.mean_signal_photons


@dataclass(frozen=True)
class RateParams:
    """
    Per-second description of a channel driven at a fixed symbol rate.

    signal_photon_rate is taken before the channel (it is multiplied by
    transmittance), noise_photon_rate at the detector.
    """
    transmittance: float
    signal_photon_rate: float
    noise_photon_rate: float
    modulation_bandwidth: float

    def __post_init__(self) -> None:
        _require_fraction("transmittance", self.transmittance)
        _require_non_negative("signal_photon_rate", self.signal_photon_rate)
        _require_non_negative("noise_photon_rate", self.noise_photon_rate)
        _require_positive("modulation_bandwidth", self.modulation_bandwidth)

    @property
    def received_photon_rate(self) -> float:
        """Detected signal photons per second."""
        return self.transmittance * self.signal_photon_rate

    def per_use(self) -> ChannelUseParams:
        """Per-use parameters E = rate/B, N = noise/B."""
        return ChannelUseParams(
            transmittance=self.transmittance,
            mean_signal_photons=self.signal_photon_rate / self.modulation_bandwidth,
            mean_noise_photons=self.noise_photon_rate / self.modulation_bandwidth,
        )


@dataclass(frozen=True)
class CapacityValue:
    """A capacity in bits per use and, when a symbol rate is known, bits per second."""
    bits_per_use: float
    bits_per_second: Optional[float] = None
    kind: Optional[CapacityKind] = None


@dataclass(frozen=True)
class HomodyneSnr:
    """
    Homodyne signal-to-noise ratio in its two published forms.

    printed is 2*gamma*E/(4N+B); consistent is 4*gamma*E/(2N+B), the value
    that matches the homodyne capacity formula under the B scaling.
    """
    printed: float
    consistent: float

    @property
    def ratio(self) -> float:
        """consistent / printed, NaN when both are zero."""
        if self.printed == 0.0:
            return math.nan
        return self.consistent / self.printed


@dataclass(frozen=True)
class LinkBudget:
    """
    Beacon and receiver link budget.

    Holds the published beacon/receiver parameter set together with the
    distance, any excess attenuation, and the calibration used to reproduce
    the published capacities. Lengths are in meters, powers in watts.
    """
    wavelength: float = 638 * NANOMETER
    peak_power: float = 1.0
    pulse_width: float = 2e-6
    pulse_interval: float = 500e-6
    fraction_ones: float = 0.5
    emission_solid_angle: float = 2 * math.pi
    telescope_diameter: float = 0.36
    filter_transmission: float = 0.83
    filter_bandwidth: float = 1e-4 * NANOMETER
    solar_spectral_flux: float = 1.654  # W/m^2/nm, carried but unused
    detector_quantum_efficiency: float = 0.039
    albedo_area_cubesat: float = 0.00053  # m^2, carried but unused
    albedo_area_1m: float = 0.053  # m^2, carried but unused
    base_noise_rate: float = 91.0
    reference_filter_bandwidth: float = 10 * NANOMETER
    distance: float = 1000 * KILOMETER
    extra_loss: float = 0.0  # dB
    modulation_bandwidth: float = 1e6
    calibrated_signal_rate: float = 3.0
    calibration_distance: float = 1000 * KILOMETER
    canonical_noise_rate: Optional[float] = 0.01
    signal_mode: SignalMode = SignalMode.CALIBRATED

    def __post_init__(self) -> None:
        for name in (
            "wavelength", "peak_power", "pulse_width", "pulse_interval",
            "emission_solid_angle", "telescope_diameter", "filter_transmission",
            "filter_bandwidth", "solar_spectral_flux", "detector_quantum_efficiency",
            "albedo_area_cubesat", "albedo_area_1m", "base_noise_rate",
            "reference_filter_bandwidth", "distance", "modulation_bandwidth",
            "calibration_distance",
        ):
            _require_positive(name, getattr(self, name))
        _require_fraction("fraction_ones", self.fraction_ones)
        _require_fraction("filter_transmission", self.filter_transmission)
        _require_fraction("detector_quantum_efficiency", self.detector_quantum_efficiency)
        _require_non_negative("extra_loss", self.extra_loss)
        _require_non_negative("calibrated_signal_rate", self.calibrated_signal_rate)
        if self.canonical_noise_rate is not None:
            _require_non_negative("canonical_noise_rate", self.canonical_noise_rate)
        if self.pulse_width > self.pulse_interval:
            raise DomainError(
                f"pulse_width ({self.pulse_width}) exceeds pulse_interval ({self.pulse_interval})"
            )
        if not isinstance(self.signal_mode, SignalMode):
            raise DomainError(f"signal_mode must be a SignalMode, got {self.signal_mode!r}")

    @property
    def duty_cycle(self) -> float:
        """Fraction of time the beacon emits: pulse ratio times fraction of ones."""
        return (self.pulse_width / self.pulse_interval) * self.fraction_ones


@dataclass(frozen=True)
class DetectedRates:
    """Derived link quantities at the configured distance and loss."""
    transmittance: float
    emitted_photon_rate: float
    detected_signal_rate: float
    detected_noise_rate: float

    def get_summary(self) -> str:
        """One-line summary of the detected rates."""
        return (f"gamma={self.transmittance:.4g}, emitted={self.emitted_photon_rate:.4g}/s, "
                f"signal={self.detected_signal_rate:.4g}/s, noise={self.detected_noise_rate:.4g}/s")


@dataclass(frozen=True)
class PassGeometry:
    """
    Spherical Earth, circular orbit, overhead pass.

    Lengths in meters, angles in radians.
    """
    altitude: float = 1000 * KILOMETER
    earth_radius: float = EARTH_MEAN_RADIUS
    gravitational_parameter: float = EARTH_MU
    min_elevation: float = 0.0

    def __post_init__(self) -> None:
        _require_positive("altitude", self.altitude)
        _require_positive("earth_radius", self.earth_radius)
        _require_positive("gravitational_parameter", self.gravitational_parameter)
        _require_finite("min_elevation", self.min_elevation)
        if not 0.0 <= self.min_elevation < math.pi / 2:
            raise DomainError(f"min_elevation must lie in [0, pi/2), got {self.min_elevation!r}")

    @property
    def orbit_radius(self) -> float:
        """Distance from Earth's center to the satellite."""
        return self.earth_radius + self.altitude


@dataclass(frozen=True)
class IdentificationSpec:
    """
    Constellation and reading requirements.

    The beacon ID length follows from the constellation size; the start
    offset factor accounts for reading starting, on average, halfway into
    the repeating sequence.
    """
    constellation_size: int = 1_000_000
    receiver: Receiver = Receiver.JDR
    start_offset_factor: float = 1.5
    design_elevation: float = 0.1

    def __post_init__(self) -> None:
        if isinstance(self.constellation_size, bool) or not isinstance(self.constellation_size, int):
            raise DomainError(f"constellation_size must be an integer, got {self.constellation_size!r}")
        if self.constellation_size < 2:
            raise DomainError(f"constellation_size must be at least 2, got {self.constellation_size}")
        _require_finite("start_offset_factor", self.start_offset_factor)
        if self.start_offset_factor < 1.0:
            raise DomainError(f"start_offset_factor must be >= 1, got {self.start_offset_factor}")
        _require_finite("design_elevation", self.design_elevation)
        if not isinstance(self.receiver, Receiver):
            raise DomainError(f"receiver must be a Receiver, got {self.receiver!r}")

    @property
    def id_bits(self) -> int:
        """ceil(log2(constellation_size)), exact at powers of two."""
        return (self.constellation_size - 1).bit_length()


@dataclass(frozen=True)
class ScenarioRow:
    """One row of the classical-versus-quantum scenario comparison."""
    name: str
    distance: float
    extra_loss: float
    capacity_classical: float
    capacity_quantum: float
    ttr_classical: float
    ttr_quantum: float
    loss_offset: float = 0.0
    note: str = ""

    def to_dict(self) -> Dict[str, Any]:
        """Plain dict with non-finite values mapped to None."""
        return {key: _finite_or_none(value) for key, value in asdict(self).items()}


@dataclass(frozen=True)
class SweepPoint:
    """
    Reading performance when the ground station starts reading at one elevation.

    Raw TTR values are id_bits / capacity; effective values include the
    start offset factor. ATW is clamped at zero.
    """
    start_elevation: float
    start_time: float
    ttr_classical: float
    ttr_quantum: float
    ttr_effective_classical: float
    ttr_effective_quantum: float
    atw_classical: float
    atw_quantum: float

    def to_dict(self) -> Dict[str, Any]:
        """Plain dict with non-finite values mapped to None."""
        return {key: _finite_or_none(value) for key, value in asdict(self).items()}


@dataclass(frozen=True)
class DesignResult:
    """Outcome of designing the compound code for one elevation and receiver."""
    case: DesignCase
    receiver: Receiver
    design_elevation: float
    slant_range: float
    capacity: float
    ttr: float
    start_time: float
    atw: float

    def get_summary(self) -> str:
        """One-line summary of the design outcome."""
        return (f"{self.receiver.value.upper()} @ {math.degrees(self.design_elevation):.1f} deg: "
                f"{self.case.value}, TTR={self.ttr:.2f}s, ATW={self.atw:.2f}s")


@dataclass(frozen=True)
class ChartSeries:
    """One polyline of a chart."""
    label: str
    x: Tuple[float, ...]
    y: Tuple[float, ...]
    dashed: bool = False

    def __post_init__(self) -> None:
        if len(self.x) != len(self.y):
            raise DomainError(
                f"series '{self.label}' has {len(self.x)} x values but {len(self.y)} y values"
            )


@dataclass(frozen=True)
class ChartSpec:
    """A line chart: titles, series and optional y clipping / log scale."""
    title: str
    x_label: str
    y_label: str
    series: Sequence[ChartSeries] = field(default_factory=tuple)
    y_clip: Optional[float] = None
    log_y: bool = False


@dataclass(frozen=True)
class RunConfig:
    """Everything a CLI command needs: link, geometry, requirements and output options."""
    link_budget: LinkBudget = field(default_factory=LinkBudget)
    geometry: PassGeometry = field(default_factory=PassGeometry)
    spec: IdentificationSpec = field(default_factory=IdentificationSpec)
    output_format: OutputFormat = OutputFormat.TABLE
    loss_offset_db: float = 0.0
    sweep_points: int = 200

    def __post_init__(self) -> None:
        if not isinstance(self.output_format, OutputFormat):
            raise DomainError(f"output_format must be an OutputFormat, got {self.output_format!r}")
        _require_non_negative("loss_offset_db", self.loss_offset_db)
        if isinstance(self.sweep_points, bool) or not isinstance(self.sweep_points, int) or self.sweep_points < 2:
            raise DomainError(f"sweep_points must be an integer >= 2, got {self.sweep_points!r}")


def _finite_or_none(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, Enum):
        return value.value
    return value


# Printed scenario values: (capacity C, capacity Q, TTR C, TTR Q)
PUBLISHED_TABLE: Dict[str, Tuple[float, float, float, float]] = {
    "Zenith": (8.65, 59.27, 2.31, 0.34),
    "Early": (2.16, 16.33, 10.39, 1.40),
    "Horizon": (1.07, 8.46, 21.96, 2.97),
    "Atmosphere": (0.22, 1.87, 103.97, 12.15),
    "Adverse weather": (0.01, 0.13, 1650.35, 166.07),
}

# Published pass times: body text and figure captions disagree
PUBLISHED_PASS_TIMES: List[float] = [1054.0, 1045.0]
