"""
Run configuration loading.

Defaults come from the dataclasses in models (published link budget plus the
canonical calibration); a JSON file overrides them field by field, and CLI
flags override the file.
"""

import dataclasses
import json
import logging
import math
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Tuple, Type, Union

from .models import (
    ConfigError,
    DomainError,
    IdentificationSpec,
    KILOMETER,
    LinkBudget,
    NANOMETER,
    OutputFormat,
    PassGeometry,
    Receiver,
    RunConfig,
    SignalMode,
)

logger = logging.getLogger(__name__)

# Convenience keys: name -> (field, scale)
_UNIT_ALIASES: Dict[str, Dict[str, Tuple[str, float]]] = {
    "link_budget": {
        "wavelength_nm": ("wavelength", NANOMETER),
        "filter_bandwidth_nm": ("filter_bandwidth", NANOMETER),
        "reference_filter_bandwidth_nm": ("reference_filter_bandwidth", NANOMETER),
        "distance_km": ("distance", KILOMETER),
        "calibration_distance_km": ("calibration_distance", KILOMETER),
    },
    "geometry": {
        "altitude_km": ("altitude", KILOMETER),
        "earth_radius_km": ("earth_radius", KILOMETER),
        "min_elevation_deg": ("min_elevation", math.pi / 180.0),
    },
    "identification": {
        "design_elevation_deg": ("design_elevation", math.pi / 180.0),
    },
}

# Fields parsed into enums
_CONVERTERS: Dict[str, Dict[str, Callable[[Any], Any]]] = {
    "link_budget": {"signal_mode": SignalMode},
    "identification": {"receiver": Receiver},
}

_SECTIONS: Dict[str, Type[Any]] = {
    "link_budget": LinkBudget,
    "geometry": PassGeometry,
    "identification": IdentificationSpec,
}

_TOP_LEVEL = {"output_format", "loss_offset_db", "sweep_points"}


def _line_of(text: str, key: str) -> Optional[int]:
    """1-based line on which a JSON key first appears."""
    needle = json.dumps(key)
    for number, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return number
    return None


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _build_section(name: str, values: Any, text: str) -> Any:
    """Construct one dataclass section from its JSON object."""
    cls = _SECTIONS[name]
    if not isinstance(values, dict):
        raise ConfigError(f"section '{name}' must be a JSON object", key=name, line=_line_of(text, name))

    field_names = {f.name for f in dataclasses.fields(cls)}
    aliases = _UNIT_ALIASES.get(name, {})
    converters = _CONVERTERS.get(name, {})
    kwargs: Dict[str, Any] = {}

    for key, value in values.items():
        if key in aliases:
            target, scale = aliases[key]
            if not _is_number(value):
                raise ConfigError(f"'{key}' must be a number", key=key, line=_line_of(text, key))
            kwargs[target] = value * scale
        elif key in converters:
            try:
                kwargs[key] = converters[key](value)
            except ValueError:
                raise ConfigError(f"invalid value {value!r} for '{key}'",
                                  key=key, line=_line_of(text, key)) from None
        elif key in field_names:
            if key == "constellation_size" and isinstance(value, float) and value.is_integer():
                value = int(value)
            if not (_is_number(value) or (value is None and key == "canonical_noise_rate")):
                raise ConfigError(f"'{key}' must be a number", key=key, line=_line_of(text, key))
            kwargs[key] = float(value) if isinstance(value, int) and key != "constellation_size" else value
        else:
            raise ConfigError(f"unknown configuration key '{key}' in section '{name}'",
                              key=key, line=_line_of(text, key))

    try:
        return cls(**kwargs)
    except DomainError as e:
        raise ConfigError(f"invalid '{name}' section: {e}", key=name, line=_line_of(text, name)) from None


def parse_config(text: str) -> RunConfig:
    """Parse a JSON configuration document into a RunConfig."""
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"malformed JSON: {e.msg}", line=e.lineno) from None
    if not isinstance(document, dict):
        raise ConfigError("configuration must be a JSON object", line=1)

    sections: Dict[str, Any] = {}
    top: Dict[str, Any] = {}
    for key, value in document.items():
        if key in _SECTIONS:
            sections[key] = _build_section(key, value, text)
        elif key in _TOP_LEVEL:
            top[key] = value
        else:
            raise ConfigError(f"unknown configuration key '{key}'", key=key, line=_line_of(text, key))

    kwargs: Dict[str, Any] = {}
    if "link_budget" in sections:
        kwargs["link_budget"] = sections["link_budget"]
    if "geometry" in sections:
        kwargs["geometry"] = sections["geometry"]
    if "identification" in sections:
        kwargs["spec"] = sections["identification"]
    if "output_format" in top:
        try:
            kwargs["output_format"] = OutputFormat(top["output_format"])
        except ValueError:
            raise ConfigError(f"invalid output_format {top['output_format']!r}",
                              key="output_format", line=_line_of(text, "output_format")) from None
    if "loss_offset_db" in top:
        if not _is_number(top["loss_offset_db"]):
            raise ConfigError("'loss_offset_db' must be a number",
                              key="loss_offset_db", line=_line_of(text, "loss_offset_db"))
        kwargs["loss_offset_db"] = float(top["loss_offset_db"])
    if "sweep_points" in top:
        kwargs["sweep_points"] = top["sweep_points"]

    try:
        return RunConfig(**kwargs)
    except DomainError as e:
        raise ConfigError(f"invalid configuration: {e}") from None


def load_config(
    path: Optional[Union[str, Path]] = None,
    output_format: Optional[str] = None,
    loss_offset_db: Optional[float] = None,
    sweep_points: Optional[int] = None,
) -> RunConfig:
    """
    Build the RunConfig for a command.

    Args:
        path: Optional JSON configuration file
        output_format: CLI override for the output format
        loss_offset_db: CLI override for the weather loss offset
        sweep_points: CLI override for the sweep grid size

    Raises:
        ConfigError: If the file cannot be read or is invalid
    """
    if path is None:
        config = RunConfig()
    else:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"cannot read configuration file {path}: {e.strerror or e}") from None
        config = parse_config(text)
        logger.info(f"Loaded configuration from {path}")

    overrides: Dict[str, Any] = {}
    if output_format is not None:
        overrides["output_format"] = OutputFormat(output_format)
    if loss_offset_db is not None:
        overrides["loss_offset_db"] = loss_offset_db
    if sweep_points is not None:
        overrides["sweep_points"] = sweep_points
    if overrides:
        try:
            config = dataclasses.replace(config, **overrides)
        except DomainError as e:
            raise ConfigError(f"invalid command-line override: {e}") from None
    logger.debug(f"Run configuration: {config}")
    return config
