"""
Pass geometry for a circular orbit over a spherical, non-rotating Earth.

The satellite passes directly over the ground station. Elevation angles are
in radians, lengths in meters, times in seconds measured from the moment the
satellite rises above the minimum elevation.
"""

import logging
import math

from scipy.optimize import bisect

from .models import DomainError, PassGeometry

logger = logging.getLogger(__name__)

_HALF_PI = math.pi / 2


def _check_elevation(g: PassGeometry, elevation: float, lower: float = 0.0) -> None:
    if not math.isfinite(elevation) or not lower <= elevation <= _HALF_PI:
        raise DomainError(
            f"elevation must lie in [{lower:.6g}, pi/2] rad, got {elevation!r}"
        )


def orbital_period(g: PassGeometry) -> float:
    """Kepler period 2*pi*sqrt(a^3/mu) of the circular orbit."""
    return 2.0 * math.pi * math.sqrt(g.orbit_radius ** 3 / g.gravitational_parameter)


def slant_range(g: PassGeometry, elevation: float) -> float:
    """
    Line-of-sight distance to the satellite at a given elevation.

    sqrt((R+h)^2 - R^2 cos^2(theta)) - R sin(theta), rewritten as
    h(2R+h) / (sqrt(...) + R sin(theta)) to avoid cancellation near zenith,
    where it returns exactly h.
    """
    _check_elevation(g, elevation)
    radius = g.earth_radius
    root = math.sqrt(g.orbit_radius ** 2 - (radius * math.cos(elevation)) ** 2)
    return g.altitude * (2.0 * radius + g.altitude) / (root + radius * math.sin(elevation))


def earth_central_angle(g: PassGeometry, elevation: float) -> float:
    """Angle at Earth's center between station and satellite: arccos(R cos(theta)/(R+h)) - theta."""
    _check_elevation(g, elevation)
    return math.acos(g.earth_radius * math.cos(elevation) / g.orbit_radius) - elevation


def pass_duration(g: PassGeometry) -> float:
    """Time above the minimum elevation for an overhead pass."""
    return orbital_period(g) * earth_central_angle(g, g.min_elevation) / math.pi


def time_from_rise(g: PassGeometry, elevation: float) -> float:
    """Seconds from rise until the satellite reaches `elevation` on the ascending half."""
    _check_elevation(g, elevation, lower=g.min_elevation)
    swept = earth_central_angle(g, g.min_elevation) - earth_central_angle(g, elevation)
    return swept * orbital_period(g) / (2.0 * math.pi)


def elevation_at_time(g: PassGeometry, t: float) -> float:
    """
    Elevation at time t after rise; times past mid-pass mirror the ascending half.

    Solved by bisection on time_from_rise, which is strictly increasing.
    """
    duration = pass_duration(g)
    if not math.isfinite(t) or not 0.0 <= t <= duration:
        raise DomainError(f"t must lie in [0, {duration:.6g}] s, got {t!r}")
    if t > duration / 2:
        t = duration - t
    if t == 0.0:
        return g.min_elevation
    if time_from_rise(g, _HALF_PI) - t <= 0.0:
        return _HALF_PI
    return bisect(
        lambda theta: time_from_rise(g, theta) - t,
        g.min_elevation,
        _HALF_PI,
        xtol=1e-12,
        maxiter=200,
    )
