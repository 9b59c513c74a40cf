"""Great-circle distances on a spherical Earth.

All link weights in the road graph come from the haversine formulation,
which stays well conditioned at the short distances typical of adjacent
intersections.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

EARTH_RADIUS_KM = 6371.0088
"""IUGG mean Earth radius in kilometers."""


@dataclass(frozen=True)
class GeoPoint:
    """A latitude/longitude pair in decimal degrees."""

    lat_deg: float
    lon_deg: float

    def __post_init__(self):
        if not -90.0 <= self.lat_deg <= 90.0:
            raise ValueError(f"latitude {self.lat_deg} outside [-90, 90]")
        if not -180.0 <= self.lon_deg <= 180.0:
            raise ValueError(f"longitude {self.lon_deg} outside [-180, 180]")


def deg_to_rad(angle_deg: float) -> float:
    """Convert degrees to radians."""
    return angle_deg * math.pi / 180.0


def haversine(theta: float) -> float:
    """hav(theta) = sin^2(theta / 2)."""
    s = math.sin(theta / 2.0)
    return s * s


def great_circle_distance(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance between two points, in kilometers.

    Symmetric in its arguments bit-for-bit: the deltas enter through
    absolute values, so swapping the endpoints performs the identical
    float operations.
    """
    phi1 = deg_to_rad(a.lat_deg)
    phi2 = deg_to_rad(b.lat_deg)
    dphi = deg_to_rad(abs(b.lat_deg - a.lat_deg))
    dlam = deg_to_rad(abs(b.lon_deg - a.lon_deg))
    h = haversine(dphi) + math.cos(phi1) * math.cos(phi2) * haversine(dlam)
    # rounding can push h a hair past 1 near antipodal pairs
    if h > 1.0:
        h = 1.0
    elif h < 0.0:
        h = 0.0
    return 2.0 * EARTH_RADIUS_KM * math.asin(math.sqrt(h))
