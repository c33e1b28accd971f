"""Cosine-law spreading of the evaporated mass over plane supports.

A source emitting w grams per second sends flux w cos(theta) / (4 pi r^2)
(point emitter) or w cos(theta) / (pi r^2) (plane emitter, half-space only)
onto a receiver at distance r and inclination theta. On a receiving plane a
height h above the source, the deposit at lateral offset x grows at

    d(x) = w h / (pi rho (h^2 + x^2)^(3/2))   [cm/s]

Thickness is a rate: cm deposited per second of evaporation at rate w;
multiply by duration for a total. Note the profile's pi normalization makes
the integral of rho*d over the infinite receiving plane equal 2w, not w;
the model is used as printed and the factor is asserted in tests rather
than corrected.

Supports are ideal planes parallel to the source plane; no shadowing and no
re-evaporation after condensation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import EmissionKind, SourceSpec, SupportSpec, validate
from .errors import InvalidInputError, NumericalError


@dataclass(frozen=True)
class EmissionGeometry:
    """Emitter shape plus its total mass emission rate w in g/s."""

    kind: EmissionKind
    total_rate_w: float


@dataclass(frozen=True)
class ThicknessProfile:
    """Growth rates at a set of lateral offsets on one receiving plane."""

    offsets: tuple            # cm
    thickness_rate: tuple     # cm/s
    source_id: str
    distance_h: float         # cm

    def __post_init__(self):
        object.__setattr__(self, "offsets", tuple(float(x) for x in self.offsets))
        object.__setattr__(self, "thickness_rate",
                           tuple(float(d) for d in self.thickness_rate))


@validate.register
def _validate_emission_geometry(obj: EmissionGeometry) -> list:
    out = []
    if not obj.total_rate_w >= 0:
        out.append("emission geometry: total_rate_w must be >= 0")
    return out


@validate.register
def _validate_thickness_profile(obj: ThicknessProfile) -> list:
    out = []
    ctx = f"profile from '{obj.source_id}'"
    if len(obj.offsets) != len(obj.thickness_rate):
        out.append(f"{ctx}: offsets and thickness_rate lengths differ")
    if any(math.isfinite(x) and not d > 0
           for x, d in zip(obj.offsets, obj.thickness_rate)):
        out.append(f"{ctx}: thickness_rate must be > 0 at every finite offset")
    return out


def mass_flux(geometry: EmissionGeometry, theta: float, r: float) -> float:
    """Mass flux (g cm^-2 s^-1) at distance r, receiver inclined by theta.

    A plane emitter concentrates into a half-space, so its flux is exactly
    4x the point-emitter flux at identical (theta, r).
    """
    if not r > 0:
        raise InvalidInputError(f"r must be > 0, got {r}")
    if not 0 <= theta <= math.pi / 2:
        raise InvalidInputError(
            f"theta must be within [0, pi/2], got {theta}")
    if geometry.total_rate_w < 0:
        raise InvalidInputError(
            f"total_rate_w must be >= 0, got {geometry.total_rate_w}")
    numerator = geometry.total_rate_w * math.cos(theta)
    if geometry.kind is EmissionKind.POINT:
        return numerator / ((4.0 * math.pi) * (r * r))
    return numerator / (math.pi * (r * r))


def thickness_center(w: float, rho: float, h: float) -> float:
    """Growth rate directly above the source: w / (pi rho h^2) in cm/s."""
    if w < 0:
        raise InvalidInputError(f"w must be >= 0, got {w}")
    if not rho > 0:
        raise InvalidInputError(f"rho must be > 0, got {rho}")
    if not h > 0:
        raise InvalidInputError(f"h must be > 0, got {h}")
    return w / (math.pi * rho * (h * h))


def thickness_at_offset(w: float, rho: float, h: float, x: float) -> float:
    """Growth rate at lateral offset x: w h / (pi rho (h^2 + x^2)^(3/2)).

    Even in x; x = 0 reproduces thickness_center bit for bit.
    """
    if x == 0:
        return thickness_center(w, rho, h)
    if w < 0:
        raise InvalidInputError(f"w must be >= 0, got {w}")
    if not rho > 0:
        raise InvalidInputError(f"rho must be > 0, got {rho}")
    if not h > 0:
        raise InvalidInputError(f"h must be > 0, got {h}")
    return w * h / (math.pi * rho * (h * h + x * x) ** 1.5)


def profile_over_supports(source: SourceSpec, geometry: EmissionGeometry,
                          supports: Sequence[SupportSpec]) -> list:
    """One single-point profile per support, at its own (distance, offset).

    The condensed density is the source substance's. An empty support list
    yields an empty result. The thickest deposit always lands on the
    support with the smallest distance and zero offset.
    """
    rho = source.substance.density
    w = geometry.total_rate_w
    return [
        ThicknessProfile(
            offsets=(sup.offset_x,),
            thickness_rate=(thickness_at_offset(w, rho, sup.distance_h,
                                                sup.offset_x),),
            source_id=source.id,
            distance_h=sup.distance_h,
        )
        for sup in supports
    ]


def deposited_mass(profile: ThicknessProfile, rho: float,
                   element_areas: Sequence[float]) -> float:
    """Mass rate (g/s) collected by surface elements under ``profile``.

    Sums rho * d_i * A_i over elements; exact for piecewise-constant
    profiles and linear in the profile.
    """
    if len(element_areas) != len(profile.thickness_rate):
        raise InvalidInputError(
            f"{len(element_areas)} element areas for "
            f"{len(profile.thickness_rate)} profile points")
    if any(not a > 0 for a in element_areas):
        raise InvalidInputError("element areas must be > 0")
    return math.fsum(rho * d * a
                     for d, a in zip(profile.thickness_rate, element_areas))


def disk_mass_rate(w: float, rho: float, h: float, radius: float,
                   rel_tol: float = 1e-3, source_id: str = "disk") -> float:
    """Mass rate (g/s) condensing on a disk of ``radius`` centered above the
    source, by quadrature of the radial profile over concentric annuli.

    Ring boundaries grow geometrically and each annulus contributes
    rho * d(mid) * area through deposited_mass; the ring count doubles until
    two successive estimates agree within rel_tol. Default tolerance 0.1%.
    """
    if w < 0:
        raise InvalidInputError(f"w must be >= 0, got {w}")
    if not rho > 0:
        raise InvalidInputError(f"rho must be > 0, got {rho}")
    if not h > 0:
        raise InvalidInputError(f"h must be > 0, got {h}")
    if not radius > 0:
        raise InvalidInputError(f"radius must be > 0, got {radius}")
    if not rel_tol > 0:
        raise InvalidInputError(f"rel_tol must be > 0, got {rel_tol}")
    if w == 0:
        return 0.0

    inner = min(1e-6 * h, radius / 2.0)
    previous = None
    rings = 64
    for _ in range(16):
        estimate = _annular_estimate(w, rho, h, inner, radius, rings, source_id)
        if previous is not None and abs(estimate - previous) <= rel_tol * abs(estimate):
            return estimate
        previous = estimate
        rings *= 2
    raise NumericalError(
        f"disk quadrature did not converge to rel_tol={rel_tol} "
        f"within {rings} rings")


def _annular_estimate(w, rho, h, inner, radius, rings, source_id):
    bounds = np.geomspace(inner, radius, rings + 1)
    mids = np.concatenate(([inner / 2.0], (bounds[:-1] + bounds[1:]) / 2.0))
    squared = bounds * bounds
    areas = np.empty(rings + 1)
    areas[0] = math.pi * (inner * inner)
    areas[1:] = math.pi * (squared[1:] - squared[:-1])
    rates = w * h / (math.pi * rho * (h * h + mids * mids) ** 1.5)
    profile = ThicknessProfile(offsets=tuple(mids.tolist()),
                               thickness_rate=tuple(rates.tolist()),
                               source_id=source_id, distance_h=h)
    return deposited_mass(profile, rho, areas.tolist())
