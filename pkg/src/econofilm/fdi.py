"""Foreign-direct-investment reading of the deposition model.

A mother firm of capacity M allocates the fraction A of it to a location at
economic distance h. The allocated mass A*M, the deposit-thickness relation
m = k w / (pi rho h^2), and the resulting required capital transfer
velocity w = A0 M h^2 (A0 = pi rho A / k) form an exact algebraic cycle.
Joint ventures grow on a same-nature partner firm, so their accommodation
is pinned at 1; greenfield locations keep whatever their support declares.
Candidate locations are ranked by condensation feasibility first, value
second, id last.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import InvestmentMode, SupportSpec, validate
from .errors import InvalidInputError
from .kinetics import condensation_feasible

# both-supplied transfer constants must agree with pi*rho*A/k to this much
CONSISTENCY_RTOL = 1e-9


@dataclass(frozen=True)
class FdiLocation:
    """A candidate investment site wrapped around its SupportSpec.

    The support's distance_h is the economic distance and its
    attractiveness_density plays the condensed-density role. A joint
    venture presupposes an existing same-nature partner of size
    existing_base_mass; greenfield sites start bare.
    """

    support: SupportSpec
    expected_revenue: float     # currency
    expected_cost: float        # currency
    mode: InvestmentMode
    existing_base_mass: float = 0.0


@dataclass(frozen=True)
class FirmProfile:
    """The investing firm: capacity, allocation policy, transfer constant.

    transfer_constant (per squared economic distance) may be given directly
    or derived as pi * reference_density * allocation_fraction /
    proportionality_k when only reference_density is supplied. Supplying
    both makes validate() check their consistency.
    """

    capacity: float                       # currency
    allocation_fraction: float            # in [0, 1]
    proportionality_k: float              # dimensionless
    transfer_constant: Optional[float] = None
    reference_density: Optional[float] = None

    def __post_init__(self):
        if (self.transfer_constant is None and self.reference_density is not None
                and self.proportionality_k != 0):
            derived = (math.pi * self.reference_density * self.allocation_fraction
                       / self.proportionality_k)
            object.__setattr__(self, "transfer_constant", derived)


@dataclass(frozen=True)
class RankedLocation:
    """Per-location outputs in ranking order."""

    location_id: str
    value: float                # revenue minus cost
    required_velocity: float    # currency per unit time
    investment_mass: float      # currency
    feasible: bool


@validate.register
def _validate_fdi_location(obj: FdiLocation) -> list:
    out = []
    ctx = f"location '{obj.support.id}'"
    if not obj.expected_revenue >= 0:
        out.append(f"{ctx}: expected_revenue must be >= 0")
    if not obj.expected_cost >= 0:
        out.append(f"{ctx}: expected_cost must be >= 0")
    if obj.mode is InvestmentMode.GREENFIELD and obj.existing_base_mass != 0:
        out.append(f"{ctx}: greenfield sites must have existing_base_mass = 0")
    if not obj.existing_base_mass >= 0:
        out.append(f"{ctx}: existing_base_mass must be >= 0")
    out.extend(validate(obj.support))
    return out


@validate.register
def _validate_firm_profile(obj: FirmProfile) -> list:
    out = []
    if not 0 <= obj.allocation_fraction <= 1:
        out.append("firm: allocation_fraction must be in [0, 1]")
    if not obj.capacity >= 0:
        out.append("firm: capacity must be >= 0")
    if obj.transfer_constant is None:
        out.append("firm: transfer_constant is required "
                   "(directly or via reference_density)")
    elif not obj.transfer_constant > 0:
        out.append("firm: transfer_constant must be > 0")
    elif obj.reference_density is not None and obj.proportionality_k != 0:
        derived = (math.pi * obj.reference_density * obj.allocation_fraction
                   / obj.proportionality_k)
        if abs(obj.transfer_constant - derived) > CONSISTENCY_RTOL * abs(derived):
            out.append(
                f"firm: transfer_constant {obj.transfer_constant!r} inconsistent "
                f"with pi * reference_density * allocation_fraction / "
                f"proportionality_k = {derived!r}")
    return out


@validate.register
def _validate_ranked_location(obj: RankedLocation) -> list:
    out = []
    if not obj.required_velocity >= 0:
        out.append(f"ranked '{obj.location_id}': required_velocity must be >= 0")
    if not obj.investment_mass >= 0:
        out.append(f"ranked '{obj.location_id}': investment_mass must be >= 0")
    return out


def investment_value(revenue: float, cost: float) -> float:
    """Expected value of the investment: revenue minus cost, sign and all."""
    return revenue - cost


def investment_mass(firm: FirmProfile, capacity: float) -> float:
    """Capital allocated to the location: allocation_fraction * capacity."""
    if capacity < 0:
        raise InvalidInputError(f"capacity must be >= 0, got {capacity}")
    return firm.allocation_fraction * capacity


def mass_from_thickness(k: float, w: float, rho: float, h: float) -> float:
    """Deposited investment mass k * w / (pi rho h^2) implied by a transfer
    velocity w toward a site of attractiveness rho at distance h."""
    if not rho > 0:
        raise InvalidInputError(f"rho must be > 0, got {rho}")
    if not h > 0:
        raise InvalidInputError(f"h must be > 0, got {h}")
    return k * w / (math.pi * rho * (h * h))


def required_transfer_velocity(firm: FirmProfile, capacity: float, h: float) -> float:
    """Capital transfer velocity A0 * M * h^2 needed to realize the
    allocation at economic distance h; quadratic in distance."""
    if capacity < 0:
        raise InvalidInputError(f"capacity must be >= 0, got {capacity}")
    if not h > 0:
        raise InvalidInputError(f"h must be > 0, got {h}")
    if firm.transfer_constant is None:
        raise InvalidInputError("firm has no transfer_constant")
    return firm.transfer_constant * capacity * (h * h)


def effective_accommodation(location: FdiLocation) -> float:
    """Accommodation used for feasibility: joint ventures grow epitaxially
    on a same-nature partner, so theirs is 1; greenfield passes through."""
    if location.mode is InvestmentMode.JOINT_VENTURE:
        return 1.0
    return location.support.accommodation


def rank_locations(firm: FirmProfile, locations: Sequence[FdiLocation],
                   incident_fluxes: Sequence[float]) -> list:
    """Rank candidate sites by (feasible, value, id).

    Feasibility tests the accommodation-scaled incident flux against the
    support's critical thresholds. Value may be negative; filtering
    loss-makers is the caller's choice. Deterministic for any input order.
    """
    if len(incident_fluxes) != len(locations):
        raise InvalidInputError(
            f"{len(incident_fluxes)} fluxes for {len(locations)} locations")
    ranked = []
    for location, flux in zip(locations, incident_fluxes):
        alpha = effective_accommodation(location)
        feasible = condensation_feasible(flux * alpha, location.support)
        ranked.append(RankedLocation(
            location_id=location.support.id,
            value=investment_value(location.expected_revenue,
                                   location.expected_cost),
            required_velocity=required_transfer_velocity(
                firm, firm.capacity, location.support.distance_h),
            investment_mass=investment_mass(firm, firm.capacity),
            feasible=feasible,
        ))
    ranked.sort(key=lambda r: (not r.feasible, -r.value, r.location_id))
    return ranked
