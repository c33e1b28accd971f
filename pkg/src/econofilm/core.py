"""Shared domain types, physical constants, and the invariant checker.

Unit conventions, fixed across the package (CGS + torr + kelvin):

    length            cm          pressure        torr
    mass              g           temperature     K
    time              s           molar mass      g/mol
    density           g/cm^3      desorption energy  cal/mol (R = 1.987 cal/(mol K))

The printed rate coefficients (3.513e22, 0.0583) are dimensionally
consistent only in these units; any conversion belongs at the I/O boundary.
The investment reading of the model reuses the same numeric slots (capital
for mass, economic distance for length, attractiveness for density): units
are labels, not enforced dimensions.

All types are plain frozen dataclasses. Constructors never enforce
invariants; `validate` reports violations as data so a loader can list
every problem at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import singledispatch
from typing import Optional


class Constants:
    """Numeric constants the rate formulas are calibrated for."""

    # cal/(mol K); pairs with desorption energies given in cal/mol
    gas_constant_R = 1.987
    # erg/K
    boltzmann = 1.3807e-16
    # impingement per cm^2 s from (torr, g/mol, K) inputs
    impingement_coefficient = 3.513e22
    # evaporated g per cm^2 s from (torr, g/mol, K) inputs
    langmuir_coefficient = 0.0583


# mol^-1; only used to turn molar mass into per-particle mass at the I/O edge
AVOGADRO = 6.02214076e23


class EmissionKind(Enum):
    POINT = "point"
    PLANE = "plane"


class InvestmentMode(Enum):
    GREENFIELD = "greenfield"
    JOINT_VENTURE = "joint-venture"


@dataclass(frozen=True)
class Substance:
    """An evaporant (or, in the investment reading, the transferred capital).

    vapor_pressure is a table of (temperature K, pressure torr) points with
    strictly increasing temperatures; lookups interpolate linearly in log
    pressure and never extrapolate.
    """

    name: str
    molar_mass: float          # g/mol
    density: float             # g/cm^3
    desorption_energy: float   # cal/mol
    vibration_period: float = 1e-14  # s
    vapor_pressure: tuple = ()

    def __post_init__(self):
        table = tuple((float(t), float(p)) for t, p in self.vapor_pressure)
        object.__setattr__(self, "vapor_pressure", table)


@dataclass(frozen=True)
class SourceSpec:
    """An evaporation source, or a mother firm in the investment reading."""

    id: str
    mass_capacity: float       # g, or currency units
    emission: EmissionKind
    temperature: float         # K
    evaporation_coefficient: float  # dimensionless, (0, 1]
    substance: Substance


@dataclass(frozen=True)
class SupportSpec:
    """A deposition support, or a candidate investment location.

    distance_h is the source-support separation (cm, or opaque economic
    distance); offset_x the lateral offset from the point directly above
    the source. critical_flux / critical_temperature gate condensation.
    """

    id: str
    distance_h: float
    offset_x: float
    temperature: float
    accommodation: float
    attractiveness_density: float
    critical_flux: float
    critical_temperature: float


@dataclass(frozen=True)
class AccommodationInputs:
    """Inputs for the accommodation coefficient, a temperature triple or an
    energy triple. The first complete triple is used (temperatures win when
    both are complete)."""

    layer_temperature: Optional[float] = None     # K
    support_temperature: Optional[float] = None   # K
    incident_temperature: Optional[float] = None  # K
    layer_energy: Optional[float] = None          # erg
    support_energy: Optional[float] = None        # erg
    incident_energy: Optional[float] = None       # erg

    @property
    def temperature_triple(self):
        triple = (self.layer_temperature, self.support_temperature,
                  self.incident_temperature)
        return triple if all(v is not None for v in triple) else None

    @property
    def energy_triple(self):
        triple = (self.layer_energy, self.support_energy, self.incident_energy)
        return triple if all(v is not None for v in triple) else None


@singledispatch
def validate(obj) -> list:
    """Return every invariant violation in ``obj`` as a list of messages.

    Total: never raises for finite inputs; an empty list means the object
    is valid. Unregistered types yield a single violation rather than a
    silent pass.
    """
    return [f"{type(obj).__name__}: no validator registered"]


@validate.register
def _validate_substance(obj: Substance) -> list:
    out = []
    ctx = f"substance '{obj.name}'"
    if not obj.molar_mass > 0:
        out.append(f"{ctx}: molar_mass must be > 0")
    if not obj.density > 0:
        out.append(f"{ctx}: density must be > 0")
    if not obj.vibration_period > 0:
        out.append(f"{ctx}: vibration_period must be > 0")
    temps = [t for t, _ in obj.vapor_pressure]
    if any(not (a < b) for a, b in zip(temps, temps[1:])):
        out.append(f"{ctx}: vapor_pressure temperatures must be strictly increasing")
    if any(not p > 0 for _, p in obj.vapor_pressure):
        out.append(f"{ctx}: vapor_pressure pressures must be > 0")
    return out


@validate.register
def _validate_source(obj: SourceSpec) -> list:
    out = []
    ctx = f"source '{obj.id}'"
    if not obj.mass_capacity >= 0:
        out.append(f"{ctx}: mass_capacity must be >= 0")
    if not 0 < obj.evaporation_coefficient <= 1:
        out.append(f"{ctx}: evaporation_coefficient must be in (0, 1]")
    if not obj.temperature > 0:
        out.append(f"{ctx}: temperature must be > 0")
    out.extend(validate(obj.substance))
    return out


@validate.register
def _validate_support(obj: SupportSpec) -> list:
    out = []
    ctx = f"support '{obj.id}'"
    if not obj.distance_h > 0:
        out.append(f"{ctx}: distance_h must be > 0")
    if not obj.attractiveness_density > 0:
        out.append(f"{ctx}: attractiveness_density must be > 0")
    if not obj.critical_flux >= 0:
        out.append(f"{ctx}: critical_flux must be >= 0")
    return out


@validate.register
def _validate_accommodation_inputs(obj: AccommodationInputs) -> list:
    out = []
    temps = obj.temperature_triple
    energies = obj.energy_triple
    if temps is None and energies is None:
        out.append("accommodation inputs: need a complete temperature or energy triple")
    if temps is not None and temps[1] == temps[2]:
        out.append("accommodation inputs: support and incident temperatures must differ")
    return out
