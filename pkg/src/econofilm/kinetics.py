"""Adsorption and evaporation kinetics.

Rates follow the Frenkel/Langmuir adsorption picture: an incident particle
sticks with probability given by the accommodation coefficient, stays for a
residence time that grows exponentially with its binding energy, and the
source feeds the beam at the Langmuir evaporation rate set by its saturated
vapor pressure. Condensation takes hold only when the incident flux exceeds
the support's critical flux while the support stays below its critical
temperature.

All functions are pure and deterministic; inputs in the package-wide
CGS/torr/K units (see econofilm.core).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import AccommodationInputs, Constants, SupportSpec, validate
from .errors import DegenerateDenominatorError, InvalidInputError

FORMULA_TAGS = (
    "residence_time",
    "kinetic_impingement",
    "mean_speed",
    "pressure_impingement",
    "evaporation",
)

RATE_UNITS = ("s", "cm/s", "cm^-2 s^-1", "g cm^-2 s^-1")


@dataclass(frozen=True)
class RateResult:
    """A computed rate plus the units and operation that produced it."""

    value: float
    units: str
    formula_tag: str


@validate.register
def _validate_rate_result(obj: RateResult) -> list:
    out = []
    if not obj.value >= 0:
        out.append("rate result: value must be >= 0")
    if obj.units not in RATE_UNITS:
        out.append(f"rate result: unknown units '{obj.units}'")
    if obj.formula_tag not in FORMULA_TAGS:
        out.append(f"rate result: unknown formula tag '{obj.formula_tag}'")
    return out


def residence_time(tau: float, desorption_energy: float, temperature: float) -> float:
    """Mean time (s) an adsorbed particle stays on the support.

    tau * exp(+E_d / (R T)), with E_d in cal/mol and R = 1.987 cal/(mol K).
    The exponent is positive: stronger binding lengthens residence, the
    Frenkel behavior. Result is always >= tau.
    """
    if not tau > 0:
        raise InvalidInputError(f"tau must be > 0, got {tau}")
    if not temperature > 0:
        raise InvalidInputError(f"temperature must be > 0, got {temperature}")
    if desorption_energy < 0:
        raise InvalidInputError(
            f"desorption_energy must be >= 0, got {desorption_energy}")
    return tau * math.exp(desorption_energy / (Constants.gas_constant_R * temperature))


def accommodation_coefficient(inputs: AccommodationInputs) -> float:
    """Sticking probability (T_layer - T_incident) / (T_support - T_incident).

    The same affine form applies to the energy triple when temperatures are
    not supplied. Not clamped: values outside [0, 1] are returned raw and
    left to validation.
    """
    triple = inputs.temperature_triple
    if triple is None:
        triple = inputs.energy_triple
        if triple is None:
            raise InvalidInputError(
                "accommodation inputs need a complete temperature or energy triple")
    layer, support, incident = triple
    if support == incident:
        raise DegenerateDenominatorError(
            "support and incident values are equal; accommodation is undefined")
    return (layer - incident) / (support - incident)


def impingement_rate_kinetic(number_density: float, speed: float) -> float:
    """Particles hitting unit surface per unit time: n * v_mean / 4 (cm^-2 s^-1)."""
    if number_density < 0:
        raise InvalidInputError(f"number_density must be >= 0, got {number_density}")
    if speed < 0:
        raise InvalidInputError(f"speed must be >= 0, got {speed}")
    return number_density * speed / 4.0


def mean_speed(temperature: float, particle_mass: float) -> float:
    """Arithmetic mean particle speed 2 * sqrt(2 k_B T / (pi m)) in cm/s.

    particle_mass is per particle, in grams.
    """
    if not temperature > 0:
        raise InvalidInputError(f"temperature must be > 0, got {temperature}")
    if not particle_mass > 0:
        raise InvalidInputError(f"particle_mass must be > 0, got {particle_mass}")
    return 2.0 * math.sqrt(
        2.0 * Constants.boltzmann * temperature / (math.pi * particle_mass))


def impingement_rate_pressure(alpha: float, pressure: float, molar_mass: float,
                              temperature: float) -> float:
    """Adsorbed-particle flux 3.513e22 * alpha * p / sqrt(M T) in cm^-2 s^-1.

    alpha = 1 gives the bare impingement rate; alpha < 1 the adsorbed share.
    """
    if not molar_mass > 0:
        raise InvalidInputError(f"molar_mass must be > 0, got {molar_mass}")
    if not temperature > 0:
        raise InvalidInputError(f"temperature must be > 0, got {temperature}")
    if pressure < 0:
        raise InvalidInputError(f"pressure must be >= 0, got {pressure}")
    if alpha < 0:
        raise InvalidInputError(f"alpha must be >= 0, got {alpha}")
    return (Constants.impingement_coefficient * alpha * pressure
            / math.sqrt(molar_mass * temperature))


def evaporation_rate(evaporation_coefficient: float, vapor_pressure: float,
                     molar_mass: float, temperature: float) -> float:
    """Langmuir mass evaporation rate 0.0583 * a_v * p_v * sqrt(M / T).

    Returns g cm^-2 s^-1; a_v = 1 for clean surfaces.
    """
    if not molar_mass > 0:
        raise InvalidInputError(f"molar_mass must be > 0, got {molar_mass}")
    if not temperature > 0:
        raise InvalidInputError(f"temperature must be > 0, got {temperature}")
    if vapor_pressure < 0:
        raise InvalidInputError(f"vapor_pressure must be >= 0, got {vapor_pressure}")
    if not 0 < evaporation_coefficient <= 1:
        raise InvalidInputError(
            f"evaporation_coefficient must be in (0, 1], got {evaporation_coefficient}")
    return (Constants.langmuir_coefficient * evaporation_coefficient
            * vapor_pressure * math.sqrt(molar_mass / temperature))


def condensation_feasible(incident_flux: float, support: SupportSpec) -> bool:
    """Whether condensation can take hold on ``support``.

    Requires the incident flux to strictly exceed the critical flux and the
    support temperature to stay strictly below the critical temperature.
    """
    return (incident_flux > support.critical_flux
            and support.temperature < support.critical_temperature)
