"""econofilm: vacuum thin-film deposition kinetics and geometry, the linear
source-to-support transfer system, and their econophysical reading as a
foreign-direct-investment site model.

Everything computes in fixed CGS/torr/K units (see econofilm.core). The
building blocks are pure functions over immutable dataclasses; scenario
files and the CLI live in econofilm.scenario and econofilm.cli.
"""

from .core import (AVOGADRO, AccommodationInputs, Constants, EmissionKind,
                   InvestmentMode, SourceSpec, Substance, SupportSpec,
                   validate)
from .errors import (DanglingReferenceError, DegenerateDenominatorError,
                     EconofilmError, InvalidInputError, NoInformationError,
                     NumericalError, OutOfRangeError, ScenarioError,
                     ScenarioParseError, ScenarioValidationError,
                     UnderDeterminedError)
from .fdi import (FdiLocation, FirmProfile, RankedLocation,
                  effective_accommodation, investment_mass, investment_value,
                  mass_from_thickness, rank_locations,
                  required_transfer_velocity)
from .geometry import (EmissionGeometry, ThicknessProfile, deposited_mass,
                       disk_mass_rate, mass_flux, profile_over_supports,
                       thickness_at_offset, thickness_center)
from .kinetics import (RateResult, accommodation_coefficient,
                       condensation_feasible, evaporation_rate,
                       impingement_rate_kinetic, impingement_rate_pressure,
                       mean_speed, residence_time)
from .scenario import (ResultTable, Scenario, density_conflicts,
                       load_scenario, loads_scenario, run_subcommand,
                       save_scenario, scenario_from_dict, scenario_to_dict,
                       scenario_to_json, vapor_pressure_at)
from .transfer import (Observation, SolveResult, TransferMatrix,
                       calibrate_matrix, forward_masses, solve_sources)

__version__ = "0.1.0"

__all__ = [
    "AVOGADRO", "AccommodationInputs", "Constants", "DanglingReferenceError",
    "DegenerateDenominatorError", "EconofilmError", "EmissionGeometry",
    "EmissionKind", "FdiLocation", "FirmProfile", "InvalidInputError",
    "InvestmentMode", "NoInformationError", "NumericalError", "Observation",
    "OutOfRangeError", "RankedLocation", "RateResult", "ResultTable",
    "Scenario", "ScenarioError", "ScenarioParseError",
    "ScenarioValidationError", "SolveResult", "SourceSpec", "Substance",
    "SupportSpec", "ThicknessProfile", "TransferMatrix",
    "UnderDeterminedError", "accommodation_coefficient", "calibrate_matrix",
    "condensation_feasible", "density_conflicts", "deposited_mass",
    "disk_mass_rate", "effective_accommodation", "evaporation_rate",
    "forward_masses", "impingement_rate_kinetic", "impingement_rate_pressure",
    "investment_mass", "investment_value", "load_scenario", "loads_scenario",
    "mass_flux", "mass_from_thickness", "mean_speed", "profile_over_supports",
    "rank_locations", "required_transfer_velocity", "residence_time",
    "run_subcommand", "save_scenario", "scenario_from_dict",
    "scenario_to_dict", "scenario_to_json", "solve_sources",
    "thickness_at_offset", "thickness_center", "validate",
    "vapor_pressure_at",
]
