"""Scenario files, result tables, and the subcommand engine behind the CLI.

A scenario is a strict, versioned JSON document (``"version": 1`` is
mandatory, unknown keys are rejected) holding substances, sources, supports
and the optional transfer/investment sections. All quantities are in the
package-wide CGS/torr/K units; the schema deliberately has no unit
annotations, one canonical representation only.

Top-level shape::

    {
      "version": 1,
      "meta": {"name": "...", "description": "..."},          # free-form
      "substances": [{"name", "molar_mass", "density", "desorption_energy",
                      "vibration_period"?, "vapor_pressure"?}],
      "sources":    [{"id", "mass_capacity", "emission", "temperature",
                      "evaporation_coefficient", "substance", "total_rate"?}],
      "supports":   [{"id", "distance_h", "offset_x", "temperature",
                      "accommodation", "attractiveness_density",
                      "critical_flux", "critical_temperature"}],
      "transfer":      {"source_ids", "support_ids", "coefficients"}?,
      "solve_targets": {"<support_id>": mass, ...}?,
      "observations":  [{"source_masses", "support_masses"}]?,
      "firm":          {"capacity", "allocation_fraction", "proportionality_k",
                        "transfer_constant"?, "reference_density"?}?,
      "locations":     [{"support", "expected_revenue", "expected_cost",
                         "mode", "incident_flux", "existing_base_mass"?}]?
    }

Loading reports every problem it can find in one pass rather than stopping
at the first.
"""

from __future__ import annotations

import bisect
import csv
import io
import json
import math
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import fdi as fdi_ops
from . import geometry as geometry_ops
from . import kinetics as kinetics_ops
from . import transfer as transfer_ops
from .core import (AVOGADRO, EmissionKind, InvestmentMode, SourceSpec,
                   Substance, SupportSpec, validate)
from .errors import (DanglingReferenceError, InvalidInputError, OutOfRangeError,
                     ScenarioParseError, ScenarioValidationError)
from .fdi import FdiLocation, FirmProfile
from .geometry import EmissionGeometry
from .transfer import Observation, TransferMatrix

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Scenario:
    """A fully resolved, validated modeling scenario."""

    substances: tuple
    sources: tuple
    supports: tuple
    emissions: tuple = ()     # EmissionGeometry or None, aligned with sources
    transfer: Optional[TransferMatrix] = None
    solve_targets: Optional[tuple] = None   # aligned with transfer.support_ids
    observations: Optional[tuple] = None
    firm: Optional[FirmProfile] = None
    locations: Optional[tuple] = None
    location_fluxes: Optional[tuple] = None  # aligned with locations
    meta: Optional[dict] = None

    def __post_init__(self):
        object.__setattr__(self, "substances", tuple(self.substances))
        object.__setattr__(self, "sources", tuple(self.sources))
        object.__setattr__(self, "supports", tuple(self.supports))
        emissions = tuple(self.emissions)
        if not emissions and self.sources:
            emissions = (None,) * len(self.sources)
        object.__setattr__(self, "emissions", emissions)
        for name in ("solve_targets", "observations", "locations",
                     "location_fluxes"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, tuple(value))

    @property
    def name(self) -> str:
        if self.meta and isinstance(self.meta.get("name"), str):
            return self.meta["name"]
        return "(unnamed)"

    def substance_named(self, name: str) -> Substance:
        for substance in self.substances:
            if substance.name == name:
                return substance
        raise KeyError(name)

    def source_by_id(self, source_id: str) -> SourceSpec:
        for source in self.sources:
            if source.id == source_id:
                return source
        raise KeyError(source_id)

    def support_by_id(self, support_id: str) -> SupportSpec:
        for support in self.supports:
            if support.id == support_id:
                return support
        raise KeyError(support_id)


@dataclass(frozen=True)
class ResultTable:
    """Rectangular result grid plus a human-facing provenance footer."""

    columns: tuple
    rows: tuple
    footer: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        object.__setattr__(self, "footer", tuple(self.footer))

    def to_csv(self) -> str:
        """RFC-4180-style CSV: header row, LF line endings, repr floats."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_csv_cell(value) for value in row])
        return buffer.getvalue()

    def to_pretty(self) -> str:
        """Aligned plain-text table, 6 significant digits, footer appended."""
        grid = [list(self.columns)]
        grid += [[_pretty_cell(value) for value in row] for row in self.rows]
        widths = [max(len(line[j]) for line in grid) for j in range(len(self.columns))]
        rendered = []
        for k, line in enumerate(grid):
            cells = []
            for j, text in enumerate(line):
                numeric = k > 0 and isinstance(self.rows[k - 1][j], (int, float)) \
                    and not isinstance(self.rows[k - 1][j], bool)
                cells.append(text.rjust(widths[j]) if numeric else text.ljust(widths[j]))
            rendered.append("  ".join(cells).rstrip())
        if self.footer:
            rendered.append("")
            rendered.extend(self.footer)
        return "\n".join(rendered) + "\n"


@validate.register
def _validate_result_table(obj: ResultTable) -> list:
    out = []
    if any(len(row) != len(obj.columns) for row in obj.rows):
        out.append("result table: rows must match the column count")
    return out


def _csv_cell(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return value if isinstance(value, str) else str(value)


def _pretty_cell(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".6g")
    return value if isinstance(value, str) else str(value)


@validate.register
def _validate_scenario(obj: Scenario) -> list:
    out = []
    for substance in obj.substances:
        out.extend(validate(substance))
    names = [s.name for s in obj.substances]
    if len(set(names)) != len(names):
        out.append("scenario: duplicate substance names")
    source_ids = [s.id for s in obj.sources]
    if len(set(source_ids)) != len(source_ids):
        out.append("scenario: duplicate source ids")
    support_ids = [s.id for s in obj.supports]
    if len(set(support_ids)) != len(support_ids):
        out.append("scenario: duplicate support ids")
    for source in obj.sources:
        out.extend(v for v in validate(source) if v not in out)
        if source.substance.name not in names:
            out.append(f"source '{source.id}': substance "
                       f"'{source.substance.name}' is not in the scenario")
    for support in obj.supports:
        out.extend(validate(support))
    if len(obj.emissions) != len(obj.sources):
        out.append("scenario: emissions must align with sources")
    else:
        for source, emission in zip(obj.sources, obj.emissions):
            if emission is None:
                continue
            out.extend(validate(emission))
            if emission.kind is not source.emission:
                out.append(f"source '{source.id}': emission geometry kind "
                           f"disagrees with the source's emission type")
    if obj.transfer is not None:
        out.extend(validate(obj.transfer))
        for sid in obj.transfer.source_ids:
            if sid not in source_ids:
                out.append(f"transfer: unknown source id '{sid}'")
        for sid in obj.transfer.support_ids:
            if sid not in support_ids:
                out.append(f"transfer: unknown support id '{sid}'")
    if obj.solve_targets is not None:
        if obj.transfer is None:
            out.append("scenario: solve_targets requires a transfer section")
        elif len(obj.solve_targets) != obj.transfer.n_supports:
            out.append("scenario: solve_targets must align with transfer supports")
        if any(v < 0 for v in obj.solve_targets):
            out.append("scenario: solve_targets must be >= 0")
    if obj.observations is not None:
        p = obj.transfer.n_sources if obj.transfer is not None else (
            len(obj.observations[0].source_masses) if obj.observations else 0)
        n = obj.transfer.n_supports if obj.transfer is not None else (
            len(obj.observations[0].support_masses) if obj.observations else 0)
        for k, observation in enumerate(obj.observations):
            out.extend(validate(observation))
            if (len(observation.source_masses) != p
                    or len(observation.support_masses) != n):
                out.append(f"observation {k}: dimensions disagree with "
                           f"the rest of the scenario")
    if obj.firm is not None:
        out.extend(validate(obj.firm))
    if obj.locations is not None:
        for location in obj.locations:
            out.extend(validate(location))
            if location.support.id not in support_ids:
                out.append(f"location support '{location.support.id}' "
                           f"is not in the scenario")
        if obj.location_fluxes is None \
                or len(obj.location_fluxes) != len(obj.locations):
            out.append("scenario: location_fluxes must align with locations")
        elif any(not flux >= 0 for flux in obj.location_fluxes):
            out.append("scenario: location fluxes must be >= 0")
    return out


def density_conflicts(scenario: Scenario) -> list:
    """Pairs where the physical density and the attractiveness reading of
    the same scenario disagree numerically; flagged, not rejected."""
    out = []
    if not scenario.sources or not scenario.locations:
        return out
    for source in scenario.sources:
        for location in scenario.locations:
            if source.substance.density != location.support.attractiveness_density:
                out.append(
                    f"substance '{source.substance.name}' density "
                    f"{source.substance.density!r} vs location "
                    f"'{location.support.id}' attractiveness "
                    f"{location.support.attractiveness_density!r}")
    return out


# ---------------------------------------------------------------------------
# loading

_TOP_REQUIRED = ("version", "substances", "sources", "supports")
_TOP_OPTIONAL = ("meta", "transfer", "solve_targets", "observations",
                 "firm", "locations")


class _Reader:
    """Collects schema violations instead of failing fast."""

    def __init__(self):
        self.errors = []
        self.missing_refs = []

    def check_keys(self, obj: dict, required, optional, ctx):
        ok = True
        for key in required:
            if key not in obj:
                self.errors.append(f"{ctx}: missing required key '{key}'")
                ok = False
        for key in obj:
            if key not in required and key not in optional:
                self.errors.append(f"{ctx}: unknown key '{key}'")
                ok = False
        return ok

    def number(self, obj: dict, key: str, ctx: str, default=None):
        if key not in obj:
            return default
        value = obj[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.errors.append(f"{ctx}: '{key}' must be a number")
            return default
        if not math.isfinite(value):
            self.errors.append(f"{ctx}: '{key}' must be finite")
            return default
        return float(value)

    def string(self, obj: dict, key: str, ctx: str, default=None):
        if key not in obj:
            return default
        value = obj[key]
        if not isinstance(value, str):
            self.errors.append(f"{ctx}: '{key}' must be a string")
            return default
        return value

    def array(self, obj: dict, key: str, ctx: str, default=None):
        if key not in obj:
            return default
        value = obj[key]
        if not isinstance(value, list):
            self.errors.append(f"{ctx}: '{key}' must be an array")
            return default
        return value

    def number_list(self, values, ctx: str):
        out = []
        for k, value in enumerate(values):
            if isinstance(value, bool) or not isinstance(value, (int, float)) \
                    or not math.isfinite(value):
                self.errors.append(f"{ctx}[{k}]: must be a finite number")
                return None
            out.append(float(value))
        return out


def scenario_from_dict(raw: dict) -> Scenario:
    """Build and validate a Scenario from already-parsed JSON data."""
    if not isinstance(raw, dict):
        raise ScenarioValidationError(["scenario: top level must be an object"])
    reader = _Reader()
    reader.check_keys(raw, _TOP_REQUIRED, _TOP_OPTIONAL, "scenario")
    if "version" in raw and raw["version"] != SCHEMA_VERSION:
        reader.errors.append(
            f"scenario: version must be the integer {SCHEMA_VERSION}")
    meta = raw.get("meta")
    if meta is not None and not isinstance(meta, dict):
        reader.errors.append("scenario: 'meta' must be an object")
        meta = None

    substances = _read_substances(reader, raw.get("substances"))
    by_name = {s.name: s for s in substances}
    sources, emissions = _read_sources(reader, raw.get("sources"), by_name)
    supports = _read_supports(reader, raw.get("supports"))
    support_ids = {s.id for s in supports}
    source_ids = {s.id for s in sources}
    transfer = _read_transfer(reader, raw.get("transfer"), source_ids, support_ids)
    solve_targets = _read_solve_targets(reader, raw.get("solve_targets"), transfer)
    observations = _read_observations(reader, raw.get("observations"))
    firm = _read_firm(reader, raw.get("firm"))
    locations, fluxes = _read_locations(reader, raw.get("locations"),
                                        {s.id: s for s in supports})

    if reader.errors:
        raise ScenarioValidationError(reader.errors)
    if reader.missing_refs:
        raise DanglingReferenceError(sorted(set(reader.missing_refs)))

    scenario = Scenario(substances=substances, sources=sources,
                        supports=supports, emissions=emissions,
                        transfer=transfer, solve_targets=solve_targets,
                        observations=observations, firm=firm,
                        locations=locations, location_fluxes=fluxes,
                        meta=meta)
    violations = validate(scenario)
    if violations:
        raise ScenarioValidationError(violations)
    conflicts = density_conflicts(scenario)
    if conflicts:
        warnings.warn("density/attractiveness disagreement: "
                      + "; ".join(conflicts), stacklevel=2)
    return scenario


def loads_scenario(text: str) -> Scenario:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    return scenario_from_dict(raw)


def load_scenario(path) -> Scenario:
    """Parse, cross-reference, and validate the scenario file at ``path``."""
    return loads_scenario(Path(path).read_text(encoding="utf-8"))


def _read_substances(reader, items):
    out = []
    if items is None:
        return tuple(out)
    if not isinstance(items, list):
        reader.errors.append("scenario: 'substances' must be an array")
        return tuple(out)
    for k, item in enumerate(items):
        ctx = f"substances[{k}]"
        if not isinstance(item, dict):
            reader.errors.append(f"{ctx}: must be an object")
            continue
        if not reader.check_keys(
                item,
                ("name", "molar_mass", "density", "desorption_energy"),
                ("vibration_period", "vapor_pressure"), ctx):
            continue
        table = []
        raw_table = reader.array(item, "vapor_pressure", ctx, default=[])
        for j, pair in enumerate(raw_table or []):
            values = None
            if isinstance(pair, list) and len(pair) == 2:
                values = reader.number_list(pair, f"{ctx}.vapor_pressure[{j}]")
            else:
                reader.errors.append(
                    f"{ctx}.vapor_pressure[{j}]: must be a [temperature, pressure] pair")
            if values is not None:
                table.append((values[0], values[1]))
        out.append(Substance(
            name=reader.string(item, "name", ctx, default=f"substance_{k}"),
            molar_mass=reader.number(item, "molar_mass", ctx, default=math.nan),
            density=reader.number(item, "density", ctx, default=math.nan),
            desorption_energy=reader.number(item, "desorption_energy", ctx,
                                            default=math.nan),
            vibration_period=reader.number(item, "vibration_period", ctx,
                                           default=1e-14),
            vapor_pressure=tuple(table),
        ))
    return tuple(out)


def _read_sources(reader, items, substances_by_name):
    sources, emissions = [], []
    if items is None:
        return tuple(sources), tuple(emissions)
    if not isinstance(items, list):
        reader.errors.append("scenario: 'sources' must be an array")
        return tuple(sources), tuple(emissions)
    for k, item in enumerate(items):
        ctx = f"sources[{k}]"
        if not isinstance(item, dict):
            reader.errors.append(f"{ctx}: must be an object")
            continue
        if not reader.check_keys(
                item,
                ("id", "mass_capacity", "emission", "temperature",
                 "evaporation_coefficient", "substance"),
                ("total_rate",), ctx):
            continue
        emission_name = reader.string(item, "emission", ctx, default="point")
        try:
            kind = EmissionKind(emission_name)
        except ValueError:
            reader.errors.append(
                f"{ctx}: emission must be 'point' or 'plane', got '{emission_name}'")
            continue
        substance_name = reader.string(item, "substance", ctx)
        if substance_name is None:
            continue
        substance = substances_by_name.get(substance_name)
        if substance is None:
            reader.missing_refs.append(f"substance '{substance_name}'")
            continue
        source = SourceSpec(
            id=reader.string(item, "id", ctx, default=f"source_{k}"),
            mass_capacity=reader.number(item, "mass_capacity", ctx,
                                        default=math.nan),
            emission=kind,
            temperature=reader.number(item, "temperature", ctx, default=math.nan),
            evaporation_coefficient=reader.number(
                item, "evaporation_coefficient", ctx, default=math.nan),
            substance=substance,
        )
        sources.append(source)
        rate = reader.number(item, "total_rate", ctx)
        emissions.append(None if rate is None
                         else EmissionGeometry(kind=kind, total_rate_w=rate))
    return tuple(sources), tuple(emissions)


def _read_supports(reader, items):
    out = []
    if items is None:
        return tuple(out)
    if not isinstance(items, list):
        reader.errors.append("scenario: 'supports' must be an array")
        return tuple(out)
    for k, item in enumerate(items):
        ctx = f"supports[{k}]"
        if not isinstance(item, dict):
            reader.errors.append(f"{ctx}: must be an object")
            continue
        if not reader.check_keys(
                item,
                ("id", "distance_h", "offset_x", "temperature", "accommodation",
                 "attractiveness_density", "critical_flux",
                 "critical_temperature"), (), ctx):
            continue
        out.append(SupportSpec(
            id=reader.string(item, "id", ctx, default=f"support_{k}"),
            distance_h=reader.number(item, "distance_h", ctx, default=math.nan),
            offset_x=reader.number(item, "offset_x", ctx, default=math.nan),
            temperature=reader.number(item, "temperature", ctx, default=math.nan),
            accommodation=reader.number(item, "accommodation", ctx,
                                        default=math.nan),
            attractiveness_density=reader.number(
                item, "attractiveness_density", ctx, default=math.nan),
            critical_flux=reader.number(item, "critical_flux", ctx,
                                        default=math.nan),
            critical_temperature=reader.number(item, "critical_temperature", ctx,
                                               default=math.nan),
        ))
    return tuple(out)


def _read_transfer(reader, item, source_ids, support_ids):
    if item is None:
        return None
    ctx = "transfer"
    if not isinstance(item, dict):
        reader.errors.append(f"{ctx}: must be an object")
        return None
    if not reader.check_keys(item, ("source_ids", "support_ids", "coefficients"),
                             (), ctx):
        return None
    raw_sources = reader.array(item, "source_ids", ctx, default=[])
    raw_supports = reader.array(item, "support_ids", ctx, default=[])
    for sid in raw_sources:
        if not isinstance(sid, str):
            reader.errors.append(f"{ctx}: source_ids must be strings")
            return None
        if sid not in source_ids:
            reader.missing_refs.append(f"source '{sid}'")
    for sid in raw_supports:
        if not isinstance(sid, str):
            reader.errors.append(f"{ctx}: support_ids must be strings")
            return None
        if sid not in support_ids:
            reader.missing_refs.append(f"support '{sid}'")
    grid = reader.array(item, "coefficients", ctx, default=[])
    rows = []
    for i, row in enumerate(grid):
        if not isinstance(row, list):
            reader.errors.append(f"{ctx}.coefficients[{i}]: must be an array")
            return None
        values = reader.number_list(row, f"{ctx}.coefficients[{i}]")
        if values is None:
            return None
        rows.append(tuple(values))
    return TransferMatrix(coefficients=tuple(rows),
                          source_ids=tuple(raw_sources),
                          support_ids=tuple(raw_supports))


def _read_solve_targets(reader, item, transfer):
    if item is None:
        return None
    ctx = "solve_targets"
    if not isinstance(item, dict):
        reader.errors.append(f"{ctx}: must be an object of support_id: mass")
        return None
    if transfer is None:
        reader.errors.append(f"{ctx}: requires a transfer section")
        return None
    targets = []
    for sid in transfer.support_ids:
        if sid not in item:
            reader.errors.append(f"{ctx}: missing entry for support '{sid}'")
            return None
        value = reader.number(item, sid, ctx)
        targets.append(value if value is not None else math.nan)
    for key in item:
        if key not in transfer.support_ids:
            reader.errors.append(f"{ctx}: unknown support '{key}'")
    return tuple(targets)


def _read_observations(reader, items):
    if items is None:
        return None
    if not isinstance(items, list):
        reader.errors.append("scenario: 'observations' must be an array")
        return None
    out = []
    for k, item in enumerate(items):
        ctx = f"observations[{k}]"
        if not isinstance(item, dict):
            reader.errors.append(f"{ctx}: must be an object")
            continue
        if not reader.check_keys(item, ("source_masses", "support_masses"), (), ctx):
            continue
        sources = reader.number_list(
            reader.array(item, "source_masses", ctx, default=[]) or [],
            f"{ctx}.source_masses")
        supports = reader.number_list(
            reader.array(item, "support_masses", ctx, default=[]) or [],
            f"{ctx}.support_masses")
        if sources is None or supports is None:
            continue
        out.append(Observation(source_masses=tuple(sources),
                               support_masses=tuple(supports)))
    return tuple(out)


def _read_firm(reader, item):
    if item is None:
        return None
    ctx = "firm"
    if not isinstance(item, dict):
        reader.errors.append(f"{ctx}: must be an object")
        return None
    if not reader.check_keys(
            item, ("capacity", "allocation_fraction", "proportionality_k"),
            ("transfer_constant", "reference_density"), ctx):
        return None
    return FirmProfile(
        capacity=reader.number(item, "capacity", ctx, default=math.nan),
        allocation_fraction=reader.number(item, "allocation_fraction", ctx,
                                          default=math.nan),
        proportionality_k=reader.number(item, "proportionality_k", ctx,
                                        default=math.nan),
        transfer_constant=reader.number(item, "transfer_constant", ctx),
        reference_density=reader.number(item, "reference_density", ctx),
    )


def _read_locations(reader, items, supports_by_id):
    if items is None:
        return None, None
    if not isinstance(items, list):
        reader.errors.append("scenario: 'locations' must be an array")
        return None, None
    locations, fluxes = [], []
    for k, item in enumerate(items):
        ctx = f"locations[{k}]"
        if not isinstance(item, dict):
            reader.errors.append(f"{ctx}: must be an object")
            continue
        if not reader.check_keys(
                item,
                ("support", "expected_revenue", "expected_cost", "mode",
                 "incident_flux"),
                ("existing_base_mass",), ctx):
            continue
        mode_name = reader.string(item, "mode", ctx, default="greenfield")
        try:
            mode = InvestmentMode(mode_name)
        except ValueError:
            reader.errors.append(
                f"{ctx}: mode must be 'greenfield' or 'joint-venture', "
                f"got '{mode_name}'")
            continue
        support_id = reader.string(item, "support", ctx)
        if support_id is None:
            continue
        support = supports_by_id.get(support_id)
        if support is None:
            reader.missing_refs.append(f"support '{support_id}'")
            continue
        locations.append(FdiLocation(
            support=support,
            expected_revenue=reader.number(item, "expected_revenue", ctx,
                                           default=math.nan),
            expected_cost=reader.number(item, "expected_cost", ctx,
                                        default=math.nan),
            mode=mode,
            existing_base_mass=reader.number(item, "existing_base_mass", ctx,
                                             default=0.0),
        ))
        fluxes.append(reader.number(item, "incident_flux", ctx,
                                    default=math.nan))
    return tuple(locations), tuple(fluxes)


# ---------------------------------------------------------------------------
# canonical serialization

def scenario_to_dict(scenario: Scenario) -> dict:
    out = {"version": SCHEMA_VERSION}
    if scenario.meta is not None:
        out["meta"] = scenario.meta
    out["substances"] = [
        {"name": s.name, "molar_mass": s.molar_mass, "density": s.density,
         "desorption_energy": s.desorption_energy,
         "vibration_period": s.vibration_period,
         "vapor_pressure": [[t, p] for t, p in s.vapor_pressure]}
        for s in scenario.substances]
    out["sources"] = []
    for source, emission in zip(scenario.sources, scenario.emissions):
        entry = {"id": source.id, "mass_capacity": source.mass_capacity,
                 "emission": source.emission.value,
                 "temperature": source.temperature,
                 "evaporation_coefficient": source.evaporation_coefficient,
                 "substance": source.substance.name}
        if emission is not None:
            entry["total_rate"] = emission.total_rate_w
        out["sources"].append(entry)
    out["supports"] = [
        {"id": s.id, "distance_h": s.distance_h, "offset_x": s.offset_x,
         "temperature": s.temperature, "accommodation": s.accommodation,
         "attractiveness_density": s.attractiveness_density,
         "critical_flux": s.critical_flux,
         "critical_temperature": s.critical_temperature}
        for s in scenario.supports]
    if scenario.transfer is not None:
        out["transfer"] = {
            "source_ids": list(scenario.transfer.source_ids),
            "support_ids": list(scenario.transfer.support_ids),
            "coefficients": [list(row) for row in scenario.transfer.coefficients]}
    if scenario.solve_targets is not None and scenario.transfer is not None:
        out["solve_targets"] = dict(zip(scenario.transfer.support_ids,
                                        scenario.solve_targets))
    if scenario.observations is not None:
        out["observations"] = [
            {"source_masses": list(o.source_masses),
             "support_masses": list(o.support_masses)}
            for o in scenario.observations]
    if scenario.firm is not None:
        firm = {"capacity": scenario.firm.capacity,
                "allocation_fraction": scenario.firm.allocation_fraction,
                "proportionality_k": scenario.firm.proportionality_k}
        if scenario.firm.transfer_constant is not None:
            firm["transfer_constant"] = scenario.firm.transfer_constant
        if scenario.firm.reference_density is not None:
            firm["reference_density"] = scenario.firm.reference_density
        out["firm"] = firm
    if scenario.locations is not None:
        out["locations"] = [
            {"support": loc.support.id,
             "expected_revenue": loc.expected_revenue,
             "expected_cost": loc.expected_cost,
             "mode": loc.mode.value,
             "incident_flux": flux,
             "existing_base_mass": loc.existing_base_mass}
            for loc, flux in zip(scenario.locations,
                                 scenario.location_fluxes or ())]
    return out


def scenario_to_json(scenario: Scenario) -> str:
    return json.dumps(scenario_to_dict(scenario), indent=2) + "\n"


def save_scenario(scenario: Scenario, path) -> None:
    Path(path).write_text(scenario_to_json(scenario), encoding="utf-8")


# ---------------------------------------------------------------------------
# vapor pressure interpolation

def vapor_pressure_at(substance: Substance, temperature: float) -> float:
    """Saturated vapor pressure (torr) at ``temperature``.

    Linear interpolation in log pressure between bracketing table points;
    exact at the points; refuses to extrapolate beyond the tabulated span.
    """
    table = substance.vapor_pressure
    if not table:
        raise OutOfRangeError(
            f"substance '{substance.name}' has no vapor pressure table")
    temps = [t for t, _ in table]
    if temperature < temps[0] or temperature > temps[-1]:
        raise OutOfRangeError(
            f"{temperature} K is outside the tabulated span "
            f"[{temps[0]}, {temps[-1]}] for substance '{substance.name}'")
    index = bisect.bisect_left(temps, temperature)
    if temps[index] == temperature:
        return table[index][1]
    t0, p0 = table[index - 1]
    t1, p1 = table[index]
    fraction = (temperature - t0) / (t1 - t0)
    return math.exp(math.log(p0) + fraction * (math.log(p1) - math.log(p0)))


# ---------------------------------------------------------------------------
# subcommands

SUBCOMMANDS = ("rates", "profile", "mass", "forward", "solve", "calibrate",
               "fdi-rank", "fdi-velocity")


def run_subcommand(name: str, scenario: Scenario, offsets=None,
                   filter_negative: bool = False) -> ResultTable:
    """Execute one named operation over a scenario and tabulate the result.

    Deterministic: identical scenarios yield byte-identical CSV.
    """
    if name == "rates":
        return _run_rates(scenario)
    if name == "profile":
        return _run_profile(scenario, offsets)
    if name == "mass":
        return _run_mass(scenario)
    if name == "forward":
        return _run_forward(scenario)
    if name == "solve":
        return _run_solve(scenario)
    if name == "calibrate":
        return _run_calibrate(scenario)
    if name == "fdi-rank":
        return _run_fdi_rank(scenario, filter_negative)
    if name == "fdi-velocity":
        return _run_fdi_velocity(scenario)
    raise InvalidInputError(f"unknown subcommand '{name}'")


def _need(condition, message):
    if not condition:
        raise ScenarioValidationError([message])


def _footer(scenario, operations):
    return (f"scenario: {scenario.name}", f"operations: {operations}")


def _run_rates(scenario):
    rows = []
    for source in scenario.sources:
        substance = source.substance
        pv = vapor_pressure_at(substance, source.temperature)
        speed = kinetics_ops.RateResult(
            kinetics_ops.mean_speed(source.temperature,
                                    substance.molar_mass / AVOGADRO),
            "cm/s", "mean_speed")
        impingement = kinetics_ops.RateResult(
            kinetics_ops.impingement_rate_pressure(
                1.0, pv, substance.molar_mass, source.temperature),
            "cm^-2 s^-1", "pressure_impingement")
        evaporation = kinetics_ops.RateResult(
            kinetics_ops.evaporation_rate(
                source.evaporation_coefficient, pv, substance.molar_mass,
                source.temperature),
            "g cm^-2 s^-1", "evaporation")
        for support in scenario.supports:
            residence = kinetics_ops.RateResult(
                kinetics_ops.residence_time(substance.vibration_period,
                                            substance.desorption_energy,
                                            support.temperature),
                "s", "residence_time")
            adsorption = kinetics_ops.RateResult(
                kinetics_ops.impingement_rate_pressure(
                    support.accommodation, pv, substance.molar_mass,
                    source.temperature),
                "cm^-2 s^-1", "pressure_impingement")
            feasible = kinetics_ops.condensation_feasible(adsorption.value,
                                                          support)
            rows.append((source.id, support.id, pv, speed.value,
                         residence.value, impingement.value, adsorption.value,
                         evaporation.value, feasible))
    return ResultTable(
        columns=("source_id", "support_id", "vapor_pressure_torr",
                 "mean_speed_cm_s", "residence_time_s",
                 "impingement_rate_per_cm2_s", "adsorption_rate_per_cm2_s",
                 "evaporation_rate_g_per_cm2_s", "feasible"),
        rows=rows,
        footer=_footer(scenario,
                       "vapor_pressure_at, mean_speed, residence_time, "
                       "impingement_rate_pressure, evaporation_rate, "
                       "condensation_feasible"))


def _first_emitting_source(scenario):
    _need(scenario.sources, "this subcommand needs at least one source")
    _need(scenario.supports, "this subcommand needs at least one support")
    source = scenario.sources[0]
    emission = scenario.emissions[0]
    _need(emission is not None,
          f"source '{source.id}' has no total_rate; profile and mass need one")
    return source, emission, scenario.supports[0]


def _run_profile(scenario, offsets):
    if offsets is None:
        raise InvalidInputError("profile requires offsets")
    source, emission, support = _first_emitting_source(scenario)
    rho = source.substance.density
    h = support.distance_h
    rows = [(float(x),
             geometry_ops.thickness_at_offset(emission.total_rate_w, rho, h,
                                              float(x)))
            for x in offsets]
    return ResultTable(columns=("offset_cm", "thickness_rate_cm_s"), rows=rows,
                       footer=_footer(scenario, "thickness_at_offset"))


def _run_mass(scenario):
    source, emission, support = _first_emitting_source(scenario)
    rho = source.substance.density
    h = support.distance_h
    radius = 100.0 * h
    rate = geometry_ops.disk_mass_rate(emission.total_rate_w, rho, h, radius,
                                       source_id=source.id)
    return ResultTable(
        columns=("source_id", "support_id", "disk_radius_cm", "mass_rate_g_s"),
        rows=[(source.id, support.id, radius, rate)],
        footer=_footer(scenario, "disk_mass_rate, deposited_mass"))


def _run_forward(scenario):
    _need(scenario.transfer is not None,
          "forward needs a transfer section")
    matrix = scenario.transfer
    masses = [scenario.source_by_id(sid).mass_capacity
              for sid in matrix.source_ids]
    result = transfer_ops.forward_masses(matrix, masses)
    rows = [(sid, float(value))
            for sid, value in zip(matrix.support_ids, result)]
    return ResultTable(columns=("support_id", "mass"), rows=rows,
                       footer=_footer(scenario, "forward_masses"))


def _run_solve(scenario):
    _need(scenario.transfer is not None, "solve needs a transfer section")
    _need(scenario.solve_targets is not None,
          "solve needs a solve_targets section")
    matrix = scenario.transfer
    result = transfer_ops.solve_sources(matrix, scenario.solve_targets)
    rows = [(sid, float(value), result.residual)
            for sid, value in zip(matrix.source_ids, result.masses)]
    return ResultTable(columns=("source_id", "mass", "residual"), rows=rows,
                       footer=_footer(scenario, "solve_sources"))


def _run_calibrate(scenario):
    _need(scenario.observations, "calibrate needs observations")
    if scenario.transfer is not None:
        source_ids = scenario.transfer.source_ids
        support_ids = scenario.transfer.support_ids
    else:
        p = len(scenario.observations[0].source_masses)
        n = len(scenario.observations[0].support_masses)
        source_ids = tuple(s.id for s in scenario.sources) \
            if len(scenario.sources) == p else None
        support_ids = tuple(s.id for s in scenario.supports) \
            if len(scenario.supports) == n else None
    matrix = transfer_ops.calibrate_matrix(scenario.observations,
                                           source_ids=source_ids,
                                           support_ids=support_ids)
    rows = [(sup, src, matrix.coefficients[i][j])
            for i, sup in enumerate(matrix.support_ids)
            for j, src in enumerate(matrix.source_ids)]
    return ResultTable(columns=("support_id", "source_id", "coefficient"),
                       rows=rows,
                       footer=_footer(scenario, "calibrate_matrix"))


def _run_fdi_rank(scenario, filter_negative):
    _need(scenario.firm is not None, "fdi-rank needs a firm section")
    _need(scenario.locations, "fdi-rank needs locations")
    ranked = fdi_ops.rank_locations(scenario.firm, scenario.locations,
                                    scenario.location_fluxes)
    if filter_negative:
        ranked = [r for r in ranked if r.value >= 0]
    rows = [(rank, r.location_id, r.feasible, r.value, r.required_velocity,
             r.investment_mass)
            for rank, r in enumerate(ranked, start=1)]
    return ResultTable(
        columns=("rank", "location_id", "feasible", "value",
                 "required_velocity", "investment_mass"),
        rows=rows,
        footer=_footer(scenario,
                       "rank_locations, investment_value, "
                       "required_transfer_velocity, investment_mass, "
                       "effective_accommodation, condensation_feasible"))


def _run_fdi_velocity(scenario):
    _need(scenario.firm is not None, "fdi-velocity needs a firm section")
    _need(scenario.locations, "fdi-velocity needs locations")
    rows = [(loc.support.id, loc.support.distance_h,
             fdi_ops.required_transfer_velocity(scenario.firm,
                                                scenario.firm.capacity,
                                                loc.support.distance_h))
            for loc in scenario.locations]
    return ResultTable(
        columns=("location_id", "economic_distance", "required_velocity"),
        rows=rows,
        footer=_footer(scenario, "required_transfer_velocity"))
