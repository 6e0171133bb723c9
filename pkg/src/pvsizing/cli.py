"""Command-line entry point.

Configuration is an INI file; every key can also be given as a flag of the
same name (``--pv_increment 5``), which wins over the file. Relative paths
in the file resolve against the file's directory.
"""

from __future__ import annotations

import argparse
import configparser
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .dispatch import simulate as run_simulation, sustainable_start, write_trace
from .economics import CostAssumptions, CostProjection, project_costs, read_costs, read_projection
from .errors import InputError, SizingError
from .optimizer import (
    SearchConfig,
    capital_scale_for,
    enumerate_design_space,
    multi_year_sweep,
    price_point,
    write_design_space,
    write_sweep,
)
from .profiles import (
    annual_energy,
    read_calendar,
    read_census,
    read_factors,
    read_templates,
    synthesize_demand,
)
from .series import HourlySeries, read_series, write_series
from .solar import generation_profile, max_pv_capacity
from .storage import StorageParams, find_critical_points, size_storage, unconstrained_profile

# section -> key -> (type, default); None default means "not set"
SCHEMA = {
    "inputs": {
        "demand": (Path, None),
        "templates": (Path, None),
        "calendar": (Path, None),
        "census": (Path, None),
        "factors": (Path, None),
        "capacity_factor": (Path, None),
        "price": (Path, None),
        "costs": (Path, None),
        "projection": (Path, None),
        "horizon": (int, 8760),
    },
    "storage": {
        "eta_c": (float, 0.8),
        "eta_d": (float, 0.8),
        "dod": (float, 0.8),
    },
    "search": {
        "pv_increment": (float, 10.0),
        "storage_increment": (float, 10.0),
        "year_start": (int, 2019),
        "year_end": (int, 2100),
        "max_pv_override": (float, None),
        "fixed_point_iters": (int, 1),
        "f_epsilon": (float, 0.0),
        "interpolation": (str, "linear"),
    },
    "point": {
        "c_pv": (float, 0.0),
        "storage_size": (float, 0.0),
    },
    "run": {
        "out": (Path, Path(".")),
        "threads": (int, 1),
        "crf_paper_literal": (bool, False),
        "trace_enabled": (bool, False),
    },
}
KEY_SECTION = {key: section for section, keys in SCHEMA.items() for key in keys}

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _convert(key, kind, raw, base: Path):
    raw = raw.strip()
    if raw == "":
        return None
    try:
        if kind is bool:
            low = raw.lower()
            if low not in _TRUE | _FALSE:
                raise ValueError(raw)
            return low in _TRUE
        if kind is Path:
            p = Path(raw).expanduser()
            return p if p.is_absolute() else (base / p)
        return kind(raw)
    except ValueError:
        raise InputError(f"bad value for {key}: {raw!r}") from None


@dataclass
class RunConfig:
    values: dict

    def __getattr__(self, name):
        try:
            return self.values[name]
        except KeyError:
            raise AttributeError(name) from None

    @property
    def storage(self) -> StorageParams:
        return StorageParams(self.eta_c, self.eta_d, self.dod)

    @property
    def search(self) -> SearchConfig:
        return SearchConfig(
            pv_increment=self.pv_increment,
            storage_increment=self.storage_increment,
            year_range=(self.year_start, self.year_end),
            max_pv_override=self.max_pv_override,
            fixed_point_iters=self.fixed_point_iters,
            f_epsilon=self.f_epsilon,
            threads=self.threads,
            crf_paper_literal=self.crf_paper_literal,
        )

    def dump(self) -> str:
        cp = configparser.ConfigParser()
        for section, keys in SCHEMA.items():
            cp[section] = {}
            for key in keys:
                v = self.values[key]
                if v is None:
                    text = ""
                elif isinstance(v, Path):
                    text = str(v.resolve())
                elif isinstance(v, bool):
                    text = "true" if v else "false"
                elif isinstance(v, float):
                    text = repr(v)
                else:
                    text = str(v)
                cp[section][key] = text
        buf = io.StringIO()
        cp.write(buf)
        return buf.getvalue()


def load_config(path: Path | None, overrides: dict, cwd: Path | None = None) -> RunConfig:
    cwd = cwd or Path.cwd()
    values = {key: default for keys in SCHEMA.values() for key, (_, default) in keys.items()}
    if path is not None:
        if not path.is_file():
            raise InputError("config file not found", path=path)
        cp = configparser.ConfigParser()
        try:
            cp.read(path)
        except configparser.Error as exc:
            raise InputError(f"unparseable config: {exc}", path=path) from None
        base = path.resolve().parent
        for section in cp.sections():
            if section not in SCHEMA:
                raise InputError(f"unknown config section [{section}]", path=path)
            for key, raw in cp[section].items():
                if key not in SCHEMA[section]:
                    raise InputError(f"unknown key {key!r} in [{section}]", path=path)
                values[key] = _convert(key, SCHEMA[section][key][0], raw, base)
    for key, raw in overrides.items():
        if raw is not None:
            values[key] = _convert(key, SCHEMA[KEY_SECTION[key]][key][0], raw, cwd)
    return RunConfig(values)


# -- input assembly ---------------------------------------------------------

def _require(cfg: RunConfig, *keys):
    for key in keys:
        if cfg.values.get(key) is None:
            raise InputError(f"missing required setting {key!r} ([{KEY_SECTION[key]}])")


def load_demand(cfg: RunConfig) -> HourlySeries:
    if cfg.demand is not None:
        return read_series(cfg.demand, "MW", cfg.horizon)
    return synthesize_from_files(cfg)


def synthesize_from_files(cfg: RunConfig) -> HourlySeries:
    _require(cfg, "templates", "calendar", "census", "factors")
    calendar = read_calendar(cfg.calendar)
    if calendar.horizon != cfg.horizon:
        raise InputError(f"calendar covers {calendar.horizon} h, horizon is {cfg.horizon} h",
                         path=cfg.calendar)
    return synthesize_demand(read_templates(cfg.templates), calendar,
                             read_census(cfg.census), read_factors(cfg.factors))


def load_costs(cfg: RunConfig) -> tuple[CostAssumptions, CostProjection]:
    costs = read_costs(cfg.costs) if cfg.costs is not None else CostAssumptions()
    if cfg.projection is not None:
        projection = read_projection(cfg.projection, cfg.interpolation)
    else:
        projection = CostProjection.paper(cfg.interpolation)
    return costs, projection


# -- commands ---------------------------------------------------------------

def cmd_synth_demand(cfg: RunConfig, out: Path) -> None:
    demand = synthesize_from_files(cfg)
    write_series(out / "demand.csv", demand)
    print(f"annual_demand_mwh {annual_energy(demand):.6g}")


def _storage_bounds(path: Path, D, F, cfg: RunConfig, pv_sizes) -> None:
    params = cfg.storage
    with path.open("w") as fh:
        fh.write("c_pv_mw,e_max_mwh,critical_hours\n")
        for c in pv_sizes:
            prof = unconstrained_profile(D, generation_profile(F, c), params)
            cps = find_critical_points(prof)
            hours = " ".join(str(int(t)) for t in cps.times)
            fh.write(f"{c:.6g},{size_storage(prof):.6g},{hours}\n")


def cmd_design_space(cfg: RunConfig, out: Path) -> None:
    _require(cfg, "capacity_factor", "price")
    D = load_demand(cfg)
    F = read_series(cfg.capacity_factor, "dimensionless", cfg.horizon)
    price = read_series(cfg.price, "EUR/MWh", cfg.horizon)
    costs, projection = load_costs(cfg)
    year_costs = project_costs(costs, projection, cfg.year_start)
    search = cfg.search
    space = enumerate_design_space(D, F, cfg.storage, search, price)
    demand = annual_energy(D)
    scale = capital_scale_for(D.horizon)
    priced = [price_point(pt, year_costs, demand, scale, cfg.crf_paper_literal) for pt in space]
    write_design_space(out / "design_space.csv", priced)
    if cfg.trace_enabled:
        pv_sizes = sorted({pt.c_pv for pt in space})
        _storage_bounds(out / "storage_bounds.csv", D, F, cfg, pv_sizes)
    print(f"design_points {len(priced)}")


def cmd_sweep(cfg: RunConfig, out: Path) -> None:
    _require(cfg, "capacity_factor", "price")
    costs, projection = load_costs(cfg)
    projection.multipliers(cfg.year_start)
    projection.multipliers(cfg.year_end)
    D = load_demand(cfg)
    F = read_series(cfg.capacity_factor, "dimensionless", cfg.horizon)
    price = read_series(cfg.price, "EUR/MWh", cfg.horizon)
    results = multi_year_sweep(D, F, cfg.storage, cfg.search, costs, projection, price)
    write_sweep(out / "sweep.csv", results)
    print(f"years {len(results)}")


def cmd_simulate(cfg: RunConfig, out: Path) -> None:
    _require(cfg, "capacity_factor")
    D = load_demand(cfg)
    F = read_series(cfg.capacity_factor, "dimensionless", cfg.horizon)
    max_pv_capacity(D, F, cfg.f_epsilon)  # surfaces the no-daylight error consistently
    G = generation_profile(F, cfg.c_pv)
    params = cfg.storage
    start = sustainable_start(D, G, cfg.storage_size, params, cfg.fixed_point_iters)
    result = run_simulation(D, G, cfg.storage_size, params, start)
    write_trace(out / "trace.csv", D, G, result)
    print(f"annual_import_mwh {result.grid_import.values.sum():.6g}")


COMMANDS = {
    "synth-demand": cmd_synth_demand,
    "design-space": cmd_design_space,
    "sweep": cmd_sweep,
    "simulate": cmd_simulate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pvsizing", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", type=Path)
    parser.add_argument("--print-config", action="store_true",
                        help="print the effective configuration and exit")
    for section, keys in SCHEMA.items():
        group = parser.add_argument_group(section)
        for key in keys:
            names = [f"--{key}"]
            if "_" in key:
                names.append(f"--{key.replace('_', '-')}")
            group.add_argument(*names, dest=key, metavar=key.upper(), default=None)
    return parser


def _report(exc: SizingError) -> None:
    payload = {"error": type(exc).__name__, "code": exc.exit_code, "message": str(exc)}
    if isinstance(exc, InputError):
        payload["file"] = None if exc.path is None else str(exc.path)
        payload["row"] = exc.row
    print(json.dumps(payload), file=sys.stderr)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {key: getattr(args, key) for key in KEY_SECTION}
    try:
        cfg = load_config(args.config, overrides)
        if args.print_config:
            sys.stdout.write(cfg.dump())
            return 0
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        COMMANDS[args.command](cfg, out)
    except SizingError as exc:
        _report(exc)
        return exc.exit_code
    except OSError as exc:
        _report(InputError(exc.strerror or str(exc), path=exc.filename))
        return InputError.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
