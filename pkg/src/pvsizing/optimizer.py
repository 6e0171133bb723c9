"""Nested PV / storage search, LCOE selection and the multi-year sweep.

The PV range runs from zero to the analytical PV bound. For each PV size the
storage range runs from zero to the analytical storage size of that PV
size's unconstrained profile. Every (PV, storage) point is dispatched from
its sustainable starting level. Dispatch does not depend on costs, so the
design space is built once and re-priced for each projected year.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .dispatch import run_batch, sustainable_starts
from .economics import (
    AnnualCostBreakdown,
    CostAssumptions,
    CostProjection,
    annualized_component_cost,
    lcoe,
    project_costs,
)
from .errors import InputError
from .profiles import annual_energy
from .series import HOURS_PER_YEAR, HourlySeries, check_same_horizon
from .solar import generation_profile, max_pv_capacity
from .storage import StorageParams, capacity_from_size, size_storage, unconstrained_profile


@dataclass(frozen=True)
class SearchConfig:
    pv_increment: float = 10.0
    storage_increment: float = 10.0
    year_range: tuple[int, int] = (2019, 2100)
    max_pv_override: float | None = None
    fixed_point_iters: int = 1
    f_epsilon: float = 0.0
    threads: int = 1
    crf_paper_literal: bool = False

    def __post_init__(self):
        if not (self.pv_increment > 0 and self.storage_increment > 0):
            raise InputError("increments must be > 0")
        if self.year_range[0] > self.year_range[1]:
            raise InputError(f"year range {self.year_range} is reversed")
        if self.fixed_point_iters < 1:
            raise InputError("fixed_point_iters must be >= 1")
        if self.threads < 0:
            raise InputError("threads must be >= 0")


@dataclass(frozen=True)
class SpacePoint:
    """One dispatched (PV, storage) combination, before pricing."""

    c_pv: float
    storage_size: float
    c_s: float
    annual_import: float
    import_cost: float
    start_level: float
    annual_curtailment: float


@dataclass(frozen=True)
class DesignPoint:
    c_pv: float
    c_s: float
    annual_import: float
    lcoe: float
    breakdown: AnnualCostBreakdown


@dataclass(frozen=True)
class OptimalResult:
    year: int | None
    point: DesignPoint
    grid_share: float


def search_range(upper: float, increment: float) -> list[float]:
    """``0, inc, 2 inc, ...`` below ``upper``, then ``upper`` itself."""
    values = []
    k = 0
    while k * increment < upper:
        values.append(k * increment)
        k += 1
    values.append(float(upper))
    return values


def _pv_row(c_pv, D, F, params, cfg, price):
    G = generation_profile(F, c_pv)
    e_max = size_storage(unconstrained_profile(D, G, params))
    sizes = np.array(search_range(e_max, cfg.storage_increment))
    net = G.values - D.values
    starts = sustainable_starts(net, sizes, params, cfg.fixed_point_iters)
    r = run_batch(net, sizes, starts, params, price=price)
    cost = r.get("import_cost", np.full(sizes.size, np.nan))
    return [
        SpacePoint(
            c_pv=float(c_pv),
            storage_size=float(size),
            c_s=capacity_from_size(float(size), params),
            annual_import=float(r["annual_import"][i]),
            import_cost=float(cost[i]),
            start_level=float(starts[i]),
            annual_curtailment=float(r["annual_curtailment"][i]),
        )
        for i, size in enumerate(sizes)
    ]


def _workers(threads: int) -> int:
    if threads == 0:
        return os.cpu_count() or 1
    return threads


def enumerate_design_space(D: HourlySeries, F: HourlySeries, params: StorageParams,
                           cfg: SearchConfig, price: HourlySeries | None = None) -> list[SpacePoint]:
    """All (PV, storage) points of the search, ordered by PV then storage.

    When ``price`` is given each point also carries its import cost; without
    it ``import_cost`` is NaN and the space cannot be priced.
    """
    series = [D, F] + ([price] if price is not None else [])
    check_same_horizon(*series)
    c_max = max_pv_capacity(D, F, cfg.f_epsilon, cfg.max_pv_override)
    pv_sizes = search_range(c_max, cfg.pv_increment)
    p = None if price is None else price.values
    workers = _workers(cfg.threads)
    if workers > 1 and len(pv_sizes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda c: _pv_row(c, D, F, params, cfg, p), pv_sizes))
    else:
        rows = [_pv_row(c, D, F, params, cfg, p) for c in pv_sizes]
    return [pt for row in rows for pt in row]


def price_point(point: SpacePoint, costs: CostAssumptions, annual_demand: float,
                capital_scale: float = 1.0, paper_literal: bool = False) -> DesignPoint:
    """Cost one design point.

    ``capital_scale`` prorates the annualized PV and storage costs when the
    modeled horizon is shorter than a year (horizon / 8760).
    """
    if np.isnan(point.import_cost):
        raise InputError("design point was enumerated without a price series")
    p_pv = capital_scale * annualized_component_cost(
        point.c_pv, costs.pv_installed, costs.pv_om, costs.discount_rate, costs.pv_life, paper_literal)
    p_s = capital_scale * annualized_component_cost(
        point.c_s, costs.storage_installed, costs.storage_om, costs.discount_rate, costs.storage_life,
        paper_literal)
    total = p_pv + p_s + point.import_cost
    if annual_demand <= 0 and total == 0:
        value = 0.0  # nothing to serve and nothing built
    else:
        value = lcoe(p_pv, p_s, point.import_cost, annual_demand)
    return DesignPoint(point.c_pv, point.c_s, point.annual_import, value,
                       AnnualCostBreakdown(p_pv, p_s, point.import_cost, value))


def select_optimal(space: Sequence[SpacePoint], costs: CostAssumptions, annual_demand: float,
                   year: int | None = None, capital_scale: float = 1.0,
                   paper_literal: bool = False) -> OptimalResult:
    """Lowest-LCOE point; ties go to less storage, then less PV."""
    if not space:
        raise InputError("design space is empty")
    priced = [price_point(pt, costs, annual_demand, capital_scale, paper_literal) for pt in space]
    best = min(priced, key=lambda d: (d.lcoe, d.c_s, d.c_pv))
    share = best.annual_import / annual_demand if annual_demand > 0 else 0.0
    return OptimalResult(year, best, share)


def capital_scale_for(horizon: int) -> float:
    return horizon / HOURS_PER_YEAR


def multi_year_sweep(D: HourlySeries, F: HourlySeries, params: StorageParams, cfg: SearchConfig,
                     base_costs: CostAssumptions, projection: CostProjection,
                     price: HourlySeries, space: Sequence[SpacePoint] | None = None) -> list[OptimalResult]:
    """Optimum for every year of ``cfg.year_range``, in year order."""
    start, end = cfg.year_range
    # Validate the range before the expensive enumeration.
    projection.multipliers(start)
    projection.multipliers(end)
    if space is None:
        space = enumerate_design_space(D, F, params, cfg, price)
    demand = annual_energy(D)
    scale = capital_scale_for(D.horizon)
    return [
        select_optimal(space, project_costs(base_costs, projection, year), demand, year, scale,
                       cfg.crf_paper_literal)
        for year in range(start, end + 1)
    ]


# -- output tables ----------------------------------------------------------

def _fmt(v) -> str:
    return "%.6g" % v


def write_design_space(path, points: Sequence[DesignPoint]) -> None:
    with Path(path).open("w", newline="") as fh:
        fh.write("c_pv_mw,c_s_mwh,annual_import_mwh,lcoe_eur_per_mwh\n")
        for d in points:
            fh.write(",".join(_fmt(v) for v in (d.c_pv, d.c_s, d.annual_import, d.lcoe)) + "\n")


def write_sweep(path, results: Sequence[OptimalResult]) -> None:
    with Path(path).open("w", newline="") as fh:
        fh.write("year,c_pv_mw,c_s_mwh,annual_import_mwh,grid_share,lcoe_eur_per_mwh\n")
        for r in results:
            d = r.point
            cells = [_fmt(v) for v in (d.c_pv, d.c_s, d.annual_import, r.grid_share, d.lcoe)]
            fh.write(f"{r.year}," + ",".join(cells) + "\n")
