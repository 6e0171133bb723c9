"""Rule-based dispatch of a PV + storage + grid system.

Solar serves demand first. Surplus charges storage until it is full and the
rest is curtailed. A deficit is drawn from storage until it is empty and the
rest is imported from the grid. The grid never charges storage.

A stored level ``S`` can deliver ``S * eta_d`` of energy, consistent with the
level dropping by ``deficit / eta_d`` while discharging.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InputError
from .series import HourlySeries, check_same_horizon
from .storage import StorageParams


@dataclass(frozen=True)
class DispatchResult:
    storage_levels: np.ndarray  # MWh, length T + 1
    grid_import: HourlySeries   # MWh per hour
    curtailment: HourlySeries   # MWh per hour

    @property
    def start_level(self) -> float:
        return float(self.storage_levels[0])

    @property
    def end_level(self) -> float:
        return float(self.storage_levels[-1])


def run_batch(net, sizes, starts, p: StorageParams, price=None, record=False):
    """Step many storage sizes through one net-generation series at once.

    ``net`` is G - D in MW (length T); ``sizes`` and ``starts`` are arrays of
    equal length k. Returns a dict with per-size ``end_level``,
    ``annual_import``, ``annual_curtailment`` and, when ``price`` is given,
    ``import_cost``. With ``record=True`` the full ``levels`` (T+1, k),
    ``imports`` and ``curtailment`` (T, k) arrays are included.
    """
    net = np.asarray(net, dtype=float)
    sizes = np.asarray(sizes, dtype=float)
    level = np.array(starts, dtype=float)
    if level.shape != sizes.shape:
        raise InputError("sizes and starts must have the same shape")
    if np.any(level < 0) or np.any(level > sizes):
        raise InputError("start level must lie in [0, storage size]")
    k = sizes.size
    dt, eta_c, eta_d = p.dt, p.eta_c, p.eta_d
    total_import = np.zeros(k)
    total_curtail = np.zeros(k)
    cost = np.zeros(k) if price is not None else None
    if record:
        levels = np.empty((net.size + 1, k))
        levels[0] = level
        imports = np.zeros((net.size, k))
        curtail = np.zeros((net.size, k))
    for t, x in enumerate(net):
        if x > 0:
            surplus = x * dt
            room = sizes - level
            fits = surplus * eta_c <= room
            spill = np.where(fits, 0.0, surplus - room / eta_c)
            level = np.where(fits, level + surplus * eta_c, sizes)
            total_curtail += spill
            if record:
                curtail[t] = spill
        elif x < 0:
            deficit = -x * dt
            need = deficit / eta_d
            covered = level >= need
            grid = np.where(covered, 0.0, deficit - level * eta_d)
            level = np.where(covered, level - need, 0.0)
            total_import += grid
            if cost is not None:
                cost += grid * price[t]
            if record:
                imports[t] = grid
        if record:
            levels[t + 1] = level
    out = {"end_level": level, "annual_import": total_import, "annual_curtailment": total_curtail}
    if cost is not None:
        out["import_cost"] = cost
    if record:
        out.update(levels=levels, imports=imports, curtailment=curtail)
    return out


def simulate(D: HourlySeries, G: HourlySeries, e: float, p: StorageParams, start: float) -> DispatchResult:
    check_same_horizon(D, G)
    if not 0 <= start <= e:
        raise InputError(f"start level {start} outside [0, {e}]")
    r = run_batch(G.values - D.values, [e], [start], p, record=True)
    return DispatchResult(
        storage_levels=r["levels"][:, 0],
        grid_import=HourlySeries(r["imports"][:, 0], "MWh"),
        curtailment=HourlySeries(r["curtailment"][:, 0], "MWh"),
    )


def sustainable_starts(net, sizes, p: StorageParams, fixed_point_iters: int = 1, tol: float = 1e-9):
    """Batch version of :func:`sustainable_start`."""
    if fixed_point_iters < 1:
        raise InputError("fixed_point_iters must be >= 1")
    sizes = np.asarray(sizes, dtype=float)
    start = np.zeros_like(sizes)
    for i in range(fixed_point_iters):
        end = run_batch(net, sizes, start, p)["end_level"]
        done = np.all(np.abs(end - start) < tol)
        start = end
        if done:
            break
    return start


def sustainable_start(D: HourlySeries, G: HourlySeries, e: float, p: StorageParams,
                      fixed_point_iters: int = 1) -> float:
    """Starting level that the year hands back to itself.

    One pass from an empty store gives the default answer (its end level).
    With ``fixed_point_iters > 1`` the hand-off is repeated until start and
    end agree within 1e-9 or the iterations run out.
    """
    check_same_horizon(D, G)
    return float(sustainable_starts(G.values - D.values, [e], p, fixed_point_iters)[0])


def annual_import(result: DispatchResult) -> float:
    return float(result.grid_import.values.sum())


def write_trace(path, D: HourlySeries, G: HourlySeries, result: DispatchResult, fmt: str = "%.6g") -> None:
    """Per-hour trace; ``storage_level`` is the level at the end of the hour."""
    with Path(path).open("w", newline="") as fh:
        fh.write("hour,demand,generation,storage_level,import,curtailment\n")
        for t in range(D.horizon):
            cells = (D.values[t], G.values[t], result.storage_levels[t + 1],
                     result.grid_import.values[t], result.curtailment.values[t])
            fh.write(f"{t}," + ",".join(fmt % v for v in cells) + "\n")
