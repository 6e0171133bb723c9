"""Analytical storage sizing from the unconstrained storage-level profile.

The profile is the running, efficiency-weighted sum of generation surplus
and deficit starting at zero with no capacity limits. Its local extrema
(critical points) are paired in a difference matrix whose lower-left half is
shifted by the net annual change, so that pairs reaching into the next
repetition of the year are also seen. The storage size is the largest
decrease, largest increase, or largest absolute change in that matrix,
depending on whether the profile trends up, down, or neither.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .series import HourlySeries, check_same_horizon


@dataclass(frozen=True)
class StorageParams:
    eta_c: float = 0.8
    eta_d: float = 0.8
    dod: float = 0.8
    dt: float = 1.0

    def __post_init__(self):
        for name in ("eta_c", "eta_d", "dod"):
            v = getattr(self, name)
            if not 0 < v <= 1:
                raise InputError(f"{name} must lie in (0, 1], got {v}")
        if not self.dt > 0:
            raise InputError(f"dt must be > 0, got {self.dt}")


@dataclass(frozen=True)
class UnconstrainedProfile:
    levels: np.ndarray  # S(0) .. S(T), MWh

    @property
    def start_level(self) -> float:
        return float(self.levels[0])

    @property
    def end_level(self) -> float:
        return float(self.levels[-1])

    @property
    def horizon(self) -> int:
        return self.levels.size - 1


@dataclass(frozen=True)
class CriticalPointSet:
    times: np.ndarray
    levels: np.ndarray


def unconstrained_profile(D: HourlySeries, G: HourlySeries, p: StorageParams) -> UnconstrainedProfile:
    check_same_horizon(D, G)
    net = G.values - D.values
    step = np.where(net > 0, net * p.eta_c, np.where(net < 0, net / p.eta_d, 0.0)) * p.dt
    levels = np.concatenate(([0.0], np.cumsum(step)))
    return UnconstrainedProfile(levels)


def find_critical_points(profile: UnconstrainedProfile) -> CriticalPointSet:
    """Endpoints plus interior local extrema found by neighbour comparison.

    A flat run contributes only its first and last index.
    """
    s = profile.levels
    if s.size < 2:
        raise InputError("profile needs at least one step")
    prev, cur, nxt = s[:-2], s[1:-1], s[2:]
    extremum = ((cur >= prev) & (cur >= nxt)) | ((cur <= prev) & (cur <= nxt))
    inside_flat = (cur == prev) & (cur == nxt)
    interior = np.flatnonzero(extremum & ~inside_flat) + 1
    times = np.concatenate(([0], interior, [s.size - 1]))
    return CriticalPointSet(times, s[times])


def difference_matrix(cps: CriticalPointSet, s0: float, sT: float) -> np.ndarray:
    """``m[i, j] = S(t_j) - S(t_i)``, plus ``S(T) - S(0)`` where ``i > j``."""
    c = cps.levels
    n = c.size
    if n < 2:
        raise InputError("difference matrix needs at least two critical points")
    wrap = np.tril(np.full((n, n), sT - s0), -1)
    return wrap + c[np.newaxis, :] - c[:, np.newaxis]


def storage_size(m: np.ndarray, s0: float, sT: float) -> float:
    trend = sT - s0
    if trend > 0:
        e = abs(m.min())
    elif trend < 0:
        e = m.max()
    else:
        e = np.abs(m).max()
    return max(float(e), 0.0)


def size_storage(profile: UnconstrainedProfile) -> float:
    """Maximum useful storage size for a profile via its critical points."""
    cps = find_critical_points(profile)
    s0, sT = profile.start_level, profile.end_level
    return storage_size(difference_matrix(cps, s0, sT), s0, sT)


def storage_size_oracle(profile: UnconstrainedProfile) -> float:
    """Brute-force storage size over every pair of hours, O(T^2).

    For testing only; evaluated one row at a time to bound memory.
    """
    s = profile.levels
    n = s.size
    trend = s[-1] - s[0]
    lo, hi = np.inf, -np.inf
    idx = np.arange(n)
    for i in range(n):
        row = s - s[i] + np.where(idx < i, trend, 0.0)
        lo = min(lo, row.min())
        hi = max(hi, row.max())
    if trend > 0:
        e = abs(lo)
    elif trend < 0:
        e = hi
    else:
        e = max(abs(lo), abs(hi))
    return max(float(e), 0.0)


def capacity_from_size(e: float, p: StorageParams) -> float:
    """Nominal capacity needed so that ``e`` MWh is usable at the given DoD."""
    if not p.dod > 0:
        raise InputError(f"depth of discharge must be > 0, got {p.dod}")
    return e / p.dod
