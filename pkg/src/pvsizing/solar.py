"""PV generation and the analytical upper bound on PV capacity."""

from __future__ import annotations

import numpy as np

from .errors import InputError, NoDaylightError
from .series import HourlySeries, check_same_horizon


def generation_profile(F: HourlySeries, c_pv: float) -> HourlySeries:
    """Generation in MW: capacity factor times installed capacity."""
    if F.unit != "dimensionless":
        raise InputError(f"capacity factor must be dimensionless, got {F.unit}")
    if not (np.isfinite(c_pv) and c_pv >= 0):
        raise InputError(f"PV capacity must be finite and >= 0, got {c_pv}")
    return HourlySeries(F.values * c_pv, "MW")


def max_pv_capacity(D: HourlySeries, F: HourlySeries, f_epsilon: float = 0.0,
                    max_pv_override: float | None = None) -> float:
    """Smallest PV capacity that meets demand in every daylight hour on its own.

    This is the largest demand / capacity-factor ratio over hours where the
    capacity factor exceeds ``f_epsilon`` (0 by default, i.e. any daylight).
    Raising ``f_epsilon`` ignores dim dawn/dusk hours that would otherwise
    blow the bound up; ``max_pv_override`` caps the result.
    """
    check_same_horizon(D, F)
    daylight = F.values > f_epsilon
    if not daylight.any():
        raise NoDaylightError("capacity factor has no hour above "
                              f"{f_epsilon}; PV bound is undefined")
    bound = float(np.max(D.values[daylight] / F.values[daylight]))
    if max_pv_override is not None:
        bound = min(bound, float(max_pv_override))
    return bound
