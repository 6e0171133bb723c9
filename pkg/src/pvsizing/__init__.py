"""Least-cost sizing of solar PV and battery storage against grid import.

The search is bounded analytically: the PV range ends at the smallest
capacity that covers every daylight hour's demand, and for each PV size the
storage range ends at the largest storage that would ever be used. Each
(PV, storage) combination is simulated hour by hour under a solar-first,
storage-second, grid-last rule, priced by levelized cost of electricity, and
the cheapest is selected, optionally for every year of a cost projection.
"""

from .dispatch import DispatchResult, annual_import, simulate, sustainable_start
from .economics import (
    AnnualCostBreakdown,
    CostAssumptions,
    CostProjection,
    annualized_component_cost,
    capital_recovery_factor,
    import_cost,
    lcoe,
    project_costs,
)
from .errors import InputError, NoDaylightError, ProjectionRangeError, SizingError
from .optimizer import (
    DesignPoint,
    OptimalResult,
    SearchConfig,
    SpacePoint,
    enumerate_design_space,
    multi_year_sweep,
    select_optimal,
)
from .profiles import (
    ClassTemplate,
    CorrectionFactors,
    MeterCensus,
    SeasonCalendar,
    allocate_nondomestic_meters,
    annual_energy,
    compose_demand,
    expand_class_profile,
    fit_correction_factor,
    make_calendar,
)
from .series import HourlySeries, read_series, write_series
from .solar import generation_profile, max_pv_capacity
from .storage import (
    CriticalPointSet,
    StorageParams,
    UnconstrainedProfile,
    capacity_from_size,
    difference_matrix,
    find_critical_points,
    size_storage,
    storage_size,
    storage_size_oracle,
    unconstrained_profile,
)

__version__ = "0.1.0"
