# %% [markdown]
# # District demand from settlement-class templates
#
# Two made-up class shapes stand in for real settlement profiles.

# %%
import numpy as np

from pvsizing import (
    ClassTemplate,
    CorrectionFactors,
    MeterCensus,
    allocate_nondomestic_meters,
    annual_energy,
    fit_correction_factor,
    make_calendar,
)
from pvsizing.profiles import CELLS, synthesize_demand

half_hours = np.arange(48) / 2
domestic = 0.3 + 0.4 * np.exp(-((half_hours - 19) / 2.5) ** 2)          # evening peak, kW
office = 2.0 + 8.0 * np.exp(-((half_hours - 13) / 3.5) ** 2)            # working hours, kW
templates = {
    1: ClassTemplate(1, {c: domestic * (1.3 if c[0] == "winter" else 1.0) for c in CELLS}),
    4: ClassTemplate(4, {c: office * (0.3 if c[1] != "weekday" else 1.0) for c in CELLS}),
}
calendar = make_calendar(2019)

# %% [markdown]
# Non-domestic meters are only known in total; they are split by company
# counts per size class.

# %%
census = MeterCensus(domestic_meters=(60_000, 0), nondomestic_total=4_000,
                     company_counts={3: 0, 4: 1, 5: 0, 6: 0, 7: 0, 8: 0})
print(allocate_nondomestic_meters(census))
demand = synthesize_demand(templates, calendar, census, CorrectionFactors.paper())
print(f"annual demand {annual_energy(demand):,.0f} MWh, peak {demand.values.max():.1f} MW")

# %% [markdown]
# Correction factors come from a zero-intercept fit of actual against
# calculated annual demand across districts.

# %%
rng = np.random.default_rng(0)
calculated = rng.uniform(1e5, 1e6, 50)
actual = 0.84 * calculated * rng.normal(1, 0.03, 50)
print("factor %.3f, R^2 %.3f" % fit_correction_factor(calculated, actual))
