# %% [markdown]
# # Optimal sizing as costs fall, 2019-2100
#
# The design space is built once; only the prices change from year to year.

# %%
from pvsizing import CostAssumptions, CostProjection, SearchConfig, StorageParams, multi_year_sweep
from pvsizing.scenarios import synthetic_week

D, F, price = synthetic_week()
results = multi_year_sweep(D, F, StorageParams(), SearchConfig(), CostAssumptions(),
                           CostProjection.paper(), price)

# %%
last = None
for r in results:
    key = (r.point.c_pv, r.point.c_s)
    if key != last:
        print(f"{r.year}: PV {r.point.c_pv:6.1f} MW, storage {r.point.c_s:6.1f} MWh, "
              f"grid {100 * r.grid_share:5.1f} %, LCOE {r.point.lcoe:5.2f} EUR/MWh")
        last = key

# %% [markdown]
# Between anchor years the cost multipliers are interpolated linearly by
# default; `CostProjection.paper("geometric")` uses a constant annual rate
# instead.

# %%
for year in (2030, 2050, 2074, 2100):
    print(year, CostProjection.paper().multipliers(year), CostProjection.paper("geometric").multipliers(year))
