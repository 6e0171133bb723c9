# %% [markdown]
# # Sizing storage from the unconstrained profile
#
# Start from a four-hour toy: flat 1 MW demand and a capacity factor that is
# only non-zero in the middle two hours.

# %%
import numpy as np

from pvsizing import (
    StorageParams,
    difference_matrix,
    find_critical_points,
    generation_profile,
    max_pv_capacity,
    simulate,
    size_storage,
    storage_size_oracle,
    sustainable_start,
    unconstrained_profile,
)
from pvsizing.scenarios import synthetic_week, toy_day

D, F = toy_day()
lossless = StorageParams(eta_c=1.0, eta_d=1.0, dod=1.0)
c_max = max_pv_capacity(D, F)
print("PV bound:", c_max, "MW")

# %% [markdown]
# At the PV bound the running surplus/deficit, with no capacity limits, is:

# %%
G = generation_profile(F, c_max)
prof = unconstrained_profile(D, G, lossless)
print("levels:", prof.levels)
cps = find_critical_points(prof)
print("critical hours:", cps.times)
print(difference_matrix(cps, prof.start_level, prof.end_level))
print("storage size:", size_storage(prof), "MWh (brute force:", storage_size_oracle(prof), ")")

# %% [markdown]
# Now a week with realistic shapes and 80 % charge/discharge efficiency.
# Above the PV size that balances the week, storage sized this way carries
# the system without any grid import, and the level touches both empty and
# full.

# %%
D, F, _ = synthetic_week()
p = StorageParams()
for c_pv in (150.0, 250.0, 350.0):
    G = generation_profile(F, c_pv)
    e = size_storage(unconstrained_profile(D, G, p))
    r = simulate(D, G, e, p, sustainable_start(D, G, e, p))
    print(f"{c_pv:5.0f} MW PV -> {e:7.1f} MWh storage, import {r.grid_import.values.sum():8.2f} MWh, "
          f"level range [{r.storage_levels.min():.2f}, {r.storage_levels.max():.2f}]")
