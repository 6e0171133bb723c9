# %% [markdown]
# # The design space
#
# Every PV size from zero to the analytical bound, and for each one every
# storage size from zero to its analytical maximum, dispatched hour by hour.

# %%
from collections import defaultdict

from pvsizing import CostAssumptions, SearchConfig, StorageParams, enumerate_design_space
from pvsizing.optimizer import capital_scale_for, price_point
from pvsizing.profiles import annual_energy
from pvsizing.scenarios import synthetic_week

D, F, price = synthetic_week()
space = enumerate_design_space(D, F, StorageParams(), SearchConfig(), price)
print(len(space), "design points")

# %% [markdown]
# Import along the no-storage row flattens out: past a point, more PV only
# adds midday surplus and the night still comes from the grid.

# %%
rows = defaultdict(list)
for pt in space:
    rows[pt.c_pv].append(pt)
for c_pv in sorted(rows)[::5]:
    pts = rows[c_pv]
    print(f"PV {c_pv:6.1f} MW: import {pts[0].annual_import:8.1f} MWh without storage, "
          f"{pts[-1].annual_import:8.1f} MWh with {pts[-1].c_s:7.1f} MWh capacity")

# %% [markdown]
# Priced at 2019 costs (annualized costs prorated to the one-week horizon):

# %%
demand = annual_energy(D)
priced = [price_point(pt, CostAssumptions(), demand, capital_scale_for(D.horizon)) for pt in space]
best = min(priced, key=lambda d: (d.lcoe, d.c_s, d.c_pv))
print(f"cheapest: {best.c_pv:.0f} MW PV, {best.c_s:.1f} MWh storage, LCOE {best.lcoe:.2f} EUR/MWh")

# %%
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None
if plt is not None:
    fig = plt.figure()
    ax = fig.add_subplot(projection="3d")
    ax.scatter([p.c_pv for p in space], [p.c_s for p in space], [p.annual_import for p in space], s=2)
    ax.set_xlabel("PV (MW)")
    ax.set_ylabel("storage (MWh)")
    ax.set_zlabel("import (MWh)")
    fig.savefig("design_space.png", dpi=120)
