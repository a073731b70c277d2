"""
Where the rack force comes from
===============================

Split the crowned-road rack force into a steering part, a road part and what
is left over when both act together.
"""

# %%
import numpy as np

from rackforce import default_config
from rackforce.estimator import decompose
from rackforce.metrics import nmae
from rackforce.scenarios import gen_experiment1

cfg = default_config()
s = gen_experiment1()
dec = decompose("bt", s.delta, s.road, s.u, cfg.vehicle, cfg.tire_bt)

# %%
for name, col in dec.columns().items():
    print(f"{name:12s} min {col.min():8.1f} N  max {col.max():8.1f} N")

# %%
# The residual measures how far the model is from superposition. With small
# slip the tire is nearly linear, so the two single-input runs explain almost
# everything.
summed = dec.rf_steering.samples + dec.rf_road.samples
print(f"residual NMAE {nmae(dec.rf_total, summed):.2f} %")
print(f"largest residual {np.abs(dec.residual.samples).max():.1f} N")
