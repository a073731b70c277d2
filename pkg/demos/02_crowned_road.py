"""
Crossing a crowned road
=======================

Gentle steering while the road slope swings from one side to the other. All
three estimators track the reference closely here.
"""

# %%
import numpy as np

from rackforce import default_config
from rackforce.estimator import run_estimator
from rackforce.metrics import nmae
from rackforce.oracle import OracleParams, run_oracle
from rackforce.scenarios import gen_experiment1

cfg = default_config()
s = gen_experiment1()
print(f"{s.name}: {len(s.delta)} samples at {s.rate_hz:.0f} Hz, speed {s.u.samples[0]:.2f} m/s")

# %%
ref = run_oracle(s.delta, s.road, s.u, OracleParams(cfg.vehicle, cfg.tire_bt, cfg.sigma_relax))
print(f"reference RF range {ref.rf.samples.min():.0f} .. {ref.rf.samples.max():.0f} N")
for kind in ("lt", "bt", "rr"):
    res = run_estimator(kind, s.delta, s.road, s.u, cfg.vehicle, cfg.tire_for(kind))
    print(f"  {kind}: NMAE {nmae(ref.rf, res.rf):5.2f} %")

# %%
# With only a couple of degrees of steer the slip stays well inside the
# linear range, so tire nonlinearity barely matters.
print(f"peak front slip {np.degrees(abs(ref.slip_f.samples).max()):.2f} deg")
