"""
Tire curves of the three kernels
================================

Lateral force, pneumatic trail and aligning moment against slip angle for the
linear, brush and rigid-ring tires, all at the static front tire load.
"""

# %%
import numpy as np

from rackforce import default_config
from rackforce.dynamics import normal_forces
from rackforce.tires import bt_tire, lt_tire, rr_tire

cfg = default_config()
F_z = normal_forces(0.0, cfg.vehicle)[0]
print(f"static front tire load: {F_z:.1f} N")

# %%
# At small slip all three share one cornering stiffness, so the curves start
# on top of each other. The brush tire then saturates at mu * F_z while the
# linear tire keeps climbing.
alpha = np.radians(np.arange(0.0, 12.1, 1.0))
print(f"{'alpha deg':>9} {'F_y lt':>9} {'F_y bt':>9} {'F_y rr':>9} {'M_z lt':>8} {'M_z bt':>8} {'M_z rr':>8}")
for a in alpha:
    lt = lt_tire(a, F_z, cfg.tire_lt, True, cfg.vehicle.t_m)
    bt = bt_tire(a, F_z, cfg.tire_bt, True, cfg.vehicle.t_m)
    rr = rr_tire(a, F_z, None, cfg.tire_rr)
    print(f"{np.degrees(a):9.1f} {lt.F_y:9.0f} {bt.F_y:9.0f} {rr.F_y:9.0f} "
          f"{lt.M_zf + 0.0:8.1f} {bt.M_zf + 0.0:8.1f} {rr.M_zf + 0.0:8.1f}")

# %%
# The brush trail vanishes at full sliding, so the moment peaks early and
# falls back to the mechanical-trail share. That drop is what the linear tire
# misses during aggressive steering.
edge = np.degrees(1.0 / cfg.tire_bt.theta_s(F_z))
print(f"brush tire reaches full sliding at {edge:.2f} deg")
