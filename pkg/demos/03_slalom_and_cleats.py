"""
Aggressive slalom and a cleat track
===================================

Large steering drives the front tires into sliding, where the linear tire
overestimates the rack force. Short cleats on the road are felt only by the
rigid-ring estimator, through its contact-force channel.
"""

# %%
import numpy as np

from rackforce import default_config
from rackforce.estimator import run_estimator
from rackforce.metrics import baseline_noise, find_excursions, nmae
from rackforce.oracle import OracleParams, run_oracle
from rackforce.scenarios import Experiment3Config, gen_experiment2, gen_experiment3

cfg = default_config()
slalom = gen_experiment2()
ref = run_oracle(slalom.delta, slalom.road, slalom.u, OracleParams(cfg.vehicle, cfg.tire_bt, cfg.sigma_relax))
for kind in ("lt", "bt", "rr"):
    res = run_estimator(kind, slalom.delta, slalom.road, slalom.u, cfg.vehicle, cfg.tire_for(kind))
    print(f"slalom {kind}: NMAE {nmae(ref.rf, res.rf):5.2f} %, peak {np.abs(res.rf.samples).max():6.0f} N")
print(f"slalom reference peak {np.abs(ref.rf.samples).max():6.0f} N")

# %%
# Hold a small steer angle and drive over the thirteen cleats. Comparing each
# run against the same drive without cleats isolates the cleat response.
conf = Experiment3Config(amplitude_deg=0.0, steer_offset_deg=2.0)
bumpy = gen_experiment3(conf)
flat = bumpy.with_road(bumpy.road.without_cleats())
for kind in ("lt", "bt", "rr"):
    a = run_estimator(kind, bumpy.delta, bumpy.road, bumpy.u, cfg.vehicle, cfg.tire_for(kind)).rf.samples
    b = run_estimator(kind, flat.delta, flat.road, flat.u, cfg.vehicle, cfg.tire_for(kind)).rf.samples
    noise = baseline_noise(b, start=int((conf.lead_in + 1.0) * conf.rate_hz))
    hits = find_excursions(a, b, 3 * noise)
    print(f"cleats {kind}: {len(hits):2d} excursions", " ".join(f"{h.peak:.0f}" for h in hits))
