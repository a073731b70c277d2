"""Vehicle-and-tire-model rack-force estimation and decomposition."""

__version__ = "0.1.0"

from .config import Config, default_config, load_config
from .dynamics import AxleForces, VehicleState, deriv_full, deriv_small_angle, normal_forces, step_rk4
from .enveloping import EffectiveRoadPoint, envelope_road
from .errors import (AlignmentError, ConfigError, InvalidInputError, InvalidSlipError, NumericalError,
                     RackForceError, SpeedTooLowError)
from .estimator import Decomposition, EstimationResult, EstimatorKind, decompose, run_estimator
from .metrics import MetricReport, nmae
from .oracle import OracleParams, decompose_oracle, run_oracle
from .scenarios import Scenario, gen_experiment1, gen_experiment2, gen_experiment3
from .signals import (Cleat, RoadProfile, SignalTrace, TireParamsBT, TireParamsLT, TireParamsRR,
                      VehicleParams, resample, validate_params)
from .tires import SlipAngles, TireOutputs, bt_tire, lt_tire, rr_tire, slip_angles
