#!/usr/bin/env python3

# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

from typing import List, Optional, Union

import yacs.config


# Default boundlur config node
class Config(yacs.config.CfgNode):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs, new_allowed=True)


CN = Config

CONFIG_FILE_SEPARATOR = ","

# -----------------------------------------------------------------------------
# Config definition
# -----------------------------------------------------------------------------
_C = CN()
_C.SEED = 42
_C.LOG_FILE = ""
_C.SHOW_PROGRESS = False
# -----------------------------------------------------------------------------
# ASYMMETRIC FRAME
# -----------------------------------------------------------------------------
_C.FRAME = CN()
# -1.0 is the orientation of G_z that attains the correlation maximum under
# the (|+1>, |0>, |-1>) ordering; +1.0 gives the opposite orientation.
_C.FRAME.GZ_SIGN = -1.0
# -----------------------------------------------------------------------------
# OUTPUT
# -----------------------------------------------------------------------------
_C.OUTPUT = CN()
_C.OUTPUT.SIGNIFICANT_DIGITS = 17
# -----------------------------------------------------------------------------
# VERIFY
# -----------------------------------------------------------------------------
_C.VERIFY = CN()
_C.VERIFY.TOLERANCE = 1e-10
_C.VERIFY.CHECKS = [
    "generator_algebra",
    "purity_identity",
    "uncertainty_sum",
    "asymmetric_frame",
    "correlation_total",
    "mismatch_closed_form",
    "violation_identity",
    "separable_bound",
    "ppt_grid",
    "noise_threshold",
]
_C.VERIFY.NUM_RANDOM_STATES = 1000
_C.VERIFY.NUM_ROTATIONS = 100
_C.VERIFY.NUM_SEPARABLE = 10000
_C.VERIFY.MAX_COMPONENTS = 9
_C.VERIFY.A_GRID_STEPS = 101
_C.VERIFY.PPT_GRID_STEPS = 1001
_C.VERIFY.NOISE_POINTS = [0.2, 0.3077, 0.5]
# a of the aligned pairing applied to separable samples
_C.VERIFY.SEPARABLE_A = 0.3077
# separable samples are compared against this floor on the LUR sum
_C.VERIFY.SEPARABLE_FLOOR = 1e-9
# -----------------------------------------------------------------------------
# SWEEP
# -----------------------------------------------------------------------------
_C.SWEEP = CN()
_C.SWEEP.A_MIN = 0.0
_C.SWEEP.A_MAX = 1.0
_C.SWEEP.STEPS = 1001
_C.SWEEP.P_NOISE = 0.0
_C.SWEEP.OUT = "sweep.csv"
_C.SWEEP.NUM_WORKERS = 1
# -----------------------------------------------------------------------------
# OPTIMIZE
# -----------------------------------------------------------------------------
_C.OPTIMIZE = CN()
_C.OPTIMIZE.TOL = 1e-8
# -----------------------------------------------------------------------------
# STATE EXPORT
# -----------------------------------------------------------------------------
_C.STATE = CN()
_C.STATE.A = 0.3077
_C.STATE.P_NOISE = 0.0
_C.STATE.FORMAT = "csv"
# empty string writes to stdout
_C.STATE.OUT = ""
# -----------------------------------------------------------------------------
# NOISE
# -----------------------------------------------------------------------------
_C.NOISE = CN()
_C.NOISE.A = 0.3077
_C.NOISE.DELTA = 1e-4
_C.NOISE.XTOL = 1e-12
_C.NOISE.BRACKET = [0.0, 0.5]
_C.NOISE.NUMERIC_AGREEMENT = 1e-6
# smallest violation whose sign is trusted
_C.NOISE.RESOLUTION = 1e-12


def get_config(
    config_paths: Optional[Union[List[str], str]] = None,
    opts: Optional[list] = None,
) -> CN:
    r"""Create a unified config with default values overwritten by values from
    :p:`config_paths` and overwritten by options from :p:`opts`.

    :param config_paths: List of config paths or string that contains comma
        separated list of config paths.
    :param opts: Config options (keys, values) in a list (e.g., passed from
        command line into the config. For example,
        :py:`opts = ['SWEEP.STEPS', 101]`. Argument can be used for parameter
        sweeping or quick tests.
    """
    config = _C.clone()
    if config_paths:
        if isinstance(config_paths, str):
            if CONFIG_FILE_SEPARATOR in config_paths:
                config_paths = config_paths.split(CONFIG_FILE_SEPARATOR)
            else:
                config_paths = [config_paths]

        for config_path in config_paths:
            config.merge_from_file(config_path)

    if opts:
        config.merge_from_list(opts)

    config.freeze()
    return config
