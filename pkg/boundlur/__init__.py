#!/usr/bin/env python3

# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

from boundlur.config import Config, get_config
from boundlur.core.logging import logger
from boundlur.core.registry import registry
from boundlur.lur.relations import (
    OperatorPairing,
    ViolationReport,
    evaluate_violation,
    make_aligned_pairing,
)
from boundlur.lur.witnesses import PptReport, ppt_check
from boundlur.ops.qutrit import (
    GeneratorBasis,
    make_asymmetric_frame,
    make_canonical_basis,
)
from boundlur.states.bound_state import (
    BipartiteState,
    StateParams,
    make_bound_state,
    mix_with_white_noise,
)
from boundlur.version import VERSION as __version__  # noqa

__all__ = [
    "BipartiteState",
    "Config",
    "evaluate_violation",
    "GeneratorBasis",
    "get_config",
    "logger",
    "make_asymmetric_frame",
    "make_bound_state",
    "make_canonical_basis",
    "make_aligned_pairing",
    "mix_with_white_noise",
    "OperatorPairing",
    "ppt_check",
    "PptReport",
    "registry",
    "StateParams",
    "ViolationReport",
]
