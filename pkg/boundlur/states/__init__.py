#!/usr/bin/env python3

# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

from boundlur.states.bound_state import (
    BipartiteState,
    StateParams,
    local_bloch,
    make_bound_state,
    mix_with_white_noise,
    sample_separable,
)

__all__ = [
    "BipartiteState",
    "StateParams",
    "local_bloch",
    "make_bound_state",
    "mix_with_white_noise",
    "sample_separable",
]
