#!/usr/bin/env python3

# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

import attr

from boundlur.core.numerics import (
    PSD_FLOOR,
    eig_hermitian,
    partial_transpose_a,
    partial_transpose_b,
)
from boundlur.states.bound_state import BipartiteState


@attr.s(auto_attribs=True, frozen=True)
class PptReport:
    r"""Outcome of the partial transpose test.

    :data min_eigenvalue: smallest eigenvalue of the partial transpose.
    :data is_ppt: :py:`True` iff ``min_eigenvalue >= -tolerance``.
    :data side: which factor was transposed.
    """

    min_eigenvalue: float
    is_ppt: bool
    side: int = 2


def ppt_check(
    state: BipartiteState, side: int = 2, tol: float = PSD_FLOOR
) -> PptReport:
    r"""Positivity of the partial transpose of :p:`state`.

    The two partial transposes differ by a global transpose and share their
    spectrum; side 2 is the one used throughout the toolkit, side 1 is kept
    for cross-checking that equivalence.
    """
    if side == 2:
        transposed = partial_transpose_b(state.rho)
    elif side == 1:
        transposed = partial_transpose_a(state.rho)
    else:
        raise ValueError("side must be 1 or 2, got {}".format(side))
    lowest = eig_hermitian(transposed).min()
    return PptReport(min_eigenvalue=lowest, is_ppt=lowest >= -tol, side=side)
