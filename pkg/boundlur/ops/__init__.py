#!/usr/bin/env python3

# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

from boundlur.ops.qutrit import (
    AsymmetricFrame,
    GeneratorBasis,
    SpinOperators,
    make_asymmetric_frame,
    make_canonical_basis,
    make_quadratics,
    make_spin_operators,
    rotate_basis,
)

__all__ = [
    "AsymmetricFrame",
    "GeneratorBasis",
    "SpinOperators",
    "make_asymmetric_frame",
    "make_canonical_basis",
    "make_quadratics",
    "make_spin_operators",
    "rotate_basis",
]
