#!/usr/bin/env python3

# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

from boundlur.verification.checks import (
    Check,
    CheckResult,
    CheckSuite,
    make_suite,
)

__all__ = ["Check", "CheckResult", "CheckSuite", "make_suite"]
