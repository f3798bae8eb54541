#!/usr/bin/env python3

# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.
from boundlur.config.default import Config, get_config

r"""boundlur Configuration
==============================

boundlur uses [Yacs configuration system](https://github.com/rbgirshick/yacs)
so that every tolerance, grid size and seed of a run is spelled out in one
tree. Yacs advantages:
- Checks for type consistency.
- All parameters and default values are searchable in the code.
- A parameter doesn't need to be set always as each parameter can have a
    default value.
- Ability to freeze config to prevent unintended changes.

The defaults live in :ref:`boundlur.config.default`. YAML presets in
``configs/`` override them, and command line flags override both:

.. code:: py

    config = get_config(
        "configs/verify.yaml", opts=["VERIFY.NUM_SEPARABLE", 20000]
    )
"""

__all__ = ["Config", "get_config"]
