#!/usr/bin/env python3

# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

import pytest

from boundlur.config.default import get_config

CFG_VERIFY = "configs/test/verify_quick.yaml"
CFG_SWEEP = "configs/test/sweep_test.yaml"
CFG_NEW_KEYS = "configs/test/new_keys_test.yaml"
CFG_LITERAL = "configs/literal_frame.yaml"
MAX_TEST_STEPS = 5


def test_defaults():
    config = get_config()
    assert config.FRAME.GZ_SIGN == -1.0
    assert config.OUTPUT.SIGNIFICANT_DIGITS == 17
    assert config.SWEEP.STEPS == 1001
    assert config.VERIFY.TOLERANCE == 1e-10
    assert config.is_frozen()


def test_merged_configs():
    verify_config = get_config(CFG_VERIFY)
    sweep_config = get_config(CFG_SWEEP)
    merged_config = get_config("{},{}".format(CFG_VERIFY, CFG_SWEEP))
    assert merged_config.SWEEP.STEPS == sweep_config.SWEEP.STEPS
    assert (
        merged_config.VERIFY.NUM_SEPARABLE
        == verify_config.VERIFY.NUM_SEPARABLE
    )
    assert merged_config.SEED == 7


def test_literal_frame_config():
    assert get_config(CFG_LITERAL).FRAME.GZ_SIGN == 1.0


def test_new_keys_merged_configs():
    verify_config = get_config(CFG_VERIFY)
    new_keys_config = get_config(CFG_NEW_KEYS)
    merged_config = get_config("{},{}".format(CFG_VERIFY, CFG_NEW_KEYS))
    assert (
        merged_config.VERIFY.MY_NEW_VERIFY_PARAM
        == new_keys_config.VERIFY.MY_NEW_VERIFY_PARAM
    )
    assert merged_config.SWEEP.NEW_KEY == 20
    assert (
        merged_config.VERIFY.A_GRID_STEPS == verify_config.VERIFY.A_GRID_STEPS
    )


def test_overwrite_options():
    for steps in range(2, MAX_TEST_STEPS):
        config = get_config(
            config_paths=CFG_SWEEP, opts=["SWEEP.STEPS", steps]
        )
        assert (
            config.SWEEP.STEPS == steps
        ), "Overwriting of config options failed."


def test_unknown_option_is_rejected():
    with pytest.raises(AssertionError):
        get_config(opts=["SWEEP.NOT_A_KEY", 1])
