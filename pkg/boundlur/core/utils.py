#!/usr/bin/env python3

# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

import json
from typing import Any, Sequence

import numpy as np

# Internals from inner json library needed for patching functionality in
# PreciseFloatJSONEncoder.
try:
    from _json import encode_basestring_ascii
except ImportError:
    encode_basestring_ascii = None
try:
    from _json import encode_basestring
except ImportError:
    encode_basestring = None

SIGNIFICANT_DIGITS = 17


def format_float(value: float, digits: int = SIGNIFICANT_DIGITS) -> str:
    r"""Scientific notation with :p:`digits` significant digits.

    ``format`` is locale independent, so the decimal separator is always
    '.'. Seventeen digits round-trip any double exactly.
    """
    assert digits >= 1, "at least one significant digit is required"
    return format(float(value), ".{}e".format(digits - 1))


def format_row(values: Sequence[float], digits: int = SIGNIFICANT_DIGITS):
    return ",".join(format_float(v, digits) for v in values)


def unit_interval_validator(self, attribute, value):
    if not 0.0 <= value <= 1.0:
        raise ValueError(
            f"Argument '{attribute.name}' must lie in [0, 1], got {value}"
        )


def noise_weight_validator(self, attribute, value):
    if not 0.0 <= value < 1.0:
        raise ValueError(
            f"Argument '{attribute.name}' must lie in [0, 1), got {value}"
        )


class Singleton(type):
    _instances = {}

    def __call__(cls, *args, **kwargs):
        if cls not in cls._instances:
            cls._instances[cls] = super(Singleton, cls).__call__(
                *args, **kwargs
            )
        return cls._instances[cls]


class PreciseFloatJSONEncoder(json.JSONEncoder):
    r"""JSON Encoder that writes every float with a fixed number of
    significant digits and encodes complex ndarrays as ``[re, im]`` pairs.
    The encoder is compatible with JSON version 2.0.9.
    """

    def __init__(self, *args, digits: int = SIGNIFICANT_DIGITS, **kwargs):
        super().__init__(*args, **kwargs)
        self.digits = digits

    def default(self, object: Any):
        # JSON doesn't support numpy ndarray and complex numbers
        if isinstance(object, np.ndarray):
            if np.iscomplexobj(object):
                return np.stack([object.real, object.imag], axis=-1).tolist()
            return object.tolist()
        if isinstance(object, (complex, np.complexfloating)):
            return [float(object.real), float(object.imag)]
        if isinstance(object, np.floating):
            return float(object)
        if isinstance(object, np.integer):
            return int(object)

        return (
            object.__getstate__()
            if hasattr(object, "__getstate__")
            else object.__dict__
        )

    # Overriding method to inject own `_repr` function for floats with needed
    # precision.
    def iterencode(self, o, _one_shot=False):

        if self.check_circular:
            markers = {}
        else:
            markers = None
        if self.ensure_ascii:
            _encoder = encode_basestring_ascii
        else:
            _encoder = encode_basestring

        def floatstr(
            o,
            allow_nan=self.allow_nan,
            _repr=lambda x: format_float(x, self.digits),
            _inf=float("inf"),
            _neginf=-float("inf"),
        ):
            if o != o:
                text = "NaN"
            elif o == _inf:
                text = "Infinity"
            elif o == _neginf:
                text = "-Infinity"
            else:
                return _repr(o)

            if not allow_nan:
                raise ValueError(
                    "Out of range float values are not JSON compliant: "
                    + repr(o)
                )

            return text

        _iterencode = json.encoder._make_iterencode(
            markers,
            self.default,
            _encoder,
            self.indent,
            floatstr,
            self.key_separator,
            self.item_separator,
            self.sort_keys,
            self.skipkeys,
            _one_shot,
        )
        return _iterencode(o, 0)
