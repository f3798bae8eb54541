#!/usr/bin/env python3

# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

r"""Registry is the central source of truth of boundlur.

Registry maintains mappings of various information to unique keys. Special
functions in registry can be used as decorators to register different kind of
classes and functions.

Import the global registry object using

.. code:: py

    from boundlur.core.registry import registry

Various decorators for registry different kind of objects with unique keys

-   Register a verification check: ``@registry.register_check``
-   Register a command line subcommand: ``@registry.register_command``
"""

import collections
from typing import Any, Callable, Optional, Type

from boundlur.core.utils import Singleton


class Registry(metaclass=Singleton):
    mapping = collections.defaultdict(dict)

    @classmethod
    def _register_impl(cls, _type, to_register, name, assert_type=None):
        def wrap(to_register):
            if assert_type is not None:
                assert issubclass(
                    to_register, assert_type
                ), "{} must be a subclass of {}".format(
                    to_register, assert_type
                )
            register_name = to_register.__name__ if name is None else name
            assert (
                register_name not in cls.mapping[_type]
            ), "'{}' is already registered as a {}".format(
                register_name, _type
            )

            cls.mapping[_type][register_name] = to_register
            return to_register

        if to_register is None:
            return wrap
        else:
            return wrap(to_register)

    @classmethod
    def register_check(cls, to_register=None, *, name: Optional[str] = None):
        r"""Register a verification check to registry with key :p:`name`

        :param name: Key with which the check will be registered.
            If :py:`None` will use the name of the class

        .. code:: py

            from boundlur.core.registry import registry
            from boundlur.verification.checks import Check

            @registry.register_check(name="my_check")
            class MyCheck(Check):
                pass
        """
        from boundlur.verification.checks import Check

        return cls._register_impl(
            "check", to_register, name, assert_type=Check
        )

    @classmethod
    def register_command(
        cls, to_register=None, *, name: Optional[str] = None
    ):
        r"""Register a command line subcommand with key :p:`name`. The
        registered callable takes the merged config and returns an exit code.

        :param name: Key with which the command will be registered.
            If :py:`None` will use the name of the function
        """
        return cls._register_impl("command", to_register, name)

    @classmethod
    def _get_impl(cls, _type, name):
        return cls.mapping[_type].get(name, None)

    @classmethod
    def get_check(cls, name: str) -> Type[Any]:
        return cls._get_impl("check", name)

    @classmethod
    def get_command(cls, name: str) -> Callable[..., int]:
        return cls._get_impl("command", name)


registry = Registry()
