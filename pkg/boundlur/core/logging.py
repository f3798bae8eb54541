#!/usr/bin/env python3

# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

import logging
import sys
from typing import List, Optional


class BoundLurLogger(logging.Logger):
    r"""Diagnostics logger of the toolkit.

    Numerical results never go through it: reports, CSV rows and state
    exports are written to stdout or files so that they stay byte-stable,
    while this logger writes timestamped progress and warnings to stderr
    (and optionally to a log file).
    """

    def __init__(
        self,
        name,
        level,
        filename=None,
        filemode="a",
        stream=None,
        format=None,
        dateformat=None,
        style="%",
    ):
        super().__init__(name, level)
        if filename is not None:
            handler = logging.FileHandler(filename, filemode)
        else:
            handler = logging.StreamHandler(
                stream if stream is not None else sys.stderr
            )
        self._formatter = logging.Formatter(format, dateformat, style)
        handler.setFormatter(self._formatter)
        super().addHandler(handler)
        self._file_handlers: List[logging.FileHandler] = []

    def add_filehandler(self, log_filename: str) -> logging.FileHandler:
        filehandler = logging.FileHandler(log_filename)
        filehandler.setFormatter(self._formatter)
        self.addHandler(filehandler)
        self._file_handlers.append(filehandler)
        return filehandler

    def close_filehandlers(self) -> None:
        r"""Detach and close every handler added by :ref:`add_filehandler`."""
        for filehandler in self._file_handlers:
            self.removeHandler(filehandler)
            filehandler.close()
        self._file_handlers = []

    def set_verbosity(self, quiet: Optional[bool] = None) -> None:
        self.setLevel(logging.WARNING if quiet else logging.INFO)


logger = BoundLurLogger(
    name="boundlur", level=logging.INFO, format="%(asctime)-15s %(message)s"
)
