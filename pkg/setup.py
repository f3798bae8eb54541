#!/usr/bin/env python3

# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

import os.path
import sys

import setuptools

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "boundlur"))
from version import VERSION  # isort:skip noqa


with open("README.md", encoding="utf8") as f:
    readme = f.read()

with open("LICENSE") as f:
    license = f.read()

with open("requirements.txt") as f:
    reqs = f.read()

DISTNAME = "boundlur"
DESCRIPTION = (
    "boundlur: local uncertainty violation by 3x3 bound entangled states"
)
LONG_DESCRIPTION = readme
AUTHOR = "boundlur contributors"
LICENSE = license
REQUIREMENTS = reqs.strip().split("\n")
DEFAULT_EXCLUSION = ["test", "test.*", "examples", "examples.*"]


if __name__ == "__main__":
    setuptools.setup(
        name=DISTNAME,
        install_requires=REQUIREMENTS,
        packages=setuptools.find_packages(exclude=DEFAULT_EXCLUSION),
        version=VERSION,
        description=DESCRIPTION,
        long_description=LONG_DESCRIPTION,
        long_description_content_type="text/markdown",
        author=AUTHOR,
        license=LICENSE,
        python_requires=">=3.7",
        setup_requires=["pytest-runner"],
        tests_require=["pytest"],
        include_package_data=True,
        entry_points={
            "console_scripts": ["boundlur = boundlur.run:main"]
        },
    )
