# Copyright 2026 The vc-ergm developers
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.


from __future__ import absolute_import
from __future__ import print_function

from vc_ergm.version import VCERGM_VERSION, VCERGM_NAME, \
    VCERGM_DESCRIPTION, VCERGM_LONG_DESCRIPTION, AUTHORS


def default_build():
    from setuptools import setup

    setup(
        name=VCERGM_NAME,
        description=VCERGM_DESCRIPTION,
        long_description=VCERGM_LONG_DESCRIPTION,
        author=AUTHORS,
        license="GPLv3+",
        packages=["vc_ergm"],
        version=VCERGM_VERSION,
        python_requires=">=3.6",
        install_requires=["numpy>=1.17", "scipy>=1.4", "six"],
        extras_require={"test": ["pytest"]},
        scripts=["vc-ergm.py"],
        entry_points={"console_scripts": ["vc-ergm = vc_ergm.cli:main"]},
        data_files=[('share/doc/vc-ergm', ['README.md'])],
    )


default_build()
