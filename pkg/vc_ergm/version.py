#!/usr/bin/python
#
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
#
## this module contains the vc-ergm version variables

from __future__ import print_function

VCERGM_VERSION = "0.4.1"
VCERGM_NAME = "vc-ergm"
VCERGM_DESCRIPTION = "VC-ERGM"
VCERGM_LONG_DESCRIPTION = "Varying-coefficient ERGMs for sequences of " \
                          "binary networks"
AUTHORS = "The vc-ergm developers"
LICENCE = "GNU General Public License, version 3 or later"

# stamped into every artifact written by the command line tool
PROVENANCE = {"tool": VCERGM_NAME, "version": VCERGM_VERSION}

if __name__ == "__main__":
    print("VCERGM_VERSION:         ", VCERGM_VERSION)
    print("VCERGM_NAME:            ", VCERGM_NAME)
    print("VCERGM_DESCRIPTION:     ", VCERGM_DESCRIPTION)
    print("VCERGM_LONG_DESCRIPTION:", VCERGM_LONG_DESCRIPTION)
