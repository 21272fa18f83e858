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

from __future__ import absolute_import
from __future__ import print_function
import sys
import os

# run from a source checkout without installing
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

#importing printlog() wrapper
from vc_ergm.debug import printlog
from vc_ergm import cli

#-------------- main vc-ergm module -----------------
if __name__ == "__main__":
    if "--profile" in sys.argv:
        sys.argv.remove("--profile")
        printlog("Vcergm", "    : Executing with cprofile")
        import cProfile
        cProfile.run("rc = cli.run()")
    else:
        rc = cli.run()

    sys.exit(rc)
