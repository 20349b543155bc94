#!/usr/bin/env python3
"""Correlation-vs-angle sweep with defaults matching the desk-scale checks.

Equivalent to:
    bellsim sweep --trials 1000000 --deltas 0:90:13deg --mode intensity
"""

import sys

from bellsim.cli import main

if __name__ == "__main__":
    argv = [
        "sweep",
        "--trials", "1000000",
        "--mean-intensity", "1.0",
        "--deltas", "0:90:13deg",
        "--mode", "intensity",
    ] + sys.argv[1:]
    sys.exit(main(argv))
