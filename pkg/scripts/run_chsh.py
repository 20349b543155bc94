#!/usr/bin/env python3
"""CHSH at the canonical angles (0, 45, 22.5, 67.5 degrees), photon counts."""

import sys

from bellsim.cli import main

if __name__ == "__main__":
    argv = ["chsh", "--trials", "1000000", "--mode", "poisson"] + sys.argv[1:]
    sys.exit(main(argv))
