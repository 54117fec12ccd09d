#!/usr/bin/env python3
"""Render the mirror flux figure; see dceplots.figures for the CSV order."""

import sys

from dceplots.figures import main_mirror_flux

if __name__ == "__main__":
    sys.exit(main_mirror_flux())
