#!/usr/bin/env python3
"""Render the two mode figure; see dceplots.figures for the CSV order."""

import sys

from dceplots.figures import main_two_mode

if __name__ == "__main__":
    sys.exit(main_two_mode())
