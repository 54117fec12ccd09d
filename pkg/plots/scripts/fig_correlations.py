#!/usr/bin/env python3
"""Render the correlations figure; see dceplots.figures for the CSV order."""

import sys

from dceplots.figures import main_correlations

if __name__ == "__main__":
    sys.exit(main_correlations())
