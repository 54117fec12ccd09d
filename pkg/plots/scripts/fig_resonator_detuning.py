#!/usr/bin/env python3
"""Render the resonator detuning figure; see dceplots.figures for the CSV order."""

import sys

from dceplots.figures import main_resonator_detuning

if __name__ == "__main__":
    sys.exit(main_resonator_detuning())
