#!/usr/bin/env python3
"""Render the coherence figure; see dceplots.figures for the CSV order."""

import sys

from dceplots.figures import main_coherence

if __name__ == "__main__":
    sys.exit(main_coherence())
