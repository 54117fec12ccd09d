#!/usr/bin/env python3
"""Run every experiment family and collect the CSV outputs in one place.

Produces the inputs the plotting package consumes: the single-mirror flux
spectra at three temperatures with the matrix-solver cross-check, the
tuned/detuned and two-mode resonator spectra, two-photon correlations,
the coherence trace, squeezing spectra with PO reference curves, and the
PO equivalence report.

Usage: python scripts/run_all_figures.py [--out DIR] [--config PATH]
"""

import argparse
import pathlib
import sys

from dcesim.cli import main as dcesim_main

ROOT = pathlib.Path(__file__).resolve().parent.parent


def run(argv):
    code = dcesim_main(argv)
    if code != 0:
        print(f"command failed ({code}): {' '.join(argv)}", file=sys.stderr)
        sys.exit(code)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out", help="output directory")
    parser.add_argument("--config", default=str(ROOT / "configs" / "squid_cpw.toml"))
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    cfg = ["--config", args.config]

    run(["mirror-spectrum", *cfg, "--out", str(out / "mirror_spectrum.csv"),
         "--temperature-mk", "0,25,50"])
    run(["resonator-spectrum", *cfg, "--out", str(out / "resonator_spectrum.csv"),
         "--mode-frequency", "0.5,0.4", "--q0", "20", "--temperature-mk", "25"])
    run(["resonator-spectrum", *cfg, "--out", str(out / "resonator_two_mode.csv"),
         "--mode-frequency", "", "--two-mode", "--q0", "50", "--temperature-mk", "10"])
    run(["correlations", *cfg, "--out", str(out / "correlations.csv"),
         "--drive-ratio", "0.02"])
    run(["g2", *cfg, "--out", str(out / "g2.csv"), "--drive-ratio", "0.05"])
    run(["squeezing", *cfg, "--out", str(out / "squeezing.csv")])
    run(["numsolve", *cfg, "--out", str(out / "numsolve.csv"),
         "--temperature-mk", "0,25"])
    run(["po-compare", *cfg, "--out", str(out / "po_compare.csv")])


if __name__ == "__main__":
    main()
