"""The six standard figure recipes and their command-line entry points.

Each ``main_*`` function takes the input CSV paths produced by the dcesim
CLI plus ``--out``; the order of positional paths is documented per
figure. All physics lives upstream; these scripts only scale axes and
draw.
"""

from __future__ import annotations

import argparse
import sys

from .recipe import Curve, FigureRecipe, RecipeError, render


def mirror_flux_recipe(csv_paths) -> FigureRecipe:
    """Flux spectra at several temperatures: thermal and total per file."""
    if len(csv_paths) != 3:
        raise RecipeError("mirror flux figure takes exactly three temperature CSVs")
    curves = []
    for i, style in enumerate((":", "--", "-")):
        curves.append(
            Curve(i, "n_thermal", f"thermal onset {i}", {"linestyle": style, "color": "tab:red"})
        )
        curves.append(
            Curve(i, "n_total_analytic", f"total {i}", {"linestyle": style, "color": "tab:blue"})
        )
    return FigureRecipe(
        figure_id="mirror-flux",
        csv_paths=tuple(csv_paths),
        curves=tuple(curves),
        x_label="omega / omega_d",
        y_label="n_out",
        title="single-mirror photon-flux density",
    )


def resonator_detuning_recipe(csv_paths) -> FigureRecipe:
    """Tuned and detuned resonator spectra over the mirror reference."""
    if len(csv_paths) < 2:
        raise RecipeError("resonator detuning figure takes at least two scenario CSVs")
    curves = [
        Curve(i, "n_total", f"scenario {i}", {"linewidth": 1.2})
        for i in range(len(csv_paths))
    ]
    curves.append(
        Curve(0, "n_mirror_reference", "single mirror", {"color": "tab:red", "linewidth": 0.9})
    )
    return FigureRecipe(
        figure_id="resonator-detuning",
        csv_paths=tuple(csv_paths),
        curves=tuple(curves),
        x_label="omega / omega_d",
        y_label="n_out",
        title="resonator photon flux: tuned versus detuned",
        log_y=True,
    )


def two_mode_recipe(csv_paths) -> FigureRecipe:
    """Two-mode resonance against a single active mode."""
    if len(csv_paths) != 2:
        raise RecipeError("two-mode figure takes the two-mode CSV and the single-mode CSV")
    return FigureRecipe(
        figure_id="two-mode",
        csv_paths=tuple(csv_paths),
        curves=(
            Curve(0, "n_total", "two active modes", {"color": "tab:blue"}),
            Curve(1, "n_total", "single active mode", {"color": "tab:green"}),
            Curve(0, "n_mirror_reference", "single mirror", {"color": "tab:red", "linewidth": 0.9}),
        ),
        x_label="omega / omega_d",
        y_label="n_out",
        title="two-mode versus single-mode resonance",
        log_y=True,
    )


def correlations_recipe(csv_paths) -> FigureRecipe:
    """Two-photon correlation magnitudes versus detuning."""
    if len(csv_paths) != 1:
        raise RecipeError("correlations figure takes one CSV")
    return FigureRecipe(
        figure_id="correlations",
        csv_paths=tuple(csv_paths),
        curves=(
            Curve(0, "corr_mirror", "mirror, cold input", {"color": "tab:blue"}),
            Curve(
                0,
                "corr_mirror_thermal",
                "mirror, thermal input",
                {"color": "tab:blue", "linestyle": "--"},
            ),
            Curve(0, "corr_resonator", "detuned resonator", {"color": "tab:red"}),
        ),
        x_label="delta omega / omega_d",
        y_label="|pair correlation|",
        title="two-photon correlations",
    )


def coherence_recipe(csv_paths) -> FigureRecipe:
    """Second-order coherence versus delay for both setups."""
    if len(csv_paths) != 1:
        raise RecipeError("coherence figure takes one CSV")
    return FigureRecipe(
        figure_id="coherence",
        csv_paths=tuple(csv_paths),
        curves=(
            Curve(0, "g2_mirror", "mirror", {"color": "tab:blue"}),
            Curve(0, "g2_resonator", "resonator", {"color": "tab:red"}),
        ),
        x_label="tau * omega_d",
        y_label="g2",
        title="second-order coherence",
        log_y=True,
    )


def squeezing_recipe(csv_paths) -> FigureRecipe:
    """Squeezing spectra for both setups with PO reference overlays."""
    if len(csv_paths) != 1:
        raise RecipeError("squeezing figure takes one CSV")
    return FigureRecipe(
        figure_id="squeezing",
        csv_paths=tuple(csv_paths),
        curves=(
            Curve(0, "s_x_minus_mirror", "mirror, squeezed",
                  {"color": "tab:blue", "linestyle": "--"}),
            Curve(0, "s_x_plus_mirror", "mirror, antisqueezed",
                  {"color": "tab:red", "linestyle": "--"}),
            Curve(0, "s_x_minus_resonator", "resonator, squeezed", {"color": "tab:blue"}),
            Curve(0, "s_x_plus_resonator", "resonator, antisqueezed", {"color": "tab:red"}),
            Curve(0, "s_x_minus_po", "PO reference",
                  {"color": "black", "linestyle": ":", "linewidth": 0.8}),
            Curve(0, "s_x_plus_po", "PO reference",
                  {"color": "black", "linestyle": ":", "linewidth": 0.8}),
        ),
        x_label="delta omega / omega_d",
        y_label="S_X",
        title="quadrature squeezing spectra",
    )


RECIPES = {
    "mirror-flux": mirror_flux_recipe,
    "resonator-detuning": resonator_detuning_recipe,
    "two-mode": two_mode_recipe,
    "correlations": correlations_recipe,
    "coherence": coherence_recipe,
    "squeezing": squeezing_recipe,
}


def run_figure(name: str, argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog=f"render-{name}",
        description=f"Render the {name} figure from dcesim CSV outputs",
    )
    parser.add_argument("csv", nargs="+", help="input CSV paths, in recipe order")
    parser.add_argument("--out", required=True, help="output image (png or svg)")
    args = parser.parse_args(argv)
    try:
        recipe = RECIPES[name](args.csv)
        path = render(recipe, args.out)
    except RecipeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(path)
    return 0


def main_mirror_flux(argv=None) -> int:
    return run_figure("mirror-flux", argv)


def main_resonator_detuning(argv=None) -> int:
    return run_figure("resonator-detuning", argv)


def main_two_mode(argv=None) -> int:
    return run_figure("two-mode", argv)


def main_correlations(argv=None) -> int:
    return run_figure("correlations", argv)


def main_coherence(argv=None) -> int:
    return run_figure("coherence", argv)


def main_squeezing(argv=None) -> int:
    return run_figure("squeezing", argv)
