"""confint CLI: entry point.

Construct confidence intervals and evaluate their coverage probability
and length by exact enumeration or Monte-Carlo simulation.
"""

from __future__ import annotations

import logging

import typer

from confint.commands.ci_cmd import app as ci_app
from confint.commands.coverage_cmd import app as coverage_app

app = typer.Typer(
    name="confint",
    help="Construct confidence intervals and evaluate their coverage.",
    no_args_is_help=True,
)

# Register command groups
app.add_typer(ci_app, name="ci")
app.add_typer(coverage_app, name="coverage")


@app.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable verbose logging"),
) -> None:
    """confint: confidence intervals and their coverage."""
    if verbose:
        logging.basicConfig(level=logging.INFO, format="%(levelname)s: %(message)s")


if __name__ == "__main__":
    app()
