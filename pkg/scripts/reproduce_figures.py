"""Run every experiment preset and write one plot-ready CSV per study."""
import csv
import sys
from pathlib import Path

from confint.config import get_config
from confint.models.coverage import CURVE_COLUMNS, DETAIL_COLUMNS, Family, curves_to_rows
from confint.services.coverage import CoverageService
from confint.utils.output import format_number

OUT_DIR = Path(__file__).resolve().parent.parent / "data" / "figures"


def write_rows(path, rows, columns):
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_number(row.get(c)) for c in columns])
    print(f"  wrote {len(rows)} rows to {path}")


def run_preset(service, config, name, out_dir):
    preset = config.get_preset(name)
    if preset.family == Family.BINOM_LENGTHS:
        max_rows, sweep_rows = service.binom_max_lengths(preset, sweep_n=100)
        max_rows.sort(key=lambda r: (r["method"], r["n"]))
        sweep_rows.sort(key=lambda r: (r["method"], r["p_hat"]))
        write_rows(out_dir / f"{name}-max.csv", max_rows, ["n", "method", "max_length", "p_hat"])
        write_rows(out_dir / f"{name}-sweep.csv", sweep_rows, ["p_hat", "method", "length"])
        return
    curves = service.run(preset)
    details = preset.family != Family.BINOM_EXACT
    columns = CURVE_COLUMNS + (DETAIL_COLUMNS if details else [])
    write_rows(out_dir / f"{name}.csv", curves_to_rows(curves, details), columns)


def main():
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else OUT_DIR
    out_dir.mkdir(parents=True, exist_ok=True)
    config = get_config()
    service = CoverageService()
    names = sys.argv[2:] or config.preset_names
    for name in names:
        print(f"=== {name} ===")
        run_preset(service, config, name, out_dir)


if __name__ == "__main__":
    main()
