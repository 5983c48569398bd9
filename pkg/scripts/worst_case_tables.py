"""Regenerate the worst-case trend tables as CSV.

Three tables land in the output directory:

  narrowband_n_sweep.csv   closed-form worst case over N for several B
  wideband_b_sweep.csv     designed worst case over B with L = 2N
  zone_count_saturation.csv  designed worst case over L at N = 32

The wideband rows run the full design pipeline per cell; the whole thing
is a couple of minutes at the default desk scale.
"""

import argparse
import csv
import pathlib
import time

from widebeam import SystemConfig, build_codebook, evaluate, sweep
from widebeam.storage import write_sweep_csv


def narrowband_table(out: pathlib.Path) -> None:
    cfg = SystemConfig(f_c=140e9, B=10e9, N=16, L=200)
    rows = sweep(cfg, "narrowband",
                 n_values=range(10, 141, 10),
                 b_values=[2e9, 6e9, 10e9, 14e9, 18e9])
    write_sweep_csv(out / "narrowband_n_sweep.csv", rows)
    print(f"narrowband_n_sweep.csv: {len(rows)} rows")


def wideband_table(out: pathlib.Path, n_values, b_values) -> None:
    rows = []
    for n in n_values:
        cfg = SystemConfig(f_c=140e9, B=10e9, N=n, L=2 * n)
        t0 = time.perf_counter()
        rows += sweep(cfg, "wideband", [n], b_values)
        print(f"wideband N={n} L={2 * n}: {time.perf_counter() - t0:.1f}s")
    write_sweep_csv(out / "wideband_b_sweep.csv", rows)


def saturation_table(out: pathlib.Path) -> None:
    with open(out / "zone_count_saturation.csv", "w", encoding="utf-8",
              newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["L", "worst_case"])
        for l in (64, 96, 128):
            cfg = SystemConfig(f_c=140e9, B=10e9, N=32, L=l)
            worst = evaluate(cfg, build_codebook(cfg)).worst_case
            writer.writerow([l, f"{worst:.17g}"])
            print(f"saturation L={l}: worst {worst:.4f}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default="results")
    parser.add_argument("--skip-wideband", action="store_true",
                        help="closed-form tables only")
    args = parser.parse_args()
    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    narrowband_table(out)
    if not args.skip_wideband:
        wideband_table(out, n_values=(8, 16, 24, 32),
                       b_values=[2e9, 6e9, 10e9, 14e9, 18e9])
        saturation_table(out)
    print(f"tables written to {out}/")
