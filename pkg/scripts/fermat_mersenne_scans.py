"""Run the Fermat and Mersenne equivalence scans and write one CSV per scan.

    python scripts/fermat_mersenne_scans.py --fermat-limit 70000 --mersenne-limit 1000 --out results/
"""

import argparse
import csv
import time
from pathlib import Path

from slmin.scans import fermat_scan, mersenne_scan


def write_csv(path, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--fermat-limit", type=int, default=70000)
    ap.add_argument("--mersenne-limit", type=int, default=1000)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    for kind, scan, limit in (("fermat", fermat_scan, args.fermat_limit), ("mersenne", mersenne_scan, args.mersenne_limit)):
        t0 = time.perf_counter()
        report = scan(limit, args.workers)
        elapsed = time.perf_counter() - t0
        path = args.out / f"{kind}_scan_{limit}.csv"
        if report.records:
            write_csv(path, report.to_dict()["records"])
        print(f"{kind}: {len(report.records)} primes <= {limit}, detected {report.detected}, faults {report.faults}, {elapsed:.2f}s -> {path}")
        if report.mersenne_exponents is not None:
            print(f"  Lucas-Lehmer exponents: {report.mersenne_exponents}")


if __name__ == "__main__":
    main()
