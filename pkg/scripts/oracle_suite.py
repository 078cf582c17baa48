"""Run the finite-field lemma checks over a grid of (n, q) and print a CSV table.

    python scripts/oracle_suite.py > oracle.csv
    python scripts/oracle_suite.py --degrees 2 3 --orders 2 3 4 --exploratory

Cases with q <= n are skipped unless --exploratory is given, in which case
they run and are reported as exploratory-fail when the conclusion breaks.
"""

import argparse
import csv
import sys
import time

from slmin.errors import HypothesisError, ResourceLimitError
from slmin.oracle.fq import make_field, prime_power
from slmin.oracle.lemmas import (
    verify_center_lemma,
    verify_centerfree_quotient,
    verify_derived_subgroup,
    verify_ut_intersection_lemma,
)

CHECKS = {
    "center": verify_center_lemma,
    "centerfree-quotient": verify_centerfree_quotient,
    "derived-subgroup": verify_derived_subgroup,
}


def main():
    ap = argparse.ArgumentParser(description="finite-field lemma grid")
    ap.add_argument("--degrees", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--orders", type=int, nargs="+", default=[3, 4, 5, 7, 9])
    ap.add_argument("--lemmas", nargs="+", choices=sorted(CHECKS), default=sorted(CHECKS))
    ap.add_argument("--exploratory", action="store_true")
    ap.add_argument("--ut", action="store_true", help="also run the UT-intersection check for F_2<F_4 and F_3<F_9")
    args = ap.parse_args()

    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["lemma", "n", "q", "modulus", "result", "seconds", "note"])
    for n in args.degrees:
        for q in args.orders:
            fq = make_field(*prime_power(q))
            for lemma in args.lemmas:
                t0 = time.perf_counter()
                try:
                    r = CHECKS[lemma](n, fq, args.exploratory)
                except HypothesisError as exc:
                    writer.writerow([lemma, n, q, fq.modulus_str(), "skipped", "", str(exc)])
                    continue
                except ResourceLimitError as exc:
                    writer.writerow([lemma, n, q, fq.modulus_str(), "too-large", "", str(exc)])
                    continue
                writer.writerow([lemma, n, q, fq.modulus_str(), r.result, f"{time.perf_counter() - t0:.2f}", ""])
    if args.ut:
        for p, e in ((2, 2), (3, 2)):
            t0 = time.perf_counter()
            r = verify_ut_intersection_lemma(3, p, e)
            writer.writerow(["ut-intersection", 3, p**e, r.fq.modulus_str(), r.result, f"{time.perf_counter() - t0:.2f}", f"{r.details['checked']} elements"])


if __name__ == "__main__":
    main()
