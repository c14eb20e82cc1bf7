#!/usr/bin/env python3
"""Run the full battery of verification suites and write one JSON report
per suite into reports/ (created next to the working directory).

This drives the same code paths as `dlchar verify ...`; it exists so the
whole verification program is reproducible with a single command:

    python3 scripts/run_suites.py [--fast]

--fast skips the slowest large-field runs (SL_2(F_5) twisted and the
GL_2(F_4)/GL_2(F_5) springer-chars sweeps).
"""

import argparse
import os
import sys
import time

from dlchar.cli import main as cli_main

FULL = [
    ["verify", "rel-bruhat", "--type", "A1"],
    ["verify", "rel-bruhat", "--type", "A2"],
    ["verify", "rel-bruhat", "--type", "A3"],
    ["verify", "rel-bruhat", "--type", "A4"],
    ["verify", "rel-bruhat", "--type", "B2"],
    ["verify", "rel-bruhat", "--type", "B3"],
    ["verify", "rel-bruhat", "--type", "C3"],
    ["verify", "rel-bruhat", "--type", "D4"],
    ["verify", "howlett-lehrer", "--family", "SL", "--n", "2", "--q", "2"],
    ["verify", "howlett-lehrer", "--family", "SL", "--n", "2", "--q", "3"],
    ["verify", "howlett-lehrer", "--family", "SL", "--n", "2", "--q", "4"],
    ["verify", "howlett-lehrer", "--family", "SL", "--n", "2", "--q", "5"],
    ["verify", "howlett-lehrer", "--family", "GL", "--n", "2", "--q", "2"],
    ["verify", "howlett-lehrer", "--family", "GL", "--n", "2", "--q", "3"],
    ["verify", "howlett-lehrer", "--family", "GL", "--n", "2", "--q", "4"],
    ["verify", "howlett-lehrer", "--family", "GL", "--n", "3", "--q", "2",
     "--composition", "1,2"],
    ["verify", "springer-convolution", "--family", "SL", "--n", "2", "--q", "3"],
    ["verify", "springer-convolution", "--family", "SL", "--n", "2", "--q", "5"],
    ["verify", "springer-convolution", "--family", "GL", "--n", "2", "--q", "3"],
    ["verify", "double-trace", "--family", "GL", "--n", "3", "--q", "2"],
    ["verify", "double-trace", "--family", "GL", "--n", "2", "--q", "3"],
    ["verify", "indep-rational", "--family", "GL", "--n", "3", "--q", "2",
     "--composition", "1,2"],
    ["verify", "indep-rational", "--family", "GL", "--n", "3", "--q", "3",
     "--composition", "1,2"],
    ["verify", "indep-twisted", "--family", "SL", "--n", "2", "--q", "2"],
    ["verify", "indep-twisted", "--family", "SL", "--n", "2", "--q", "3"],
    ["verify", "orthogonality", "--family", "SL", "--n", "2", "--q", "3"],
    ["verify", "orthogonality", "--family", "GL", "--n", "2", "--q", "3"],
    ["verify", "springer-chars", "--family", "GL", "--n", "2", "--q", "3"],
]

SLOW = [
    ["verify", "indep-twisted", "--family", "SL", "--n", "2", "--q", "5"],
    ["verify", "springer-chars", "--family", "GL", "--n", "2", "--q", "4"],
    ["verify", "springer-chars", "--family", "GL", "--n", "2", "--q", "5"],
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--fast", action="store_true",
                    help="skip the slowest large-field suites")
    ap.add_argument("--reports", default="reports")
    args = ap.parse_args()
    os.makedirs(args.reports, exist_ok=True)
    jobs = FULL + ([] if args.fast else SLOW)
    failures = 0
    for argv in jobs:
        name = "_".join(a.lstrip("-") for a in argv[1:]).replace(",", "")
        out = os.path.join(args.reports, f"{name}.json")
        t0 = time.time()
        code = cli_main(argv + ["--out", out])
        status = "ok" if code == 0 else f"EXIT {code}"
        print(f"{name}: {status} ({time.time() - t0:.1f}s)", flush=True)
        if code != 0:
            failures += 1
    print(f"{len(jobs)} suites, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
