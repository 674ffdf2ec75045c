#!/usr/bin/env python3
"""Run every canned experiment configuration in one go.

Synthetic configurations (1, 2, 3, 7) always run; the batched ones need
local data directories and are skipped unless paths are given.

    python3 scripts/reproduce_all.py --out-dir results
    python3 scripts/reproduce_all.py --out-dir results \
        --bearing-dir /data/bearing --industry-dir /data/industry
"""

import argparse

from streamarima.cli import main as cli


def run(argv):
    print("+ streamarima " + " ".join(argv))
    code = cli(argv)
    if code != 0:
        raise SystemExit(code)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--trials", type=int, default=None, help="override trial counts")
    ap.add_argument("--bearing-dir", default=None, help="enables configurations 4 and 5")
    ap.add_argument("--industry-dir", default=None, help="enables configuration 6")
    args = ap.parse_args()

    extra = [] if args.trials is None else ["--trials", str(args.trials)]
    for fid in (1, 2, 3, 7):
        run(["reproduce", str(fid), "--out-dir", args.out_dir, *extra])
    if args.bearing_dir:
        for fid in (4, 5):
            run(["reproduce", str(fid), "--data", args.bearing_dir,
                 "--out-dir", args.out_dir, *extra])
    if args.industry_dir:
        run(["reproduce", "6", "--data", args.industry_dir,
             "--out-dir", args.out_dir, *extra])
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
