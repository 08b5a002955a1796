#!/usr/bin/env python3
"""Run the acceptance criteria outside pytest and print one PASS/FAIL line each.

    python3 scripts/run_acceptance.py            # all eleven criteria
    python3 scripts/run_acceptance.py 4 5 9      # a subset
    python3 scripts/run_acceptance.py --json out.json

Exit status is 0 when every selected criterion passes, 1 otherwise.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from acceptance_checks import all_criteria  # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("criteria", nargs="*", type=int, help="criterion numbers (default: all)")
    ap.add_argument("--json", type=Path, help="also write the results as JSON")
    args = ap.parse_args()
    checks = all_criteria(ROOT / "tests" / "fixtures" / "predicates.json")
    selected = args.criteria or sorted(checks)
    results = {}
    for n in selected:
        t = time.perf_counter()
        ok, detail = checks[n]()
        dt = time.perf_counter() - t
        results[n] = {"ok": ok, "detail": detail, "seconds": round(dt, 1)}
        print(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}  [{dt:.1f}s]", flush=True)
    if args.json:
        args.json.write_text(json.dumps(results, indent=2) + "\n")
    return 0 if all(r["ok"] for r in results.values()) else 1


if __name__ == "__main__":
    sys.exit(main())
