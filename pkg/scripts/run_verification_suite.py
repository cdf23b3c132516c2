"""Run the structure checks over catalog entries and print one row per entry.

Each row lists the number of simples, the outcome of the balance, lattice and
LCM checks, hypdual where applicable, and a sampled support-preserving check
for entries that are marked as verified.  Mismatches against the catalog's
expected outcomes are flagged and make the script exit with status 1.

    python3 scripts/run_verification_suite.py --samples 300 B4 G24
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
import time

from garside_pc import catalog
from garside_pc.groups import check_hypdual, is_balanced, lattice_check
from garside_pc.parabolic import check_lcm_garside, check_support_preserving


@dataclasses.dataclass
class SuiteConfig:
    names: list
    samples: int = 200
    length: int = 8
    seed: int = 0


def run_entry(name: str, cfg: SuiteConfig) -> tuple[dict, list[str]]:
    start = time.perf_counter()
    e = catalog.entry(name)
    S = e.structure
    row = {
        "balanced": is_balanced(S.interval),
        "lattice": lattice_check(S.interval),
        "lcm_garside": check_lcm_garside(S).passed,
    }
    if "hypdual" in e.expected:
        row["hypdual"] = check_hypdual(S.interval)
    if S.hypotheses_verified and cfg.samples:
        rep = check_support_preserving(S, "sampled", cfg.samples, cfg.length, cfg.seed)
        row["support_preserving"] = rep.passed
    row["seconds"] = round(time.perf_counter() - start, 2)
    mismatches = [k for k, v in row.items() if k in e.expected and e.expected[k] != v]
    return row | {"simples": S.N}, mismatches


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("names", nargs="*", help="catalog names (default: all)")
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--length", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    cfg = SuiteConfig(args.names or catalog.names(), args.samples, args.length, args.seed)
    failed = False
    for name in cfg.names:
        row, bad = run_entry(name, cfg)
        cells = " ".join(f"{k}={v}" for k, v in row.items())
        flag = f"  MISMATCH {bad}" if bad else ""
        print(f"{name:12s} {cells}{flag}")
        failed |= bool(bad)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
