"""Run every bundled derivation script and report timing and outcome.

    python3 scripts/reproduce_derivations.py [--verbose]
"""

import argparse
import sys
import time
from dataclasses import dataclass

from entroprover.engine import bundled_scripts, load_script, run_script


@dataclass
class Config:
    verbose: bool = False


def main(cfg: Config) -> int:
    failed = 0
    for name in bundled_scripts():
        t0 = time.perf_counter()
        tr = run_script(load_script(name))
        dt = time.perf_counter() - t0
        print(f"{name:28s} {'ok' if tr.ok else 'FAILED':7s} {dt:6.2f} s  {len(tr.records)} statements")
        if cfg.verbose or not tr.ok:
            print("\n".join("    " + ln for ln in tr.text().splitlines()))
        failed += not tr.ok
    return 1 if failed else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--verbose", action="store_true")
    sys.exit(main(Config(**vars(ap.parse_args()))))
