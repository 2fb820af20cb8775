"""Balance random Shannon-type forms and confirm each stays Shannon-type.

Also records how large the balancing coefficients get and how many
elementals the certificate of the balanced form uses.

    python3 scripts/balance_survey.py --samples 50 --max-n 5
"""

import argparse
import random
import statistics
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from entroprover.balance import balance_report
from entroprover.linform import LinForm, VarContext
from entroprover.shannon import Certificate, check_shannon, elementals, verify_certificate


@dataclass
class Config:
    samples: int = 50
    min_n: int = 2
    max_n: int = 5
    max_terms: int = 10
    seed: int = 0


def random_combination(rng: random.Random, ctx: VarContext, max_terms: int) -> LinForm:
    els = elementals(ctx)
    total = LinForm(ctx)
    for e in rng.sample(els, rng.randint(1, min(max_terms, len(els)))):
        total = total + e.form * Fraction(rng.randint(1, 5), rng.choice([1, 2, 3]))
    return total


def main(cfg: Config) -> int:
    rng = random.Random(cfg.seed)
    bad = 0
    for n in range(cfg.min_n, cfg.max_n + 1):
        ctx = VarContext("ABCDEFGH"[:n])
        sizes, rmax = [], []
        t0 = time.perf_counter()
        for _ in range(cfg.samples):
            res = balance_report(random_combination(rng, ctx, cfg.max_terms))
            verdict = check_shannon(res.form)
            if not (isinstance(verdict, Certificate) and verify_certificate(res.form, verdict)):
                bad += 1
                continue
            sizes.append(len(verdict.terms))
            rmax.append(max(res.r.values()))
        dt = time.perf_counter() - t0
        print(
            f"n={n}  samples={cfg.samples}  shannon={len(sizes)}  "
            f"certificate size median={statistics.median(sizes) if sizes else '-'}  "
            f"max r={max(rmax) if rmax else '-'}  {dt:.1f} s"
        )
    print("all balanced forms Shannon-type" if not bad else f"{bad} balanced forms NOT Shannon-type")
    return 1 if bad else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for field, default in vars(Config()).items():
        ap.add_argument("--" + field.replace("_", "-"), type=type(default), default=default)
    sys.exit(main(Config(**vars(ap.parse_args()))))
