"""Evaluate the derived non-Shannon inequalities on random distributions and
report the smallest slack seen.  The copy construction is checked on the side.

    python3 scripts/numeric_sweep.py --samples 2000 --max-alphabet 3
"""

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from entroprover.expr import canonical
from entroprover.linform import I
from entroprover.semantics import JointPMF, copy_distribution, entropy_vector, evaluate

TARGETS = {
    "four-variable": "I(C;D) <= I(C;D|A)+I(C;D|B)+I(A;B)+I(C;D|A)+I(A;C|D)+I(A;D|C)",
    "five-variable": "I(C;D) <= I(C;D|A)+I(C;D|B)+I(A;B)+I(C;D|E)+I(E;C|D)+I(E;D|C)",
}


@dataclass
class Config:
    samples: int = 2000
    max_alphabet: int = 3
    seed: int = 0


def main(cfg: Config) -> int:
    rng = np.random.default_rng(cfg.seed)
    status = 0
    for label, text in TARGETS.items():
        f = canonical(text)
        worst = np.inf
        for _ in range(cfg.samples):
            sizes = rng.integers(2, cfg.max_alphabet + 1, size=f.ctx.n)
            worst = min(worst, evaluate(f, entropy_vector(JointPMF.random(f.ctx, sizes, rng))))
        print(f"{label:14s} min slack over {cfg.samples} laws: {worst:.3e}")
        status |= worst < -1e-9

    ctx = canonical("I(A;B|C)").ctx
    worst_cmi = 0.0
    for _ in range(cfg.samples // 10):
        q = copy_distribution(JointPMF.random(ctx, rng.integers(2, cfg.max_alphabet + 1, size=3), rng), "A", ["B"], ["C"])
        h = entropy_vector(q)
        worst_cmi = max(worst_cmi, abs(evaluate(I(q.ctx, q.ctx.bit("A_copy"), q.ctx.mask("AC"), q.ctx.bit("B")), h)))
    print(f"copy construction: max |I(A';A,C|B)| = {worst_cmi:.3e}")
    return int(status)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for field, default in vars(Config()).items():
        ap.add_argument("--" + field.replace("_", "-"), type=type(default), default=default)
    sys.exit(main(Config(**vars(ap.parse_args()))))
