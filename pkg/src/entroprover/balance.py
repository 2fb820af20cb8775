"""Balance checks and the balancing transformation.

A form is balanced for ``v`` when the coefficients of all subsets containing
``v`` sum to zero.  Balancing subtracts ``r_v * H(v | everything else)`` for
every variable, where ``r_v`` is that sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linform import LinForm, iter_bits


def is_balanced_for(f: LinForm, v: str) -> bool:
    return f.coefficient_sum_over(v) == 0


def is_balanced(f: LinForm) -> bool:
    return all(r == 0 for r in balancing_coefficients(f).values())


def balancing_coefficients(f: LinForm) -> dict[str, Fraction]:
    """``{v: r_v}`` for every variable of the context."""
    sums = [Fraction(0)] * f.ctx.n
    for mask, c in f.items():
        for i in iter_bits(mask):
            sums[i] += c
    return dict(zip(f.ctx.names, sums))


@dataclass(frozen=True)
class BalanceResult:
    form: LinForm
    r: dict[str, Fraction]
    steps: int

    @property
    def negative(self) -> list[str]:
        """Variables with ``r_v < 0``; any entry proves the input is not a valid inequality."""
        return [v for v, r in self.r.items() if r < 0]


def balance_report(f: LinForm) -> BalanceResult:
    ctx = f.ctx
    full = ctx.full
    steps = 0
    sums = [Fraction(0)] * ctx.n
    for mask, c in f.items():
        for i in iter_bits(mask):
            sums[i] += c
            steps += 1
    out = f.as_dict()
    for i, r in enumerate(sums):
        if not r:
            continue
        # H(v | rest) = H(full) - H(full - v); the second term vanishes when n == 1
        for mask, sign in ((full, -1), (full & ~(1 << i), 1)):
            if not mask:
                continue
            val = out.get(mask, 0) + sign * r
            if val:
                out[mask] = val
            else:
                out.pop(mask, None)
            steps += 1
    return BalanceResult(LinForm(ctx, out), dict(zip(ctx.names, sums)), steps)


def balance(f: LinForm) -> LinForm:
    return balance_report(f).form


def balance_complexity_witness(f: LinForm) -> int:
    """Coefficient reads and writes performed by :func:`balance`."""
    return balance_report(f).steps
