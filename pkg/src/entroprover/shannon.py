"""Shannon-type membership over the elemental inequalities.

The elementals are ``H(X_i | X_rest) >= 0`` and ``I(X_i; X_j | X_K) >= 0``
for ``K`` ranging over subsets of the other ``n - 2`` variables.  Their
conic hull is the Shannon cone; membership is decided by the exact simplex
in :mod:`entroprover.lp`.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from .expr import subset_str
from .linform import H, I, LinForm, VarContext
from .lp import cone_membership

LP_MAX_VARS = 8


def lp_max_vars() -> int:
    raw = os.environ.get("ENTROPROVER_MAX_N")
    if not raw:
        return LP_MAX_VARS
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"ENTROPROVER_MAX_N must be an integer, got {raw!r}") from None
    return max(1, min(cap, LP_MAX_VARS))


def _check_n(n: int) -> None:
    cap = lp_max_vars()
    if not 1 <= n <= cap:
        raise ValueError(f"LP supports 1 <= n <= {cap} variables, got {n}")


@dataclass(frozen=True)
class Elemental:
    id: int
    kind: str  # "node" or "pair"
    i: int
    j: int
    cond: int
    form: LinForm

    @property
    def description(self) -> str:
        ctx = self.form.ctx
        if self.kind == "node":
            rest = ctx.full & ~(1 << self.i)
            s = ctx.names[self.i]
            return f"H({s}|{subset_str(ctx, rest)})" if rest else f"H({s})"
        a, b = ctx.names[self.i], ctx.names[self.j]
        return f"I({a};{b}|{subset_str(ctx, self.cond)})" if self.cond else f"I({a};{b})"


def elemental_count(n: int) -> int:
    return n + (n * (n - 1) // 2) * (2 ** (n - 2) if n >= 2 else 0)


def elementals(ctx: VarContext) -> tuple[Elemental, ...]:
    _check_n(ctx.n)
    return _elementals(ctx)


@lru_cache(maxsize=None)
def _elementals(ctx: VarContext) -> tuple[Elemental, ...]:
    n = ctx.n
    full = ctx.full
    out: list[Elemental] = []
    for i in range(n):
        bit = 1 << i
        out.append(Elemental(len(out), "node", i, -1, full & ~bit, H(ctx, bit, full & ~bit)))
    for i in range(n):
        for j in range(i + 1, n):
            others = full & ~((1 << i) | (1 << j))
            # enumerate subsets of `others` in increasing order
            subsets = [k for k in range(others + 1) if k & others == k]
            for k in subsets:
                out.append(Elemental(len(out), "pair", i, j, k, I(ctx, 1 << i, 1 << j, k)))
    return tuple(out)


@dataclass(frozen=True)
class Certificate:
    """``target == sum(weight * elemental.form)`` with every weight >= 0."""

    terms: tuple[tuple[int, Fraction], ...]


@dataclass(frozen=True)
class Witness:
    """A point ``h`` (subset mask -> value) in the Shannon cone with ``target(h) < 0``."""

    vector: dict[int, Fraction]


ShannonVerdict = Union[Certificate, Witness]


def evaluate_exact(f: LinForm, vector: dict[int, Fraction]) -> Fraction:
    return sum((c * vector.get(m, 0) for m, c in f.items()), Fraction(0))


def _columns(forms: Sequence[LinForm]):
    # subset mask J is row J - 1
    return [{m - 1: c for m, c in g.items()} for g in forms]


def conic_membership(generators: Sequence[LinForm], target: LinForm):
    """Generic membership of ``target`` in cone(``generators``), all over ``target.ctx``.

    Returns ``(combination, None)`` or ``(None, witness_vector)``.
    """
    ctx = target.ctx
    gens = [g.reindex(ctx) for g in generators]
    res = cone_membership(_columns(gens), {m - 1: c for m, c in target.items()}, ctx.full)
    if res.feasible:
        return res.combination, None
    vec = {i + 1: v for i, v in enumerate(res.farkas) if v}
    return None, vec


def check_shannon(f: LinForm) -> ShannonVerdict:
    els = elementals(f.ctx)
    combo, vec = conic_membership([e.form for e in els], f)
    if combo is not None:
        return Certificate(tuple(sorted(combo.items())))
    return Witness(vec)


def is_shannon(f: LinForm) -> bool:
    return isinstance(check_shannon(f), Certificate)


def verify_certificate(target: LinForm, cert: Certificate) -> bool:
    els = elementals(target.ctx)
    total = LinForm(target.ctx)
    for eid, w in cert.terms:
        if w < 0 or not 0 <= eid < len(els):
            return False
        total = total + els[eid].form * w
    return total == target


def verify_witness(target: LinForm, w: Witness) -> bool:
    vec = w.vector
    if any(not 0 < m <= target.ctx.full for m in vec):
        return False
    if evaluate_exact(target, vec) >= 0:
        return False
    return all(evaluate_exact(e.form, vec) >= 0 for e in elementals(target.ctx))
