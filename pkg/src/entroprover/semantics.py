"""Entropy vectors of finite joint distributions.

Floating point on purpose: this module only ever falsifies, it never
proves.  Entropies are in bits with ``0 log 0 = 0``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable

import numpy as np

from .linform import LinForm, VarContext

PMF_TOL = 1e-12
INEQ_TOL = 1e-9


class PMFError(ValueError):
    pass


class JointPMF:
    """Probability table with one axis per context variable."""

    def __init__(self, ctx: VarContext, table):
        table = np.asarray(table, dtype=float)
        if table.ndim != ctx.n:
            raise PMFError(f"table has {table.ndim} axes for {ctx.n} variables")
        if (table < 0).any():
            raise PMFError("negative probability mass")
        total = table.sum()
        if abs(total - 1.0) > PMF_TOL:
            raise PMFError(f"probabilities sum to {total!r}, not 1")
        self.ctx = ctx
        self.table = table

    @property
    def sizes(self) -> tuple[int, ...]:
        return self.table.shape

    @classmethod
    def random(cls, ctx: VarContext, sizes: Iterable[int], rng: np.random.Generator) -> "JointPMF":
        """Symmetric Dirichlet(1) over the whole joint table."""
        sizes = tuple(sizes)
        p = rng.dirichlet(np.ones(int(np.prod(sizes)))).reshape(sizes)
        # renormalise so the sum is 1 to machine precision
        return cls(ctx, p / p.sum())

    def marginal(self, names: Iterable[str]) -> np.ndarray:
        keep = {self.ctx.index(v) for v in names}
        drop = tuple(i for i in range(self.ctx.n) if i not in keep)
        return self.table.sum(axis=drop)


def _entropy(p: np.ndarray) -> float:
    p = p[p > 0]
    return float(-(p * np.log2(p)).sum())


class EntropyVector(dict):
    """``{subset mask: H(X_J)}`` for every nonempty J, tagged with its context."""

    def __init__(self, ctx: VarContext, values):
        super().__init__(values)
        self.ctx = ctx


def entropy_vector(p: JointPMF) -> EntropyVector:
    ctx = p.ctx
    n = ctx.n
    h = {}
    for mask in ctx.subsets():
        drop = tuple(i for i in range(n) if not mask >> i & 1)
        h[mask] = _entropy(p.table.sum(axis=drop) if drop else p.table)
    return EntropyVector(ctx, h)


def evaluate(f: LinForm, h: EntropyVector) -> float:
    if f.ctx != h.ctx:
        if set(f.ctx.names) - set(h.ctx.names):
            raise ValueError(f"form over {f.ctx!r} cannot be evaluated on {h.ctx!r}")
        f = f.reindex(h.ctx)
    return sum(float(c) * h[m] for m, c in f.items())


def copy_distribution(p: JointPMF, a: str, b: Iterable[str], c: Iterable[str], copy_name: str | None = None) -> JointPMF:
    """Joint law of (original variables, A') where A' is a C-copy of A over B:
    ``P(x, a') = P(x) * P(A=a' | B=b(x))``."""
    ctx = p.ctx
    b, c = tuple(b), tuple(c)
    if sorted((a,) + b + c) != sorted(ctx.names):
        raise PMFError("a, b and c must partition the variables")
    if len(set((a,) + b + c)) != ctx.n:
        raise PMFError("a, b and c overlap")
    copy_name = copy_name or f"{a}_copy"
    ia = ctx.index(a)
    ib = [ctx.index(v) for v in b]
    n = ctx.n

    # P(A | B) laid out with the B axes in context order and A last
    pab = p.marginal((a,) + b)
    order = sorted([ia] + ib)
    pab = np.moveaxis(pab, order.index(ia), -1)  # axes: B in ctx order, then A
    pb = pab.sum(axis=-1, keepdims=True)
    with np.errstate(invalid="ignore", divide="ignore"):
        cond = np.where(pb > 0, pab / np.where(pb > 0, pb, 1), 0.0)

    # broadcast cond over the full table: place B axes at their positions, A' last
    shape = [1] * n + [p.sizes[ia]]
    for i in ib:
        shape[i] = p.sizes[i]
    cond_full = cond.reshape(shape)
    table = p.table[..., None] * cond_full
    return JointPMF(VarContext(ctx.names + (copy_name,)), table)


_HEADER_RE = re.compile(r"([A-Za-z][A-Za-z0-9_]*)\s*:\s*(\d+)")


def parse_pmf(text: str) -> JointPMF:
    """Read the text pmf format::

        # comment
        A:2 B:2 C:3
        0 0 0 : 1/6
        0 1 2 : 0.25

    Missing outcomes have probability zero.
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise PMFError("empty pmf file")
    header = _HEADER_RE.findall(lines[0])
    if not header or _HEADER_RE.sub("", lines[0]).strip():
        raise PMFError(f"bad header {lines[0]!r}; expected 'A:2 B:3 ...'")
    ctx = VarContext(name for name, _ in header)
    sizes = tuple(int(k) for _, k in header)
    table = np.zeros(sizes)
    for ln in lines[1:]:
        if ":" not in ln:
            raise PMFError(f"bad line {ln!r}; expected 'v1 ... vn : p'")
        vals, prob = ln.rsplit(":", 1)
        idx = tuple(int(v) for v in vals.split())
        if len(idx) != len(sizes) or any(not 0 <= v < k for v, k in zip(idx, sizes)):
            raise PMFError(f"outcome {vals.strip()!r} out of range")
        table[idx] += float(Fraction(prob.strip()))
    return JointPMF(ctx, table)


def format_pmf(p: JointPMF) -> str:
    header = " ".join(f"{v}:{k}" for v, k in zip(p.ctx.names, p.sizes))
    out = [header]
    for idx in np.ndindex(*p.sizes):
        if p.table[idx] > 0:
            out.append(f"{' '.join(map(str, idx))} : {float(p.table[idx])!r}")
    return "\n".join(out) + "\n"
