"""The copy rule (ZY), the Ahlswede-Korner rule (MMRV), substitution, and
the transformations that turn a premise for one rule into a premise for the
other.

Every rule works against an explicit partition of the ground set into a
distinguished variable ``z``, a nonempty group ``X`` and a group ``Y``.  A
premise of ZY shape is ``f(X,Y) + g(Y,z) + alpha * I(z;X|Y)``; an MMRV
premise is the same with ``alpha = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .linform import H, I, LinForm, VarContext


class RuleShapeError(ValueError):
    pass


class MixedTermError(RuleShapeError):
    pass


class NegativeAlphaError(RuleShapeError):
    pass


@dataclass(frozen=True)
class Partition:
    ctx: VarContext
    z: str
    xgroup: int
    ygroup: int

    @classmethod
    def of(cls, ctx: VarContext, z: str, x: Iterable[str], y: Iterable[str] = ()) -> "Partition":
        x, y = tuple(x), tuple(y)
        zbit = ctx.bit(z)
        xm, ym = ctx.mask(x), ctx.mask(y)
        if not xm:
            raise ValueError("X group must be nonempty")
        if xm & ym or (xm | ym) & zbit:
            raise ValueError("partition groups overlap")
        if xm | ym | zbit != ctx.full:
            missing = ctx.subset_names(ctx.full & ~(xm | ym | zbit))
            raise ValueError(f"partition does not cover {', '.join(missing)}")
        return cls(ctx, z, xm, ym)

    @property
    def zbit(self) -> int:
        return self.ctx.bit(self.z)

    def cmi(self) -> LinForm:
        """I(z; X | Y)."""
        return I(self.ctx, self.zbit, self.xgroup, self.ygroup)

    def cond_entropy(self) -> LinForm:
        """H(z | Y)."""
        return H(self.ctx, self.zbit, self.ygroup)

    def describe(self) -> str:
        names = self.ctx.subset_names
        return f"z={self.z} x={{{','.join(names(self.xgroup))}}} y={{{','.join(names(self.ygroup))}}}"


@dataclass(frozen=True)
class ZYDecomposition:
    p: Partition
    f: LinForm
    g: LinForm
    alpha: Fraction

    def recompose(self) -> LinForm:
        return self.f + self.g + self.p.cmi() * self.alpha


def _aligned(f: LinForm, p: Partition) -> LinForm:
    if f.ctx == p.ctx:
        return f
    if set(f.ctx.names) != set(p.ctx.names):
        raise ValueError(f"partition over {p.ctx!r} does not match form over {f.ctx!r}")
    return f.reindex(p.ctx)


def _split(residual: LinForm, p: Partition):
    zbit, xm = p.zbit, p.xgroup
    fpart, gpart = {}, {}
    for mask, c in residual.items():
        if not mask & zbit:
            fpart[mask] = c
        elif not mask & xm:
            gpart[mask] = c
        else:
            raise MixedTermError(
                f"term H({','.join(p.ctx.subset_names(mask))}) mixes {p.z} with the X group"
            )
    return LinForm(p.ctx, fpart), LinForm(p.ctx, gpart)


def decompose_zy(f: LinForm, p: Partition) -> ZYDecomposition:
    f = _aligned(f, p)
    alpha = -f[p.ctx.full]
    if alpha < 0:
        raise NegativeAlphaError(f"coefficient of I({p.z};X|Y) would be {alpha}")
    residual = f - p.cmi() * alpha
    fpart, gpart = _split(residual, p)
    return ZYDecomposition(p, fpart, gpart, alpha)


def apply_zy(f: LinForm, p: Partition) -> LinForm:
    d = decompose_zy(f, p)
    return d.f + d.g


def r_z(f: LinForm, p: Partition) -> Fraction:
    """Sum of the coefficients of the z-part; requires MMRV shape."""
    f = _aligned(f, p)
    _split(f, p)
    return f.coefficient_sum_over(p.z)


def apply_mmrv(f: LinForm, p: Partition) -> LinForm:
    f = _aligned(f, p)
    _split(f, p)
    r = f.coefficient_sum_over(p.z)
    return f - p.cond_entropy() * r


def zy_premise_to_mmrv_premise(d: ZYDecomposition) -> LinForm:
    """Replace ``alpha I(z;X|Y)`` by the weaker ``alpha H(z|Y)``."""
    return d.f + d.g + d.p.cond_entropy() * d.alpha


def mmrv_premise_to_zy_premise(f: LinForm, p: Partition) -> LinForm:
    """``f - r H(z|Y) + r I(z;X|Y)``; the result is balanced for z."""
    f = _aligned(f, p)
    _split(f, p)
    r = f.coefficient_sum_over(p.z)
    return f - p.cond_entropy() * r + p.cmi() * r


def substitute(f: LinForm, src: str, dst: str) -> LinForm:
    """Identify ``src`` with ``dst`` (``dst`` in the context) or rename ``src``
    to a fresh ``dst``.  Identification drops ``src`` from the context."""
    ctx = f.ctx
    sbit = ctx.bit(src)
    if src == dst:
        raise ValueError("substitution source and target coincide")
    if dst not in ctx:
        return LinForm(ctx.renamed(src, dst), f.as_dict())
    new_ctx = ctx.without(src)
    pos = {i: new_ctx.bit(name) for i, name in enumerate(ctx.names) if name != src}
    dbit = new_ctx.bit(dst)
    out: dict[int, Fraction] = {}
    for mask, c in f.items():
        nm = dbit if mask & sbit else 0
        rest = mask & ~sbit
        i = 0
        while rest:
            if rest & 1:
                nm |= pos[i]
            rest >>= 1
            i += 1
        out[nm] = out.get(nm, 0) + c
    return LinForm(new_ctx, out)
