"""Exact cone membership by phase-I primal simplex over rationals.

Solves ``A lam = b, lam >= 0`` with Bland's rule.  On success the
nonnegative combination is returned; otherwise a Farkas vector ``w`` with
``w . A_j >= 0`` for every column and ``w . b < 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Column = dict  # row index -> Fraction


@dataclass
class ConeResult:
    feasible: bool
    combination: dict[int, Fraction] | None = None  # column index -> weight
    farkas: list[Fraction] | None = None  # one entry per row
    pivots: int = 0


def _integral(row: dict, rhs: Fraction):
    """Scale a rational row to integers; returns (int row, int rhs, denominator)."""
    den = math.lcm(rhs.denominator, *(v.denominator for v in row.values()))
    return {j: int(v * den) for j, v in row.items()}, int(rhs * den), den


def cone_membership(columns: Sequence[Column], target: Column, m: int) -> ConeResult:
    """Is ``target`` a nonnegative combination of ``columns``?

    Both the columns and the target are sparse ``{row: value}`` maps over
    ``m`` rows.  All arithmetic is exact.
    """
    k = len(columns)
    b = [Fraction(target.get(i, 0)) for i in range(m)]
    flip = [bi < 0 for bi in b]

    # Tableau row i holds integers over a positive denominator den[i];
    # columns 0..k-1 are structural, k..k+m-1 artificial.
    frows: list[dict[int, Fraction]] = [dict() for _ in range(m)]
    for j, col in enumerate(columns):
        for i, v in col.items():
            if v:
                frows[i][j] = -Fraction(v) if flip[i] else Fraction(v)
    red_f: dict[int, Fraction] = {}
    for row in frows:
        for j, v in row.items():
            red_f[j] = red_f.get(j, 0) - v
    rows, rhs, den = [], [], []
    for i in range(m):
        frows[i][k + i] = Fraction(1)
        r, h, d = _integral(frows[i], -b[i] if flip[i] else b[i])
        rows.append(r)
        rhs.append(h)
        den.append(d)
    # reduced costs for min sum(artificials); artificial costs are 1
    red, _, red_den = _integral({j: v for j, v in red_f.items() if v}, Fraction(0))
    red_box = [red_den]
    basis = [k + i for i in range(m)]

    pivots = 0
    while True:
        entering = min((j for j, v in red.items() if v < 0), default=None)
        if entering is None:
            break
        # ratio rhs_i / a_i, both over den[i]; compare by cross-multiplying
        leave = None
        for i in range(m):
            a = rows[i].get(entering)
            if a is not None and a > 0:
                if leave is None:
                    leave = i
                    continue
                lhs, rhs_best = rhs[i] * rows[leave][entering], rhs[leave] * a
                if lhs < rhs_best or (lhs == rhs_best and basis[i] < basis[leave]):
                    leave = i
        if leave is None:
            # unbounded direction cannot occur: phase-I objective is bounded below by 0
            raise RuntimeError("phase I unbounded; tableau corrupted")
        _pivot(rows, rhs, den, red, red_box, leave, entering)
        basis[leave] = entering
        pivots += 1

    if all(rhs[i] == 0 for i in range(m) if basis[i] >= k):
        combo: dict[int, Fraction] = {}
        for i, j in enumerate(basis):
            if j < k and rhs[i]:
                combo[j] = Fraction(rhs[i], den[i])
        return ConeResult(True, combination=combo, pivots=pivots)

    # dual y_i = cost_i - reduced cost of artificial i (cost 1)
    farkas = []
    for i in range(m):
        y = 1 - Fraction(red.get(k + i, 0), red_box[0])
        if flip[i]:
            y = -y
        farkas.append(-y)
    return ConeResult(False, farkas=farkas, pivots=pivots)


def _eliminate(row: dict, h: int, d: int, f: int, prow: dict, ph: int, a: int):
    """``row/d - (f/d) * prow/a`` as an integer row over ``d * a``, reduced."""
    out = {}
    for j, v in row.items():
        out[j] = v * a
    for j, v in prow.items():
        nv = out.get(j, 0) - f * v
        if nv:
            out[j] = nv
        else:
            out.pop(j, None)
    h = h * a - f * ph
    d = d * a
    if d < 0:
        out = {j: -v for j, v in out.items()}
        h, d = -h, -d
    g = math.gcd(d, h, *out.values())
    if g > 1:
        out = {j: v // g for j, v in out.items()}
        h //= g
        d //= g
    return out, h, d


def _pivot(rows, rhs, den, red, red_box, r, c):
    prow, ph = rows[r], rhs[r]
    a = prow[c]
    for i, row in enumerate(rows):
        if i == r:
            continue
        f = row.get(c)
        if f is not None:
            rows[i], rhs[i], den[i] = _eliminate(row, rhs[i], den[i], f, prow, ph, a)
    f = red.get(c)
    if f is not None:
        new, _, red_box[0] = _eliminate(red, 0, red_box[0], f, prow, ph, a)
        red.clear()
        red.update(new)
    # scale the pivot row so its entry in column c is 1
    d = a
    if d < 0:
        rows[r] = {j: -v for j, v in prow.items()}
        ph, d = -ph, -d
    g = math.gcd(d, ph, *rows[r].values())
    if g > 1:
        rows[r] = {j: v // g for j, v in rows[r].items()}
        ph //= g
        d //= g
    rhs[r], den[r] = ph, d
