"""Independent Shannon-cone oracle for n <= 3.

Builds the elemental inequalities directly from entropy definitions over
frozensets of names, enumerates extreme rays of the polymatroid cone
{h : E h >= 0} by exhaustive tight-set search with sympy nullspaces, and
decides membership of f in cone(E) by checking f . r >= 0 for every ray.
"""

import math
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import sympy


def _subsets(names):
    return [frozenset(c) for k in range(1, len(names) + 1) for c in combinations(names, k)]


def _h(vec, s):
    return vec.get(frozenset(s), 0) if s else 0


@lru_cache(maxsize=None)
def elemental_rows(names):
    names = tuple(names)
    coords = _subsets(names)
    full = frozenset(names)
    rows = []

    def row(terms):
        r = [Fraction(0)] * len(coords)
        for s, c in terms:
            if s:
                r[coords.index(frozenset(s))] += c
        return r

    for x in names:
        rows.append(row([(full, 1), (full - {x}, -1)]))
    for x, y in combinations(names, 2):
        others = [v for v in names if v not in (x, y)]
        for k in range(len(others) + 1):
            for K in combinations(others, k):
                K = frozenset(K)
                rows.append(row([(K | {x}, 1), (K | {y}, 1), (K | {x, y}, -1), (K, -1)]))
    return coords, rows


@lru_cache(maxsize=None)
def extreme_rays(names):
    coords, rows = elemental_rows(tuple(names))
    d = len(coords)
    rays = []
    for tight in combinations(range(len(rows)), d - 1):
        flat = [sympy.Rational(v.numerator, v.denominator) for i in tight for v in rows[i]]
        m = sympy.Matrix(len(tight), d, flat)
        ns = m.nullspace()
        if len(ns) != 1:
            continue
        v = ns[0]
        for cand in (v, -v):
            if all(sum(r[j] * cand[j] for j in range(d)) >= 0 for r in rows):
                lcm = math.lcm(*[int(sympy.fraction(x)[1]) for x in cand])
                ray = tuple(int(x * lcm) for x in cand)
                g = math.gcd(*ray) or 1
                ray = tuple(x // g for x in ray)
                if ray not in rays:
                    rays.append(ray)
    return coords, rays


def is_shannon(named_coeffs, names):
    """``named_coeffs``: {frozenset of names: coefficient}."""
    coords, rays = extreme_rays(tuple(names))
    f = [named_coeffs.get(c, 0) for c in coords]
    return all(sum(fc * rc for fc, rc in zip(f, r)) >= 0 for r in rays)
