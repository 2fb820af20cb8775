"""Random generators shared by the property and acceptance suites."""

import random
from fractions import Fraction

from entroprover.linform import LinForm, VarContext
from entroprover.rules import Partition
from entroprover.shannon import elementals

NAMES = "ABCDEFGH"


def ctx_of(n):
    return VarContext(NAMES[:n])


def random_rat(rng, lo=-6, hi=6):
    return Fraction(rng.randint(lo, hi), rng.choice([1, 1, 1, 2, 3]))


def random_form(rng, ctx, masks=None, k=None):
    masks = list(masks if masks is not None else ctx.subsets())
    k = rng.randint(0, min(len(masks), 8)) if k is None else min(k, len(masks))
    return LinForm(ctx, {m: random_rat(rng) for m in rng.sample(masks, k)})


def random_partition(rng, ctx):
    names = list(ctx.names)
    z = rng.choice(names)
    rest = [v for v in names if v != z]
    rng.shuffle(rest)
    nx = rng.randint(1, len(rest))
    return Partition.of(ctx, z, rest[:nx], rest[nx:])


def shape_parts(rng, p):
    """Random f (no z) and g (z plus part of Y) for partition ``p``."""
    ctx = p.ctx
    zbit = p.zbit
    f_masks = [m for m in ctx.subsets() if not m & zbit]
    g_masks = [m for m in ctx.subsets() if m & zbit and not m & p.xgroup]
    return random_form(rng, ctx, f_masks), random_form(rng, ctx, g_masks)


def random_zy_premise(rng, n=None, balanced_for_z=False):
    """(premise, partition, f, g, alpha) with premise = f + g + alpha I(z;X|Y)."""
    n = n or rng.randint(2, 5)
    ctx = ctx_of(n)
    p = random_partition(rng, ctx)
    f, g = shape_parts(rng, p)
    if balanced_for_z:
        g = g - LinForm(ctx, {p.zbit: g.coefficient_sum_over(p.z)})
    alpha = abs(random_rat(rng, 0, 6))
    return f + g + p.cmi() * alpha, p, f, g, alpha


def random_mmrv_premise(rng, n=None):
    """(premise, partition) of MMRV shape with r_z >= 0."""
    n = n or rng.randint(2, 5)
    ctx = ctx_of(n)
    p = random_partition(rng, ctx)
    f, g = shape_parts(rng, p)
    r = g.coefficient_sum_over(p.z)
    if r < 0:
        g = g + LinForm(ctx, {p.zbit: -r + abs(random_rat(rng, 0, 3))})
    return f + g, p


def random_shannon_combination(rng, ctx, max_terms=10):
    els = elementals(ctx)
    k = rng.randint(1, min(max_terms, len(els)))
    total = LinForm(ctx)
    for e in rng.sample(els, k):
        total = total + e.form * Fraction(rng.randint(1, 5), rng.choice([1, 2, 3]))
    return total


def rng_for(seed):
    return random.Random(seed)
