from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from entroprover.balance import is_balanced_for
from entroprover.expr import canonical
from entroprover.linform import LinForm, UnknownVariableError, VarContext
from entroprover.rules import (
    MixedTermError,
    NegativeAlphaError,
    Partition,
    apply_mmrv,
    apply_zy,
    decompose_zy,
    mmrv_premise_to_zy_premise,
    r_z,
    substitute,
    zy_premise_to_mmrv_premise,
)
from entroprover.semantics import JointPMF, entropy_vector, evaluate

from helpers import random_mmrv_premise, random_zy_premise, rng_for

ZY_PREMISE = "I(C;D) <= I(C;D|A)+I(C;D|B)+I(A;B)+I(C;D|Z)+I(Z;C|D)+I(Z;D|C)+3I(Z;AB|CD)"
ZY_STATEMENT = "I(C;D) <= I(C;D|A)+I(C;D|B)+I(A;B)+I(C;D|A)+I(A;C|D)+I(A;D|C)"
MMRV_PREMISE = "H(Z) <= I(C;D|A)+I(C;D|B)+I(A;B)+2H(Z|C)+2H(Z|D)"
MMRV_STATEMENT = "I(C;D) <= I(C;D|A)+I(C;D|B)+I(A;B)+I(C;D|E)+I(E;C|D)+I(E;D|C)"

CTX5 = VarContext("ABCDZ")


def part5():
    return Partition.of(CTX5, "Z", "AB", "CD")


def zpart(f):
    bit = f.ctx.bit("Z")
    return LinForm(f.ctx, {m: c for m, c in f.items() if m & bit})


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition.of(CTX5, "Z", [], "ABCD")
    with pytest.raises(ValueError):
        Partition.of(CTX5, "Z", "AB", "BCD")
    with pytest.raises(ValueError):
        Partition.of(CTX5, "Z", "AB", "C")
    with pytest.raises(UnknownVariableError):
        Partition.of(CTX5, "Q", "AB", "CD")


def test_decompose_zy_premise():
    f = canonical(ZY_PREMISE, CTX5)
    d = decompose_zy(f, part5())
    assert d.alpha == 3
    g_expected = canonical("I(C;D|Z)+I(Z;C|D)+I(Z;D|C)", CTX5)
    # the z-free coordinates of g are booked on the f side
    assert d.g == zpart(g_expected)
    assert d.f + d.g == f - canonical("3 I(Z;A,B|C,D)", CTX5)
    assert d.recompose() == f
    assert not any(m & CTX5.bit("Z") for m in d.f.support())


def test_decompose_pure_alpha():
    ctx = VarContext("ABZ")
    d = decompose_zy(canonical("I(Z;A|B)", ctx), Partition.of(ctx, "Z", "A", "B"))
    assert d.alpha == 1 and not d.f and not d.g


def test_decompose_mixed_term():
    ctx = VarContext("ABZ")
    with pytest.raises(MixedTermError):
        decompose_zy(canonical("I(Z;A)", ctx), Partition.of(ctx, "Z", "AB", ""))


def test_decompose_negative_alpha():
    ctx = VarContext("ABZ")
    with pytest.raises(NegativeAlphaError):
        decompose_zy(canonical("-I(Z;A|B)", ctx), Partition.of(ctx, "Z", "A", "B"))


def test_apply_zy_examples():
    ctx = VarContext("ABZ")
    p = Partition.of(ctx, "Z", "A", "B")
    assert apply_zy(canonical("I(Z;A|B)", ctx), p) == LinForm(ctx)
    f = canonical("I(Z;B) + H(A|B)", ctx)
    assert apply_zy(f, p) == f


def test_zy_derivation():
    out = apply_zy(canonical(ZY_PREMISE, CTX5), part5())
    assert substitute(out, "Z", "A") == canonical(ZY_STATEMENT)


def test_apply_mmrv_derivation():
    f = canonical(MMRV_PREMISE, CTX5)
    p = part5()
    assert r_z(f, p) == 3
    out = apply_mmrv(f, p)
    assert substitute(out, "Z", "E") == canonical(MMRV_STATEMENT)


def test_mmrv_coefficient_identity():
    lhs = canonical("-H(Z) + 2H(Z|C) + 2H(Z|D) - 3H(Z|C,D)", CTX5)
    rhs = canonical("I(C;D|Z) + I(Z;C|D) + I(Z;D|C) - I(C;D)", CTX5)
    assert lhs == rhs


def test_apply_mmrv_small():
    ctx = VarContext("ABZ")
    p = Partition.of(ctx, "Z", "A", "B")
    f = canonical("I(Z;B) + I(A;B)", ctx)
    assert apply_mmrv(f, p) == f
    assert apply_mmrv(canonical("H(Z|B)", ctx), p) == LinForm(ctx)
    with pytest.raises(MixedTermError):
        apply_mmrv(canonical("I(Z;A|B)", ctx), p)


def test_substitute_examples():
    ctx = VarContext("CDZ")
    assert substitute(canonical("I(Z;C|D)", ctx), "Z", "C") == canonical("H(C|D)")
    g = canonical("I(C;D)", ctx)
    s = substitute(g, "Z", "C")
    assert s.ctx == VarContext("CD") and s == canonical("I(C;D)")
    with pytest.raises(UnknownVariableError):
        substitute(g, "Q", "C")


def test_substitute_renames_fresh_variable():
    f = canonical("I(Z;C|D)", VarContext("CDZ"))
    assert substitute(f, "Z", "E") == canonical("I(E;C|D)")


def test_premise_transform_examples():
    ctx = VarContext("ABZ")
    p = Partition.of(ctx, "Z", "A", "B")
    d = decompose_zy(canonical("I(Z;A|B)", ctx), p)
    assert zy_premise_to_mmrv_premise(d) == canonical("H(Z|B)", ctx)
    assert mmrv_premise_to_zy_premise(canonical("H(Z|B)", ctx), p) == canonical("I(Z;A|B)", ctx)
    f = canonical("I(Z;B) + I(A;B)", ctx)
    assert mmrv_premise_to_zy_premise(f, p) == f


def test_premise_transform_on_derivation_premises():
    p = part5()
    zy_prem = canonical(ZY_PREMISE, CTX5)
    assert is_balanced_for(zy_prem, "Z")
    a2 = zy_premise_to_mmrv_premise(decompose_zy(zy_prem, p))
    assert apply_mmrv(a2, p) == apply_zy(zy_prem, p)
    mm_prem = canonical(MMRV_PREMISE, CTX5)
    a1 = mmrv_premise_to_zy_premise(mm_prem, p)
    assert is_balanced_for(a1, "Z")
    assert apply_zy(a1, p) == apply_mmrv(mm_prem, p)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_zy_preserves_balance(seed):
    premise, p, *_ = random_zy_premise(rng_for(seed))
    concl = apply_zy(premise, p)
    for v in p.ctx.names:
        assert is_balanced_for(premise, v) == is_balanced_for(concl, v)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_mmrv_balances_z_and_preserves_others(seed):
    premise, p = random_mmrv_premise(rng_for(seed))
    concl = apply_mmrv(premise, p)
    assert is_balanced_for(concl, p.z)
    for v in p.ctx.names:
        if v != p.z:
            assert is_balanced_for(premise, v) == is_balanced_for(concl, v)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_decomposition_recovers_parts(seed):
    premise, p, f, g, alpha = random_zy_premise(rng_for(seed))
    d = decompose_zy(premise, p)
    assert d.alpha == alpha
    assert d.f + d.g == f + g
    assert d.recompose() == premise


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_zy_premise_to_mmrv_round_trip(seed):
    premise, p, *_ = random_zy_premise(rng_for(seed), balanced_for_z=True)
    d = decompose_zy(premise, p)
    assert apply_mmrv(zy_premise_to_mmrv_premise(d), p) == apply_zy(premise, p)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_mmrv_premise_to_zy_round_trip(seed):
    premise, p = random_mmrv_premise(rng_for(seed))
    a1 = mmrv_premise_to_zy_premise(premise, p)
    assert is_balanced_for(a1, p.z)
    assert apply_zy(a1, p) == apply_mmrv(premise, p)


def test_derived_conclusions_hold_numerically():
    rng = np.random.default_rng(99)
    zy_out = apply_zy(canonical(ZY_PREMISE, CTX5), part5())
    mmrv_out = apply_mmrv(canonical(MMRV_PREMISE, CTX5), part5())
    targets = [zy_out, mmrv_out, substitute(zy_out, "Z", "A"), substitute(mmrv_out, "Z", "E")]
    for _ in range(100):
        h5 = entropy_vector(JointPMF.random(CTX5, [2] * 5, rng))
        h4 = entropy_vector(JointPMF.random(VarContext("ABCD"), [3, 2, 2, 3], rng))
        assert evaluate(targets[0], h5) >= -1e-9
        assert evaluate(targets[1], h5) >= -1e-9
        assert evaluate(targets[2], h4) >= -1e-9
        # same five-variable law with Z named E
        h5e = entropy_vector(JointPMF(VarContext("ABCDE"), JointPMF.random(CTX5, [2] * 5, rng).table))
        assert evaluate(targets[3], h5e) >= -1e-9
