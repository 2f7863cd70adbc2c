"""Contravariant-form and simple-quotient tests."""

import random
from fractions import Fraction
from math import comb

import pytest

from parafermion import sl2
from parafermion.errors import ContextMismatch, InhomogeneousVector
from parafermion.fock import (
    FockVector,
    act,
    act_word,
    convert_vector,
    module_context,
)
from parafermion.quotient import (
    contravariant_pairing,
    equal_in_simple,
    gram_block,
    is_zero_in_simple,
    radical_basis,
    reduce_components,
    reduce_mod_max,
)
from parafermion.sl2 import Basis

THETA = {0: sl2.h(), 1: sl2.f(), 2: sl2.e()}


def random_vector(rng, ctx, degree):
    monos = ctx.monomials(degree)
    return FockVector(
        ctx,
        Basis.CHEVALLEY,
        {
            rng.choice(monos): Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            for _ in range(rng.randint(1, 4))
        },
    )


def test_pairing_base_values():
    k = 4
    ctx = module_context(k, 0)
    vac = ctx.vacuum()
    assert contravariant_pairing(vac, vac) == 1
    ev = act(sl2.e(), -1, vac)
    hv = act(sl2.h(), -1, vac)
    assert contravariant_pairing(ev, ev) == k
    assert contravariant_pairing(hv, hv) == 2 * k
    assert contravariant_pairing(hv, ev) == 0
    assert contravariant_pairing(ev, act(sl2.f(), -1, vac)) == 0


def test_top_space_norms_are_binomials():
    ctx = module_context(5, 3)
    for j in range(4):
        for jp in range(4):
            value = contravariant_pairing(ctx.top(j), ctx.top(jp))
            assert value == (comb(3, j) if j == jp else 0)


def test_pairing_symmetry_and_bilinearity():
    rng = random.Random(61701)
    ctx = module_context(4, 2)
    for _ in range(10):
        d = rng.randint(0, 3)
        u, v, w = (random_vector(rng, ctx, d) for _ in range(3))
        assert contravariant_pairing(u, v) == contravariant_pairing(v, u)
        assert contravariant_pairing(u + 3 * v, w) == contravariant_pairing(
            u, w
        ) + 3 * contravariant_pairing(v, w)


def test_pairing_is_graded():
    rng = random.Random(61702)
    ctx = module_context(3, 1)
    u = random_vector(rng, ctx, 2)
    v = random_vector(rng, ctx, 3)
    assert contravariant_pairing(u, v) == 0


def test_contravariance_adjoint_rule():
    """<a(n)u, v> = <u, theta(a)(-n) v> for each generator symbol."""
    rng = random.Random(61703)
    ctx = module_context(4, 1)
    for _ in range(12):
        d = rng.randint(0, 2)
        u = random_vector(rng, ctx, d)
        n = rng.randint(-3, d)
        g = rng.randint(0, 2)
        v = random_vector(rng, ctx, d - n)
        a = (sl2.h(), sl2.e(), sl2.f())[g]
        lhs = contravariant_pairing(act(a, n, u), v)
        rhs = contravariant_pairing(u, act(THETA[g], -n, v))
        assert lhs == rhs


def test_pairing_context_mismatch():
    with pytest.raises(ContextMismatch):
        contravariant_pairing(module_context(3, 0).vacuum(), module_context(4, 0).vacuum())


def test_pairing_matches_in_primed_coordinates():
    k = 4
    ctx = module_context(k, 0)
    hv = act(sl2.hp(), -1, ctx.vacuum())
    hvp = convert_vector(hv, Basis.PRIMED)
    assert contravariant_pairing(hv, hv) == 2 * k
    assert contravariant_pairing(hvp, hvp) == 2 * k


def test_gram_block_degree_one():
    k = 4
    gb = gram_block(module_context(k, 0), 1)
    assert [m.factors for m in gb.basis] == [((0, -1),), ((1, -1),), ((2, -1),)]
    assert gb.matrix == [
        [2 * k, 0, 0],
        [0, k, 0],
        [0, 0, k],
    ]
    assert gb.rank() == 3


def test_gram_block_degree_zero_and_symmetry():
    ctx = module_context(3, 2)
    gb0 = gram_block(ctx, 0)
    assert gb0.matrix == [[1, 0, 0], [0, 2, 0], [0, 0, 1]]
    gb2 = gram_block(ctx, 2)
    n = len(gb2.basis)
    for a in range(n):
        for b in range(n):
            assert gb2.matrix[a][b] == gb2.matrix[b][a]


def test_vacuum_module_radical_starts_at_level_plus_one():
    for k in (3, 4):
        ctx = module_context(k, 0, degree_cap=max(6, k + 1))
        for d in range(k + 1):
            assert radical_basis(ctx, d) == []
        assert radical_basis(ctx, k + 1)


def test_radical_contains_the_power_singular_vector():
    ctx = module_context(3, 0, degree_cap=8)
    sing = act_word(ctx.vacuum(), [(sl2.e(), -1)] * 4)
    assert is_zero_in_simple(sing)
    assert reduce_mod_max(sing).is_zero
    # the degree-(k+1) radical is the zero-mode orbit of the singular vector
    assert len(radical_basis(ctx, 4)) == 9


def test_singular_vector_certificate():
    for k in (3, 4):
        ctx = module_context(k, 0, degree_cap=k + 2)
        sing = act_word(ctx.vacuum(), [(sl2.e(), -1)] * (k + 1))
        for g in (sl2.h(), sl2.e(), sl2.f()):
            for n in range(1, k + 2):
                assert act(g, n, sing).is_zero
        assert act(sl2.e(), 0, sing).is_zero


def test_higher_top_singular_vectors():
    # e(-1)^{k-i+1} v[i,0] generates the maximal submodule of V(k,i)
    for k, i in ((3, 1), (3, 3), (4, 2)):
        ctx = module_context(k, i, degree_cap=8)
        d = k - i + 1
        sing = act_word(ctx.top(0), [(sl2.e(), -1)] * d)
        assert is_zero_in_simple(sing), (k, i)
        if d > 1:
            below = act_word(ctx.top(0), [(sl2.e(), -1)] * (d - 1))
            assert not is_zero_in_simple(below), (k, i)


def test_radical_is_a_submodule():
    ctx = module_context(3, 0, degree_cap=8)
    for vrad in radical_basis(ctx, 4):
        for g in (sl2.h(), sl2.e(), sl2.f()):
            for n in (1, 2, 3):
                img = act(g, n, vrad)
                assert img.is_zero or is_zero_in_simple(img)


def test_reduce_mod_max_is_canonical():
    rng = random.Random(61704)
    ctx = module_context(3, 0, degree_cap=8)
    for _ in range(6):
        a = random_vector(rng, ctx, 4)
        b = random_vector(rng, ctx, 4)
        ra = reduce_mod_max(a)
        assert reduce_mod_max(ra) == ra
        assert reduce_mod_max(a + 2 * b) == ra + 2 * reduce_mod_max(b)
        assert is_zero_in_simple(a - ra)
        assert equal_in_simple(a, ra)


def test_reduce_mod_max_fixes_nondegenerate_degrees():
    ctx = module_context(3, 0)
    vac = ctx.vacuum()
    assert reduce_mod_max(vac) == vac
    v = act(sl2.h(), -2, vac)
    assert reduce_mod_max(v) == v
    assert not is_zero_in_simple(v)


def test_reduce_rejects_inhomogeneous_but_componentwise_helper_accepts():
    ctx = module_context(3, 0, degree_cap=8)
    sing = act_word(ctx.vacuum(), [(sl2.e(), -1)] * 4)
    mix = ctx.vacuum() + sing
    with pytest.raises(InhomogeneousVector):
        reduce_mod_max(mix)
    assert reduce_components(mix) == ctx.vacuum()
    assert equal_in_simple(mix, ctx.vacuum())


def test_zero_vector_short_circuits():
    ctx = module_context(3, 0)
    assert is_zero_in_simple(ctx.zero())
    assert reduce_mod_max(ctx.zero()).is_zero
