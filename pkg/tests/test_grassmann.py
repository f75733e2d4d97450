import json
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffield.grassmann import (
    GrassmannFunction,
    GrassmannOperator,
    anticommutator,
    berezin,
    berezin_full,
    dxi,
    expand_components,
    from_components,
    gmul,
    graded_subsets,
    rep_theta,
    rep_theta_bar,
    state_on_vacuum,
    vacuum_function,
)


# ---------------------------------------------------------------------------
# Oracle: products of explicit ordered generator strings with bubble-sort
# sign tracking, independent of the bitmask implementation.
# ---------------------------------------------------------------------------

def oracle_mul(f, g):
    n = f.n
    coeffs = {}
    for idx_f, cf in f.terms():
        for idx_g, cg in g.terms():
            seq = list(idx_f + idx_g)
            if len(set(seq)) != len(seq):
                continue
            sign = 1
            for i in range(len(seq)):
                for j in range(len(seq) - 1 - i):
                    if seq[j] > seq[j + 1]:
                        seq[j], seq[j + 1] = seq[j + 1], seq[j]
                        sign = -sign
            key = tuple(seq)
            coeffs[key] = coeffs.get(key, 0) + sign * cf * cg
    out = GrassmannFunction.zero(n)
    for idx, c in coeffs.items():
        out = out + GrassmannFunction.monomial(n, idx, c)
    return out


def random_gf(rng, n, max_terms=4):
    f = GrassmannFunction.zero(n)
    for _ in range(rng.randrange(1, max_terms + 1)):
        mask = rng.randrange(1 << n)
        c = rng.randrange(-4, 5)
        f = f + GrassmannFunction(n, {mask: c})
    return f


def test_gmul_matches_oracle():
    rng = random.Random(11)
    for n in (1, 2, 3, 4):
        for _ in range(60):
            f, g = random_gf(rng, n), random_gf(rng, n)
            assert gmul(f, g) == oracle_mul(f, g)


def test_product_examples():
    n = 3
    x1, x2 = GrassmannFunction.xi(n, 1), GrassmannFunction.xi(n, 2)
    assert gmul(x1, x2) == GrassmannFunction(n, {0b011: 1})
    assert gmul(x2, x1) == GrassmannFunction(n, {0b011: -1})
    assert gmul(x1, x1).is_zero()
    one = GrassmannFunction.one(n)
    lhs = gmul(one + x1, one + x2)
    assert lhs == one + x1 + x2 + gmul(x1, x2)


def test_left_derivative_examples():
    n = 2
    x1x2 = GrassmannFunction.monomial(n, [1, 2])
    assert dxi(x1x2, 1) == GrassmannFunction.xi(n, 2)
    assert dxi(x1x2, 2) == -GrassmannFunction.xi(n, 1)
    with pytest.raises(ValueError):
        dxi(x1x2, 3)


def test_berezin_single():
    n = 1
    assert berezin(GrassmannFunction.one(n), 1).is_zero()
    assert berezin(GrassmannFunction.xi(n, 1), 1) == GrassmannFunction.one(n)


def test_berezin_full_top_sign():
    # The full integral picks the coefficient of the xi^n...xi^1 ordered
    # top monomial: for n=2, f = c*xi1xi2 = -c*xi2xi1 integrates to -c.
    f = GrassmannFunction.monomial(2, [1, 2], 3)
    assert berezin_full(f) == -3
    g = GrassmannFunction.monomial(2, [2, 1], 5)
    assert berezin_full(g) == 5


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.data())
def test_berezin_of_derivative_vanishes(n, data):
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    f = random_gf(rng, n)
    for mu in range(1, n + 1):
        assert berezin(dxi(f, mu), mu).is_zero()


# ---------------------------------------------------------------------------
# Represented Witt generators
# ---------------------------------------------------------------------------

def test_rep_anticommutators_exhaustive():
    for n in (1, 2, 3, 4):
        basis = [GrassmannFunction(n, {m: 1}) for m in graded_subsets(n)]
        for mu in range(1, n + 1):
            for nu in range(1, n + 1):
                ac_tt = anticommutator(rep_theta(n, mu), rep_theta(n, nu))
                ac_bb = anticommutator(rep_theta_bar(n, mu), rep_theta_bar(n, nu))
                ac_tb = anticommutator(rep_theta(n, mu), rep_theta_bar(n, nu))
                for b in basis:
                    assert ac_tt.apply(b).is_zero()
                    assert ac_bb.apply(b).is_zero()
                    expected = b.scale(2) if mu == nu else GrassmannFunction.zero(n)
                    assert ac_tb.apply(b).isclose(expected, tol=1e-12)


def test_rep_theta_squared_zero():
    op = rep_theta(3, 2)
    sq = op * op
    for m in graded_subsets(3):
        assert sq.apply(GrassmannFunction(3, {m: 1})).is_zero()


def test_rep_anticommutator_on_xi2():
    n = 2
    ac = anticommutator(rep_theta(n, 1), rep_theta_bar(n, 1))
    out = ac.apply(GrassmannFunction.xi(n, 2))
    assert out.isclose(GrassmannFunction.xi(n, 2).scale(2))


# ---------------------------------------------------------------------------
# Component expansion
# ---------------------------------------------------------------------------

def test_expand_components_basics():
    n = 3
    f = GrassmannFunction.one(n)
    comps = expand_components(f)
    assert comps[0] == 1 and np.all(comps[1:] == 0)

    f = GrassmannFunction.monomial(n, [1, 2])
    comps = expand_components(f)
    masks = graded_subsets(n)
    pos = masks.index(0b011)
    expected = np.zeros(8, dtype=complex)
    expected[pos] = 1
    assert np.array_equal(comps, expected)


def test_expand_round_trip():
    rng = random.Random(5)
    for n in (1, 2, 3, 4):
        for _ in range(20):
            f = random_gf(rng, n)
            assert from_components(n, expand_components(f)) == f


def test_expand_is_bijection():
    for n in (1, 2, 3):
        dim = 1 << n
        mat = np.zeros((dim, dim), dtype=complex)
        for j, m in enumerate(graded_subsets(n)):
            mat[:, j] = expand_components(GrassmannFunction(n, {m: 1}))
        assert np.linalg.matrix_rank(mat) == dim


# ---------------------------------------------------------------------------
# Vacua
# ---------------------------------------------------------------------------

def test_vacuum_all_barred_is_constant():
    n = 4
    om = vacuum_function(n, [])
    assert om == GrassmannFunction.one(n)
    for mu in range(1, n + 1):
        assert dxi(om, mu).is_zero()


def test_vacuum_unbarred_set():
    n = 4
    om = vacuum_function(n, [1, 2])
    assert om == GrassmannFunction.monomial(n, [1, 2])
    # annihilated by multiplication with its own factors and by the
    # derivatives of the complement applied to the defining product
    assert gmul(GrassmannFunction.xi(n, 1), om).is_zero()
    assert gmul(GrassmannFunction.xi(n, 2), om).is_zero()


def test_state_on_vacuum():
    n = 3
    poly = GrassmannFunction.one(n) + GrassmannFunction.xi(n, 3)
    st_ = state_on_vacuum(poly, [1, 2])
    assert len(st_.coeffs) == 2
    assert st_.coeffs[0b011] == 1
    assert st_.coeffs[0b111] == 1


def test_vacuum_function_accepts_spec_object():
    from cliffield.witt import VacuumSpec

    spec = VacuumSpec(3, frozenset([3]), frozenset([1, 2]))
    assert vacuum_function(spec) == GrassmannFunction.monomial(3, [1, 2])
    poly = GrassmannFunction.one(3)
    assert state_on_vacuum(poly, spec) == vacuum_function(spec)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def test_json_round_trip():
    rng = random.Random(3)
    for _ in range(20):
        f = random_gf(rng, 3)
        data = json.loads(json.dumps(f.to_json_dict()))
        back = GrassmannFunction.from_json_dict(data)
        assert {m: complex(c) for m, c in f.coeffs.items()} == back.coeffs


def test_operator_matrix_linearity():
    n = 2
    op = rep_theta(n, 1) * rep_theta_bar(n, 2) + GrassmannOperator.identity(n).scale(0.5)
    mat = op.matrix()
    rng = random.Random(9)
    f = random_gf(rng, n)
    lhs = expand_components(op.apply(f))
    rhs = mat @ expand_components(f)
    assert np.allclose(lhs, rhs, atol=1e-12)
