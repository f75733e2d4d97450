import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffield.blades import (
    Multivector,
    Signature,
    dagger,
    dot,
    gp,
    grade_project,
    make_algebra,
    scalar_part,
    wedge,
)


# The independent string-expansion oracle lives in oracles.py so the
# acceptance suite can reuse it.
from oracles import ALL_SMALL_SIGS, oracle_gp, random_mv


def test_gp_matches_oracle_all_small_signatures():
    import random

    rng = random.Random(20240901)
    for sig in ALL_SMALL_SIGS:
        for _ in range(60):
            a = random_mv(rng, sig)
            b = random_mv(rng, sig)
            assert gp(a, b) == oracle_gp(a, b)


# ---------------------------------------------------------------------------
# Frozen examples
# ---------------------------------------------------------------------------

def test_make_algebra_examples():
    ctx = make_algebra(Signature(1, 3))
    assert ctx.n_generators == 4
    assert ctx.dimension == 16
    ctx = make_algebra(Signature(2, 6))
    assert ctx.n_generators == 8
    assert ctx.dimension == 256
    with pytest.raises(ValueError):
        Signature(0, 0)


def test_generator_squares():
    ctx = make_algebra(Signature(1, 3))
    g1 = ctx.gamma(1)
    assert gp(g1, g1) == ctx.one()
    for i in (2, 3, 4):
        gi = ctx.gamma(i)
        assert gp(gi, gi) == ctx.one().scale(-1)


def test_gp_bivector_antisymmetry():
    ctx = make_algebra(Signature(1, 3))
    g1, g2 = ctx.gamma(1), ctx.gamma(2)
    b = gp(g1, g2)
    assert b == Multivector.blade(ctx.sig, [1, 2])
    assert gp(g2, g1) == -b


def test_contraction_in_cl02():
    # (g1 g2) g2 = -g1 for signature (0,2): g2^2 = -1
    ctx = make_algebra(Signature(0, 2))
    g1, g2 = ctx.gamma(1), ctx.gamma(2)
    assert gp(gp(g1, g2), g2) == -g1


def test_dot_gives_metric():
    ctx = make_algebra(Signature(1, 3))
    diag = ctx.sig.metric_diagonal()
    for i in range(1, 5):
        for j in range(1, 5):
            expected = (
                ctx.one().scale(diag[i - 1]) if i == j else ctx.zero()
            )
            assert dot(ctx.gamma(i), ctx.gamma(j)) == expected


def test_wedge_basics():
    ctx = make_algebra(Signature(2, 0))
    g1, g2 = ctx.gamma(1), ctx.gamma(2)
    assert wedge(g1, g2) == Multivector.blade(ctx.sig, [1, 2])
    assert wedge(g1, g1).is_zero()


def test_grade_project_and_scalar_part():
    ctx = make_algebra(Signature(1, 3))
    g1, g2 = ctx.gamma(1), ctx.gamma(2)
    x = ctx.one() + g1 + gp(g1, g2)
    assert grade_project(x, 1) == g1
    assert scalar_part(gp(g1, g1)) == 1
    assert scalar_part(gp(g1, g2)) == 0


def test_dagger_examples():
    ctx = make_algebra(Signature(1, 3))
    g1, g2 = ctx.gamma(1), ctx.gamma(2)
    assert dagger(g1.scale(1j)) == g1.scale(-1j)
    assert dagger(gp(g1, g2)) == -gp(g1, g2)


def test_signature_mismatch_rejected():
    a = make_algebra(Signature(1, 1)).gamma(1)
    b = make_algebra(Signature(2, 0)).gamma(1)
    with pytest.raises(ValueError):
        gp(a, b)


# ---------------------------------------------------------------------------
# Property tests
# ---------------------------------------------------------------------------

small_sig = st.sampled_from([Signature(2, 0), Signature(1, 1), Signature(1, 2), Signature(0, 3)])


@st.composite
def mv_with_sig(draw, sig=None, n_mv=1):
    if sig is None:
        sig = draw(small_sig)
    mvs = []
    for _ in range(n_mv):
        n_terms = draw(st.integers(1, 4))
        mv = Multivector.zero(sig)
        for _ in range(n_terms):
            mask = draw(st.integers(0, sig.dimension - 1))
            c = draw(st.integers(-4, 4))
            mv = mv + Multivector(sig, {mask: c})
        mvs.append(mv)
    return mvs


@settings(max_examples=80, deadline=None)
@given(mv_with_sig(n_mv=3))
def test_associativity(mvs):
    a, b, c = mvs
    assert gp(gp(a, b), c) == gp(a, gp(b, c))


@settings(max_examples=80, deadline=None)
@given(mv_with_sig(n_mv=2))
def test_dagger_antiautomorphism(mvs):
    a, b = mvs
    assert dagger(gp(a, b)) == gp(dagger(b), dagger(a))
    assert dagger(dagger(a)) == a


@settings(max_examples=80, deadline=None)
@given(mv_with_sig(n_mv=2))
def test_dot_plus_wedge_is_gp(mvs):
    a, b = mvs
    assert dot(a, b) + wedge(a, b) == gp(a, b)


def test_anticommutation_all_generator_pairs():
    for sig in ALL_SMALL_SIGS:
        ctx = make_algebra(sig)
        diag = sig.metric_diagonal()
        for i in range(1, sig.n_generators + 1):
            for j in range(1, sig.n_generators + 1):
                lhs = gp(ctx.gamma(i), ctx.gamma(j)) + gp(ctx.gamma(j), ctx.gamma(i))
                expected = ctx.one().scale(2 * diag[i - 1]) if i == j else ctx.zero()
                assert lhs == expected


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def test_json_round_trip_bit_exact():
    import random

    rng = random.Random(7)
    sig = Signature(1, 3)
    for _ in range(25):
        mv = random_mv(rng, sig, integer=False, max_terms=6)
        data = json.loads(json.dumps(mv.to_json_dict()))
        back = Multivector.from_json_dict(data)
        assert {m: complex(c) for m, c in mv.coeffs.items()} == back.coeffs


def test_json_term_ordering():
    sig = Signature(2, 0)
    mv = Multivector(sig, {3: 1 + 2j, 1: -1.0, 0: 0.5})
    blades = [t["blades"] for t in mv.to_json_dict()["terms"]]
    assert blades == sorted(blades)
