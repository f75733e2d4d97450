import math

import numpy as np
import pytest

from cliffield.blades import Multivector, Signature, dagger, dot, gp, make_algebra, scalar_part
from cliffield.witt import (
    FullBasis,
    VacuumSpec,
    WittScheme,
    enumerate_vacua,
    expectation_metric,
    full_matrix_rep,
    ideal_basis,
    matrix_rep,
    project_components,
    reconstruct,
    vacuum,
    witt_basis,
    witt_relation_residual,
)

DOUBLED_CASES = [Signature(4, 0), Signature(2, 2), Signature(2, 6), Signature(4, 4)]
SPACETIME_CASES = [Signature(1, 3), Signature(2, 6)]


def test_witt_relations_doubled():
    for sig in DOUBLED_CASES:
        wb = witt_basis(make_algebra(sig), WittScheme.DOUBLED)
        assert witt_relation_residual(wb) <= 1e-12


def test_witt_relations_spacetime():
    for sig in SPACETIME_CASES:
        wb = witt_basis(make_algebra(sig), WittScheme.SPACETIME)
        assert witt_relation_residual(wb) <= 1e-12


def test_doubled_construction_shape():
    wb = witt_basis(make_algebra(Signature(4, 4)), WittScheme.DOUBLED)
    assert wb.n == 4
    # theta_mu = (gamma_mu + i gammabar_mu)/sqrt(2) by construction
    for mu in range(4):
        lhs = wb.theta[mu].scale(math.sqrt(2.0))
        rhs = wb.gammas[mu] + wb.gamma_bars[mu].scale(1j)
        assert lhs.isclose(rhs)


def test_spacetime_light_cone_pair():
    wb = witt_basis(make_algebra(Signature(1, 3)), WittScheme.SPACETIME)
    one = wb.ctx.one()
    assert (dot(wb.theta[0], wb.theta_bar[0]) - one).max_abs_coeff() <= 1e-12
    assert (dot(wb.theta[1], wb.theta_bar[1]) + one).max_abs_coeff() <= 1e-12


def test_scheme_preconditions():
    with pytest.raises(ValueError):
        witt_basis(make_algebra(Signature(1, 2)), WittScheme.DOUBLED)  # odd total
    with pytest.raises(ValueError):
        witt_basis(make_algebra(Signature(1, 3)), WittScheme.DOUBLED)  # odd p
    with pytest.raises(ValueError):
        witt_basis(make_algebra(Signature(3, 3)), WittScheme.SPACETIME)


# ---------------------------------------------------------------------------
# Vacua
# ---------------------------------------------------------------------------

def test_vacuum_annihilation_both_schemes():
    for sig, scheme in [(Signature(4, 0), WittScheme.DOUBLED), (Signature(1, 3), WittScheme.SPACETIME)]:
        wb = witt_basis(make_algebra(sig), scheme)
        for spec in enumerate_vacua(wb.n):
            om = vacuum(wb, spec)
            assert not om.is_zero()
            for mu in spec.barred:
                assert gp(wb.theta_bar[mu - 1], om).is_zero()
            for mu in spec.unbarred:
                assert gp(wb.theta[mu - 1], om).is_zero()


def test_vacuum_count():
    assert len(enumerate_vacua(4)) == 16
    assert len({spec.bitstring() for spec in enumerate_vacua(4)}) == 16


def test_all_barred_and_single_theta():
    wb = witt_basis(make_algebra(Signature(2, 0)), WittScheme.DOUBLED)
    spec = VacuumSpec(1, frozenset(), frozenset([1]))
    om = vacuum(wb, spec)
    assert om.isclose(wb.theta[0])
    assert gp(wb.theta[0], om).is_zero()


def test_vacuum_spec_validation():
    with pytest.raises(ValueError):
        VacuumSpec(2, frozenset([1]), frozenset([1]))
    with pytest.raises(ValueError):
        VacuumSpec(2, frozenset([1]), frozenset())
    assert VacuumSpec.from_bitstring("10").barred == frozenset([1])


# ---------------------------------------------------------------------------
# Ideal bases
# ---------------------------------------------------------------------------

def test_ideal_basis_enumeration_n2():
    wb = witt_basis(make_algebra(Signature(4, 0)), WittScheme.DOUBLED)
    ib = ideal_basis(wb, VacuumSpec.all_barred(2))
    assert ib.size == 4
    om = ib.vacuum
    expect = [om, gp(wb.theta[0], om), gp(wb.theta[1], om), gp(wb.theta[0], gp(wb.theta[1], om))]
    for got, want in zip(ib.spinors, expect):
        assert got.isclose(want)


def test_union_of_ideals_spans_algebra():
    for sig, scheme, n in [
        (Signature(4, 0), WittScheme.DOUBLED, 2),
        (Signature(6, 0), WittScheme.DOUBLED, 3),
        (Signature(1, 3), WittScheme.SPACETIME, 2),
    ]:
        wb = witt_basis(make_algebra(sig), scheme)
        fb = FullBasis(wb)  # rank verified in constructor
        assert len(fb.spinors) == wb.ctx.dimension
        assert fb.block_size() == 2 ** n


def test_project_components_biorthogonal():
    wb = witt_basis(make_algebra(Signature(4, 0)), WittScheme.DOUBLED)
    ib = ideal_basis(wb, VacuumSpec.all_barred(2))
    comps = project_components(ib.spinors[1], ib)
    assert np.allclose(comps, [0, 1, 0, 0], atol=1e-12)
    psi = ib.spinors[0] + ib.spinors[1].scale(2)
    assert np.allclose(project_components(psi, ib), [1, 2, 0, 0], atol=1e-12)


def test_project_round_trip_random():
    rng = np.random.default_rng(42)
    wb = witt_basis(make_algebra(Signature(1, 3)), WittScheme.SPACETIME)
    ib = ideal_basis(wb, VacuumSpec.all_barred(2))
    for _ in range(10):
        coeffs = rng.normal(size=4) + 1j * rng.normal(size=4)
        psi = reconstruct(coeffs, ib)
        back = project_components(psi, ib)
        assert np.allclose(back, coeffs, atol=1e-10)
        assert reconstruct(back, ib).isclose(psi, tol=1e-10)


# ---------------------------------------------------------------------------
# Matrix representations
# ---------------------------------------------------------------------------

def _random_mv(rng, ctx, terms=4):
    mv = Multivector.zero(ctx.sig)
    for _ in range(terms):
        mask = int(rng.integers(0, ctx.dimension))
        mv = mv + Multivector(ctx.sig, {mask: complex(rng.normal(), rng.normal())})
    return mv


def test_matrix_rep_identity_and_nilpotent():
    wb = witt_basis(make_algebra(Signature(1, 3)), WittScheme.SPACETIME)
    ib = ideal_basis(wb, VacuumSpec.all_barred(2))
    assert np.allclose(matrix_rep(wb.ctx.one(), ib), np.eye(4), atol=1e-12)
    m = matrix_rep(wb.theta[0], ib)
    assert np.abs(m @ m).max() <= 1e-12


def test_gamma_matrices_clifford_relation():
    ctx = make_algebra(Signature(1, 3))
    wb = witt_basis(ctx, WittScheme.SPACETIME)
    ib = ideal_basis(wb, VacuumSpec.all_barred(2))
    eta = [1, -1, -1, -1]
    gammas = [matrix_rep(ctx.gamma(i), ib) for i in range(1, 5)]
    for i in range(4):
        for j in range(4):
            lhs = gammas[i] @ gammas[j] + gammas[j] @ gammas[i]
            rhs = 2 * eta[i] * (i == j) * np.eye(4)
            assert np.abs(lhs - rhs).max() <= 1e-12


def test_matrix_rep_homomorphism():
    rng = np.random.default_rng(3)
    ctx = make_algebra(Signature(1, 3))
    wb = witt_basis(ctx, WittScheme.SPACETIME)
    ib = ideal_basis(wb, VacuumSpec.all_barred(2))
    for _ in range(100):
        a, b = _random_mv(rng, ctx), _random_mv(rng, ctx)
        lhs = matrix_rep(gp(a, b), ib)
        rhs = matrix_rep(a, ib) @ matrix_rep(b, ib)
        assert np.abs(lhs - rhs).max() <= 1e-10


def test_full_matrix_rep_structure():
    ctx = make_algebra(Signature(1, 3))
    wb = witt_basis(ctx, WittScheme.SPACETIME)
    fb = FullBasis(wb)
    assert np.allclose(full_matrix_rep(ctx.one(), fb), np.eye(16), atol=1e-12)
    g1 = full_matrix_rep(ctx.gamma(1), fb)
    assert abs(np.trace(g1)) <= 1e-12
    # block diagonal over ideals, each block an equivalent irreducible copy
    bs = fb.block_size()
    rng = np.random.default_rng(17)
    for bi in range(4):
        for bj in range(4):
            if bi != bj:
                assert np.abs(g1[bi * bs:(bi + 1) * bs, bj * bs:(bj + 1) * bs]).max() <= 1e-12
    for _ in range(10):
        x = _random_mv(rng, ctx)
        full = full_matrix_rep(x, fb)
        traces = [np.trace(full[b * bs:(b + 1) * bs, b * bs:(b + 1) * bs]) for b in range(4)]
        assert np.allclose(traces, traces[0], atol=1e-9)


def test_full_rep_is_homomorphism():
    rng = np.random.default_rng(11)
    ctx = make_algebra(Signature(2, 0))
    wb = witt_basis(ctx, WittScheme.DOUBLED)
    fb = FullBasis(wb)
    for _ in range(20):
        a, b = _random_mv(rng, ctx, terms=3), _random_mv(rng, ctx, terms=3)
        assert np.allclose(
            full_matrix_rep(gp(a, b), fb),
            full_matrix_rep(a, fb) @ full_matrix_rep(b, fb),
            atol=1e-10,
        )


# ---------------------------------------------------------------------------
# Expectation metric
# ---------------------------------------------------------------------------

def test_expectation_metric_identity_state():
    ctx = make_algebra(Signature(1, 3))
    em = expectation_metric(ctx.one(), ctx)
    assert np.allclose(em.e, np.eye(4), atol=1e-12)
    assert np.allclose(em.g, np.diag([1, -1, -1, -1]), atol=1e-12)


def test_expectation_metric_rotor():
    ctx = make_algebra(Signature(3, 0))
    phi = 0.8
    rotor = Multivector.scalar(ctx.sig, math.cos(phi / 2)) + Multivector.blade(
        ctx.sig, [1, 2], math.sin(phi / 2)
    )
    em = expectation_metric(rotor, ctx)
    assert np.allclose(em.g, np.eye(3), atol=1e-12)
    c, s = math.cos(phi), math.sin(phi)
    expected = np.array([[c, -s, 0], [s, c, 0], [0, 0, 1.0]])
    ok = np.allclose(em.e.real, expected, atol=1e-12) or np.allclose(
        em.e.real, expected.T, atol=1e-12
    )
    assert ok and np.abs(em.e.imag).max() <= 1e-12


def test_expectation_metric_always_symmetric():
    rng = np.random.default_rng(23)
    ctx = make_algebra(Signature(1, 3))
    for _ in range(10):
        psi = _random_mv(rng, ctx, terms=5)
        norm = complex(scalar_part(gp(dagger(psi), psi)))
        if abs(norm) < 1e-6:
            continue
        em = expectation_metric(psi, ctx)
        assert np.abs(em.g - em.g.T).max() <= 1e-10


def test_expectation_metric_zero_norm_rejected():
    ctx = make_algebra(Signature(1, 1))
    null = ctx.gamma(1) + ctx.gamma(2)  # (g1+g2)^2 = 0, dagger-norm vanishes
    with pytest.raises(ValueError):
        expectation_metric(null, ctx)


def test_ideal_basis_serialization():
    import json

    from cliffield.witt import ideal_basis_to_json

    wb = witt_basis(make_algebra(Signature(1, 3)), WittScheme.SPACETIME)
    ib = ideal_basis(wb, VacuumSpec.from_bitstring("10"))
    doc = json.loads(json.dumps(ideal_basis_to_json(ib)))
    assert doc["vacuum"] == "10"
    assert doc["basis_order"] == [[], [1], [2], [1, 2]]
    assert len(doc["spinors"]) == 4
    from cliffield.blades import Multivector

    back = Multivector.from_json_dict(doc["spinors"][0])
    assert back.isclose(ib.vacuum, tol=1e-15)
