"""Acceptance suite: every criterion runs at its pinned tolerance and
prints one pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` for the per-criterion
lines, or plain pytest for silent collection.
"""

import math
import random
import time

import numpy as np
import pytest

from oracles import ALL_SMALL_SIGS, oracle_gp, random_mv

from cliffield.blades import Signature, gp, make_algebra
from cliffield import checks, dynamics, grassmann, lattice, weyl, witt


def _report(number: int, label: str, passed: bool, detail: str = ""):
    status = "PASS" if passed else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {number:02d} {status}: {label}{suffix}")
    assert passed, f"criterion {number}: {label}{suffix}"


def test_criterion_01_clifford_kernel_oracle():
    rng = random.Random(20240901)
    t0 = time.monotonic()
    pairs = 0
    exact = True
    for sig in ALL_SMALL_SIGS:
        for _ in range(1000):
            a, b = random_mv(rng, sig), random_mv(rng, sig)
            if gp(a, b) != oracle_gp(a, b):
                exact = False
                break
            pairs += 1
    elapsed = time.monotonic() - t0
    _report(1, "geometric product matches the string-expansion oracle",
            exact and elapsed < 10.0,
            f"{pairs} integer-exact pairs over p+q <= 4 in {elapsed:.2f} s")


def test_criterion_02_witt_relations():
    cases = [
        (Signature(4, 0), witt.WittScheme.DOUBLED, 2),
        (Signature(2, 6), witt.WittScheme.DOUBLED, 4),
        (Signature(1, 3), witt.WittScheme.SPACETIME, 2),
        (Signature(2, 6), witt.WittScheme.SPACETIME, 4),
    ]
    worst = 0.0
    for sig, scheme, n in cases:
        wb = witt.witt_basis(make_algebra(sig), scheme)
        assert wb.n == n
        worst = max(worst, witt.witt_relation_residual(wb))
    _report(2, "Witt ladder relations for both schemes at n = 2 and n = 4",
            worst <= 1e-12, f"max residual {worst:.2e}")


def test_criterion_03_ideal_decomposition():
    t0 = time.monotonic()
    ok = True
    detail = []
    for sig, scheme, n in [
        (Signature(4, 0), witt.WittScheme.DOUBLED, 2),
        (Signature(1, 3), witt.WittScheme.SPACETIME, 2),
        (Signature(6, 0), witt.WittScheme.DOUBLED, 3),
    ]:
        wb = witt.witt_basis(make_algebra(sig), scheme)
        specs = witt.enumerate_vacua(n)
        ok &= len(specs) == 2 ** n
        fb = witt.FullBasis(wb, verify=False)
        for ib in fb.ideals:
            ok &= ib.size == 2 ** n
            ib.verify_rank()
        rank = int(np.linalg.matrix_rank(fb.coordinate_matrix()))
        ok &= rank == 2 ** (2 * n)
        detail.append(f"Cl({sig.p},{sig.q}) rank {rank}")
    elapsed = time.monotonic() - t0
    _report(3, "2^n vacua give 2^n ideals of dimension 2^n spanning the algebra",
            ok and elapsed < 30.0, "; ".join(detail) + f"; {elapsed:.2f} s")


def test_criterion_04_gamma_matrix_reconstruction():
    ctx = make_algebra(Signature(1, 3))
    wb = witt.witt_basis(ctx, witt.WittScheme.SPACETIME)
    ib = witt.ideal_basis(wb, witt.VacuumSpec.all_barred(2))
    clifford_dev = checks.measure_gamma_clifford(ib)
    rng = np.random.default_rng(8)
    hom_dev = 0.0
    for _ in range(100):
        a = checks._random_mv(rng, ctx)
        b = checks._random_mv(rng, ctx)
        lhs = witt.matrix_rep(gp(a, b), ib)
        rhs = witt.matrix_rep(a, ib) @ witt.matrix_rep(b, ib)
        hom_dev = max(hom_dev, float(np.abs(lhs - rhs).max()))
    _report(4, "spacetime-scheme gamma matrices: Clifford relation and homomorphism",
            clifford_dev <= 1e-12 and hom_dev <= 1e-10,
            f"clifford {clifford_dev:.2e}, homomorphism {hom_dev:.2e}")


def test_criterion_05_grassmann_abstract_equivalence_exact():
    sympy = pytest.importorskip("sympy")
    r2 = sympy.sqrt(2)
    ok = True
    for n in (1, 2, 3):
        ctx = make_algebra(Signature(2 * n, 0))
        wb = witt.witt_basis(ctx, witt.WittScheme.DOUBLED, root2=r2)
        ib = witt.IdealBasis(wb, witt.VacuumSpec.all_barred(n))
        masks = grassmann.graded_subsets(n)
        weights = [r2 ** mask.bit_count() for mask in masks]
        for mu in range(1, n + 1):
            rep_pairs = [
                (grassmann.GrassmannOperator.multiply_by(n, mu).scale(r2),
                 wb.theta[mu - 1]),
                (grassmann.GrassmannOperator.derive_by(n, mu).scale(r2),
                 wb.theta_bar[mu - 1]),
            ]
            for op, mv in rep_pairs:
                abstract = witt.sandwich_matrix(mv, ib)
                for j, mj in enumerate(masks):
                    image = op.apply(grassmann.GrassmannFunction(n, {mj: 1}))
                    for i, mi in enumerate(masks):
                        lhs = image.coeffs.get(mi, 0) * weights[j]
                        rhs = weights[i] * abstract[i][j]
                        if sympy.simplify(lhs - rhs) != 0:
                            ok = False
    _report(5, "represented generators match the ideal matrices exactly "
               "through the recorded diagonal basis map (n <= 3)", ok)


def test_criterion_06_quantization_correspondence():
    rng = np.random.default_rng(4)
    form = weyl.SymplecticForm.euclidean(2)
    worst = 0.0
    for _ in range(50):
        polys = []
        for _ in range(2):
            f = weyl.PhasePolynomial.zero(2)
            for _ in range(3):
                expo = [0, 0, 0, 0]
                for _ in range(int(rng.integers(0, 3))):
                    expo[int(rng.integers(0, 4))] += 1
                f = f + weyl.PhasePolynomial(2, {tuple(expo): int(rng.integers(-3, 4))})
            polys.append(f)
        rep = weyl.bracket_correspondence(polys[0], polys[1], form, cutoff=12)
        worst = max(worst, rep.max_abs_deviation)
    _report(6, "Poisson bracket equals the scaled Weyl-operator commutator "
               "(degree <= 2, cutoff 12, 50 pairs)",
            worst <= 1e-10, f"max deviation {worst:.2e}")


def test_criterion_07_flows():
    t0 = time.monotonic()
    taus = np.linspace(0.0, 10.0, 41)
    rng = np.random.default_rng(11)
    models = [
        dynamics.model_factory("oscillator", n=1, omega=1.0),
        dynamics.model_factory("massless", n=4, lam=1.0),
        dynamics.model_factory("bars", n=4, A=[[0.2, 0.9], [-0.3, -0.2]]),
    ]
    worst_sym = worst_pair = 0.0
    for m in models:
        worst_sym = max(worst_sym, checks.measure_symplecticity(m, taus))
        z0 = rng.normal(size=2 * m.n)
        worst_pair = max(worst_pair, checks.measure_pairing(m, z0, taus))
    period_dev = 0.0
    for omega in (0.5, 1.0, 2.0):
        m = dynamics.model_factory("oscillator", n=1, omega=omega)
        C = dynamics.heisenberg_flow(m, 2 * math.pi / omega).C
        period_dev = max(period_dev, float(np.abs(C - np.eye(2)).max()))
    elapsed = time.monotonic() - t0
    ok = worst_sym <= 1e-9 and worst_pair <= 1e-9 and period_dev <= 1e-9 and elapsed < 5.0
    _report(7, "symplecticity, pairing invariant and oscillator periodicity",
            ok, f"sym {worst_sym:.2e}, pair {worst_pair:.2e}, "
                f"period {period_dev:.2e}, {elapsed:.2f} s")


def test_criterion_08_dirac_constraint_kernels():
    rng = np.random.default_rng(21)
    ok = True
    for _ in range(100):
        sp = rng.normal(size=3)
        p_null = np.array([np.linalg.norm(sp), *sp])
        ok &= dynamics.kernel_dim(dynamics.slash(p_null)) == 2
    for _ in range(100):
        sp = rng.normal(size=3)
        p_time = np.array([np.linalg.norm(sp) * (1.1 + rng.random()), *sp])
        ok &= dynamics.kernel_dim(dynamics.slash(p_time)) == 0
    _report(8, "kernel of slash(p): 2 for 100 null momenta, 0 for 100 timelike", ok)


def test_criterion_09_lattice_fermion_algebra():
    worst = 0.0
    for D in range(1, 7):
        worst = max(worst, lattice.FermionAlgebra(D).anticommutator_deviation())
    _report(9, "fermionic ladder relations integer-exact, D <= 6 exhaustive",
            worst == 0.0, f"max deviation {worst}")


def test_criterion_10_vacuum_census():
    ok = True
    for D in range(1, 7):
        fa = lattice.FermionAlgebra(D)
        count = 0
        for mask in range(1 << D):
            barred = frozenset(m for m in range(1, D + 1) if mask >> (m - 1) & 1)
            vac = lattice.make_vacuum(fa, lattice.VacuumChoice.bare(barred))
            ok &= lattice.fock_rank(lattice.fock_basis(fa, vac)) == 1 << D
            count += 1
        ok &= count == 1 << D
    headline = lattice.FermionAlgebra(4)
    vac = lattice.make_vacuum(headline, lattice.VacuumChoice.all_barred(4))
    ok &= lattice.fock_basis(headline, vac).shape == (16, 16)
    _report(10, "2^D vacua each span a rank-2^D Fock basis; D = 4 gives 16",
            ok)


def test_criterion_11_zero_point_energy_ledger():
    t0 = time.monotonic()
    ok = True
    details = []
    for sites in (1, 2, 3):
        fm = lattice.build_model(lattice.Lattice(dims=(sites,)), "dirac",
                                 m=1.0, components=2)
        rep = lattice.vacuum_energy(fm)
        spectrum = rep.spectrum
        sym = np.allclose(np.sort(spectrum), np.sort(-spectrum), atol=1e-12)
        split_zero = abs(rep.energies["split"]) <= 1e-10
        expected = -0.5 * float(np.abs(spectrum).sum())
        standard_ok = abs(rep.energies["standard"] - expected) <= 1e-10
        ledger = abs(rep.energies["standard"] + rep.energies["conjugate_standard"]) <= 1e-10
        ok &= sym and split_zero and standard_ok and ledger
        details.append(
            f"D={2 * sites}: split {rep.energies['split']:.1e}, "
            f"standard {rep.energies['standard']:.6f}"
        )
    elapsed = time.monotonic() - t0
    _report(11, "split vacuum energy 0, standard vacuum -sum(omega)/2 "
                "(exact diagonalization, D in {2,4,6})",
            ok and elapsed < 60.0, "; ".join(details) + f"; {elapsed:.2f} s")


def test_criterion_12_field_bracket_correspondence():
    worst = 0.0
    fm = lattice.build_model(lattice.Lattice(dims=(3,)), "scalar", m=1.0)
    S = fm.lattice.sites
    J = fm.form.matrix()
    coords = [weyl.PhasePolynomial.coordinate(S, a) for a in range(2 * S)]
    for a in range(2 * S):
        for b in range(2 * S):
            val = weyl.poisson(coords[a], coords[b], fm.form)
            got = val.terms.get(tuple([0] * (2 * S)), 0)
            worst = max(worst, abs(got - J[a, b]))
    fmd = lattice.build_model(lattice.Lattice(dims=(2,)), "dirac", m=1.0,
                              components=2)
    rho = fmd.rho()
    n_gen = rho.shape[0]
    for a in range(n_gen):
        for b in range(n_gen):
            got = grassmann.odd_poisson(
                grassmann.GrassmannFunction.xi(n_gen, a + 1),
                grassmann.GrassmannFunction.xi(n_gen, b + 1),
                rho,
            )
            worst = max(worst, abs(got - rho[a, b]))
    _report(12, "lattice Poisson brackets reproduce the assembled J and rho",
            worst == 0.0, f"max deviation {worst}")
