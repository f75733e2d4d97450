"""Registry of named conformance checks.

Each check measures a deviation against a pinned tolerance and reports a
CheckResult; the CLI aggregates them into machine-readable reports.  The
registry entries run with bundled default inputs; scenario executors call
the same measurement helpers against scenario-built models so that check
names mean the same thing everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import numpy as np

from . import blades, dynamics, grassmann, lattice, weyl, witt


@dataclass(frozen=True)
class CheckResult:
    name: str
    deviation: float
    tolerance: float
    notes: str = ""

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "deviation": self.deviation,
            "tolerance": self.tolerance,
            "notes": self.notes,
        }


@dataclass(frozen=True)
class CheckContext:
    seed: int = 0
    tolerance_scale: float = 1.0

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def tol(self, base: float) -> float:
        return base * self.tolerance_scale


def _random_mv(rng, ctx, terms=4, integer=False):
    mv = blades.Multivector.zero(ctx.sig)
    for _ in range(terms):
        mask = int(rng.integers(0, ctx.dimension))
        if integer:
            c = int(rng.integers(-4, 5))
        else:
            c = complex(rng.normal(), rng.normal())
        if c != 0:
            mv = mv + blades.Multivector(ctx.sig, {mask: c})
    return mv


# ---------------------------------------------------------------------------
# blade algebra
# ---------------------------------------------------------------------------

def check_blades_associativity(cc: CheckContext) -> CheckResult:
    rng = cc.rng()
    worst = 0.0
    for sig in (blades.Signature(2, 1), blades.Signature(1, 3)):
        ctx = blades.make_algebra(sig)
        for _ in range(40):
            a, b, c = (_random_mv(rng, ctx, integer=True) for _ in range(3))
            diff = blades.gp(blades.gp(a, b), c) - blades.gp(a, blades.gp(b, c))
            worst = max(worst, diff.max_abs_coeff())
    return CheckResult("blades.associativity", worst, cc.tol(0.0),
                       notes="integer coefficients, exact")


def check_blades_anticommutation(cc: CheckContext) -> CheckResult:
    worst = 0.0
    for sig in (blades.Signature(2, 0), blades.Signature(1, 3), blades.Signature(2, 6)):
        ctx = blades.make_algebra(sig)
        diag = sig.metric_diagonal()
        for i in range(1, sig.n_generators + 1):
            for j in range(1, sig.n_generators + 1):
                lhs = blades.gp(ctx.gamma(i), ctx.gamma(j)) + blades.gp(
                    ctx.gamma(j), ctx.gamma(i)
                )
                target = ctx.one().scale(2 * diag[i - 1]) if i == j else ctx.zero()
                worst = max(worst, (lhs - target).max_abs_coeff())
    return CheckResult("blades.anticommutation", worst, cc.tol(0.0))


def check_blades_dagger(cc: CheckContext) -> CheckResult:
    rng = cc.rng()
    ctx = blades.make_algebra(blades.Signature(1, 2))
    worst = 0.0
    for _ in range(60):
        a, b = _random_mv(rng, ctx), _random_mv(rng, ctx)
        worst = max(
            worst,
            (blades.dagger(blades.gp(a, b)) - blades.gp(blades.dagger(b), blades.dagger(a))).max_abs_coeff(),
            (blades.dagger(blades.dagger(a)) - a).max_abs_coeff(),
        )
    return CheckResult("blades.dagger", worst, cc.tol(1e-12),
                       notes="antiautomorphism and involution")


# ---------------------------------------------------------------------------
# witt / spinor
# ---------------------------------------------------------------------------

def measure_witt_relations(wb: witt.WittBasis) -> float:
    return witt.witt_relation_residual(wb)


def check_witt_relations(cc: CheckContext) -> CheckResult:
    worst = 0.0
    cases = [
        (blades.Signature(4, 0), witt.WittScheme.DOUBLED),
        (blades.Signature(2, 6), witt.WittScheme.DOUBLED),
        (blades.Signature(1, 3), witt.WittScheme.SPACETIME),
        (blades.Signature(2, 6), witt.WittScheme.SPACETIME),
    ]
    for sig, scheme in cases:
        wb = witt.witt_basis(blades.make_algebra(sig), scheme)
        worst = max(worst, measure_witt_relations(wb))
    return CheckResult("witt.relations", worst, cc.tol(1e-12),
                       notes="both schemes, n = 2 and n = 4")


def check_witt_vacuum_annihilation(cc: CheckContext) -> CheckResult:
    worst = 0.0
    for sig, scheme in [
        (blades.Signature(4, 0), witt.WittScheme.DOUBLED),
        (blades.Signature(1, 3), witt.WittScheme.SPACETIME),
    ]:
        wb = witt.witt_basis(blades.make_algebra(sig), scheme)
        for spec in witt.enumerate_vacua(wb.n):
            om = witt.vacuum(wb, spec)
            for mu in spec.barred:
                worst = max(worst, blades.gp(wb.theta_bar[mu - 1], om).max_abs_coeff())
            for mu in spec.unbarred:
                worst = max(worst, blades.gp(wb.theta[mu - 1], om).max_abs_coeff())
    return CheckResult("witt.vacuum_annihilation", worst, cc.tol(1e-12))


def check_witt_ideal_decomposition(cc: CheckContext) -> CheckResult:
    worst = 0
    for sig in (blades.Signature(4, 0), blades.Signature(6, 0)):
        wb = witt.witt_basis(blades.make_algebra(sig), witt.WittScheme.DOUBLED)
        fb = witt.FullBasis(wb, verify=False)
        rank = int(np.linalg.matrix_rank(fb.coordinate_matrix()))
        worst = max(worst, abs(rank - wb.ctx.dimension))
    return CheckResult("witt.ideal_decomposition", float(worst), cc.tol(0.0),
                       notes="2^n ideals of dimension 2^n span the algebra")


def measure_gamma_clifford(ib: witt.IdealBasis) -> float:
    ctx = ib.wb.ctx
    eta = ctx.sig.metric_diagonal()
    gammas = [witt.matrix_rep(ctx.gamma(i), ib) for i in range(1, ctx.n_generators + 1)]
    dim = gammas[0].shape[0]
    worst = 0.0
    for i in range(len(gammas)):
        for j in range(len(gammas)):
            lhs = gammas[i] @ gammas[j] + gammas[j] @ gammas[i]
            rhs = 2 * eta[i] * (i == j) * np.eye(dim)
            worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst


def check_witt_gamma_clifford(cc: CheckContext) -> CheckResult:
    wb = witt.witt_basis(blades.make_algebra(blades.Signature(1, 3)),
                         witt.WittScheme.SPACETIME)
    ib = witt.ideal_basis(wb, witt.VacuumSpec.all_barred(2))
    return CheckResult("witt.gamma_clifford", measure_gamma_clifford(ib),
                       cc.tol(1e-12), notes="spacetime scheme, Cl(1,3)")


def check_witt_matrix_homomorphism(cc: CheckContext) -> CheckResult:
    rng = cc.rng()
    ctx = blades.make_algebra(blades.Signature(1, 3))
    wb = witt.witt_basis(ctx, witt.WittScheme.SPACETIME)
    ib = witt.ideal_basis(wb, witt.VacuumSpec.all_barred(2))
    worst = 0.0
    for _ in range(100):
        a, b = _random_mv(rng, ctx), _random_mv(rng, ctx)
        lhs = witt.matrix_rep(blades.gp(a, b), ib)
        rhs = witt.matrix_rep(a, ib) @ witt.matrix_rep(b, ib)
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    return CheckResult("witt.matrix_homomorphism", worst, cc.tol(1e-10),
                       notes="100 random pairs")


# ---------------------------------------------------------------------------
# grassmann
# ---------------------------------------------------------------------------

def check_grassmann_operator_algebra(cc: CheckContext) -> CheckResult:
    worst = 0.0
    for n in (1, 2, 3, 4):
        basis = [grassmann.GrassmannFunction(n, {m: 1}) for m in grassmann.graded_subsets(n)]
        for mu in range(1, n + 1):
            for nu in range(1, n + 1):
                tt = grassmann.anticommutator(grassmann.rep_theta(n, mu), grassmann.rep_theta(n, nu))
                bb = grassmann.anticommutator(grassmann.rep_theta_bar(n, mu), grassmann.rep_theta_bar(n, nu))
                tb = grassmann.anticommutator(grassmann.rep_theta(n, mu), grassmann.rep_theta_bar(n, nu))
                for b in basis:
                    worst = max(worst, tt.apply(b).max_abs_coeff())
                    worst = max(worst, bb.apply(b).max_abs_coeff())
                    target = b.scale(2) if mu == nu else grassmann.GrassmannFunction.zero(n)
                    worst = max(worst, (tb.apply(b) - target).max_abs_coeff())
    return CheckResult("grassmann.operator_algebra", worst, cc.tol(1e-12),
                       notes="exhaustive on monomials, n <= 4")


def check_grassmann_expand_bijection(cc: CheckContext) -> CheckResult:
    worst = 0
    for n in (1, 2, 3):
        dim = 1 << n
        mat = np.zeros((dim, dim), dtype=complex)
        for j, m in enumerate(grassmann.graded_subsets(n)):
            mat[:, j] = grassmann.expand_components(grassmann.GrassmannFunction(n, {m: 1}))
        worst = max(worst, abs(int(np.linalg.matrix_rank(mat)) - dim))
    return CheckResult("grassmann.expand_bijection", float(worst), cc.tol(0.0))


def check_grassmann_berezin_derivative(cc: CheckContext) -> CheckResult:
    rng = cc.rng()
    worst = 0.0
    for n in (2, 3, 4):
        for _ in range(25):
            f = grassmann.GrassmannFunction(
                n,
                {int(rng.integers(0, 1 << n)): complex(rng.normal(), rng.normal())
                 for _ in range(3)},
            )
            for mu in range(1, n + 1):
                worst = max(
                    worst,
                    grassmann.berezin(grassmann.dxi(f, mu), mu).max_abs_coeff(),
                )
    return CheckResult("grassmann.berezin_derivative", worst, cc.tol(0.0),
                       notes="integral of a derivative vanishes")


def grassmann_witt_basis_map(n: int) -> np.ndarray:
    """Diagonal change of basis between the monomial and ideal pictures.

    The represented generators act on monomials with sqrt(2) weights while
    the abstract ideal basis absorbs the ladder normalization into its
    Gram; the two matrix families agree after conjugating by
    diag(sqrt(2)^|subset|) in the shared graded-lexicographic order (the
    basis permutation is the identity).
    """
    weights = [math.sqrt(2.0) ** mask.bit_count() for mask in grassmann.graded_subsets(n)]
    return np.diag(weights)


def measure_grassmann_witt_equivalence(n: int) -> float:
    ctx = blades.make_algebra(blades.Signature(2 * n, 0))
    wb = witt.witt_basis(ctx, witt.WittScheme.DOUBLED)
    ib = witt.ideal_basis(wb, witt.VacuumSpec.all_barred(n))
    B = grassmann_witt_basis_map(n)
    B_inv = np.linalg.inv(B)
    worst = 0.0
    for mu in range(1, n + 1):
        g_theta = grassmann.rep_theta(n, mu).matrix()
        g_theta_bar = grassmann.rep_theta_bar(n, mu).matrix()
        a_theta = witt.matrix_rep(wb.theta[mu - 1], ib)
        a_theta_bar = witt.matrix_rep(wb.theta_bar[mu - 1], ib)
        worst = max(worst, float(np.abs(g_theta - B @ a_theta @ B_inv).max()))
        worst = max(worst, float(np.abs(g_theta_bar - B @ a_theta_bar @ B_inv).max()))
    return worst


def check_grassmann_witt_equivalence(cc: CheckContext) -> CheckResult:
    worst = max(measure_grassmann_witt_equivalence(n) for n in (1, 2, 3))
    return CheckResult("grassmann.witt_equivalence", worst, cc.tol(1e-12),
                       notes="monomial matrices match the ideal representation "
                             "through the recorded diagonal basis map")


# ---------------------------------------------------------------------------
# weyl
# ---------------------------------------------------------------------------

def check_weyl_coordinate_brackets(cc: CheckContext) -> CheckResult:
    worst = 0.0
    for metric in [(1,), (1, 1), (1, -1, -1, -1)]:
        n = len(metric)
        form = weyl.SymplecticForm(tuple(metric))
        J = form.matrix()
        coords = [weyl.PhasePolynomial.coordinate(n, a) for a in range(2 * n)]
        for a in range(2 * n):
            for b in range(2 * n):
                val = weyl.poisson(coords[a], coords[b], form)
                got = val.terms.get(tuple([0] * (2 * n)), 0)
                worst = max(worst, abs(got - J[a, b]))
                extra = {e: c for e, c in val.terms.items() if sum(e) > 0}
                worst = max(worst, max((abs(c) for c in extra.values()), default=0.0))
    return CheckResult("weyl.coordinate_brackets", worst, cc.tol(0.0))


def check_weyl_jacobi(cc: CheckContext) -> CheckResult:
    rng = cc.rng()
    form = weyl.SymplecticForm.euclidean(2)
    worst = 0.0
    for _ in range(40):
        polys = []
        for _ in range(3):
            f = weyl.PhasePolynomial.zero(2)
            for _ in range(3):
                expo = [0, 0, 0, 0]
                for _ in range(int(rng.integers(0, 4))):
                    expo[int(rng.integers(0, 4))] += 1
                if sum(expo) <= 3:
                    f = f + weyl.PhasePolynomial(2, {tuple(expo): int(rng.integers(-3, 4))})
            polys.append(f)
        f, g, h = polys
        total = (
            weyl.poisson(f, weyl.poisson(g, h, form), form)
            + weyl.poisson(g, weyl.poisson(h, f, form), form)
            + weyl.poisson(h, weyl.poisson(f, g, form), form)
        )
        worst = max(worst, max((abs(c) for c in total.terms.values()), default=0.0))
    return CheckResult("weyl.jacobi", float(worst), cc.tol(0.0),
                       notes="exact integer coefficients, degree <= 3")


def check_weyl_canonical_relations(cc: CheckContext) -> CheckResult:
    form = weyl.SymplecticForm.euclidean(2)
    ops = weyl.mode_ops(2, 8, convention="hermitian")
    dev = weyl.canonical_relation_deviation(ops, form)
    return CheckResult("weyl.canonical_relations", dev, cc.tol(1e-10),
                       notes="hermitian convention: (1/2)[X,P] = i g")


def check_weyl_correspondence(cc: CheckContext) -> CheckResult:
    rng = cc.rng()
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
    return CheckResult("weyl.correspondence", worst, cc.tol(1e-10),
                       notes="50 random degree <= 2 pairs, cutoff 12")


# ---------------------------------------------------------------------------
# dynamics
# ---------------------------------------------------------------------------

def bundled_models() -> List[dynamics.QuadraticModel]:
    return [
        dynamics.model_factory("oscillator", n=1, omega=1.0),
        dynamics.model_factory("massless", n=4, lam=1.0),
        dynamics.model_factory("bars", n=4, A=[[0.2, 0.9], [-0.3, -0.2]]),
    ]


def measure_symplecticity(model, taus) -> float:
    return dynamics.symplecticity_deviation(model, taus)


def measure_pairing(model, z0, taus) -> float:
    traj = dynamics.classical_trajectory(model, z0, taus)
    frames = dynamics.heisenberg_frames(model, taus)
    return dynamics.pairing_invariant(traj, frames)


def check_dynamics_symplecticity(cc: CheckContext) -> CheckResult:
    taus = np.linspace(0.0, 10.0, 41)
    worst = max(measure_symplecticity(m, taus) for m in bundled_models())
    return CheckResult("dynamics.symplecticity", worst, cc.tol(1e-9))


def check_dynamics_pairing(cc: CheckContext) -> CheckResult:
    rng = cc.rng()
    taus = np.linspace(0.0, 10.0, 41)
    worst = 0.0
    for m in bundled_models():
        z0 = rng.normal(size=2 * m.n)
        worst = max(worst, measure_pairing(m, z0, taus))
    return CheckResult("dynamics.pairing", worst, cc.tol(1e-9))


def check_dynamics_oscillator_period(cc: CheckContext) -> CheckResult:
    worst = 0.0
    for omega in (0.5, 1.0, 2.0):
        m = dynamics.model_factory("oscillator", n=1, omega=omega)
        C = dynamics.heisenberg_flow(m, 2 * math.pi / omega).C
        worst = max(worst, float(np.abs(C - np.eye(2)).max()))
    return CheckResult("dynamics.oscillator_period", worst, cc.tol(1e-9))


def check_dynamics_sp2_closure(cc: CheckContext) -> CheckResult:
    n = 4
    form = weyl.SymplecticForm.minkowski(n)
    xx, xp, pp = dynamics.sp2_constraints(n)
    devs = []
    for lhs, rhs in [
        (weyl.poisson(xx, pp, form), xp.scale(4)),
        (weyl.poisson(xx, xp, form), xx.scale(2)),
        (weyl.poisson(xp, pp, form), pp.scale(2)),
    ]:
        diff = lhs - rhs
        devs.append(max((abs(c) for c in diff.terms.values()), default=0.0))
    return CheckResult("dynamics.sp2_closure", float(max(devs)), cc.tol(0.0),
                       notes="structure constants 4, 2, 2")


def check_dynamics_dirac_kernel(cc: CheckContext) -> CheckResult:
    rng = cc.rng()
    worst = 0
    for _ in range(100):
        sp = rng.normal(size=3)
        p_null = np.array([np.linalg.norm(sp), *sp])
        worst = max(worst, abs(dynamics.kernel_dim(dynamics.slash(p_null)) - 2))
        p_time = np.array([np.linalg.norm(sp) * (1.2 + rng.random()), *sp])
        worst = max(worst, abs(dynamics.kernel_dim(dynamics.slash(p_time)) - 0))
    return CheckResult("dynamics.dirac_kernel", float(worst), cc.tol(0.0),
                       notes="null momenta give kernel 2, timelike give 0")


def check_dynamics_quantize_map(cc: CheckContext) -> CheckResult:
    rep = dynamics.quantize_map(dynamics.model_factory("massless", n=4, lam=1.0))
    dev = 0.0 if (rep.unbarred_block_exact and rep.barred_block_sign == -1) else 1.0
    return CheckResult("dynamics.quantize_map", dev, cc.tol(0.0),
                       notes="; ".join(rep.notes))


# ---------------------------------------------------------------------------
# lattice
# ---------------------------------------------------------------------------

def check_lattice_fermion_algebra(cc: CheckContext) -> CheckResult:
    worst = 0.0
    for D in range(1, 7):
        worst = max(worst, lattice.FermionAlgebra(D).anticommutator_deviation())
    return CheckResult("lattice.fermion_algebra", worst, cc.tol(0.0),
                       notes="integer exact, D <= 6 exhaustive")


def check_lattice_field_brackets(cc: CheckContext) -> CheckResult:
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
    fmd = lattice.build_model(lattice.Lattice(dims=(2,)), "dirac", m=1.0, components=2)
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
    return CheckResult("lattice.field_brackets", float(worst), cc.tol(0.0),
                       notes="bosonic J and fermionic rho entries")


def check_lattice_vacuum_census(cc: CheckContext) -> CheckResult:
    worst = 0
    for D in (2, 4):
        fa = lattice.FermionAlgebra(D)
        for mask in range(1 << D):
            barred = frozenset(m for m in range(1, D + 1) if mask >> (m - 1) & 1)
            vac = lattice.make_vacuum(fa, lattice.VacuumChoice.bare(barred))
            rank = lattice.fock_rank(lattice.fock_basis(fa, vac))
            worst = max(worst, abs(rank - (1 << D)))
    return CheckResult("lattice.vacuum_census", float(worst), cc.tol(0.0),
                       notes="2^D vacua, each Fock basis full rank")


def measure_zero_point(fm) -> Dict[str, float]:
    rep = lattice.vacuum_energy(fm)
    expected_standard = -0.5 * float(np.abs(rep.spectrum).sum())
    return {
        "split": abs(rep.energies["split"]),
        "standard": abs(rep.energies["standard"] - expected_standard),
        "ledger": abs(rep.energies["standard"] + rep.energies["conjugate_standard"]),
    }


def check_lattice_zero_point(cc: CheckContext) -> CheckResult:
    worst = 0.0
    for sites in (1, 2, 3):
        fm = lattice.build_model(lattice.Lattice(dims=(sites,)), "dirac",
                                 m=1.0, components=2)
        worst = max(worst, max(measure_zero_point(fm).values()))
    return CheckResult("lattice.zero_point", worst, cc.tol(1e-10),
                       notes="split vacuum 0, standard -sum(omega)/2, D in {2,4,6}")


def check_lattice_boson_witt(cc: CheckContext) -> CheckResult:
    fm = lattice.build_model(lattice.Lattice(dims=(1,)), "scalar", m=1.0)
    dev = lattice.boson_witt_deviation(lattice.boson_witt(fm, cutoff=8))
    return CheckResult("lattice.boson_witt", max(dev.values()), cc.tol(1e-10),
                       notes="ladder relations on the safe subspace")


def check_lattice_flow_symplecticity(cc: CheckContext) -> CheckResult:
    taus = np.linspace(0.0, 10.0, 21)
    worst = 0.0
    for kind, kwargs in [("scalar", {"m": 1.0}), ("schrodinger", {"m": 1.0, "V": 0.3})]:
        fm = lattice.build_model(lattice.Lattice(dims=(3,)), kind, **kwargs)
        model = fm.quadratic_model()
        worst = max(worst, dynamics.symplecticity_deviation(model, taus))
    return CheckResult("lattice.flow_symplecticity", worst, cc.tol(1e-9))


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

REGISTRY: Dict[str, Callable[[CheckContext], CheckResult]] = {
    fn.__name__.replace("check_", "", 1).replace("_", ".", 1): fn
    for fn in [
        check_blades_associativity,
        check_blades_anticommutation,
        check_blades_dagger,
        check_witt_relations,
        check_witt_vacuum_annihilation,
        check_witt_ideal_decomposition,
        check_witt_gamma_clifford,
        check_witt_matrix_homomorphism,
        check_grassmann_operator_algebra,
        check_grassmann_expand_bijection,
        check_grassmann_berezin_derivative,
        check_grassmann_witt_equivalence,
        check_weyl_coordinate_brackets,
        check_weyl_jacobi,
        check_weyl_canonical_relations,
        check_weyl_correspondence,
        check_dynamics_symplecticity,
        check_dynamics_pairing,
        check_dynamics_oscillator_period,
        check_dynamics_sp2_closure,
        check_dynamics_dirac_kernel,
        check_dynamics_quantize_map,
        check_lattice_fermion_algebra,
        check_lattice_field_brackets,
        check_lattice_vacuum_census,
        check_lattice_zero_point,
        check_lattice_boson_witt,
        check_lattice_flow_symplecticity,
    ]
}


def run_suite(name_filter: str = "", cc: Optional[CheckContext] = None) -> List[CheckResult]:
    """Run every registered check whose name contains the filter."""
    cc = cc or CheckContext()
    names = sorted(n for n in REGISTRY if name_filter in n)
    if not names:
        raise KeyError(
            f"no checks match {name_filter!r}; valid names: {sorted(REGISTRY)}"
        )
    return [REGISTRY[n](cc) for n in names]
