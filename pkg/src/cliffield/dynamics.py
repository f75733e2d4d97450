"""Quadratic phase-space models: classical flows, Heisenberg flows of the
canonical operators, the conserved pairing between them, bundled physical
model kinds, and the superparticle constraint/quantization pipeline.

A model is H = (1/2) z^T K z over 2n phase coordinates with a symplectic
form J = [[0, g], [-g, 0]].  Both flows are exact matrix exponentials
(quadratic models are linear), computed by scaling and squaring:

    classical   z(tau) = exp(tau J K) z0
    Heisenberg  q_a(tau) = C(tau)_a^b q_b(0),  C(tau) = exp(tau K J)

Because (J K)^T = -K J, the contraction z^a(tau) q_a(tau) is conserved for
any z0, and C^T J C = J for all tau.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy.linalg import expm

from .blades import Signature, gp, make_algebra, scalar_part
from .grassmann import GrassmannFunction
from .weyl import SymplecticForm, mode_ops
from .witt import VacuumSpec, WittScheme, ideal_basis, matrix_rep, witt_basis


@dataclass(frozen=True)
class QuadraticModel:
    """H = (1/2) z K z with a fixed symplectic form."""

    n: int
    form: SymplecticForm
    K: np.ndarray
    kind: str = "custom"
    params: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        K = np.asarray(self.K)
        K = K.astype(complex) if np.iscomplexobj(K) else K.astype(float)
        if K.shape != (2 * self.n, 2 * self.n):
            raise ValueError(f"K must be {2 * self.n} x {2 * self.n}")
        if not np.allclose(K, K.T, atol=1e-12):
            raise ValueError("K must be symmetric")
        object.__setattr__(self, "K", K)
        if self.form.n != self.n:
            raise ValueError("form dimension mismatch")

    def energy(self, z: np.ndarray) -> complex:
        z = np.asarray(z)
        return 0.5 * z @ self.K @ z


@dataclass(frozen=True)
class Trajectory:
    taus: np.ndarray
    states: np.ndarray  # shape (len(taus), 2n)

    def to_csv(self, path) -> None:
        n2 = self.states.shape[1]
        header = "tau," + ",".join(
            f"z{k}_re,z{k}_im" for k in range(1, n2 + 1)
        )
        rows = []
        for t, z in zip(self.taus, self.states):
            cells = [f"{t!r}"]
            for v in z:
                cells.append(f"{v.real!r}")
                cells.append(f"{v.imag!r}")
            rows.append(",".join(cells))
        with open(path, "w") as fh:
            fh.write(header + "\n" + "\n".join(rows) + "\n")


@dataclass(frozen=True)
class OperatorFrame:
    """q_a(tau) = C_a^b q_b(0)."""

    tau: float
    C: np.ndarray


def flow_matrix(model: QuadraticModel, tau: float) -> np.ndarray:
    return expm(tau * model.form.matrix() @ model.K)


def classical_flow(model: QuadraticModel, z0: Sequence[complex], tau: float) -> np.ndarray:
    return flow_matrix(model, tau) @ np.asarray(z0, dtype=complex)


def classical_trajectory(model: QuadraticModel, z0: Sequence[complex],
                         taus: Sequence[float]) -> Trajectory:
    taus = np.asarray(taus, dtype=float)
    states = np.array([classical_flow(model, z0, t) for t in taus])
    return Trajectory(taus=taus, states=states)


def heisenberg_flow(model: QuadraticModel, tau: float) -> OperatorFrame:
    return OperatorFrame(tau=tau, C=expm(tau * model.K @ model.form.matrix()))


def heisenberg_frames(model: QuadraticModel, taus: Sequence[float]) -> List[OperatorFrame]:
    return [heisenberg_flow(model, t) for t in taus]


def symplecticity_deviation(model: QuadraticModel, taus: Sequence[float]) -> float:
    J = model.form.matrix()
    worst = 0.0
    for t in taus:
        C = heisenberg_flow(model, t).C
        worst = max(worst, float(np.abs(C.T @ J @ C - J).max()))
    return worst


def energy_drift(model: QuadraticModel, z0: Sequence[complex],
                 taus: Sequence[float]) -> float:
    e0 = model.energy(np.asarray(z0, dtype=complex))
    worst = 0.0
    for t in taus:
        e = model.energy(classical_flow(model, z0, t))
        worst = max(worst, abs(e - e0))
    return float(worst)


def pairing_invariant(traj: Trajectory, frames: Sequence[OperatorFrame]) -> float:
    """Max deviation of the q_a(0) coefficients of z^a(tau) q_a(tau) from
    their tau = 0 values; zero in exact arithmetic by antisymmetry of J."""
    if len(frames) != len(traj.taus):
        raise ValueError("trajectory and frame grids differ")
    ref = traj.states[0] @ frames[0].C
    worst = 0.0
    for z, frame in zip(traj.states, frames):
        worst = max(worst, float(np.abs(z @ frame.C - ref).max()))
    return worst


def flow_grassmann_state(model: QuadraticModel,
                         state: Sequence[GrassmannFunction],
                         tau: float) -> List[GrassmannFunction]:
    """Push a vector of anticommuting coordinates through the linear flow.

    The flow matrix acts coefficient-wise, which is well defined because
    the evolution is linear in the phase-space coordinates.
    """
    if len(state) != 2 * model.n:
        raise ValueError("state must have 2n components")
    M = flow_matrix(model, tau)
    n_gen = state[0].n
    out = []
    for row in M:
        acc = GrassmannFunction.zero(n_gen)
        for c, comp in zip(row, state):
            if c != 0:
                acc = acc + comp.scale(c)
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# Model factory
# ---------------------------------------------------------------------------

def model_factory(kind: str, **params) -> QuadraticModel:
    """Bundled model kinds.

    oscillator: n-dimensional nonrelativistic harmonic oscillator,
        K = diag(omega^2 I, I), euclidean metric block.
    massless: relativistic particle in n-dimensional spacetime,
        K = blockdiag(0, lam * eta), minkowski metric block.
    bars: sp(2) gauge model with multiplier matrix A (2x2, traceless),
        K = [[-A21 eta, A11 eta], [A11 eta, A12 eta]].
    """
    if kind == "oscillator":
        n = int(params.get("n", 1))
        omega = float(params.get("omega", 1.0))
        K = np.block(
            [
                [omega ** 2 * np.eye(n), np.zeros((n, n))],
                [np.zeros((n, n)), np.eye(n)],
            ]
        )
        return QuadraticModel(n=n, form=SymplecticForm.euclidean(n), K=K,
                              kind=kind, params={"omega": omega})
    if kind == "massless":
        n = int(params.get("n", 4))
        lam = float(params.get("lam", 1.0))
        form = SymplecticForm.minkowski(n)
        eta = np.diag(form.metric).astype(float)
        K = np.block(
            [
                [np.zeros((n, n)), np.zeros((n, n))],
                [np.zeros((n, n)), lam * eta],
            ]
        )
        return QuadraticModel(n=n, form=form, K=K, kind=kind, params={"lam": lam})
    if kind == "bars":
        n = int(params.get("n", 4))
        A = np.asarray(params["A"], dtype=float)
        if A.shape != (2, 2):
            raise ValueError("bars model needs a 2x2 multiplier matrix A")
        if abs(A[0, 0] + A[1, 1]) > 1e-12:
            raise ValueError(
                "bars multipliers must be traceless, otherwise K is not symmetric"
            )
        form = SymplecticForm.minkowski(n)
        eta = np.diag(form.metric).astype(float)
        K = np.block(
            [
                [-A[1, 0] * eta, A[0, 0] * eta],
                [A[0, 0] * eta, A[0, 1] * eta],
            ]
        )
        return QuadraticModel(
            n=n, form=form, K=K, kind=kind,
            params={"A11": A[0, 0], "A12": A[0, 1], "A21": A[1, 0], "A22": A[1, 1]},
        )
    raise ValueError(f"unknown model kind {kind!r}")


def sp2_constraints(n: int) -> Tuple["PhasePolynomial", ...]:
    """The three quadratic constraints x.x, x.p, p.p of the sp(2) model."""
    from .weyl import PhasePolynomial

    form = SymplecticForm.minkowski(n)
    xx = PhasePolynomial.zero(n)
    xp = PhasePolynomial.zero(n)
    pp = PhasePolynomial.zero(n)
    for mu in range(1, n + 1):
        s = form.metric[mu - 1]
        x, p = PhasePolynomial.x(n, mu), PhasePolynomial.p(n, mu)
        xx = xx + (x * x).scale(s)
        xp = xp + (x * p).scale(s)
        pp = pp + (p * p).scale(s)
    return xx, xp, pp


# ---------------------------------------------------------------------------
# Heisenberg equations on the truncated operator space
# ---------------------------------------------------------------------------

def heisenberg_commutator_deviation(model: QuadraticModel, cutoff: int = 8,
                                    convention: str = "hermitian") -> Tuple[float, complex]:
    """Check [q_a, H] = 2 kappa K_ab q^b on the safe subspace.

    H is the Weyl-symmetrized (1/2) q^a K_ab q^b with indices raised
    through the form; kappa is the canonical commutator constant, so the
    proportionality factor 2 kappa is returned alongside the deviation.
    """
    ops = mode_ops(model.n, cutoff, metric=model.form.metric, convention=convention)
    J = model.form.matrix()
    raised = [
        sum(J[a, b] * ops.operator(b) for b in range(2 * model.n))
        for a in range(2 * model.n)
    ]
    dim = ops.dim
    H = np.zeros((dim, dim), dtype=complex)
    for a in range(2 * model.n):
        for b in range(2 * model.n):
            if model.K[a, b] != 0:
                H += 0.5 * model.K[a, b] * (raised[a] @ raised[b] + raised[b] @ raised[a]) / 2
    kappa = ops.commutator_constant
    worst = 0.0
    for a in range(2 * model.n):
        qa = ops.operator(a)
        lhs = qa @ H - H @ qa
        rhs = 2 * kappa * sum(model.K[a, b] * raised[b] for b in range(2 * model.n))
        worst = max(worst, float(np.abs(ops.restrict(lhs - rhs)).max()))
    return worst, 2 * kappa


# ---------------------------------------------------------------------------
# Superparticle: constraints and Dirac quantization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SuperModel:
    """Bosonic quadratic model plus an anticommuting sector of equal size.

    alpha, beta, gamma multiply the p.p, lam.p and lambar.p constraint
    terms respectively.
    """

    bosonic: QuadraticModel
    n_grassmann: int
    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 1.0

    def __post_init__(self):
        if self.n_grassmann != self.bosonic.n:
            raise ValueError("anticommuting sector size must match the bosonic n")


@dataclass(frozen=True)
class ConstraintResiduals:
    p_squared: complex
    lam_dot_p: GrassmannFunction
    lam_bar_dot_p: GrassmannFunction

    def max_abs(self) -> float:
        return max(
            abs(self.p_squared),
            self.lam_dot_p.max_abs_coeff(),
            self.lam_bar_dot_p.max_abs_coeff(),
        )


def super_constraints(sm: SuperModel, p: Sequence[complex],
                      lam: Sequence[GrassmannFunction],
                      lam_bar: Sequence[GrassmannFunction]) -> ConstraintResiduals:
    """Evaluate p.p, lam.p, lambar.p with the model's metric block."""
    n = sm.bosonic.n
    if len(p) != n or len(lam) != n or len(lam_bar) != n:
        raise ValueError(f"expected {n} components per sector")
    eta = sm.bosonic.form.metric
    p = np.asarray(p, dtype=complex)
    p_sq = complex(sum(eta[mu] * p[mu] * p[mu] for mu in range(n)))
    n_gen = lam[0].n
    lp = GrassmannFunction.zero(n_gen)
    lbp = GrassmannFunction.zero(n_gen)
    for mu in range(n):
        lp = lp + lam[mu].scale(eta[mu] * p[mu])
        lbp = lbp + lam_bar[mu].scale(eta[mu] * p[mu])
    return ConstraintResiduals(p_squared=p_sq, lam_dot_p=lp, lam_bar_dot_p=lbp)


@lru_cache(maxsize=None)
def spacetime_gamma_matrices() -> Tuple[np.ndarray, ...]:
    """4x4 matrices for the Cl(1,3) generators in the light-cone ideal."""
    ctx = make_algebra(Signature(1, 3))
    wb = witt_basis(ctx, WittScheme.SPACETIME)
    ib = ideal_basis(wb, VacuumSpec.all_barred(2))
    return tuple(matrix_rep(ctx.gamma(i), ib) for i in range(1, 5))


def slash(p: Sequence[complex]) -> np.ndarray:
    """Contraction p^mu gamma_mu for a 4-component momentum (upper index)."""
    p = np.asarray(p, dtype=complex)
    if p.shape != (4,):
        raise ValueError("momentum must have 4 components")
    gammas = spacetime_gamma_matrices()
    out = np.zeros((4, 4), dtype=complex)
    for mu in range(4):
        out += p[mu] * gammas[mu]
    return out


def kernel_dim(matrix: np.ndarray, rtol: float = 1e-8) -> int:
    matrix = np.asarray(matrix, dtype=complex)
    if not np.abs(matrix).max():
        return matrix.shape[1]
    svals = np.linalg.svd(matrix, compute_uv=False)
    cut = svals.max() * rtol
    return int(np.sum(svals <= cut))


def dirac_constraint_operators(p: Sequence[complex]) -> Dict[str, np.ndarray]:
    """Operators of the two first-class odd constraints after quantization.

    Both copies act on the same 4-dimensional spinor space; the barred one
    carries the extra factor i from the operator substitution, which leaves
    its kernel unchanged.
    """
    d = slash(p)
    return {"lambda": d, "lambda_bar": 1j * d}


def dirac_quantize(sm: SuperModel, p: Sequence[complex]) -> Dict[str, np.ndarray]:
    """Quantized odd constraints of a super model at momentum p.

    The kernel is nontrivial exactly when p is null, which is the even
    constraint p.p = 0.
    """
    if sm.bosonic.n != 4:
        raise ValueError("Dirac quantization runs in 4 spacetime dimensions")
    return dirac_constraint_operators(p)


# ---------------------------------------------------------------------------
# Quantization map
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuantizeMapReport:
    table: Dict[str, str]
    anticommutator_matrix: np.ndarray
    unbarred_block_exact: bool
    barred_block_sign: int
    notes: Tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "table": dict(self.table),
            "anticommutator_re": np.real(self.anticommutator_matrix).tolist(),
            "anticommutator_im": np.imag(self.anticommutator_matrix).tolist(),
            "unbarred_block_exact": self.unbarred_block_exact,
            "barred_block_sign": self.barred_block_sign,
            "notes": list(self.notes),
        }


def quantize_map(model: QuadraticModel) -> QuantizeMapReport:
    """Substitution table from phase-space symbols to operators, with the
    verification of the doubled-generator anticommutators.

    The odd substitution is lam^mu -> gamma^mu, lambar^mu -> i gammabar^mu.
    The computed (1/2){op_a, op_b} matrix matches the doubled metric
    diag(g, g) exactly on the unbarred block with no factor at all; the
    barred block comes out with the opposite sign because of the explicit
    i, and no overall factor i appears anywhere.  Both facts are recorded
    rather than absorbed into a guessed convention.
    """
    n = model.n
    g = model.form.metric
    plus = 2 * sum(1 for s in g if s > 0)
    minus = 2 * sum(1 for s in g if s < 0)
    # interleave (gamma_mu, gammabar_mu) pairs so each pair shares its sign
    ctx = make_algebra(Signature(plus, minus))
    wb = witt_basis(ctx, WittScheme.DOUBLED)
    order = sorted(range(n), key=lambda mu: -g[mu])  # + pairs occupy low slots
    gam = [None] * n
    gbar = [None] * n
    for slot, mu in enumerate(order):
        gam[mu] = wb.gammas[slot]
        gbar[mu] = wb.gamma_bars[slot]
    ops = [gam[mu] for mu in range(n)] + [gbar[mu].scale(1j) for mu in range(n)]
    size = 2 * n
    acm = np.zeros((size, size), dtype=complex)
    for a in range(size):
        for b in range(size):
            acm[a, b] = complex(scalar_part(gp(ops[a], ops[b]) + gp(ops[b], ops[a]))) / 2
    g_arr = np.array(g, dtype=float)
    target = np.block(
        [
            [np.diag(g_arr), np.zeros((n, n))],
            [np.zeros((n, n)), np.diag(g_arr)],
        ]
    )
    unbarred_ok = bool(np.abs(acm[:n, :n] - target[:n, :n]).max() <= 1e-12)
    barred_sign = -1 if np.allclose(acm[n:, n:], -target[n:, n:], atol=1e-12) else 1
    table = {
        "x^mu": "X^mu (number-basis pair, position side)",
        "p^mu": "i * P^mu (number-basis pair, momentum side)",
        "lam^mu": "gamma^mu (doubled Clifford generator, unbarred)",
        "lambar^mu": "i * gammabar^mu (doubled Clifford generator, barred)",
    }
    notes = (
        "unbarred anticommutator block equals the metric with no factor i",
        "barred block acquires a sign flip from the explicit i in the substitution",
        "no overall factor i is produced by the half-anticommutator",
    )
    return QuantizeMapReport(
        table=table,
        anticommutator_matrix=acm,
        unbarred_block_exact=unbarred_ok,
        barred_block_sign=barred_sign,
        notes=notes,
    )
