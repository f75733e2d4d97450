"""Witt bases, vacua, minimal-left-ideal spinor bases and matrix
representations for even-dimensional Cl(p,q).

Two pairing schemes are supported:

  * Doubled: generator pairs (2mu-1, 2mu) combine as
    theta_mu = (gamma_mu + i gammabar_mu)/sqrt(2); requires both p and q
    even so each pair carries a single metric sign.
  * Spacetime: the light-cone/circular combinations
    theta_1 = (gamma_0 + gamma_3)/sqrt(2), theta_2 = (gamma_1 + i gamma_2)/sqrt(2)
    on a (1,3) block, doubled verbatim on the barred block for (2,6).
    Other null pairings are out of scope.

Every constructed basis satisfies dot(theta_mu, thetabar_nu) = eta_mu_nu
with all same-kind dots vanishing, which turns the generators into exact
fermionic ladder operators.  Vacua are products of n factors, one per
pairing slot; the 2^n choices generate the 2^n minimal left ideals whose
direct sum is the whole algebra.

Dual spinor bases are biorthogonal through the reversion form <dagger(a) b>
taken on the whole algebra, where that form is nondegenerate (diagonal +-1
in the blade basis).  The ideal-local reversion Gram can be identically
zero (it is for the light-cone pairing of the Spacetime scheme, where the
real null pair is self-adjoint under reversion), so duals are found as the
minimal-norm left inverse through the ambient form instead of by inverting
the local Gram; biorthogonality, which is the property every representation
formula relies on, holds exactly either way.  Rank-deficient spinor sets
still raise.  Coefficients are generic scalars, so exact (e.g. sympy)
arithmetic flows through every construction when the caller supplies an
exact sqrt(2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .blades import (
    AlgebraContext,
    Multivector,
    dagger,
    dot,
    gp,
    grade_project,
    scalar_part,
)


class WittScheme(Enum):
    DOUBLED = "doubled"
    SPACETIME = "spacetime"


@dataclass(frozen=True)
class WittBasis:
    ctx: AlgebraContext
    scheme: WittScheme
    theta: Tuple[Multivector, ...]
    theta_bar: Tuple[Multivector, ...]
    eta: Tuple[int, ...]
    gammas: Optional[Tuple[Multivector, ...]] = None
    gamma_bars: Optional[Tuple[Multivector, ...]] = None

    @property
    def n(self) -> int:
        return len(self.theta)


def witt_basis(ctx: AlgebraContext, scheme: WittScheme, root2=None) -> WittBasis:
    """Construct the Witt pairs for the context.

    `root2` defaults to math.sqrt(2); pass an exact square root (e.g.
    sympy.sqrt(2)) to keep every downstream product exact.
    """
    r2 = math.sqrt(2.0) if root2 is None else root2
    sig = ctx.sig
    total = sig.n_generators
    if total % 2:
        raise ValueError("Witt basis needs an even number of generators")
    n = total // 2

    if scheme is WittScheme.DOUBLED:
        if sig.p % 2 or sig.q % 2:
            raise ValueError(
                "Doubled scheme pairs adjacent generators; needs p and q both even"
            )
        theta, theta_bar, eta, gam, gbar = [], [], [], [], []
        for mu in range(1, n + 1):
            g = ctx.gamma(2 * mu - 1)
            gb = ctx.gamma(2 * mu)
            theta.append((g + gb.scale(1j)) / r2)
            theta_bar.append((g - gb.scale(1j)) / r2)
            eta.append(sig.metric_sign(2 * mu - 1))
            gam.append(g)
            gbar.append(gb)
        return WittBasis(ctx, scheme, tuple(theta), tuple(theta_bar), tuple(eta),
                         tuple(gam), tuple(gbar))

    if scheme is WittScheme.SPACETIME:
        if (sig.p, sig.q) == (1, 3):
            g0, g1, g2, g3 = (ctx.gamma(i) for i in range(1, 5))
            theta = ((g0 + g3) / r2, (g1 + g2.scale(1j)) / r2)
            theta_bar = ((g0 - g3) / r2, (g1 - g2.scale(1j)) / r2)
            return WittBasis(ctx, scheme, theta, theta_bar, (1, -1),
                             (g0, g1, g2, g3), None)
        if (sig.p, sig.q) == (2, 6):
            # unbarred spacetime gammas on odd slots, barred on even slots
            gam = tuple(ctx.gamma(2 * mu + 1) for mu in range(4))
            gbar = tuple(ctx.gamma(2 * mu + 2) for mu in range(4))
            theta = (
                (gam[0] + gam[3]) / r2,
                (gam[1] + gam[2].scale(1j)) / r2,
                (gbar[0] + gbar[3]) / r2,
                (gbar[1] + gbar[2].scale(1j)) / r2,
            )
            theta_bar = (
                (gam[0] - gam[3]) / r2,
                (gam[1] - gam[2].scale(1j)) / r2,
                (gbar[0] - gbar[3]) / r2,
                (gbar[1] - gbar[2].scale(1j)) / r2,
            )
            return WittBasis(ctx, scheme, theta, theta_bar, (1, -1, 1, -1),
                             gam, gbar)
        raise ValueError(
            f"Spacetime scheme supports signatures (1,3) and (2,6), got "
            f"({sig.p},{sig.q})"
        )

    raise ValueError(f"unknown scheme {scheme}")


def witt_relation_residual(wb: WittBasis) -> float:
    """Max deviation over all pairs from the ladder relations."""
    worst = 0.0
    one = wb.ctx.one()
    for mu in range(wb.n):
        for nu in range(wb.n):
            d = dot(wb.theta[mu], wb.theta_bar[nu])
            target = one.scale(wb.eta[mu]) if mu == nu else wb.ctx.zero()
            worst = max(worst, (d - target).max_abs_coeff())
            worst = max(worst, dot(wb.theta[mu], wb.theta[nu]).max_abs_coeff())
            worst = max(worst, dot(wb.theta_bar[mu], wb.theta_bar[nu]).max_abs_coeff())
    return worst


# ---------------------------------------------------------------------------
# Vacua and ideals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VacuumSpec:
    """Partition of pairing slots 1..n into a barred and an unbarred group.

    Slots in `barred` contribute a thetabar factor to the vacuum (so the
    matching thetabar annihilates it and theta creates); slots in
    `unbarred` contribute a theta factor with the roles exchanged.
    """

    n: int
    barred: frozenset
    unbarred: frozenset

    def __post_init__(self):
        if self.barred & self.unbarred:
            raise ValueError("barred and unbarred sets must be disjoint")
        if self.barred | self.unbarred != frozenset(range(1, self.n + 1)):
            raise ValueError("barred and unbarred sets must partition 1..n")

    @classmethod
    def all_barred(cls, n: int) -> "VacuumSpec":
        return cls(n, frozenset(range(1, n + 1)), frozenset())

    @classmethod
    def from_bitstring(cls, bits: str) -> "VacuumSpec":
        """'1' marks a barred slot, '0' an unbarred slot, slot 1 first."""
        if not bits or any(c not in "01" for c in bits):
            raise ValueError(f"vacuum bitstring must be nonempty 0/1, got {bits!r}")
        n = len(bits)
        barred = frozenset(i + 1 for i, c in enumerate(bits) if c == "1")
        return cls(n, barred, frozenset(range(1, n + 1)) - barred)

    def bitstring(self) -> str:
        return "".join("1" if mu in self.barred else "0" for mu in range(1, self.n + 1))


def enumerate_vacua(n: int) -> List[VacuumSpec]:
    """All 2^n vacuum choices, ordered by the barred-set bitmask."""
    out = []
    for mask in range(1 << n):
        barred = frozenset(mu for mu in range(1, n + 1) if mask >> (mu - 1) & 1)
        out.append(VacuumSpec(n, barred, frozenset(range(1, n + 1)) - barred))
    return out


def vacuum(wb: WittBasis, spec: VacuumSpec) -> Multivector:
    """Vacuum multivector: unbarred factors first, ascending in each group."""
    if spec.n != wb.n:
        raise ValueError(f"spec is for n={spec.n}, basis has n={wb.n}")
    om = wb.ctx.one()
    for mu in sorted(spec.unbarred):
        om = gp(om, wb.theta[mu - 1])
    for mu in sorted(spec.barred):
        om = gp(om, wb.theta_bar[mu - 1])
    return om


def graded_subsets(n: int) -> List[Tuple[int, ...]]:
    subsets = []
    for mask in range(1 << n):
        subsets.append(tuple(mu for mu in range(1, n + 1) if mask >> (mu - 1) & 1))
    subsets.sort(key=lambda s: (len(s), s))
    return subsets


class IdealBasis:
    """Fock basis of one minimal left ideal.

    spinors[k] applies the creation operators of subset k (graded
    lexicographic order) to the vacuum.  Dual spinors satisfy
    scalar_part(dagger(dual[a]) * spinors[b]) = delta_ab and come from
    inverting the Gram matrix of the reversion form.
    """

    def __init__(self, wb: WittBasis, spec: VacuumSpec):
        self.wb = wb
        self.spec = spec
        self.vacuum = vacuum(wb, spec)
        creators = {}
        for mu in range(1, wb.n + 1):
            creators[mu] = wb.theta[mu - 1] if mu in spec.barred else wb.theta_bar[mu - 1]
        self.subsets = graded_subsets(wb.n)
        spinors = []
        for subset in self.subsets:
            s = self.vacuum
            for mu in reversed(subset):
                s = gp(creators[mu], s)
            spinors.append(s)
        self.spinors: List[Multivector] = spinors
        self._duals: Optional[List[Multivector]] = None

    @property
    def size(self) -> int:
        return len(self.spinors)

    def coordinate_matrix(self) -> np.ndarray:
        """Blade coordinates of the spinors, shape (2^n, 2^{2n})."""
        dim = self.wb.ctx.dimension
        out = np.zeros((self.size, dim), dtype=complex)
        for i, s in enumerate(self.spinors):
            for mask, c in s.coeffs.items():
                out[i, mask] = complex(c)
        return out

    def verify_rank(self) -> None:
        rank = np.linalg.matrix_rank(self.coordinate_matrix())
        if rank != self.size:
            raise ValueError(
                f"ideal basis rank {rank} < {self.size}: signature/scheme inconsistency"
            )

    def reversion_gram(self) -> List[List[complex]]:
        """Ideal-local Gram of the reversion form (may be singular)."""
        return [
            [scalar_part(gp(dagger(sa), sb)) for sb in self.spinors]
            for sa in self.spinors
        ]

    def duals(self) -> List[Multivector]:
        if self._duals is None:
            self._duals = _dual_basis(self.wb.ctx, self.spinors)
        return self._duals


def _reversion_form_signs(ctx: AlgebraContext) -> List[int]:
    """Diagonal of <dagger(blade) blade> over all blade masks."""
    signs = []
    for mask in range(ctx.dimension):
        b = Multivector(ctx.sig, {mask: 1})
        signs.append(int(scalar_part(gp(dagger(b), b))))
    return signs


def _is_exact_scalar(x) -> bool:
    # sympy (and similar CAS) scalars carry free_symbols; plain numbers do not
    return hasattr(x, "free_symbols")


def _dual_basis(ctx: AlgebraContext, spinors: Sequence[Multivector]) -> List[Multivector]:
    """Biorthogonal duals through the ambient reversion form.

    With spinor coordinate columns S and the diagonal form matrix E, the
    duals W = E S (S^H S)^{-1} satisfy W^H E S = I exactly; S^H S is the
    coordinate Gram and is invertible whenever the spinors are independent.
    """
    sigs = _reversion_form_signs(ctx)
    dim = ctx.dimension
    exact = any(
        _is_exact_scalar(c) for s in spinors for c in s.coeffs.values()
    )
    if exact:
        import sympy

        S = sympy.zeros(dim, len(spinors))
        for j, s in enumerate(spinors):
            for mask, c in s.coeffs.items():
                S[mask, j] = sympy.sympify(c)
        gram = S.H * S
        if gram.det() == 0:
            raise ValueError("spinor set is linearly dependent")
        W = sympy.diag(*sigs) * S * gram.inv()
        duals = []
        for j in range(len(spinors)):
            coeffs = {m: W[m, j] for m in range(dim) if W[m, j] != 0}
            duals.append(Multivector(ctx.sig, coeffs))
        return duals

    S = np.zeros((dim, len(spinors)), dtype=complex)
    for j, s in enumerate(spinors):
        for mask, c in s.coeffs.items():
            S[mask, j] = complex(c)
    gram = S.conj().T @ S
    if np.linalg.matrix_rank(gram) != len(spinors):
        raise ValueError("spinor set is linearly dependent")
    W = np.diag(sigs) @ S @ np.linalg.inv(gram)
    residual = np.abs(W.conj().T @ np.diag(sigs) @ S - np.eye(len(spinors))).max()
    if residual > 1e-9:
        raise ValueError(f"dual basis biorthogonality failed: residual {residual}")
    duals = []
    for j in range(len(spinors)):
        col = W[:, j]
        coeffs = {m: col[m] for m in range(dim) if col[m] != 0}
        duals.append(Multivector(ctx.sig, coeffs))
    return duals


def ideal_basis(wb: WittBasis, spec: VacuumSpec, verify: bool = True) -> IdealBasis:
    ib = IdealBasis(wb, spec)
    if verify:
        ib.verify_rank()
    return ib


def project_components(psi: Multivector, ib: IdealBasis) -> np.ndarray:
    """Spinor components of psi against the ideal's dual basis."""
    return np.array(
        [complex(scalar_part(gp(dagger(d), psi))) for d in ib.duals()]
    )


def reconstruct(components, ib: IdealBasis) -> Multivector:
    acc = Multivector.zero(ib.wb.ctx.sig)
    for c, s in zip(components, ib.spinors):
        if c != 0:
            acc = acc + s.scale(c)
    return acc


def sandwich_matrix(x: Multivector, ib: IdealBasis) -> List[List[complex]]:
    """Raw sandwich entries scalar_part(dagger(dual_a) x spinor_b)."""
    duals = ib.duals()
    return [
        [scalar_part(gp(dagger(d), gp(x, s))) for s in ib.spinors]
        for d in duals
    ]


def matrix_rep(x: Multivector, ib: IdealBasis) -> np.ndarray:
    """Irreducible 2^n x 2^n representation carried by the ideal.

    Left multiplication preserves the ideal, so x -> matrix_rep(x, ib) is
    an exact algebra homomorphism whenever the Gram matrix is invertible.
    """
    return np.array([[complex(v) for v in row] for row in sandwich_matrix(x, ib)])


class FullBasis:
    """Union of the ideal bases over all 2^n vacua; spans the algebra."""

    def __init__(self, wb: WittBasis, verify: bool = True):
        self.wb = wb
        self.ideals = [IdealBasis(wb, spec) for spec in enumerate_vacua(wb.n)]
        self.spinors = [s for ib in self.ideals for s in ib.spinors]
        self._duals: Optional[List[Multivector]] = None
        if verify:
            rank = np.linalg.matrix_rank(self.coordinate_matrix())
            if rank != len(self.spinors):
                raise ValueError(
                    f"full spinor basis rank {rank} < {len(self.spinors)}"
                )

    def coordinate_matrix(self) -> np.ndarray:
        dim = self.wb.ctx.dimension
        out = np.zeros((len(self.spinors), dim), dtype=complex)
        for i, s in enumerate(self.spinors):
            for mask, c in s.coeffs.items():
                out[i, mask] = complex(c)
        return out

    def duals(self) -> List[Multivector]:
        if self._duals is None:
            self._duals = _dual_basis(self.wb.ctx, self.spinors)
        return self._duals

    def block_size(self) -> int:
        return self.ideals[0].size


def full_matrix_rep(x: Multivector, fb: FullBasis) -> np.ndarray:
    """Reducible 2^{2n} x 2^{2n} representation over all ideals.

    Block-diagonal in the (ideal, component) ordering because left
    multiplication maps each ideal into itself.
    """
    duals = fb.duals()
    out = np.zeros((len(fb.spinors), len(fb.spinors)), dtype=complex)
    for j, s in enumerate(fb.spinors):
        xs = gp(x, s)
        for i, d in enumerate(duals):
            out[i, j] = complex(scalar_part(gp(dagger(d), xs)))
    return out


# ---------------------------------------------------------------------------
# Expectation-value metric
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExpectationMetric:
    """Vector expectation values of the generators in a state.

    e[mu, nu] holds the generator-nu coordinate of the grade-1 part of
    dagger(psi) gamma_mu psi; g = e diag(metric) e^T is the induced
    symmetric metric.
    """

    e: np.ndarray
    g: np.ndarray
    norm_sign: int


def expectation_metric(psi: Multivector, ctx: AlgebraContext,
                       tol: float = 1e-12) -> ExpectationMetric:
    norm = complex(scalar_part(gp(dagger(psi), psi)))
    if abs(norm) <= tol:
        raise ValueError("state has zero reversion norm; cannot normalize")
    psi_n = psi / math.sqrt(abs(norm))
    sign = 1 if norm.real >= 0 else -1
    nv = ctx.n_generators
    e = np.zeros((nv, nv), dtype=complex)
    for mu in range(1, nv + 1):
        sandwich = gp(dagger(psi_n), gp(ctx.gamma(mu), psi_n))
        vec = grade_project(sandwich, 1)
        for mask, c in vec.coeffs.items():
            idx = mask.bit_length()  # single-bit mask: generator index
            e[mu - 1, idx - 1] = complex(c)
    metric = np.array(ctx.sig.metric_diagonal(), dtype=float)
    g = e @ np.diag(metric) @ e.T
    return ExpectationMetric(e=e, g=g, norm_sign=sign)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def matrix_to_json(m: np.ndarray) -> dict:
    return {"re": np.real(m).tolist(), "im": np.imag(m).tolist()}


def ideal_basis_to_json(ib: IdealBasis) -> dict:
    return {
        "sig": [ib.wb.ctx.sig.p, ib.wb.ctx.sig.q],
        "scheme": ib.wb.scheme.value,
        "vacuum": ib.spec.bitstring(),
        "basis_order": [list(s) for s in ib.subsets],
        "spinors": [s.to_json_dict() for s in ib.spinors],
    }
