"""Desk-scale quantum field algebras on finite periodic lattices.

Bosonic kinds (scalar, schrodinger, stueckelberg) assemble a quadratic
phase-space model over 2S modes (field plus conjugate momentum per site)
and reuse the flow machinery; fermionic models (dirac) assemble a
Hermitian one-particle Hamiltonian over D = sites x components modes, the
plain-antisymmetric Grassmann kernel it came from, and an exact ladder
algebra of 2^D x 2^D matrices.

Discrete derivatives are central differences with periodic wrap:
second order (f[i+1] - 2 f[i] + f[i-1]) / a^2, first order
(f[i+1] - f[i-1]) / 2a.  The spatial second-derivative term enters the
scalar kernel with the sign that makes the single-mode energies
omega_k^2 = m^2 + khat^2 nonnegative.

Fermion ladder convention: creation h_m and annihilation hbar_m satisfy
{h_m, hbar_n} = delta_mn with coefficient one (the half-anticommutator
dot-product form of the same relation carries a 1/2; both constants are
surfaced in reports).  Matrices are integer exact, built on the occupation
bitmask basis with creators applied in ascending mode order; this is the
Jordan-Wigner ordering, site-major then component.

Vacuum energies use the symmetrized, normal-ordering-free Hamiltonian

    H = sum_mn h1[m,n] h_m hbar_n - (1/2) tr(h1)
      = sum_k eps_k (n_k - 1/2)          (in eigenmodes)

so each eigenmode contributes -eps_k/2 when empty and +eps_k/2 when
filled.  The frequency-split vacuum leaves every eigenmode empty; for a
spectrum symmetric about zero the +-omega/2 contributions cancel and its
energy is exactly zero.  The standard vacuum fills the negative-frequency
modes (positive modes barred / emptied, negative modes unbarred / filled)
and carries the textbook -sum_k omega_k / 2 over all D modes; its
conjugate fills the positive modes instead, so standard + conjugate = 0
identically.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse

from .dynamics import OperatorFrame, QuadraticModel, classical_flow, heisenberg_flow
from .weyl import ModeOperators, SymplecticForm, mode_ops

FERMION_MODE_CAP = 14
BOSON_MODE_CAP = 64


class ResourceCapError(Exception):
    """Requested model exceeds the desk-scale budgets."""


@dataclass(frozen=True)
class Lattice:
    dims: Tuple[int, ...]
    spacing: float = 1.0
    boundary: str = "periodic"

    def __post_init__(self):
        if not self.dims or any(d < 1 for d in self.dims):
            raise ValueError("lattice dims must be positive")
        if self.spacing <= 0:
            raise ValueError("spacing must be positive")
        if self.boundary != "periodic":
            raise ValueError("only periodic boundaries are supported")

    @property
    def sites(self) -> int:
        out = 1
        for d in self.dims:
            out *= d
        return out

    def site_index(self, coords: Sequence[int]) -> int:
        idx = 0
        for c, d in zip(coords, self.dims):
            idx = idx * d + (c % d)
        return idx

    def _shift_matrix(self, axis: int, step: int) -> np.ndarray:
        S = self.sites
        out = np.zeros((S, S))
        for coords in itertools.product(*(range(d) for d in self.dims)):
            shifted = list(coords)
            shifted[axis] += step
            out[self.site_index(coords), self.site_index(shifted)] = 1.0
        return out

    def laplacian_neg(self, axes: Optional[Sequence[int]] = None) -> np.ndarray:
        """Positive-semidefinite -d^2/dx^2 (circulant rows 2, -1, ..., -1)."""
        axes = range(len(self.dims)) if axes is None else axes
        S = self.sites
        out = np.zeros((S, S))
        a2 = self.spacing ** 2
        for axis in axes:
            plus = self._shift_matrix(axis, +1)
            minus = self._shift_matrix(axis, -1)
            out += (2 * np.eye(S) - plus - minus) / a2
        return out

    def derivative(self, axis: int) -> np.ndarray:
        """Central first difference along an axis; antisymmetric."""
        plus = self._shift_matrix(axis, +1)
        minus = self._shift_matrix(axis, -1)
        return (plus - minus) / (2 * self.spacing)


# ---------------------------------------------------------------------------
# Field models
# ---------------------------------------------------------------------------

BOSONIC_KINDS = ("scalar", "schrodinger", "stueckelberg")
FERMIONIC_KINDS = ("dirac",)


@dataclass(frozen=True)
class FieldModel:
    lattice: Lattice
    kind: str
    params: Dict[str, float]
    # bosonic payload
    K: Optional[np.ndarray] = field(default=None, repr=False)
    form: Optional[SymplecticForm] = field(default=None, repr=False)
    # fermionic payload
    components: int = 0
    one_particle_h: Optional[np.ndarray] = field(default=None, repr=False)
    grassmann_kernel: Optional[np.ndarray] = field(default=None, repr=False)
    alphas: Tuple[np.ndarray, ...] = field(default=(), repr=False)
    beta: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def is_bosonic(self) -> bool:
        return self.kind in BOSONIC_KINDS

    @property
    def n_modes(self) -> int:
        """Mode count: S for bosonic pairs, S x components for fermions."""
        if self.is_bosonic:
            return self.lattice.sites
        return self.lattice.sites * self.components

    def rho(self) -> np.ndarray:
        """Witt-form metric pairing field and momentum fermion modes."""
        if self.is_bosonic:
            raise ValueError("rho is the fermionic pairing; bosonic models carry J")
        D = self.n_modes
        z = np.zeros((D, D))
        eye = np.eye(D)
        return np.block([[z, eye], [eye, z]])

    def quadratic_model(self) -> QuadraticModel:
        if not self.is_bosonic:
            raise ValueError("fermionic models have no symplectic flow")
        return QuadraticModel(n=self.lattice.sites, form=self.form, K=self.K,
                              kind=f"lattice_{self.kind}", params=dict(self.params))


def _pauli():
    s1 = np.array([[0, 1], [1, 0]], dtype=complex)
    s2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
    s3 = np.array([[1, 0], [0, -1]], dtype=complex)
    return s1, s2, s3


def standard_dirac_matrices() -> Tuple[Tuple[np.ndarray, ...], np.ndarray]:
    """Hermitian alpha^r = gamma^0 gamma^r and beta = gamma^0 in the
    standard 4x4 representation.

    The minimal-ideal construction yields an equivalent but non-unitary
    copy of the same algebra (its spinor basis is not orthonormal), so the
    lattice kernels use this explicitly Hermitian realization.
    """
    s1, s2, s3 = _pauli()
    zero = np.zeros((2, 2), dtype=complex)
    eye = np.eye(2, dtype=complex)
    beta = np.block([[eye, zero], [zero, -eye]])
    alphas = tuple(
        np.block([[zero, s], [s, zero]]) for s in (s1, s2, s3)
    )
    return alphas, beta


def _dirac_alpha_beta(components: int, ndim: int):
    if components == 2:
        if ndim > 1:
            raise ValueError("2-component toy mode supports one spatial axis")
        s1, _, s3 = _pauli()
        return (s1,), s3
    if components == 4:
        if ndim > 3:
            raise ValueError("4-component mode supports up to three axes")
        alphas, beta = standard_dirac_matrices()
        return alphas[:ndim], beta
    raise ValueError("dirac components must be 2 (toy) or 4")


def build_model(lattice: Lattice, kind: str, **params) -> FieldModel:
    """Assemble the kernel matrices for a field kind on the lattice."""
    S = lattice.sites
    if kind == "scalar":
        m = float(params.get("m", params.get("mass", 1.0)))
        if 2 * S > 2 * BOSON_MODE_CAP:
            raise ResourceCapError(f"{2 * S} bosonic modes exceeds the cap")
        upper = m ** 2 * np.eye(S) + lattice.laplacian_neg()
        K = np.block([[upper, np.zeros((S, S))], [np.zeros((S, S)), np.eye(S)]])
        return FieldModel(lattice=lattice, kind=kind, params={"m": m}, K=K,
                          form=SymplecticForm.euclidean(S))
    if kind == "schrodinger":
        m = float(params.get("m", params.get("mass", 1.0)))
        V = params.get("V", 0.0)
        v_diag = np.full(S, float(V)) if np.isscalar(V) else np.asarray(V, dtype=float)
        if v_diag.shape != (S,):
            raise ValueError("V must be a scalar or one value per site")
        if 2 * S > 2 * BOSON_MODE_CAP:
            raise ResourceCapError(f"{2 * S} bosonic modes exceeds the cap")
        A = lattice.laplacian_neg() / (2 * m) + np.diag(v_diag)
        off = np.block([[np.zeros((S, S)), A], [A, np.zeros((S, S))]])
        # the -i makes the flow the standard first-order evolution
        # i dphi/dtau = A phi, which conserves the field norm
        K = -1j * off
        return FieldModel(lattice=lattice, kind=kind,
                          params={"m": m, "V": float(np.mean(v_diag))},
                          K=K, form=SymplecticForm.euclidean(S))
    if kind == "stueckelberg":
        lam = float(params.get("Lambda", params.get("lam", 1.0)))
        if len(lattice.dims) != 4:
            raise ValueError("stueckelberg evolution runs over a 4-axis lattice")
        if 2 * S > 2 * BOSON_MODE_CAP:
            raise ResourceCapError(f"{2 * S} bosonic modes exceeds the cap")
        # indefinite signature: +1 along axis 0, -1 along spatial axes
        A = (lattice.laplacian_neg(axes=[0])
             - lattice.laplacian_neg(axes=[1, 2, 3])) / (2 * lam)
        off = np.block([[np.zeros((S, S)), A], [A, np.zeros((S, S))]])
        K = -1j * off
        return FieldModel(lattice=lattice, kind=kind, params={"Lambda": lam},
                          K=K, form=SymplecticForm.euclidean(S))
    if kind == "dirac":
        m = float(params.get("m", params.get("mass", 1.0)))
        components = int(params.get("components", 4))
        alphas, beta = _dirac_alpha_beta(components, len(lattice.dims))
        D = S * components
        if D > FERMION_MODE_CAP:
            raise ResourceCapError(
                f"{D} fermion modes exceeds the 2^{FERMION_MODE_CAP} budget"
            )
        eye_s = np.eye(S)
        h1 = m * np.kron(eye_s, beta).astype(complex)
        for axis, alpha in enumerate(alphas):
            h1 += -1j * np.kron(lattice.derivative(axis), alpha)
        if np.abs(h1 - h1.conj().T).max() > 1e-12:
            raise ValueError("one-particle Dirac Hamiltonian failed hermiticity")
        # plain-antisymmetric Grassmann kernel reproducing pi (i h1) psi
        zero = np.zeros((D, D))
        kernel = np.block([[zero, 1j * h1.T], [-1j * h1, zero]])
        return FieldModel(lattice=lattice, kind=kind,
                          params={"m": m}, components=components,
                          one_particle_h=h1, grassmann_kernel=kernel,
                          alphas=alphas, beta=beta)
    raise ValueError(f"unknown field kind {kind!r}")


def classical_field_flow(fm: FieldModel, phi0: Sequence[complex], tau: float) -> np.ndarray:
    if not fm.is_bosonic:
        raise ValueError("classical field flow is defined for bosonic kinds")
    return classical_flow(fm.quadratic_model(), phi0, tau)


def operator_field_flow(fm: FieldModel, tau: float) -> OperatorFrame:
    if not fm.is_bosonic:
        raise ValueError("operator field flow is defined for bosonic kinds")
    return heisenberg_flow(fm.quadratic_model(), tau)


# ---------------------------------------------------------------------------
# Fermion ladder algebra
# ---------------------------------------------------------------------------

class FermionAlgebra:
    """Exact creation/annihilation matrices for D modes on 2^D states.

    States are occupation bitmasks; |S> applies creators in ascending mode
    order to the empty state, so h_m carries the sign (-1)^(occupied below
    m).  h matrices are integer exact; hbar_m is the transpose of h_m.
    """

    def __init__(self, n_modes: int):
        if n_modes < 1:
            raise ValueError("need at least one mode")
        if n_modes > FERMION_MODE_CAP:
            raise ResourceCapError(
                f"{n_modes} fermion modes exceeds the cap of {FERMION_MODE_CAP}"
            )
        self.n_modes = n_modes
        self.dim = 1 << n_modes
        self._h: List[sparse.csr_matrix] = []
        for m in range(n_modes):
            bit = 1 << m
            below_mask = bit - 1
            rows, cols, vals = [], [], []
            for state in range(self.dim):
                if state & bit:
                    continue
                sign = -1 if (state & below_mask).bit_count() & 1 else 1
                rows.append(state | bit)
                cols.append(state)
                vals.append(sign)
            mat = sparse.csr_matrix(
                (np.array(vals, dtype=np.int64), (rows, cols)),
                shape=(self.dim, self.dim),
            )
            self._h.append(mat)

    def h(self, m: int) -> sparse.csr_matrix:
        """Creation operator for mode m (1-based)."""
        return self._h[m - 1]

    def hbar(self, m: int) -> sparse.csr_matrix:
        """Annihilation operator for mode m (1-based)."""
        return self._h[m - 1].T.tocsr()

    def empty_state(self) -> np.ndarray:
        v = np.zeros(self.dim)
        v[0] = 1.0
        return v

    def number_operator(self, m: int) -> sparse.csr_matrix:
        return (self.h(m) @ self.hbar(m)).tocsr()

    def anticommutator_deviation(self) -> float:
        """Max deviation from {h_m, hbar_n} = delta, {h,h} = {hbar,hbar} = 0."""
        worst = 0
        eye = sparse.identity(self.dim, dtype=np.int64, format="csr")
        for m in range(1, self.n_modes + 1):
            for n in range(1, self.n_modes + 1):
                hm, hn = self.h(m), self.h(n)
                hbm, hbn = self.hbar(m), self.hbar(n)
                d1 = hm @ hbn + hbn @ hm - (eye if m == n else 0 * eye)
                d2 = hm @ hn + hn @ hm
                d3 = hbm @ hbn + hbn @ hbm
                for d in (d1, d2, d3):
                    if d.nnz:
                        worst = max(worst, abs(d.data).max())
        return float(worst)


def fermion_algebra(fm: FieldModel) -> FermionAlgebra:
    if fm.is_bosonic:
        raise ValueError("fermion algebra requires a fermionic model")
    return FermionAlgebra(fm.n_modes)


# ---------------------------------------------------------------------------
# Vacua and Fock bases
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VacuumChoice:
    """Per-mode role flags, or a frequency rule over eigenmodes.

    rule "bare": `barred` lists the modes annihilated by hbar (left empty);
    all other modes are annihilated by h (filled).  Frequency rules need a
    one-particle Hamiltonian: "split" empties every eigenmode, "standard"
    fills the negative-frequency ones (the textbook assignment),
    "conjugate_standard" fills the positive ones, and "custom" fills
    exactly `filled_eigen`.
    """

    rule: str
    barred: frozenset = frozenset()
    filled_eigen: frozenset = frozenset()

    RULES = ("bare", "split", "standard", "conjugate_standard", "custom")

    def __post_init__(self):
        if self.rule not in self.RULES:
            raise ValueError(f"unknown vacuum rule {self.rule!r}")

    @classmethod
    def all_barred(cls, n_modes: int) -> "VacuumChoice":
        return cls(rule="bare", barred=frozenset(range(1, n_modes + 1)))

    @classmethod
    def all_unbarred(cls) -> "VacuumChoice":
        return cls(rule="bare", barred=frozenset())

    @classmethod
    def bare(cls, barred: Iterable[int]) -> "VacuumChoice":
        return cls(rule="bare", barred=frozenset(barred))


@dataclass
class VacuumState:
    choice: VacuumChoice
    vector: np.ndarray
    creators: List[sparse.csr_matrix] = field(repr=False)
    description: str = ""
    eigenvalues: Optional[np.ndarray] = None


def _eigenmodes(fm: FieldModel, tol: float = 1e-10):
    h1 = fm.one_particle_h
    eps, U = np.linalg.eigh(h1)
    scale = max(np.abs(eps).max(), 1.0)
    if np.any(np.abs(eps) <= tol * scale):
        raise ValueError(
            "zero-eigenvalue one-particle mode: frequency rule is ambiguous"
        )
    return eps, U


def make_vacuum(fa: FermionAlgebra, choice: VacuumChoice,
                fm: Optional[FieldModel] = None) -> VacuumState:
    """State annihilated by the designated operators, with its creator set.

    Bare choices occupy exactly the unbarred modes.  Frequency rules build
    eigenmode ladder combinations b_k = sum_m conj(U[m,k]) hbar_m and fill
    the prescribed eigenmodes.
    """
    D = fa.n_modes
    if choice.rule == "bare":
        if not choice.barred <= set(range(1, D + 1)):
            raise ValueError("barred set references modes outside 1..D")
        occupied = [m for m in range(1, D + 1) if m not in choice.barred]
        vec = fa.empty_state()
        for m in occupied:
            vec = fa.h(m) @ vec
        creators = [
            fa.h(m) if m in choice.barred else fa.hbar(m) for m in range(1, D + 1)
        ]
        desc = f"bare vacuum, occupied modes {occupied}"
        return VacuumState(choice=choice, vector=vec, creators=creators,
                           description=desc)

    if fm is None or fm.one_particle_h is None:
        raise ValueError("frequency rules need the field model's Hamiltonian")
    eps, U = _eigenmodes(fm)
    if choice.rule == "split":
        filled = []
    elif choice.rule == "standard":
        filled = [k for k in range(D) if eps[k] < 0]
    elif choice.rule == "conjugate_standard":
        filled = [k for k in range(D) if eps[k] > 0]
    else:
        filled = sorted(choice.filled_eigen)
        if any(not 0 <= k < D for k in filled):
            raise ValueError("filled_eigen references eigenmodes outside 0..D-1")
    b_dag = [
        sum(U[m, k] * fa.h(m + 1) for m in range(D)) for k in range(D)
    ]
    b = [
        sum(np.conj(U[m, k]) * fa.hbar(m + 1) for m in range(D)) for k in range(D)
    ]
    vec = fa.empty_state().astype(complex)
    for k in filled:
        vec = b_dag[k] @ vec
    norm = np.linalg.norm(vec)
    if norm < 1e-12:
        raise ValueError("vacuum construction produced the zero vector")
    vec = vec / norm
    creators = [b[k] if k in filled else b_dag[k] for k in range(D)]
    desc = f"{choice.rule} vacuum, filled eigenmodes {list(filled)}"
    return VacuumState(choice=choice, vector=vec, creators=creators,
                       description=desc, eigenvalues=eps)


def fock_basis(fa: FermionAlgebra, vac: VacuumState) -> np.ndarray:
    """Columns are ordered creator products on the vacuum; rank 2^D.

    Subsets of the creator set are graded lexicographic, matching particle
    number relative to the vacuum.
    """
    D = fa.n_modes
    subsets = sorted(
        (tuple(m for m in range(D) if mask >> m & 1) for mask in range(1 << D)),
        key=lambda s: (len(s), s),
    )
    cols = []
    for subset in subsets:
        v = vac.vector.astype(complex)
        for m in reversed(subset):
            v = vac.creators[m] @ v
        cols.append(v)
    return np.array(cols).T


def fock_rank(basis: np.ndarray) -> int:
    return int(np.linalg.matrix_rank(basis))


# ---------------------------------------------------------------------------
# Quadratic fermionic Hamiltonian and the vacuum-energy ledger
# ---------------------------------------------------------------------------

def quadratic_hamiltonian(fa: FermionAlgebra, h1: np.ndarray) -> sparse.csr_matrix:
    """Symmetrized normal-ordering-free H = sum h1[m,n] h_m hbar_n
    - tr(h1)/2."""
    D = fa.n_modes
    if h1.shape != (D, D):
        raise ValueError("one-particle matrix size mismatch")
    H = sparse.csr_matrix((fa.dim, fa.dim), dtype=complex)
    for m in range(D):
        for n in range(D):
            if h1[m, n] != 0:
                H = H + h1[m, n] * (fa.h(m + 1) @ fa.hbar(n + 1))
    H = H - 0.5 * np.trace(h1) * sparse.identity(fa.dim, dtype=complex, format="csr")
    return H.tocsr()


@dataclass(frozen=True)
class VacuumEnergyReport:
    spectrum: np.ndarray
    energies: Dict[str, float]
    constants: Dict[str, str]

    def to_json_dict(self) -> dict:
        return {
            "spectrum": [float(x) for x in self.spectrum],
            "vacuum_energy": {k: float(v) for k, v in self.energies.items()},
            "constants": dict(self.constants),
        }


def vacuum_energy(fm: FieldModel, rules: Sequence[str] = ("standard", "split", "conjugate_standard")) -> VacuumEnergyReport:
    """Exact-diagonalization expectation of the quadratic Hamiltonian in
    each requested vacuum."""
    fa = fermion_algebra(fm)
    H = quadratic_hamiltonian(fa, fm.one_particle_h)
    eps, _ = _eigenmodes(fm)
    energies = {}
    for rule in rules:
        vac = make_vacuum(fa, VacuumChoice(rule=rule), fm)
        val = np.vdot(vac.vector, H @ vac.vector)
        if abs(val.imag) > 1e-9:
            raise ValueError(f"vacuum energy came out complex: {val}")
        energies[rule] = float(val.real)
    constants = {
        "ladder_normalization": "{h, hbar} = delta (dot-product form carries 1/2)",
        "hamiltonian_form": "sum h1 h hbar - tr(h1)/2 (no normal ordering)",
    }
    return VacuumEnergyReport(spectrum=eps, energies=energies, constants=constants)


# ---------------------------------------------------------------------------
# Bosonic Witt transform on the truncated representation
# ---------------------------------------------------------------------------

@dataclass
class BosonWittOps:
    ops: ModeOperators
    k: List[np.ndarray] = field(repr=False)
    kbar: List[np.ndarray] = field(repr=False)

    def ground_state(self) -> np.ndarray:
        v = np.zeros(self.ops.dim)
        v[0] = 1.0
        return v


def boson_witt(fm: FieldModel, cutoff: int = 6) -> BosonWittOps:
    """Ladder recombination k = (k1 + k2)/sqrt(2), kbar = (k1 - k2)/sqrt(2)
    of the per-site canonical pair in the real convention.

    kbar annihilates the truncated ground state exactly, and the half
    commutator [kbar, k]/2 equals the site delta on the safe subspace.
    """
    if not fm.is_bosonic:
        raise ValueError("boson_witt needs a bosonic model")
    S = fm.lattice.sites
    if (cutoff + 1) ** S > 2 ** 20:
        raise ResourceCapError("truncated boson space too large")
    ops = mode_ops(S, cutoff, convention="real")
    r2 = math.sqrt(2.0)
    k = [(ops.X[x] + ops.P[x]) / r2 for x in range(S)]
    kbar = [(ops.X[x] - ops.P[x]) / r2 for x in range(S)]
    return BosonWittOps(ops=ops, k=k, kbar=kbar)


def boson_witt_deviation(bw: BosonWittOps, margin: int = 2) -> Dict[str, float]:
    """Deviations of the ladder relations on the safe subspace."""
    ops = bw.ops
    S = len(bw.k)
    eye = np.eye(ops.dim)
    worst_kk = 0.0
    worst_pair = 0.0
    for x in range(S):
        for y in range(S):
            ckk = bw.k[x] @ bw.k[y] - bw.k[y] @ bw.k[x]
            worst_kk = max(worst_kk, np.abs(ops.restrict(ckk / 2, margin)).max())
            cbk = bw.kbar[x] @ bw.k[y] - bw.k[y] @ bw.kbar[x]
            target = eye * (1.0 if x == y else 0.0)
            worst_pair = max(
                worst_pair, np.abs(ops.restrict(cbk / 2 - target, margin)).max()
            )
    ground = bw.ground_state()
    annihilation = max(np.linalg.norm(kb @ ground) for kb in bw.kbar)
    return {
        "k_wedge_k": float(worst_kk),
        "kbar_wedge_k_minus_delta": float(worst_pair),
        "kbar_on_ground": float(annihilation),
    }


# ---------------------------------------------------------------------------
# Superfields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SuperFieldModel:
    bosonic: FieldModel
    fermionic: FieldModel
    coupling: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.bosonic.lattice != self.fermionic.lattice:
            raise ValueError("superfield sectors need matching lattices")

    @property
    def block_metric(self) -> np.ndarray:
        jb = self.bosonic.form.matrix()
        rho = self.fermionic.rho() if not self.fermionic.is_bosonic else \
            np.block([[np.zeros((self.fermionic.lattice.sites,) * 2),
                       np.eye(self.fermionic.lattice.sites)],
                      [np.eye(self.fermionic.lattice.sites),
                       np.zeros((self.fermionic.lattice.sites,) * 2)]])
        nb, nf = jb.shape[0], rho.shape[0]
        out = np.zeros((nb + nf, nb + nf))
        out[:nb, :nb] = jb
        out[nb:, nb:] = rho
        return out

    @property
    def block_kernel(self) -> np.ndarray:
        kb = np.asarray(self.bosonic.K, dtype=complex)
        if self.fermionic.is_bosonic:
            kf = np.asarray(self.fermionic.K, dtype=complex)
        else:
            kf = np.asarray(self.fermionic.grassmann_kernel, dtype=complex)
        nb, nf = kb.shape[0], kf.shape[0]
        out = np.zeros((nb + nf, nb + nf), dtype=complex)
        out[:nb, :nb] = kb
        out[nb:, nb:] = kf
        if self.coupling is not None:
            c = np.asarray(self.coupling, dtype=complex)
            if c.shape != (nb, nf):
                raise ValueError(f"coupling block must be {nb} x {nf}")
            out[:nb, nb:] = c
            out[nb:, :nb] = c.T
        return out

    @property
    def coupled(self) -> bool:
        return self.coupling is not None and bool(np.abs(self.coupling).max())

    def bosonic_flow(self, phi0: Sequence[complex], tau: float) -> np.ndarray:
        """Decoupled bosonic evolution; refuses when a coupling is present."""
        if self.coupled:
            raise ValueError(
                "coupled superfield flow is assembly-only; evolve sectors separately"
            )
        return classical_field_flow(self.bosonic, phi0, tau)

    def report(self) -> dict:
        return {
            "bosonic_kind": self.bosonic.kind,
            "fermionic_kind": self.fermionic.kind,
            "fermionic_sector_is_scalar_like": self.fermionic.is_bosonic,
            "coupled": self.coupled,
            "coupling_note": "off-diagonal blocks couple the sectors"
            if self.coupled
            else "block-diagonal: flows decouple",
        }


def superfield_pack(bosonic: FieldModel, fermionic: FieldModel,
                    coupling: Optional[np.ndarray] = None) -> SuperFieldModel:
    """Stack a bosonic and a fermionic sector into one block model.

    A bosonic-kind model is accepted in the fermionic slot (scalar-like
    kernel for the anticommuting sector); this is reported, and no
    dynamics beyond assembly is claimed for coupled blocks.
    """
    return SuperFieldModel(bosonic=bosonic, fermionic=fermionic, coupling=coupling)
