"""Symplectic side of quantization: polynomial Poisson brackets on phase
space and truncated number-basis operators for the canonical pairs.

Phase space has coordinates z = (x^1..x^n, p^1..p^n).  The symplectic form
is assembled from a diagonal metric block g (+1/-1 entries) as

    J = [[0, g], [-g, 0]]

and the Poisson bracket contracts through these entries, so {x^mu, p^nu}
equals g^{mu nu} and the harmonic oscillator flows the standard way.

Operator conventions.  The number-basis pair per mode is X = a + a^dag
(sqrt(2) times position).  Two momentum conventions are exposed and every
report states which one it used:

  * "hermitian": P = i(a^dag - a), i.e. -i sqrt(2) d/dx, so that
    (1/2)[X, P] = i g.  Default for the bracket/commutator correspondence.
  * "real":      P = a^dag - a, i.e. -sqrt(2) d/dx, so that
    (1/2)[X, P] = g with no factor at all.  (The raw +sqrt(2) d/dx
    replacement gives -g; the sign is flipped here so the printed
    canonical relation holds verbatim, and the raw constant is recorded
    in the reports.)

Truncation at occupation cutoff N leaves commutators exact on the safe
subspace of total occupation <= N-2; all equality assertions restrict to
it.  Operator ordering for degree-2 polynomials is Weyl (symmetric);
higher degree is rejected rather than given an arbitrary ordering.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np


# ---------------------------------------------------------------------------
# Phase polynomials
# ---------------------------------------------------------------------------

class PhasePolynomial:
    """Polynomial in commuting variables (x^1..x^n, p^1..p^n).

    Terms map exponent tuples (length 2n) to coefficients; coefficient
    arithmetic is exact for ints and Fractions.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Dict[Tuple[int, ...], complex]):
        self.n = n
        clean = {}
        for expo, c in terms.items():
            if len(expo) != 2 * n:
                raise ValueError(f"exponent tuple must have length {2 * n}")
            if c != 0:
                clean[tuple(expo)] = c
        self._terms = clean

    @property
    def terms(self) -> Dict[Tuple[int, ...], complex]:
        return dict(self._terms)

    @classmethod
    def zero(cls, n: int) -> "PhasePolynomial":
        return cls(n, {})

    @classmethod
    def constant(cls, n: int, c) -> "PhasePolynomial":
        return cls(n, {tuple([0] * (2 * n)): c})

    @classmethod
    def coordinate(cls, n: int, slot: int) -> "PhasePolynomial":
        """slot 0..n-1 are x^1..x^n; slots n..2n-1 are p^1..p^n."""
        if not 0 <= slot < 2 * n:
            raise ValueError(f"slot {slot} out of range for n={n}")
        expo = [0] * (2 * n)
        expo[slot] = 1
        return cls(n, {tuple(expo): 1})

    @classmethod
    def x(cls, n: int, mu: int) -> "PhasePolynomial":
        return cls.coordinate(n, mu - 1)

    @classmethod
    def p(cls, n: int, mu: int) -> "PhasePolynomial":
        return cls.coordinate(n, n + mu - 1)

    def _check(self, other: "PhasePolynomial"):
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, PhasePolynomial):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return PhasePolynomial(self.n, out)

    def __neg__(self):
        return PhasePolynomial(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, PhasePolynomial):
            return NotImplemented
        return self + (-other)

    def scale(self, factor) -> "PhasePolynomial":
        if factor == 0:
            return PhasePolynomial.zero(self.n)
        return PhasePolynomial(self.n, {e: c * factor for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, PhasePolynomial):
            self._check(other)
            out: Dict[Tuple[int, ...], complex] = {}
            for ea, ca in self._terms.items():
                for eb, cb in other._terms.items():
                    e = tuple(i + j for i, j in zip(ea, eb))
                    s = out.get(e, 0) + ca * cb
                    if s == 0:
                        out.pop(e, None)
                    else:
                        out[e] = s
            return PhasePolynomial(self.n, out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def diff(self, slot: int) -> "PhasePolynomial":
        out = {}
        for e, c in self._terms.items():
            k = e[slot]
            if k == 0:
                continue
            e2 = list(e)
            e2[slot] = k - 1
            e2 = tuple(e2)
            out[e2] = out.get(e2, 0) + k * c
        return PhasePolynomial(self.n, out)

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    def __eq__(self, other):
        if not isinstance(other, PhasePolynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return "0"
        names = [f"x{mu}" for mu in range(1, self.n + 1)] + [
            f"p{mu}" for mu in range(1, self.n + 1)
        ]
        parts = []
        for e, c in sorted(self._terms.items()):
            mono = "*".join(
                f"{names[i]}^{k}" if k > 1 else names[i]
                for i, k in enumerate(e)
                if k
            )
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


@dataclass(frozen=True)
class SymplecticForm:
    """Block form [[0, g], [-g, 0]] over a diagonal +-1 metric block."""

    metric: Tuple[int, ...]

    def __post_init__(self):
        if not self.metric or any(s not in (1, -1) for s in self.metric):
            raise ValueError("metric block must be nonempty with +-1 entries")

    @classmethod
    def euclidean(cls, n: int) -> "SymplecticForm":
        return cls(tuple([1] * n))

    @classmethod
    def minkowski(cls, n: int) -> "SymplecticForm":
        if n < 1:
            raise ValueError("need at least one dimension")
        return cls(tuple([1] + [-1] * (n - 1)))

    @property
    def n(self) -> int:
        return len(self.metric)

    def matrix(self) -> np.ndarray:
        g = np.diag(self.metric).astype(float)
        z = np.zeros_like(g)
        return np.block([[z, g], [-g, z]])

    def inverse(self) -> np.ndarray:
        return -self.matrix()

    def entry(self, a: int, b: int) -> int:
        n = self.n
        if a < n and b >= n and b - n == a:
            return self.metric[a]
        if a >= n and b < n and a - n == b:
            return -self.metric[b]
        return 0


def poisson(f: PhasePolynomial, g: PhasePolynomial, form: SymplecticForm) -> PhasePolynomial:
    """Poisson bracket contracted through the form's block entries."""
    f._check(g)
    if form.n != f.n:
        raise ValueError("form dimension mismatch")
    n = f.n
    out = PhasePolynomial.zero(n)
    for mu in range(n):
        gmu = form.metric[mu]
        df_x, df_p = f.diff(mu), f.diff(n + mu)
        dg_x, dg_p = g.diff(mu), g.diff(n + mu)
        out = out + (df_x * dg_p).scale(gmu) - (df_p * dg_x).scale(gmu)
    return out


# ---------------------------------------------------------------------------
# Truncated number-basis operators
# ---------------------------------------------------------------------------

@dataclass
class ModeOperators:
    """Per-mode canonical operator matrices on a truncated Fock space."""

    n: int
    cutoff: int
    convention: str
    metric: Tuple[int, ...]
    X: List[np.ndarray] = field(repr=False)
    P: List[np.ndarray] = field(repr=False)
    occupations: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return (self.cutoff + 1) ** self.n

    @property
    def commutator_constant(self) -> complex:
        """Value kappa with (1/2)[X^mu, P^nu] = kappa g^{mu nu} on the safe
        subspace."""
        return 1j if self.convention == "hermitian" else 1.0

    def operator(self, slot: int) -> np.ndarray:
        return self.X[slot] if slot < self.n else self.P[slot - self.n]

    def safe_mask(self, margin: int = 2) -> np.ndarray:
        return self.occupations <= self.cutoff - margin

    def safe_dim(self, margin: int = 2) -> int:
        return int(self.safe_mask(margin).sum())

    def restrict(self, m: np.ndarray, margin: int = 2) -> np.ndarray:
        keep = self.safe_mask(margin)
        return m[np.ix_(keep, keep)]


def _single_mode_ladders(cutoff: int) -> Tuple[np.ndarray, np.ndarray]:
    d = cutoff + 1
    a = np.zeros((d, d))
    for k in range(1, d):
        a[k - 1, k] = np.sqrt(k)
    return a, a.T.copy()


def mode_ops(n: int, cutoff: int, metric: Sequence[int] | None = None,
             convention: str = "hermitian") -> ModeOperators:
    """Canonical pairs for n modes at the given occupation cutoff.

    X = a + a^dag; P depends on the convention (module docstring).  A -1
    metric entry flips the sign of that mode's P so the canonical relation
    carries the metric.
    """
    if cutoff < 2:
        raise ValueError("cutoff must be at least 2")
    if convention not in ("hermitian", "real"):
        raise ValueError(f"unknown convention {convention!r}")
    metric = tuple(metric) if metric is not None else tuple([1] * n)
    if len(metric) != n or any(s not in (1, -1) for s in metric):
        raise ValueError("metric must have n entries of +-1")
    a, adag = _single_mode_ladders(cutoff)
    x_single = a + adag
    p_single = 1j * (adag - a) if convention == "hermitian" else (adag - a)
    d = cutoff + 1
    eye = np.eye(d)

    def embed(op: np.ndarray, mode: int) -> np.ndarray:
        mats = [eye] * n
        mats[mode] = op
        out = mats[0]
        for m in mats[1:]:
            out = np.kron(out, m)
        return out

    X = [embed(x_single, mu).astype(complex) for mu in range(n)]
    P = [embed(p_single, mu).astype(complex) * metric[mu] for mu in range(n)]
    occ_single = np.arange(d)
    occ = occ_single.copy()
    for _ in range(n - 1):
        occ = (occ[:, None] + occ_single[None, :]).ravel()
    return ModeOperators(n=n, cutoff=cutoff, convention=convention,
                         metric=metric, X=X, P=P, occupations=occ)


def canonical_relation_deviation(ops: ModeOperators, form: SymplecticForm,
                                 margin: int = 2) -> float:
    """Max deviation of (1/2)[q_a, q_b] from kappa J_ab on the safe
    subspace, over all 2n x 2n operator pairs."""
    if form.n != ops.n:
        raise ValueError("form dimension mismatch")
    kappa = ops.commutator_constant
    worst = 0.0
    for a in range(2 * ops.n):
        qa = ops.operator(a)
        for b in range(2 * ops.n):
            qb = ops.operator(b)
            comm = (qa @ qb - qb @ qa) / 2
            target = kappa * form.entry(a, b) * np.eye(ops.dim)
            worst = max(worst, np.abs(ops.restrict(comm - target, margin)).max())
    return worst


def weyl_quantize(f: PhasePolynomial, ops: ModeOperators) -> np.ndarray:
    """Weyl-symmetrized operator for a polynomial of degree <= 2."""
    if f.degree() > 2:
        raise ValueError("operator ordering fixed only up to degree 2")
    dim = ops.dim
    out = np.zeros((dim, dim), dtype=complex)
    eye = np.eye(dim)
    for expo, c in f.terms.items():
        slots = [i for i, k in enumerate(expo) for _ in range(k)]
        if not slots:
            out += c * eye
        elif len(slots) == 1:
            out += c * ops.operator(slots[0])
        else:
            qa, qb = ops.operator(slots[0]), ops.operator(slots[1])
            out += c * (qa @ qb + qb @ qa) / 2
    return out


@dataclass(frozen=True)
class CorrespondenceReport:
    check: str
    convention: str
    max_abs_deviation: float
    safe_dim: int
    constants: Dict[str, str]

    def to_json_dict(self) -> dict:
        return {
            "check": self.check,
            "convention": self.convention,
            "max_abs_deviation": self.max_abs_deviation,
            "safe_dim": self.safe_dim,
            "constants": dict(self.constants),
        }


def bracket_correspondence(f: PhasePolynomial, g: PhasePolynomial,
                           form: SymplecticForm, cutoff: int,
                           convention: str = "hermitian") -> CorrespondenceReport:
    """Compare the classical Poisson bracket of degree <= 2 polynomials
    with the scaled commutator of their Weyl-quantized operators.

    The operator side is (1/2)[F, G] / kappa with kappa the canonical
    commutator constant of the convention, so both sides agree exactly in
    the truncation-safe subspace.
    """
    if f.degree() > 2 or g.degree() > 2:
        raise ValueError("bracket correspondence restricted to degree <= 2")
    ops = mode_ops(f.n, cutoff, metric=form.metric, convention=convention)
    classical = poisson(f, g, form)
    F, G = weyl_quantize(f, ops), weyl_quantize(g, ops)
    kappa = ops.commutator_constant
    lhs = (F @ G - G @ F) / (2 * kappa)
    rhs = weyl_quantize(classical, ops)
    dev = float(np.abs(ops.restrict(lhs - rhs)).max())
    constants = {
        "half_commutator_xp": "i*g" if convention == "hermitian" else "g",
        "raw_sqrt2_ddx_constant": "-g",
    }
    return CorrespondenceReport(
        check="poisson_vs_commutator",
        convention=convention,
        max_abs_deviation=dev,
        safe_dim=ops.safe_dim(),
        constants=constants,
    )
