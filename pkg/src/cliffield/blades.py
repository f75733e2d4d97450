"""Sparse multivector arithmetic in Cl(p,q) over complex coefficients.

Basis blades are bitmasks over generator indices 1..p+q (bit i-1 set means
generator i is a factor), kept in canonical ascending order.  Generators
1..p square to +1, generators p+1..p+q square to -1.  Products track the
transposition parity of the merge plus metric contraction signs, so integer
coefficient inputs stay sign-exact.  Coefficient arithmetic is duck-typed:
complex, int, Fraction, or sympy scalars all work unchanged.

All values are immutable after construction and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple


@dataclass(frozen=True)
class Signature:
    """Diagonal metric signature: p generators square to +1, q to -1."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError("signature counts must be nonnegative")
        if self.p + self.q < 1:
            raise ValueError("empty algebra rejected: need p+q >= 1")

    @property
    def n_generators(self) -> int:
        return self.p + self.q

    @property
    def dimension(self) -> int:
        return 1 << (self.p + self.q)

    def metric_sign(self, index: int) -> int:
        """Square of generator `index` (1-based)."""
        if not 1 <= index <= self.p + self.q:
            raise ValueError(f"generator index {index} out of range 1..{self.p + self.q}")
        return 1 if index <= self.p else -1

    def metric_diagonal(self) -> List[int]:
        return [1] * self.p + [-1] * self.q


def _mask_to_indices(mask: int) -> Tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _indices_to_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        bit = 1 << (i - 1)
        if mask & bit:
            raise ValueError(f"repeated generator index {i} in blade")
        mask |= bit
    return mask


def _merge_sign(a: int, b: int) -> int:
    # Parity of transpositions needed to sort the concatenation of two
    # canonically ordered blades: each generator of b passes every higher
    # generator of a.
    a >>= 1
    total = 0
    while a:
        total += (a & b).bit_count()
        a >>= 1
    return -1 if total & 1 else 1


def blade_product(a: int, b: int, metric: List[int]) -> Tuple[int, int]:
    """Product of two blade masks: (sign, result mask).

    Repeated generators contract with their metric sign.
    """
    sign = _merge_sign(a, b)
    shared = a & b
    i = 0
    while shared:
        if shared & 1 and metric[i] < 0:
            sign = -sign
        shared >>= 1
        i += 1
    return sign, a ^ b


class Multivector:
    """Element of Cl(p,q): sparse map from blade mask to coefficient.

    Zero coefficients are never stored.  `*` is the geometric product,
    `+`/`-` are component-wise, scalars multiply from either side.
    """

    __slots__ = ("sig", "_coeffs")

    def __init__(self, sig: Signature, coeffs: Dict[int, complex]):
        self.sig = sig
        self._coeffs = {m: c for m, c in coeffs.items() if c != 0}

    @property
    def coeffs(self) -> Dict[int, complex]:
        return dict(self._coeffs)

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, sig: Signature) -> "Multivector":
        return cls(sig, {})

    @classmethod
    def scalar(cls, sig: Signature, value) -> "Multivector":
        return cls(sig, {0: value})

    @classmethod
    def blade(cls, sig: Signature, indices: Iterable[int], coeff=1) -> "Multivector":
        mask = _indices_to_mask(indices)
        if mask >> sig.n_generators:
            raise ValueError("blade index exceeds algebra dimension")
        return cls(sig, {mask: coeff})

    # -- ring structure ----------------------------------------------

    def _check_sig(self, other: "Multivector"):
        if self.sig != other.sig:
            raise ValueError(f"signature mismatch: {self.sig} vs {other.sig}")

    def __add__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        self._check_sig(other)
        out = dict(self._coeffs)
        for m, c in other._coeffs.items():
            s = out.get(m, 0) + c
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        return Multivector(self.sig, out)

    def __neg__(self):
        return Multivector(self.sig, {m: -c for m, c in self._coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self + (-other)

    def scale(self, factor) -> "Multivector":
        if factor == 0:
            return Multivector.zero(self.sig)
        return Multivector(self.sig, {m: c * factor for m, c in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return gp(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, factor):
        return Multivector(self.sig, {m: c / factor for m, c in self._coeffs.items()})

    # -- structure queries -------------------------------------------

    def is_zero(self) -> bool:
        return not self._coeffs

    def grades(self) -> List[int]:
        return sorted({m.bit_count() for m in self._coeffs})

    def coefficient(self, indices: Iterable[int]):
        return self._coeffs.get(_indices_to_mask(indices), 0)

    def terms(self) -> List[Tuple[Tuple[int, ...], complex]]:
        """Blade index tuples and coefficients, lexicographic by index list."""
        items = [(_mask_to_indices(m), c) for m, c in self._coeffs.items()]
        items.sort(key=lambda t: t[0])
        return items

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self._coeffs.values()), default=0.0)

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.sig == other.sig and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.sig, frozenset(self._coeffs.items())))

    def isclose(self, other: "Multivector", tol: float = 1e-12) -> bool:
        self._check_sig(other)
        masks = set(self._coeffs) | set(other._coeffs)
        return all(
            abs(self._coeffs.get(m, 0) - other._coeffs.get(m, 0)) <= tol for m in masks
        )

    def __repr__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for idx, c in self.terms():
            name = "1" if not idx else "g" + "^g".join(str(i) for i in idx)
            parts.append(f"({c})*{name}")
        return " + ".join(parts)

    # -- serialization -----------------------------------------------

    def to_json_dict(self) -> dict:
        terms = []
        for idx, c in self.terms():
            cc = complex(c)
            terms.append({"blades": list(idx), "re": cc.real, "im": cc.imag})
        return {"sig": [self.sig.p, self.sig.q], "terms": terms}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Multivector":
        sig = Signature(int(data["sig"][0]), int(data["sig"][1]))
        coeffs: Dict[int, complex] = {}
        for term in data["terms"]:
            mask = _indices_to_mask(term["blades"])
            coeffs[mask] = complex(term["re"], term["im"])
        return cls(sig, coeffs)


class AlgebraContext:
    """Immutable handle on Cl(p,q): generators, unit, metric."""

    def __init__(self, sig: Signature):
        self.sig = sig
        self.metric = sig.metric_diagonal()
        self._generators = tuple(
            Multivector.blade(sig, [i]) for i in range(1, sig.n_generators + 1)
        )

    @property
    def n_generators(self) -> int:
        return self.sig.n_generators

    @property
    def dimension(self) -> int:
        return self.sig.dimension

    def gamma(self, index: int) -> Multivector:
        """Generator by 1-based index."""
        if not 1 <= index <= self.n_generators:
            raise ValueError(f"generator index {index} out of range")
        return self._generators[index - 1]

    @property
    def generators(self) -> Tuple[Multivector, ...]:
        return self._generators

    def one(self) -> Multivector:
        return Multivector.scalar(self.sig, 1)

    def zero(self) -> Multivector:
        return Multivector.zero(self.sig)

    def basis_masks(self) -> List[int]:
        return list(range(self.dimension))

    def __repr__(self):
        return f"AlgebraContext(Cl({self.sig.p},{self.sig.q}))"


def make_algebra(sig: Signature) -> AlgebraContext:
    """Build the algebra context for a signature; rejects p+q = 0."""
    return AlgebraContext(sig)


def gp(a: Multivector, b: Multivector) -> Multivector:
    """Geometric product."""
    a._check_sig(b)
    metric = a.sig.metric_diagonal()
    out: Dict[int, complex] = {}
    for ma, ca in a._coeffs.items():
        for mb, cb in b._coeffs.items():
            sign, mask = blade_product(ma, mb, metric)
            val = out.get(mask, 0) + (ca * cb if sign > 0 else -(ca * cb))
            if val == 0:
                out.pop(mask, None)
            else:
                out[mask] = val
    return Multivector(a.sig, out)


def dot(a: Multivector, b: Multivector) -> Multivector:
    """Symmetrized product (ab + ba) / 2."""
    return (gp(a, b) + gp(b, a)) / 2


def wedge(a: Multivector, b: Multivector) -> Multivector:
    """Antisymmetrized product (ab - ba) / 2.

    For grade-1 arguments this is the basis bivector part; the same formula
    is applied verbatim to all inputs as a module convention.
    """
    return (gp(a, b) - gp(b, a)) / 2


def grade_project(a: Multivector, k: int) -> Multivector:
    if not 0 <= k <= a.sig.n_generators:
        raise ValueError(f"grade {k} out of range 0..{a.sig.n_generators}")
    return Multivector(
        a.sig, {m: c for m, c in a._coeffs.items() if m.bit_count() == k}
    )


def scalar_part(a: Multivector):
    return a._coeffs.get(0, 0)


def _conj(c):
    conj = getattr(c, "conjugate", None)
    return conj() if conj is not None else c


def dagger(a: Multivector) -> Multivector:
    """Reversion combined with complex conjugation.

    Per-blade sign (-1)^(r(r-1)/2) for grade r; an antiautomorphism and an
    involution.
    """
    out = {}
    for m, c in a._coeffs.items():
        r = m.bit_count()
        c = _conj(c)
        out[m] = -c if (r * (r - 1) // 2) & 1 else c
    return Multivector(a.sig, out)
