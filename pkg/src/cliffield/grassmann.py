"""Finite Grassmann algebra on xi^1..xi^n with Berezin calculus.

Functions are sparse maps from subsets of {1..n} (stored as bitmasks, bit
mu-1 for xi^mu) to coefficients; monomials are kept in ascending index
order and anticommutativity lives in the sign bookkeeping of subset merges.

Conventions fixed here:
  * derivatives are left derivatives throughout;
  * the single Berezin integral over xi^mu equals the left derivative;
  * the multi-variable integral d(xi^1)...d(xi^n) iterates single
    integrals innermost-first, i.e. picks the coefficient of the
    xi^n...xi^1 ordered top monomial.

Operators on functions (multiply-by, derive-by, scalings and sums thereof)
are first-class values so that reproducing kernels and represented Witt
generators never materialize a two-argument kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

_SQRT2 = 2 ** 0.5


def _mask_of(indices: Iterable[int], n: int) -> int:
    mask = 0
    for i in indices:
        if not 1 <= i <= n:
            raise ValueError(f"index {i} out of range 1..{n}")
        bit = 1 << (i - 1)
        if mask & bit:
            raise ValueError(f"repeated index {i}")
        mask |= bit
    return mask


def _indices_of(mask: int) -> Tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _merge_sign(a: int, b: int) -> int:
    a >>= 1
    total = 0
    while a:
        total += (a & b).bit_count()
        a >>= 1
    return -1 if total & 1 else 1


def graded_subsets(n: int) -> List[int]:
    """All subset masks of {1..n} in graded lexicographic order."""
    masks = list(range(1 << n))
    masks.sort(key=lambda m: (m.bit_count(), _indices_of(m)))
    return masks


class GrassmannFunction:
    """Polynomial in n anticommuting generators."""

    __slots__ = ("n", "_coeffs")

    def __init__(self, n: int, coeffs: Dict[int, complex]):
        if n < 0:
            raise ValueError("n must be nonnegative")
        self.n = n
        self._coeffs = {m: c for m, c in coeffs.items() if c != 0}

    @property
    def coeffs(self) -> Dict[int, complex]:
        return dict(self._coeffs)

    @classmethod
    def zero(cls, n: int) -> "GrassmannFunction":
        return cls(n, {})

    @classmethod
    def one(cls, n: int) -> "GrassmannFunction":
        return cls(n, {0: 1})

    @classmethod
    def xi(cls, n: int, mu: int) -> "GrassmannFunction":
        return cls(n, {_mask_of([mu], n): 1})

    @classmethod
    def monomial(cls, n: int, indices: Sequence[int], coeff=1) -> "GrassmannFunction":
        """Monomial in the given order; signs normalize it to ascending."""
        seq = list(indices)
        sign = 1
        for i in range(len(seq)):
            for j in range(len(seq) - 1 - i):
                if seq[j] > seq[j + 1]:
                    seq[j], seq[j + 1] = seq[j + 1], seq[j]
                    sign = -sign
        for a, b in zip(seq, seq[1:]):
            if a == b:
                return cls.zero(n)
        return cls(n, {_mask_of(seq, n): sign * coeff})

    def _check(self, other: "GrassmannFunction"):
        if self.n != other.n:
            raise ValueError(f"generator count mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, GrassmannFunction):
            return NotImplemented
        self._check(other)
        out = dict(self._coeffs)
        for m, c in other._coeffs.items():
            s = out.get(m, 0) + c
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        return GrassmannFunction(self.n, out)

    def __neg__(self):
        return GrassmannFunction(self.n, {m: -c for m, c in self._coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, GrassmannFunction):
            return NotImplemented
        return self + (-other)

    def scale(self, factor) -> "GrassmannFunction":
        if factor == 0:
            return GrassmannFunction.zero(self.n)
        return GrassmannFunction(self.n, {m: c * factor for m, c in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, GrassmannFunction):
            return gmul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, GrassmannFunction):
            return NotImplemented
        return self.n == other.n and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.n, frozenset(self._coeffs.items())))

    def is_zero(self) -> bool:
        return not self._coeffs

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self._coeffs.values()), default=0.0)

    def isclose(self, other: "GrassmannFunction", tol: float = 1e-12) -> bool:
        self._check(other)
        masks = set(self._coeffs) | set(other._coeffs)
        return all(abs(self._coeffs.get(m, 0) - other._coeffs.get(m, 0)) <= tol for m in masks)

    def terms(self) -> List[Tuple[Tuple[int, ...], complex]]:
        items = [(_indices_of(m), c) for m, c in self._coeffs.items()]
        items.sort(key=lambda t: (len(t[0]), t[0]))
        return items

    def __repr__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for idx, c in self.terms():
            name = "1" if not idx else "xi" + ".xi".join(str(i) for i in idx)
            parts.append(f"({c})*{name}")
        return " + ".join(parts)

    def to_json_dict(self) -> dict:
        terms = []
        for idx, c in self.terms():
            cc = complex(c)
            terms.append({"xi": list(idx), "re": cc.real, "im": cc.imag})
        return {"n": self.n, "terms": terms}

    @classmethod
    def from_json_dict(cls, data: dict) -> "GrassmannFunction":
        n = int(data["n"])
        coeffs: Dict[int, complex] = {}
        for term in data["terms"]:
            coeffs[_mask_of(term["xi"], n)] = complex(term["re"], term["im"])
        return cls(n, coeffs)


def gmul(f: GrassmannFunction, g: GrassmannFunction) -> GrassmannFunction:
    """Bilinear product; vanishes on overlapping subsets."""
    f._check(g)
    out: Dict[int, complex] = {}
    for mf, cf in f._coeffs.items():
        for mg, cg in g._coeffs.items():
            if mf & mg:
                continue
            sign = _merge_sign(mf, mg)
            mask = mf | mg
            val = out.get(mask, 0) + (cf * cg if sign > 0 else -(cf * cg))
            if val == 0:
                out.pop(mask, None)
            else:
                out[mask] = val
    return GrassmannFunction(f.n, out)


def dxi(f: GrassmannFunction, mu: int) -> GrassmannFunction:
    """Left derivative with respect to xi^mu."""
    if not 1 <= mu <= f.n:
        raise ValueError(f"index {mu} out of range 1..{f.n}")
    bit = 1 << (mu - 1)
    out: Dict[int, complex] = {}
    for m, c in f._coeffs.items():
        if not m & bit:
            continue
        below = (m & (bit - 1)).bit_count()
        out[m ^ bit] = -c if below & 1 else c
    return GrassmannFunction(f.n, out)


def berezin(f: GrassmannFunction, mu: int) -> GrassmannFunction:
    """Single Berezin integral over xi^mu; equals the left derivative."""
    return dxi(f, mu)


def berezin_full(f: GrassmannFunction):
    """Integral over d(xi^1) d(xi^2) ... d(xi^n), innermost (xi^n) first."""
    g = f
    for mu in range(f.n, 0, -1):
        g = dxi(g, mu)
    return g._coeffs.get(0, 0)


# ---------------------------------------------------------------------------
# Operators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Prim:
    kind: str  # "xi" or "d"
    mu: int


class GrassmannOperator:
    """Linear operator on GrassmannFunction: sum of scaled words of
    multiply-by-xi and derive-by-xi primitives.

    Words act right to left, matching operator composition.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Sequence[Tuple[complex, Tuple[_Prim, ...]]]):
        self.n = n
        merged: Dict[Tuple[_Prim, ...], complex] = {}
        for c, word in terms:
            if c == 0:
                continue
            merged[word] = merged.get(word, 0) + c
        self.terms = tuple((c, w) for w, c in merged.items() if c != 0)

    @classmethod
    def identity(cls, n: int) -> "GrassmannOperator":
        return cls(n, [(1, ())])

    @classmethod
    def zero(cls, n: int) -> "GrassmannOperator":
        return cls(n, [])

    @classmethod
    def multiply_by(cls, n: int, mu: int) -> "GrassmannOperator":
        return cls(n, [(1, (_Prim("xi", mu),))])

    @classmethod
    def derive_by(cls, n: int, mu: int) -> "GrassmannOperator":
        return cls(n, [(1, (_Prim("d", mu),))])

    def __add__(self, other):
        if not isinstance(other, GrassmannOperator):
            return NotImplemented
        if self.n != other.n:
            raise ValueError("operator size mismatch")
        return GrassmannOperator(self.n, list(self.terms) + list(other.terms))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, factor) -> "GrassmannOperator":
        return GrassmannOperator(self.n, [(c * factor, w) for c, w in self.terms])

    def __mul__(self, other):
        if isinstance(other, GrassmannOperator):
            if self.n != other.n:
                raise ValueError("operator size mismatch")
            words = [
                (ca * cb, wa + wb) for ca, wa in self.terms for cb, wb in other.terms
            ]
            return GrassmannOperator(self.n, words)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def apply(self, f: GrassmannFunction) -> GrassmannFunction:
        if f.n != self.n:
            raise ValueError("operator/function size mismatch")
        total = GrassmannFunction.zero(self.n)
        for c, word in self.terms:
            g = f
            for prim in reversed(word):
                if prim.kind == "xi":
                    g = gmul(GrassmannFunction.xi(self.n, prim.mu), g)
                else:
                    g = dxi(g, prim.mu)
            total = total + g.scale(c)
        return total

    def __call__(self, f: GrassmannFunction) -> GrassmannFunction:
        return self.apply(f)

    def matrix(self, order: Sequence[int] | None = None):
        """Dense matrix in the monomial basis (graded lexicographic by
        default)."""
        import numpy as np

        masks = list(order) if order is not None else graded_subsets(self.n)
        index = {m: i for i, m in enumerate(masks)}
        dim = len(masks)
        out = np.zeros((dim, dim), dtype=complex)
        for j, m in enumerate(masks):
            image = self.apply(GrassmannFunction(self.n, {m: 1}))
            for mm, c in image._coeffs.items():
                out[index[mm], j] = complex(c)
        return out


def anticommutator(a: GrassmannOperator, b: GrassmannOperator) -> GrassmannOperator:
    return a * b + b * a


def rep_theta(n: int, mu: int) -> GrassmannOperator:
    """Creation-side Witt generator represented as sqrt(2) * xi^mu."""
    return GrassmannOperator.multiply_by(n, mu).scale(_SQRT2)


def rep_theta_bar(n: int, mu: int) -> GrassmannOperator:
    """Annihilation-side Witt generator represented as sqrt(2) * d/d(xi^mu)."""
    return GrassmannOperator.derive_by(n, mu).scale(_SQRT2)


def expand_components(f: GrassmannFunction):
    """The 2^n Taylor coefficients at the origin, graded lexicographic.

    With left derivatives applied lowest index first, the component for a
    subset equals the coefficient of the ascending monomial, so expansion
    and reconstruction are exact inverses.
    """
    import numpy as np

    masks = graded_subsets(f.n)
    return np.array([complex(f._coeffs.get(m, 0)) for m in masks])


def from_components(n: int, components) -> GrassmannFunction:
    masks = graded_subsets(n)
    if len(components) != len(masks):
        raise ValueError(f"expected {len(masks)} components, got {len(components)}")
    return GrassmannFunction(n, {m: c for m, c in zip(masks, components) if c != 0})


def vacuum_function(spec_or_n, unbarred: Iterable[int] | None = None) -> GrassmannFunction:
    """Vacuum wave function: the ascending monomial of the unbarred set.

    Accepts either (n, unbarred) or a vacuum spec carrying .n and
    .unbarred.  The all-barred choice gives the constant 1, annihilated by
    every derivative.
    """
    if unbarred is None:
        n, unbarred = spec_or_n.n, spec_or_n.unbarred
    else:
        n = spec_or_n
    return GrassmannFunction.monomial(n, sorted(unbarred))


def state_on_vacuum(poly: GrassmannFunction, spec_or_unbarred) -> GrassmannFunction:
    unbarred = getattr(spec_or_unbarred, "unbarred", spec_or_unbarred)
    return gmul(poly, vacuum_function(poly.n, unbarred))


def odd_poisson(f: GrassmannFunction, g: GrassmannFunction, rho) -> complex:
    """Odd Poisson bracket for linear functions of the generators.

    rho is the n x n symmetric bilinear form on the generators; the bracket
    contracts left derivatives of f and g through it.  Restricted to grade-1
    inputs, where derivative side conventions cannot interfere.
    """
    f._check(g)
    for h in (f, g):
        if any(m.bit_count() != 1 for m in h._coeffs):
            raise ValueError("odd_poisson is defined for grade-1 functions")
    total = 0
    for a in range(1, f.n + 1):
        dfa = dxi(f, a)._coeffs.get(0, 0)
        if dfa == 0:
            continue
        for b in range(1, g.n + 1):
            dgb = dxi(g, b)._coeffs.get(0, 0)
            if dgb == 0:
                continue
            total += dfa * rho[a - 1][b - 1] * dgb
    return total
