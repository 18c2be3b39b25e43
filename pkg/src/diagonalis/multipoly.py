"""Sparse multivariate polynomials over an exact coefficient ring.

Coefficients are either `Fraction` or `UniPoly` (polynomials in a parameter
lambda); both satisfy the ring protocol used here (+, -, *, truthiness for
zero tests).  Terms are kept in a dict keyed by exponent tuples; serialization
uses graded lexicographic order so output is deterministic.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .exactalg import UniPoly, rat, rat_str

Coeff = Union[Fraction, UniPoly]
Exponent = tuple[int, ...]


def grlex_key(exp: Exponent) -> tuple:
    # graded lex with x1 > x2 > ...: within a degree layer, (1,0) precedes (0,1)
    return (sum(exp), tuple(-e for e in exp))


class MultiPoly:
    """Sparse polynomial in d variables; immutable by convention."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[Exponent, Coeff] = ()):
        if dim < 1:
            raise ValueError(f"dimension must be >= 1, got {dim}")
        self.dim = dim
        clean: dict[Exponent, Coeff] = {}
        for exp, c in dict(terms).items():
            exp = tuple(exp)
            if len(exp) != dim:
                raise ValueError(f"exponent {exp} has length != {dim}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            if c:
                clean[exp] = c
        self.terms = clean

    @classmethod
    def constant(cls, dim: int, c) -> "MultiPoly":
        return cls(dim, {(0,) * dim: _coerce_coeff(c)})

    @classmethod
    def variable(cls, dim: int, j: int) -> "MultiPoly":
        exp = [0] * dim
        exp[j] = 1
        return cls(dim, {tuple(exp): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self.terms.items())))

    def coefficient(self, exp: Sequence[int]) -> Coeff:
        return self.terms.get(tuple(exp), Fraction(0))

    def constant_term(self) -> Coeff:
        return self.terms.get((0,) * self.dim, Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_dim(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, Fraction(0)) + c
        return MultiPoly(self.dim, out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, UniPoly)):
            o = _coerce_coeff(other)
            return MultiPoly(self.dim, {e: c * o for e, c in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_dim(other)
        out: dict[Exponent, Coeff] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.dim, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.dim, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def evaluate(self, point: Sequence) -> Coeff:
        """Evaluate at a point of rationals (or ring elements)."""
        if len(point) != self.dim:
            raise ValueError("point has wrong length")
        pt = [p if isinstance(p, UniPoly) else rat(p) for p in point]
        acc: Coeff = Fraction(0)
        for exp, c in self.terms.items():
            term = c
            for x, e in zip(pt, exp):
                for _ in range(e):
                    term = term * x
            acc = acc + term
        return acc

    def is_symmetric(self) -> bool:
        """True if invariant under all permutations of the variables.

        Invariance under adjacent transpositions suffices.
        """
        for j in range(self.dim - 1):
            for exp, c in self.terms.items():
                swapped = list(exp)
                swapped[j], swapped[j + 1] = swapped[j + 1], swapped[j]
                if self.terms.get(tuple(swapped), Fraction(0)) != c:
                    return False
        return True

    def sorted_terms(self) -> list[tuple[Exponent, Coeff]]:
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]))

    def to_json(self) -> dict:
        terms = []
        for exp, c in self.sorted_terms():
            if isinstance(c, UniPoly):
                terms.append({"exp": list(exp), "coeff": c.to_json()})
            else:
                terms.append({"exp": list(exp), "coeff": rat_str(c)})
        return {"dim": self.dim, "terms": terms}

    @classmethod
    def from_json(cls, data: dict) -> "MultiPoly":
        terms: dict[Exponent, Coeff] = {}
        for t in data["terms"]:
            c = t["coeff"]
            coeff: Coeff = UniPoly.from_json(c) if isinstance(c, list) else rat(c)
            terms[tuple(t["exp"])] = coeff
        return cls(data["dim"], terms)

    def _check_dim(self, other: "MultiPoly") -> None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __repr__(self) -> str:
        if not self.terms:
            return f"MultiPoly({self.dim}, 0)"
        bits = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                f"x{j}^{e}" if e > 1 else f"x{j}"
                for j, e in enumerate(exp) if e
            )
            cs = repr(c) if isinstance(c, UniPoly) else rat_str(c)
            bits.append(f"({cs}){'*' + mono if mono else ''}")
        return f"MultiPoly({self.dim}, " + " + ".join(bits) + ")"


def _coerce_coeff(c) -> Coeff:
    if isinstance(c, UniPoly):
        return c
    return rat(c)


def elementary_symmetric(d: int, k: int) -> MultiPoly:
    """e_k(x_1, ..., x_d): sum of all squarefree degree-k monomials; e_0 = 1."""
    if not 0 <= k <= d:
        raise ValueError(f"need 0 <= k <= d, got k={k}, d={d}")
    terms: dict[Exponent, Coeff] = {}
    for combo in itertools.combinations(range(d), k):
        exp = [0] * d
        for j in combo:
            exp[j] = 1
        terms[tuple(exp)] = Fraction(1)
    return MultiPoly(d, terms)


def symmetric_denominator(coeffs: Sequence) -> MultiPoly:
    """Sum c_k * e_k(x_1, ..., x_d) for coefficients c_0..c_d."""
    d = len(coeffs) - 1
    if d < 1:
        raise ValueError("need at least c_0 and c_1")
    acc = MultiPoly(d)
    for k, c in enumerate(coeffs):
        c = _coerce_coeff(c)
        if c:
            acc = acc + elementary_symmetric(d, k) * c
    return acc


def scale_variables(p: MultiPoly, scales: Sequence) -> MultiPoly:
    """Substitute x_j <- s_j * x_j."""
    if len(scales) != p.dim:
        raise ValueError("scale vector has wrong length")
    ss = [rat(s) for s in scales]
    out: dict[Exponent, Coeff] = {}
    for exp, c in p.terms.items():
        factor = Fraction(1)
        for s, e in zip(ss, exp):
            factor *= s ** e
        out[exp] = c * factor
    return MultiPoly(p.dim, out)


def substitute_zero(p: MultiPoly, var_index: int) -> MultiPoly:
    """Set x_{var_index} = 0, dropping to d-1 variables."""
    if not 0 <= var_index < p.dim:
        raise IndexError(f"variable index {var_index} out of range for d={p.dim}")
    if p.dim == 1:
        raise ValueError("cannot drop below one variable")
    out: dict[Exponent, Coeff] = {}
    for exp, c in p.terms.items():
        if exp[var_index] == 0:
            out[exp[:var_index] + exp[var_index + 1:]] = c
    return MultiPoly(p.dim - 1, out)


def partial_derivative(p: MultiPoly, var_index: int) -> MultiPoly:
    if not 0 <= var_index < p.dim:
        raise IndexError(f"variable index {var_index} out of range for d={p.dim}")
    out: dict[Exponent, Coeff] = {}
    for exp, c in p.terms.items():
        e = exp[var_index]
        if e:
            new = list(exp)
            new[var_index] = e - 1
            out[tuple(new)] = c * e
    return MultiPoly(p.dim, out)
