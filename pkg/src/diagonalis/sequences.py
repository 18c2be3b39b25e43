"""Diagonals, binomial oracles, and the P-recurrence engine.

A `PRecurrence` is sum_{j=0..r} p_j(n) * u_{n+j} = 0 with polynomial
coefficients p_j; all paper recurrences are stored re-indexed into this
homogeneous convention.  Guessing solves the ansatz linear system exactly
over Q and accepts the smallest (order, degree) recurrence that also
verifies on every supplied term.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exactalg import Rational, UniPoly, binomial, factorial, rat
from .seriesbox import CoeffBox


@dataclass(frozen=True)
class SequenceWindow:
    """Contiguous window of exact sequence values starting at `start`."""
    start: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(rat(v) for v in self.values))

    def __len__(self) -> int:
        return len(self.values)

    @property
    def end(self) -> int:
        """Index one past the last stored value."""
        return self.start + len(self.values)

    def __getitem__(self, n: int) -> Fraction:
        if not self.start <= n < self.end:
            raise IndexError(f"index {n} outside window [{self.start}, {self.end})")
        return self.values[n - self.start]


@dataclass(frozen=True)
class PRecurrence:
    """sum_{j=0..r} p_j(n) u_{n+j} = 0, p_r not identically zero."""
    coeffs: tuple[UniPoly, ...]

    def __post_init__(self):
        if len(self.coeffs) < 2:
            raise ValueError("recurrence needs order >= 1")
        if self.coeffs[-1].is_zero():
            raise ValueError("leading recurrence coefficient is identically zero")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        return max(p.degree for p in self.coeffs)

    def normalized(self) -> "PRecurrence":
        """Content-normalized: integer primitive coefficients, leading
        polynomial with positive leading coefficient."""
        contents = [p.content() for p in self.coeffs if p]
        content = contents[0]
        for c in contents[1:]:
            content = _gcd_frac(content, c)
        ps = [p / content for p in self.coeffs]
        if ps[-1].leading_coefficient() < 0:
            ps = [-p for p in ps]
        return PRecurrence(tuple(ps))

    def to_json(self) -> list[list[str]]:
        return [p.to_json() for p in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str]]) -> "PRecurrence":
        return cls(tuple(UniPoly.from_json(p) for p in data))


def _gcd_frac(a: Fraction, b: Fraction) -> Fraction:
    import math
    num = math.gcd(a.numerator, b.numerator)
    den = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
    return Fraction(num, den)


def extract_diagonal(box: CoeffBox) -> SequenceWindow:
    """u_{n,...,n} for n = 0..N."""
    if box.ring != "Q":
        raise ValueError("diagonal extraction requires a rational box")
    vals = [box.coefficient_at((n,) * box.dim) for n in range(box.N + 1)]
    return SequenceWindow(0, tuple(vals))


# --- closed-form oracles ----------------------------------------------------

def _franel(n: int) -> Fraction:
    return Fraction(sum(binomial(n, k).numerator ** 3 for k in range(n + 1)))


def _kzd(n: int) -> Fraction:
    return Fraction(sum(
        binomial(n, k).numerator ** 2 * binomial(2 * k, n).numerator ** 2
        for k in range(n + 1)))


def _koornwinder(n: int) -> Fraction:
    return Fraction(sum(
        binomial(2 * k, k).numerator ** 2
        * binomial(2 * (n - k), n - k).numerator ** 2
        for k in range(n + 1)))


def _szego3(n: int) -> Fraction:
    s = Fraction(0)
    for k in range(n + 1):
        s += (Fraction(-27) ** (n - k) * Fraction(2) ** (2 * k - n)
              * Fraction(factorial(3 * k), factorial(k) ** 3)
              * binomial(k, n - k))
    return s


def _twovar(n: int, a: Fraction) -> Fraction:
    s = Fraction(0)
    for k in range(n + 1):
        s += (Fraction(factorial(2 * n - k), factorial(k) * factorial(n - k) ** 2)
              * (-a) ** k)
    return s


def binomial_oracle(name: str, n: int, a=None) -> Fraction:
    """Closed-form diagonal value for the named family."""
    if n < 0:
        raise ValueError("index must be >= 0")
    key = name.lower().replace("-", "").replace("_", "")
    if key == "franel":
        return _franel(n)
    if key == "kzd":
        return _kzd(n)
    if key == "koornwinder":
        return _koornwinder(n)
    if key in ("szego3", "szego3binomial"):
        return _szego3(n)
    if key == "2var":
        if a is None:
            raise ValueError("2var oracle needs parameter a")
        return _twovar(n, rat(a))
    raise ValueError(f"unknown oracle {name!r}")


# --- built-in paper recurrences --------------------------------------------

def builtin_recurrence(name: str, a=None) -> PRecurrence:
    key = name.lower().replace("-", "").replace("_", "")
    if key == "franel":
        return PRecurrence((
            UniPoly([-8, -16, -8]),          # -8(n+1)^2
            UniPoly([-16, -21, -7]),         # -(7(n+1)^2 + 7(n+1) + 2)
            UniPoly([4, 4, 1]),              # (n+2)^2
        ))
    if key in ("szego3", "sd"):
        return PRecurrence((
            UniPoly([648, 1458, 729]),       # 81(3n+2)(3n+4)
            UniPoly([-186, -243, -81]),      # -3(27n^2 + 81n + 62)
            UniPoly([8, 8, 2]),              # 2(n+2)^2
        ))
    if key in ("lewyaskey", "lewyaskeyu"):
        return PRecurrence((
            UniPoly([960, 2048, 1024]),      # 64(4n+3)(4n+5)
            UniPoly([-260, -336, -112]),     # -4(28n^2 + 84n + 65)
            UniPoly([12, 12, 3]),            # 3(n+2)^2
        ))
    if key == "kzd":
        p1 = -4 * (UniPoly([3, 2]) * UniPoly([7, 9, 3]))  # -4(2n+3)(3n^2+9n+7)
        return PRecurrence((
            UniPoly([16, 48, 48, 16]),       # 16(n+1)^3
            p1,
            UniPoly([8, 12, 6, 1]),          # (n+2)^3
        ))
    if key == "2var":
        if a is None:
            raise ValueError("2var recurrence needs parameter a")
        a = rat(a)
        return PRecurrence((
            UniPoly([a * a, a * a]),             # a^2 (n+1)
            UniPoly([-3 * (2 - a), -2 * (2 - a)]),  # -(2-a)(2n+3)
            UniPoly([2, 1]),                     # (n+2)
        ))
    raise ValueError(f"unknown recurrence {name!r}")


# --- recurrence operations --------------------------------------------------

def recurrence_check(rec: PRecurrence, seq: SequenceWindow):
    """None if the recurrence holds on every checkable n; else (n, residual)."""
    r = rec.order
    if len(seq) < r + 1:
        raise ValueError(f"window too short: need at least {r + 1} terms")
    for n in range(seq.start, seq.end - r):
        resid = sum((rec.coeffs[j](n) * seq[n + j] for j in range(r + 1)),
                    Fraction(0))
        if resid:
            return (n, resid)
    return None


def recurrence_extend(rec: PRecurrence, initial: SequenceWindow,
                      upto: int) -> SequenceWindow:
    """Extend forward to index `upto` (inclusive) by solving for u_{n+r}."""
    r = rec.order
    if len(initial) < r:
        raise ValueError(f"need at least {r} initial terms")
    vals = list(initial.values)
    start = initial.start
    while start + len(vals) <= upto:
        n = start + len(vals) - r
        lead = rec.coeffs[r](n)
        if lead == 0:
            raise ValueError(
                f"leading coefficient vanishes at n={n}; extension blocked "
                f"at index {n + r}")
        s = sum((rec.coeffs[j](n) * vals[n + j - start] for j in range(r)),
                Fraction(0))
        vals.append(-s / lead)
    return SequenceWindow(start, tuple(vals))


def recurrence_seed(rec: PRecurrence, upto: int, u0=Fraction(1)) -> SequenceWindow:
    """Run the recurrence extended by u_k = 0 for k < 0, starting from u_0.

    For the paper's second-order recurrences this reproduces the analytic
    normalization (u_1 is forced by the n = -1 instance).
    """
    r = rec.order
    vals = [rat(u0)] + [Fraction(0)] * upto
    for n in range(-r + 1, upto - r + 1):
        lead = rec.coeffs[r](n)
        if lead == 0:
            raise ValueError(f"leading coefficient vanishes at n={n}")
        s = Fraction(0)
        for j in range(r):
            idx = n + j
            if 0 <= idx <= upto:
                s += rec.coeffs[j](n) * vals[idx]
        vals[n + r] = -s / lead
    return SequenceWindow(0, tuple(vals))


GUESS_SAFETY_MARGIN = 5


def recurrence_guess(seq: SequenceWindow, max_order: int,
                     max_degree: int) -> Optional[PRecurrence]:
    """Smallest (order, degree) recurrence verifying on all supplied terms.

    Requires at least (order+1)(degree+1) + order + GUESS_SAFETY_MARGIN terms
    for the candidate size before it is attempted.
    """
    min_needed = (max_order + 1) * (max_degree + 1) + max_order + GUESS_SAFETY_MARGIN
    if len(seq) < min_needed:
        raise ValueError(
            f"need >= {min_needed} terms to guess at max_order={max_order}, "
            f"max_degree={max_degree}; got {len(seq)}")
    for order in range(1, max_order + 1):
        for degree in range(max_degree + 1):
            unknowns = (order + 1) * (degree + 1)
            rows = len(seq) - order
            if rows < unknowns + GUESS_SAFETY_MARGIN:
                continue
            matrix = []
            for n in range(seq.start, seq.end - order):
                row = []
                for j in range(order + 1):
                    u = seq[n + j]
                    npow = Fraction(1)
                    for _ in range(degree + 1):
                        row.append(npow * u)
                        npow *= n
                matrix.append(row)
            for vec in _nullspace(matrix):
                ps = tuple(
                    UniPoly(vec[j * (degree + 1):(j + 1) * (degree + 1)])
                    for j in range(order + 1))
                if ps[-1].is_zero():
                    continue  # really a lower-order relation
                cand = PRecurrence(ps).normalized()
                if recurrence_check(cand, seq) is None:
                    return cand
    return None


def _nullspace(matrix: list[list[Fraction]]) -> list[list[Fraction]]:
    """Basis of the exact nullspace of the row-space system A x = 0."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    rows = [list(r) for r in matrix]
    pivots: dict[int, int] = {}  # col -> row
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(rank, len(rows)):
            if rows[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        pr = rows[rank]
        inv = 1 / pr[col]
        for c in range(col, ncols):
            pr[c] *= inv
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                for c in range(col, ncols):
                    rows[r][c] -= f * pr[c]
        pivots[col] = rank
        rank += 1
    basis = []
    free_cols = [c for c in range(ncols) if c not in pivots]
    for fc in free_cols:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for pc, pr in pivots.items():
            vec[pc] = -rows[pr][fc]
        basis.append(vec)
    return basis


def characteristic_polynomial(rec: PRecurrence) -> UniPoly:
    """sum_j (coefficient of n^D in p_j) x^j at the common top degree D."""
    D = rec.degree
    poly = UniPoly([p[D] for p in rec.coeffs])
    return poly.primitive() if poly else poly


def sequence_sign_scan(seq: SequenceWindow, strict: bool = True):
    """First index with a nonpositive (strict) or negative value, or None."""
    for n in range(seq.start, seq.end):
        v = seq[n]
        if (v <= 0) if strict else (v < 0):
            return (n, v)
    return None
