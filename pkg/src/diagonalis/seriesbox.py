"""Exact Taylor expansion of 1/p on a coefficient box.

The box holds all coefficients u_n of 1/p for multi-indices n in [0..N]^d,
computed layer by layer (total degree) from the convolution recurrence

    c_0 * u_n = [n = 0] - sum_{0 != m <= n} p_m * u_{n-m}.

For symmetric denominators an optional reduced mode stores only the sorted
representative of each index orbit (a d!-fold saving for d=4 boxes).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterator, Optional, TextIO, Union

from .exactalg import UniPoly, rat, rat_str
from .multipoly import Coeff, Exponent, MultiPoly, grlex_key

DEFAULT_ENTRY_LIMIT = 10 ** 8

CACHE_MAGIC = "diagonalis-box v1"


class BoxTooLargeError(Exception):
    """Raised when a requested box exceeds the entry limit."""


def _layer_indices(d: int, N: int, t: int) -> Iterator[Exponent]:
    """All indices in [0..N]^d with total degree t, lexicographic."""
    def rec(prefix: list[int], remaining: int, slots: int) -> Iterator[Exponent]:
        if slots == 1:
            if remaining <= N:
                yield tuple(prefix + [remaining])
            return
        for v in range(min(remaining, N) + 1):
            yield from rec(prefix + [v], remaining - v, slots - 1)

    yield from rec([], t, d)


def _sorted_layer_indices(d: int, N: int, t: int) -> Iterator[Exponent]:
    """Non-decreasing indices in [0..N]^d with total degree t."""
    def rec(prefix: list[int], remaining: int, slots: int, lo: int) -> Iterator[Exponent]:
        if slots == 1:
            if lo <= remaining <= N:
                yield tuple(prefix + [remaining])
            return
        for v in range(lo, min(remaining, N) + 1):
            yield from rec(prefix + [v], remaining - v, slots - 1, v)

    yield from rec([], t, d, 0)


class CoeffBox:
    """Dense box of Taylor coefficients of 1/p on [0..N]^d."""

    def __init__(self, denom: MultiPoly, N: int, data: dict[Exponent, Coeff],
                 symmetric: bool, ring: str):
        self.denom = denom
        self.dim = denom.dim
        self.N = N
        self.data = data
        self.symmetric = symmetric
        self.ring = ring  # "Q" or "Qlambda"

    def coefficient_at(self, n) -> Coeff:
        n = tuple(n)
        if len(n) != self.dim or any(e < 0 or e > self.N for e in n):
            raise IndexError(f"index {n} outside box [0..{self.N}]^{self.dim}")
        if self.symmetric:
            n = tuple(sorted(n))
        return self.data[n]

    def entry_count(self) -> int:
        return (self.N + 1) ** self.dim

    def indices(self) -> Iterator[Exponent]:
        """Stored representatives in graded-lex order."""
        for t in range((self.N) * self.dim + 1):
            it = (_sorted_layer_indices if self.symmetric else _layer_indices)(
                self.dim, self.N, t)
            yield from sorted(it, key=grlex_key)


def expand_reciprocal(p: MultiPoly, N: int, symmetric: Optional[bool] = None,
                      entry_limit: int = DEFAULT_ENTRY_LIMIT) -> CoeffBox:
    """Expand 1/p on [0..N]^d.  Requires an invertible constant term."""
    if N < 0:
        raise ValueError("box bound must be >= 0")
    c0 = p.constant_term()
    if isinstance(c0, UniPoly):
        if not c0.is_constant() or not c0:
            raise ValueError("not expandable at origin: constant term not invertible")
        c0inv: Union[Fraction, None] = 1 / c0.constant_value()
        ring = "Qlambda"
    else:
        if not c0:
            raise ValueError("not expandable at origin: zero constant term")
        c0inv = 1 / c0
        ring = "Q"
    if ring == "Q" and any(isinstance(c, UniPoly) for c in p.terms.values()):
        ring = "Qlambda"

    if symmetric is None:
        symmetric = p.dim > 1 and p.is_symmetric()
    if (N + 1) ** p.dim > entry_limit:
        raise BoxTooLargeError(
            f"box [0..{N}]^{p.dim} has {(N + 1) ** p.dim} entries, "
            f"limit {entry_limit}")

    d = p.dim
    origin = (0,) * d
    monomials = [(e, c) for e, c in p.terms.items() if e != origin]
    one: Coeff = UniPoly.const(1) if ring == "Qlambda" else Fraction(1)
    data: dict[Exponent, Coeff] = {}
    layer = _sorted_layer_indices if symmetric else _layer_indices
    for t in range(d * N + 1):
        for n in layer(d, N, t):
            if t == 0:
                data[n] = one * c0inv
                continue
            acc: Coeff = Fraction(0)
            for m, pm in monomials:
                prev = tuple(a - b for a, b in zip(n, m))
                if any(e < 0 for e in prev):
                    continue
                if symmetric:
                    prev = tuple(sorted(prev))
                acc = acc + pm * data[prev]
            data[n] = -acc * c0inv
    return CoeffBox(p, N, data, symmetric, ring)


def coefficient_at(box: CoeffBox, n) -> Coeff:
    return box.coefficient_at(n)


def first_nonpositive(box: CoeffBox, strict: bool = True):
    """Graded-lex-first index with coefficient <= 0 (strict) or < 0.

    Returns (index, coefficient) or None.  Rational boxes only; use
    `lambda_coefficient_check` for boxes over Q[lambda].
    """
    if box.ring != "Q":
        raise ValueError("first_nonpositive requires a rational box; "
                         "use lambda_coefficient_check")
    for t in range(box.dim * box.N + 1):
        hits = []
        if box.symmetric:
            for n in _sorted_layer_indices(box.dim, box.N, t):
                c = box.data[n]
                if (c <= 0) if strict else (c < 0):
                    # graded-lex-first permutation of the orbit is the
                    # descending rearrangement
                    hits.append((tuple(sorted(n, reverse=True)), c))
        else:
            for n in _layer_indices(box.dim, box.N, t):
                c = box.data[n]
                if (c <= 0) if strict else (c < 0):
                    hits.append((n, c))
        if hits:
            return min(hits, key=lambda h: grlex_key(h[0]))
    return None


def lambda_coefficient_check(box: CoeffBox):
    """First entry that is not a lambda-polynomial with coefficients >= 0
    (and at least one > 0), or None."""
    if box.ring != "Qlambda":
        raise ValueError("lambda_coefficient_check requires a Q[lambda] box")
    for n in box.indices():
        c = box.data[n]
        poly = c if isinstance(c, UniPoly) else UniPoly.const(c)
        ok = poly.coeffs and all(q >= 0 for q in poly.coeffs)
        if not ok:
            return (n, poly)
    return None


def _coeff_to_text(c: Coeff) -> str:
    if isinstance(c, UniPoly):
        return json.dumps(c.to_json(), separators=(",", ":"))
    return rat_str(c)


def _coeff_from_text(s: str) -> Coeff:
    if s.startswith("["):
        return UniPoly.from_json(json.loads(s))
    return rat(s)


def save_cache(box: CoeffBox, fh: TextIO) -> None:
    """Write the cache format: header line, then idx:coeff lines in graded-lex order."""
    header = (f"{CACHE_MAGIC}; d={box.dim}; N={box.N}; ring={box.ring}; "
              f"denom={json.dumps(box.denom.to_json(), separators=(',', ':'))}")
    fh.write(header + "\n")
    for n in box.indices():
        fh.write(",".join(map(str, n)) + ":" + _coeff_to_text(box.data[n]) + "\n")


def load_cache(fh: TextIO) -> CoeffBox:
    header = fh.readline().rstrip("\n")
    if not header.startswith(CACHE_MAGIC + "; "):
        raise ValueError("not a diagonalis box cache file")
    fields = header[len(CACHE_MAGIC) + 2:].split("; ", 3)
    meta = {}
    for f in fields:
        k, v = f.split("=", 1)
        meta[k] = v
    dim = int(meta["d"])
    N = int(meta["N"])
    ring = meta["ring"]
    denom = MultiPoly.from_json(json.loads(meta["denom"]))
    data: dict[Exponent, Coeff] = {}
    for line in fh:
        line = line.rstrip("\n")
        if not line:
            continue
        idx_s, coeff_s = line.split(":", 1)
        data[tuple(int(x) for x in idx_s.split(","))] = _coeff_from_text(coeff_s)
    full = (N + 1) ** dim
    symmetric = len(data) < full if dim > 1 else False
    if len(data) == full:
        symmetric = False
    return CoeffBox(denom, N, data, symmetric, ring)
