"""Catalog of the rational-function families 1 / sum_k c_k e_k and their
canonical normalization (c_0 = 1, c_1 = -1)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .exactalg import UniPoly, rat, rat_str
from .multipoly import MultiPoly, symmetric_denominator

Coeff = Union[Fraction, UniPoly]


@dataclass(frozen=True)
class FamilySpec:
    dim: int
    coeffs: tuple[Coeff, ...]
    name: Optional[str] = None

    def __post_init__(self):
        if len(self.coeffs) != self.dim + 1:
            raise ValueError(
                f"need d+1 = {self.dim + 1} coefficients, got {len(self.coeffs)}")
        c0 = self.coeffs[0]
        if not c0:
            raise ValueError("c_0 must be nonzero")

    def denominator(self) -> MultiPoly:
        return symmetric_denominator(self.coeffs)

    def has_lambda(self) -> bool:
        return any(isinstance(c, UniPoly) and not c.is_constant()
                   for c in self.coeffs)

    def describe(self) -> str:
        parts = []
        for c in self.coeffs:
            parts.append(repr(c) if isinstance(c, UniPoly) else rat_str(c))
        tag = f"{self.name}: " if self.name else ""
        return f"{tag}d={self.dim}, c=[{', '.join(parts)}]"

    def to_json(self) -> dict:
        cs = [c.to_json() if isinstance(c, UniPoly) else rat_str(c)
              for c in self.coeffs]
        return {"dim": self.dim, "coeffs": cs, "name": self.name}


def make_family(d: int, coefficients: Sequence, name: Optional[str] = None) -> FamilySpec:
    cs = tuple(c if isinstance(c, UniPoly) else rat(c) for c in coefficients)
    return FamilySpec(d, cs, name)


def _lam() -> UniPoly:
    return UniPoly.x()


def named_instance(name: str, **params) -> FamilySpec:
    """Look up a family by its catalog name.

    Parameterized entries: GRZ takes d (default 4) and c (default d!);
    hab takes a, b; habc takes a, b, c; h0b takes b (the family
    h_{0,b,-b^2}); h2var takes a; StraubLambda takes an optional lam to
    specialize the parameter.
    """
    key = name.lower().replace("-", "").replace("_", "")
    if key == "ag3":
        return make_family(3, [1, -1, 0, 4], "AG3")
    if key == "szego3":
        return make_family(3, [1, -1, Fraction(3, 4), 0], "Szego3")
    if key == "lewyaskey":
        return make_family(4, [1, -1, Fraction(2, 3), 0, 0], "LewyAskey")
    if key == "kzd":
        return make_family(4, [1, -1, 0, 2, 4], "KZ-D")
    if key == "kauers":
        return make_family(4, [1, -1, 0, Fraction(64, 27), 0], "Kauers")
    if key == "koornwinder":
        return make_family(4, [1, -1, 0, 4, -16], "Koornwinder")
    if key == "szego4":
        return make_family(4, [1, -1, Fraction(8, 9), Fraction(-16, 27), 0], "Szego4")
    if key == "grz":
        d = int(params.get("d", 4))
        if d < 2:
            raise ValueError("GRZ needs d >= 2")
        import math
        c = rat(params.get("c", math.factorial(d)))
        cs = [Fraction(1), Fraction(-1)] + [Fraction(0)] * (d - 2) + [c]
        return make_family(d, cs, f"GRZ-{d}")
    if key == "hab":
        a, b = rat(params["a"]), rat(params["b"])
        return make_family(3, [1, -1, a, b], "hab")
    if key == "habc":
        a, b, c = rat(params["a"]), rat(params["b"]), rat(params["c"])
        return make_family(4, [1, -1, a, b, c], "habc")
    if key in ("h0b", "h0bb2"):
        b = rat(params["b"])
        return make_family(4, [1, -1, 0, b, -b * b], "h0b")
    if key == "h2var":
        a = rat(params["a"])
        return make_family(2, [1, -1, a], "h2var")
    if key == "straublambda":
        lam = params.get("lam")
        t = _lam() if lam is None else UniPoly.const(rat(lam))
        one = UniPoly.const(1)
        cs = [one,
              -(t + 1),
              t * (t + 2),
              -((t - 1) * (t + 2) ** 2)]
        if lam is not None:
            cs = [c.constant_value() for c in cs]
        return make_family(3, cs, "StraubLambda")
    raise ValueError(f"unknown family {name!r}")


CATALOG_NAMES = ["AG3", "Szego3", "LewyAskey", "KZ-D", "Kauers", "GRZ",
                 "Koornwinder", "Szego4", "hab", "habc", "h0b", "h2var",
                 "StraubLambda"]


def canonicalize(spec: FamilySpec) -> tuple[FamilySpec, Fraction]:
    """Normalize to c_0 = 1, c_1 = -1 by dividing by c_0 and rescaling the
    variables by s = -c_0/c_1; returns (normalized spec, s).

    c_k maps to (c_k / c_0) * s^k.  Requires c_1/c_0 < 0: otherwise a
    low-order Taylor coefficient is already nonpositive and no
    positivity-preserving normalization exists.
    """
    if spec.has_lambda():
        raise ValueError("canonicalize needs numeric coefficients; "
                         "specialize lambda first")
    cs = [c.constant_value() if isinstance(c, UniPoly) else c for c in spec.coeffs]
    c0 = cs[0]
    cs = [c / c0 for c in cs]
    if cs[1] >= 0:
        raise ValueError("not normalizable while positive: c_1/c_0 >= 0")
    s = -1 / cs[1]
    new = tuple(c * s ** k for k, c in enumerate(cs))
    return FamilySpec(spec.dim, new, spec.name), s
