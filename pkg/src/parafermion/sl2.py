"""Finite-dimensional sl2 layer: generators, brackets, invariant form, involution.

Two distinguished bases are supported.  The standard triple (h, e, f) obeys
[h,e] = 2e, [h,f] = -2f, [e,f] = h with invariant form (e|f) = 1, (h|h) = 2.
The rotated triple (h', e', f') given by h' = e+f, e' = (h-e+f)/2,
f' = (h+e-f)/2 satisfies the identical relations and form values, and
diagonalises the order-two automorphism sigma: h -> -h, e <-> f.  The scalar
multiple h'/4 is used so often it gets its own constructor, but it is not an
independent symbol.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum
from fractions import Fraction

from .errors import BasisMismatch

Scalar = Fraction

HALF = Fraction(1, 2)


class Basis(Enum):
    CHEVALLEY = "chevalley"
    PRIMED = "primed"


class Gen(IntEnum):
    H = 0
    E = 1
    F = 2


GEN_NAMES = {
    Basis.CHEVALLEY: {Gen.H: "h", Gen.E: "e", Gen.F: "f"},
    Basis.PRIMED: {Gen.H: "h'", Gen.E: "e'", Gen.F: "f'"},
}

# [x, y] expanded over the basis; same table serves both triples.
BRACKET_TABLE: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {
    (Gen.H, Gen.E): ((Gen.E, 2),),
    (Gen.E, Gen.H): ((Gen.E, -2),),
    (Gen.H, Gen.F): ((Gen.F, -2),),
    (Gen.F, Gen.H): ((Gen.F, 2),),
    (Gen.E, Gen.F): ((Gen.H, 1),),
    (Gen.F, Gen.E): ((Gen.H, -1),),
    (Gen.H, Gen.H): (),
    (Gen.E, Gen.E): (),
    (Gen.F, Gen.F): (),
}

# Invariant bilinear form on basis symbols; zero entries omitted.
FORM_TABLE: dict[tuple[int, int], int] = {
    (Gen.H, Gen.H): 2,
    (Gen.E, Gen.F): 1,
    (Gen.F, Gen.E): 1,
}

# Change of basis is an involution: the same coefficients convert either way.
#   h  -> e' + f'       h' -> e + f
#   e  -> (h'-e'+f')/2  e' -> (h-e+f)/2
#   f  -> (h'+e'-f')/2  f' -> (h+e-f)/2
CONVERT_TABLE: dict[int, tuple[tuple[int, Scalar], ...]] = {
    Gen.H: ((Gen.E, Fraction(1)), (Gen.F, Fraction(1))),
    Gen.E: ((Gen.H, HALF), (Gen.E, -HALF), (Gen.F, HALF)),
    Gen.F: ((Gen.H, HALF), (Gen.E, HALF), (Gen.F, -HALF)),
}

# sigma in each basis: (image symbol, sign) per symbol.
SIGMA_TABLE = {
    Basis.CHEVALLEY: {Gen.H: (Gen.H, -1), Gen.E: (Gen.F, 1), Gen.F: (Gen.E, 1)},
    Basis.PRIMED: {Gen.H: (Gen.H, 1), Gen.E: (Gen.E, -1), Gen.F: (Gen.F, -1)},
}


@dataclass(frozen=True)
class GenElem:
    """A linear combination of the three basis symbols of one basis."""

    basis: Basis
    coeffs: tuple[tuple[Gen, Scalar], ...]  # sorted by symbol, zero-free

    @staticmethod
    def make(basis: Basis, mapping) -> "GenElem":
        items = tuple(
            (Gen(g), Fraction(c)) for g, c in sorted(mapping.items()) if c != 0
        )
        return GenElem(basis, items)

    def as_dict(self) -> dict[Gen, Scalar]:
        return dict(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "GenElem") -> "GenElem":
        if self.basis is not other.basis:
            raise BasisMismatch("cannot add elements written in different bases")
        out = self.as_dict()
        for g, c in other.coeffs:
            out[g] = out.get(g, Fraction(0)) + c
        return GenElem.make(self.basis, out)

    def __neg__(self) -> "GenElem":
        return GenElem(self.basis, tuple((g, -c) for g, c in self.coeffs))

    def __sub__(self, other: "GenElem") -> "GenElem":
        return self + (-other)

    def __rmul__(self, scalar) -> "GenElem":
        s = Fraction(scalar)
        if s == 0:
            return GenElem(self.basis, ())
        return GenElem(self.basis, tuple((g, s * c) for g, c in self.coeffs))

    __mul__ = __rmul__

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        names = GEN_NAMES[self.basis]
        parts = []
        for g, c in self.coeffs:
            parts.append(f"{c}*{names[g]}" if c != 1 else names[g])
        return " + ".join(parts)


def _basis_elem(basis: Basis, gen: Gen) -> GenElem:
    return GenElem(basis, ((gen, Fraction(1)),))


def h() -> GenElem:
    return _basis_elem(Basis.CHEVALLEY, Gen.H)


def e() -> GenElem:
    return _basis_elem(Basis.CHEVALLEY, Gen.E)


def f() -> GenElem:
    return _basis_elem(Basis.CHEVALLEY, Gen.F)


def hp() -> GenElem:
    return _basis_elem(Basis.PRIMED, Gen.H)


def ep() -> GenElem:
    return _basis_elem(Basis.PRIMED, Gen.E)


def fp() -> GenElem:
    return _basis_elem(Basis.PRIMED, Gen.F)


def hpp() -> GenElem:
    """The quarter of h' that exponentiates to sigma; not a seventh symbol."""
    return Fraction(1, 4) * hp()


def bracket(a: GenElem, b: GenElem) -> GenElem:
    """Lie bracket [a, b]; both arguments must be written in the same basis."""
    if a.basis is not b.basis:
        raise BasisMismatch("bracket arguments must share a basis")
    out: dict[Gen, Scalar] = {}
    for ga, ca in a.coeffs:
        for gb, cb in b.coeffs:
            for gc, cc in BRACKET_TABLE[(ga, gb)]:
                gc = Gen(gc)
                out[gc] = out.get(gc, Fraction(0)) + ca * cb * cc
    return GenElem.make(a.basis, out)


def invariant_form(a: GenElem, b: GenElem) -> Scalar:
    """Normalised invariant bilinear form (a|b)."""
    if a.basis is not b.basis:
        raise BasisMismatch("form arguments must share a basis")
    total = Fraction(0)
    for ga, ca in a.coeffs:
        for gb, cb in b.coeffs:
            v = FORM_TABLE.get((ga, gb))
            if v:
                total += ca * cb * v
    return total


def sigma_gen(a: GenElem) -> GenElem:
    """The order-two automorphism fixing h' and negating e', f'."""
    table = SIGMA_TABLE[a.basis]
    out: dict[Gen, Scalar] = {}
    for g, c in a.coeffs:
        img, sign = table[g]
        out[img] = out.get(img, Fraction(0)) + sign * c
    return GenElem.make(a.basis, out)


def convert_basis(a: GenElem, target: Basis) -> GenElem:
    """Rewrite a in the other basis (identity when the basis already matches)."""
    if a.basis is target:
        return a
    out: dict[Gen, Scalar] = {}
    for g, c in a.coeffs:
        for g2, c2 in CONVERT_TABLE[g]:
            g2 = Gen(g2)
            out[g2] = out.get(g2, Fraction(0)) + c * c2
    return GenElem.make(target, out)
