"""Vertex-operator modes: generator modes, composite modes, named states.

A composite mode is the m-th Fourier mode of the field attached to a vector u
of the level-k vacuum module, acting on any level-k module.  It is evaluated
by peeling the leftmost factor of each canonical monomial of u through

    (a(-n) v)(m) = sum_{j>=0} C(n+j-1, j) *
        ( a(-n-j) [v(m+j) w]  -  (-1)^n  v(m-n-j) [a(j) w] ),

which terminates because v is shorter than a(-n)v and the mode sums truncate
on any vector with finitely many creation factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import sl2
from .errors import ContextMismatch, UnknownName
from .fock import (
    FockVector,
    Monomial,
    ModuleContext,
    Terms,
    _merge,
    _mono,
    act,
    canonicalize,
    module_context,
)
from .sl2 import Basis, Gen, GenElem, Scalar

apply_mode = act


def composite_mode(u: FockVector, m: int, w: FockVector) -> FockVector:
    """Mode m of the field attached to u (vacuum module) applied to w."""
    if u.context.i != 0:
        raise ContextMismatch("field vectors must live in the i = 0 module")
    if u.context.k != w.context.k:
        raise ContextMismatch(
            f"level mismatch: field at k={u.context.k}, target at k={w.context.k}"
        )
    if u.basis is not w.basis:
        from .fock import convert_vector

        u = convert_vector(u, w.basis)
    out: Terms = {}
    for umono, cu in u.terms.items():
        for wmono, cw in w.terms.items():
            _merge(out, _comp(w.context, w.basis, umono, m, wmono), cu * cw)
    return FockVector(w.context, w.basis, out)


def _comp(ctx: ModuleContext, basis: Basis, umono: Monomial, m: int, wmono: Monomial) -> Terms:
    key = (basis, umono, m, wmono)
    cache = ctx.cache("composite")
    got = cache.get(key)
    if got is not None:
        return got
    if not umono.factors:
        out = {wmono: Fraction(1)} if m == -1 else {}
        cache[key] = out
        return out
    g, mg = umono.factors[0]
    n = -mg
    v = _mono(umono.factors[1:], umono.top)
    vdeg = v.degree
    wdeg = wmono.degree
    out: Terms = {}
    # a(-n-j) applied after the inner mode of v
    j = 0
    while m + j <= vdeg + wdeg - 1:
        inner = _comp(ctx, basis, v, m + j, wmono)
        if inner:
            coeff = Fraction(math.comb(n + j - 1, j))
            for mono2, c2 in inner.items():
                _merge(out, ctx.act_gen(basis, g, -n - j, mono2), coeff * c2)
        j += 1
    # the tail with a(j) acting first
    sign = Fraction((-1) ** (n + 1))
    for j in range(0, wdeg + 1):
        first = ctx.act_gen(basis, g, j, wmono)
        if not first:
            continue
        coeff = sign * math.comb(n + j - 1, j)
        for mono2, c2 in first.items():
            _merge(out, _comp(ctx, basis, v, m - n - j, mono2), coeff * c2)
    cache[key] = out
    return out


# -- named states ------------------------------------------------------------


@dataclass(frozen=True)
class NamedState:
    """A distinguished vacuum-module vector, with central charge if Virasoro."""

    name: str
    vector: FockVector
    central_charge: Optional[Scalar] = None


H, E, F = int(Gen.H), int(Gen.E), int(Gen.F)

# Words (with rational coefficients in k) defining each named state.
_STATE_WORDS = {
    "omega_aff": lambda k: [
        (Fraction(-1, 2 * (k + 2)), [(H, -2)]),
        (Fraction(1, 4 * (k + 2)), [(H, -1), (H, -1)]),
        (Fraction(1, k + 2), [(E, -1), (F, -1)]),
    ],
    "omega_gamma": lambda k: [
        (Fraction(1, 4 * k), [(H, -1), (H, -1)]),
    ],
    "omega": lambda k: [
        (Fraction(-1, 2 * (k + 2)), [(H, -2)]),
        (Fraction(-1, 2 * k * (k + 2)), [(H, -1), (H, -1)]),
        (Fraction(1, k + 2), [(E, -1), (F, -1)]),
    ],
    "w3": lambda k: [
        (Fraction(k * k), [(H, -3)]),
        (Fraction(3 * k), [(H, -2), (H, -1)]),
        (Fraction(2), [(H, -1), (H, -1), (H, -1)]),
        (Fraction(-6 * k), [(H, -1), (E, -1), (F, -1)]),
        (Fraction(3 * k * k), [(E, -2), (F, -1)]),
        (Fraction(-3 * k * k), [(E, -1), (F, -2)]),
    ],
    "xi1": lambda k: [(Fraction(1), [(E, -2)]), (Fraction(1), [(F, -2)])],
    "xi2": lambda k: [
        (Fraction(-1, 2), [(H, -1), (H, -1)]),
        (Fraction(1), [(E, -1), (E, -1)]),
        (Fraction(1), [(F, -1), (F, -1)]),
    ],
    "xi3": lambda k: [
        (Fraction(-1, 2), [(H, -2)]),
        (Fraction(1, 4), [(H, -1), (H, -1)]),
        (Fraction(1), [(E, -1), (F, -1)]),
    ],
    "xi4": lambda k: [
        (Fraction(-1, 2), [(H, -2)]),
        (Fraction(-1), [(E, -2)]),
        (Fraction(-1), [(F, -2)]),
        (Fraction(-1, 2), [(H, -1), (H, -1)]),
        (Fraction(-1, 2), [(E, -1), (E, -1)]),
        (Fraction(-1, 2), [(F, -1), (F, -1)]),
        (Fraction(1), [(H, -1), (E, -1)]),
        (Fraction(-1), [(H, -1), (F, -1)]),
        (Fraction(1), [(E, -1), (F, -1)]),
    ],
    "xi5": lambda k: [
        (Fraction(-1, 2), [(H, -2)]),
        (Fraction(1), [(E, -2)]),
        (Fraction(1), [(F, -2)]),
        (Fraction(-1, 2), [(H, -1), (H, -1)]),
        (Fraction(-1, 2), [(E, -1), (E, -1)]),
        (Fraction(-1, 2), [(F, -1), (F, -1)]),
        (Fraction(-1), [(H, -1), (E, -1)]),
        (Fraction(1), [(H, -1), (F, -1)]),
        (Fraction(1), [(E, -1), (F, -1)]),
    ],
    "xi6": lambda k: [
        (Fraction(1), [(H, -2)]),
        (Fraction(-1), [(E, -2)]),
        (Fraction(1), [(F, -2)]),
    ],
    "xi7": lambda k: [
        (Fraction(-1), [(H, -2)]),
        (Fraction(-1), [(E, -1), (E, -1)]),
        (Fraction(1), [(F, -1), (F, -1)]),
        (Fraction(1), [(H, -1), (E, -1)]),
        (Fraction(1), [(H, -1), (F, -1)]),
    ],
    "xi8": lambda k: [
        (Fraction(-1), [(H, -2)]),
        (Fraction(-1), [(E, -2)]),
        (Fraction(1), [(F, -2)]),
    ],
    "xi9": lambda k: [
        (Fraction(1), [(H, -2)]),
        (Fraction(1), [(E, -1), (E, -1)]),
        (Fraction(-1), [(F, -1), (F, -1)]),
        (Fraction(1), [(H, -1), (E, -1)]),
        (Fraction(1), [(H, -1), (F, -1)]),
    ],
}

_CENTRAL_CHARGES = {
    "omega_aff": lambda k: Fraction(3 * k, k + 2),
    "omega_gamma": lambda k: Fraction(1),
    "omega": lambda k: Fraction(2 * (k - 1), k + 2),
}

STATE_NAMES = tuple(_STATE_WORDS)


def build(name: str, k: int) -> NamedState:
    """Construct a named vacuum-module state at level k."""
    try:
        recipe = _STATE_WORDS[name]
    except KeyError:
        raise UnknownName(f"unknown state name {name!r}") from None
    ctx = module_context(k, 0)
    v = ctx.zero()
    for coeff, word in recipe(k):
        v = v + coeff * canonicalize(ctx, word, 0)
    cc = _CENTRAL_CHARGES.get(name)
    return NamedState(name, v, cc(k) if cc else None)


def state_vector(name: str, k: int) -> FockVector:
    return build(name, k).vector


def hpp_vector(k: int) -> FockVector:
    """The weight-one current h'(-1)/4 applied to the vacuum."""
    ctx = module_context(k, 0)
    return act(sl2.hpp(), -1, ctx.vacuum())


def virasoro_mode(name: str, k: int, n: int, w: FockVector) -> FockVector:
    """L(n) of the named conformal vector, i.e. composite mode n+1."""
    return composite_mode(state_vector(name, k), n + 1, w)


def lowest_weight(k: int, i: int, j: int) -> Scalar:
    """Eigenvalue of the coset L(0) on the top state v[i,j]."""
    ctx = module_context(k, i)
    v = ctx.top(j)
    image = composite_mode(state_vector("omega", k), 1, v)
    coeff = image.coefficient(_mono((), j))
    if image != coeff * v:
        raise ArithmeticError("coset L(0) failed to act diagonally on a top state")
    return coeff
