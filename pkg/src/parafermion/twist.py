"""Twisted-module machinery for the order-2 automorphism.

Two independent evaluators are provided for modes of the twisted fields.  The
primary route conjugates the untwisted field by the shift operator attached to
the quarter current (a finite Laurent series, since positive current modes
lower degree and the zero mode acts semisimply).  The second route evaluates
composite modes through the defining iterate recursion of twisted modules and
exists purely as a cross-check; the two must agree exactly.

Mode indices of a parity-r vector run over r/2 + Z.  Asking for a mode of the
wrong parity family is an error, never a silent zero.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import sl2
from .errors import ContextMismatch, ParityMismatch
from .fock import (
    FockVector,
    Monomial,
    Terms,
    _merge,
    _mono,
    act,
    convert_vector,
    eta,
    hpp_eigendecompose,
    module_context,
    sigma_grade,
    sigma_vector,
)
from .modes import composite_mode
from .quotient import reduce_components
from .sl2 import Basis, Gen, GenElem, Scalar

__all__ = [
    "LaurentVector",
    "delta_apply",
    "eta",
    "half_binom",
    "mode_index",
    "sigma_grade",
    "twisted_gen_mode",
    "twisted_iterate",
    "twisted_mode",
]

HALF = Fraction(1, 2)


def mode_index(x) -> Fraction:
    """Validate a twisted mode index: a rational with denominator 1 or 2."""
    x = Fraction(x)
    if x.denominator not in (1, 2):
        raise ParityMismatch(
            f"twisted mode indices lie in (1/2)Z, got {x}"
        )
    return x


def half_binom(q: Fraction, i: int) -> Fraction:
    """binom(q, i) for rational q, as the falling-factorial product."""
    out = Fraction(1)
    for t in range(i):
        out *= (q - t)
    return out / math.factorial(i)


class LaurentVector:
    """Finitely many vectors indexed by exponents in (1/2)Z."""

    def __init__(self, entries):
        self.entries = {Fraction(q): v for q, v in entries.items() if not v.is_zero}

    def get(self, q):
        return self.entries.get(Fraction(q))

    def items(self):
        return sorted(self.entries.items())

    def exponents(self):
        return sorted(self.entries)

    def __eq__(self, other):
        return isinstance(other, LaurentVector) and self.entries == other.entries

    def __repr__(self):
        body = ", ".join(f"z^{q}: {v}" for q, v in self.items())
        return "LaurentVector({" + body + "})"


# -- the conjugation route ---------------------------------------------------


def delta_apply(u: FockVector) -> LaurentVector:
    """Finite Laurent expansion of the shift operator applied to u."""
    if u.context.i != 0:
        raise ContextMismatch("the shift operator acts on the i = 0 module")
    cache = u.context.cache("delta")
    total: dict[Fraction, FockVector] = {}
    for mono, c in u.terms.items():
        key = (u.basis, mono)
        entry = cache.get(key)
        if entry is None:
            entry = _delta_mono(u.context, u.basis, mono)
            cache[key] = entry
        for q, vec in entry.items():
            total[q] = total.get(q, u.context.zero(u.basis)) + c * vec
    return LaurentVector(total)


def _delta_mono(ctx, basis, mono: Monomial) -> dict[Fraction, FockVector]:
    hq = sl2.hpp()
    one = FockVector(ctx, basis, {mono: Fraction(1)})
    levels: dict[int, FockVector] = {0: one}
    # exp(sum_m c_m h''(m) z^{-m}); the factors commute, so apply one m at a time
    for m in range(1, mono.degree + 1):
        cm = Fraction((-1) ** (m + 1), m)
        nxt: dict[int, FockVector] = {}
        for t, vec in levels.items():
            term = vec
            coeff = Fraction(1)
            p = 0
            while not term.is_zero:
                cur = nxt.get(t - m * p)
                nxt[t - m * p] = coeff * term if cur is None else cur + coeff * term
                p += 1
                coeff = coeff * cm / p
                term = act(hq, m, term)
        levels = nxt
    out: dict[Fraction, FockVector] = {}
    for t, vec in levels.items():
        if vec.is_zero:
            continue
        for lam, comp in hpp_eigendecompose(vec):
            q = Fraction(t) + lam
            out[q] = out.get(q, ctx.zero(basis)) + comp
    return {q: v for q, v in out.items() if not v.is_zero}


def twisted_mode(u: FockVector, x, w: FockVector, reduce: bool = True) -> FockVector:
    """Mode x of the twisted field attached to u, acting on w.

    The result is reduced to the simple quotient unless reduce=False.
    """
    x = mode_index(x)
    r = sigma_grade(u)
    if (x - Fraction(r, 2)).denominator != 1:
        raise ParityMismatch(
            f"a parity-{r} vector has modes in {Fraction(r,2)} + Z, got index {x}"
        )
    out = w.context.zero(w.basis)
    for q, vec in delta_apply(u).items():
        n = x + q
        if n.denominator != 1:
            raise ParityMismatch(
                f"expansion exponent {q} is inconsistent with index {x}"
            )
        out = out + composite_mode(vec, int(n), w)
    return reduce_components(out) if reduce else out


# -- the generator table -----------------------------------------------------


def twisted_gen_mode(a: GenElem, n, w: FockVector, reduce: bool = True) -> FockVector:
    """Twisted mode n of a Lie-algebra element, by the translation table.

    Integer modes see the sigma-fixed part of a (with the level shift on the
    zero mode); half-integer modes see the sigma-negated part.  Asking for a
    family in which a has no component at all is a parity error.
    """
    n = mode_index(n)
    out = _gen_mode_raw(a, n, w)
    return reduce_components(out) if reduce else out


def _gen_mode_raw(a: GenElem, n: Fraction, w: FockVector) -> FockVector:
    ap = sl2.convert_basis(a, Basis.PRIMED)
    coeffs = ap.as_dict()
    ch = coeffs.get(Gen.H, Fraction(0))
    ce = coeffs.get(Gen.E, Fraction(0))
    cf = coeffs.get(Gen.F, Fraction(0))
    k = w.context.k
    if n.denominator == 1:
        if ch == 0 and not ap.is_zero:
            raise ParityMismatch(
                "integer twisted modes require a sigma-fixed component"
            )
        m = int(n)
        out = ch * act(sl2.hp(), m, w)
        if m == 0:
            out = out + ch * Fraction(k, 2) * w
        return out
    if ce == 0 and cf == 0 and not ap.is_zero:
        raise ParityMismatch(
            "half-integer twisted modes require a sigma-negated component"
        )
    out = w.context.zero(w.basis)
    if ce:
        out = out + ce * act(sl2.ep(), int(n + HALF), w)
    if cf:
        out = out + cf * act(sl2.fp(), int(n - HALF), w)
    return out


# -- the iterate route -------------------------------------------------------


def _parity(mono: Monomial) -> int:
    return sum(1 for g, _ in mono.factors if g != Gen.H) % 2


_PRIMED_ELEM = {
    int(Gen.H): sl2.hp,
    int(Gen.E): sl2.ep,
    int(Gen.F): sl2.fp,
}


def twisted_iterate(u: FockVector, m: int, n_offset, w: FockVector,
                    reduce: bool = True) -> FockVector:
    """Mode m + n_offset of the twisted field of u, by the iterate recursion.

    n_offset is the parity offset (0 or 1/2) of u's mode family; the composite
    is peeled factor by factor through the defining recursion of twisted
    modules, entirely independently of the conjugation route.
    """
    offset = mode_index(n_offset)
    if offset not in (Fraction(0), HALF):
        raise ParityMismatch(f"the mode-family offset must be 0 or 1/2, got {offset}")
    r = sigma_grade(u)
    if offset != Fraction(r, 2):
        raise ParityMismatch(
            f"a parity-{r} vector has mode-family offset {Fraction(r, 2)}, got {offset}"
        )
    if u.context.k != w.context.k:
        raise ContextMismatch(
            f"level mismatch: field at k={u.context.k}, target at k={w.context.k}"
        )
    x = m + offset
    up = convert_vector(u, Basis.PRIMED)
    out = _iter_vector(up.context, up.terms, x, w)
    return reduce_components(out) if reduce else out


def _iter_vector(ctx0, terms: Terms, x: Fraction, w: FockVector) -> FockVector:
    out = w.context.zero(w.basis)
    for mono, c in terms.items():
        for wmono, cw in w.terms.items():
            got = _iter_mono(ctx0, mono, x, wmono, w.context, w.basis)
            if got:
                out = out + (c * cw) * FockVector(w.context, w.basis, dict(got))
    return out


def _iter_mono(ctx0, mono: Monomial, x: Fraction, wmono: Monomial,
               wctx, wbasis) -> Terms:
    """Twisted mode x of a primed canonical monomial on one target monomial."""
    key = (mono, x, wmono, wbasis)
    cache = wctx.cache("twisted_iterate")
    got = cache.get(key)
    if got is not None:
        return got
    if not mono.factors:
        out = {wmono: Fraction(1)} if x == -1 else {}
        cache[key] = out
        return out
    g, mg = mono.factors[0]
    p = -mg
    ra = 0 if g == int(Gen.H) else 1
    rest = _mono(mono.factors[1:], mono.top)
    s = _parity(rest)
    n = x - Fraction(ra + s, 2)
    if n.denominator != 1:
        raise ParityMismatch(
            f"index {x} is inconsistent with the parity of the composite"
        )
    a_elem = _PRIMED_ELEM[g]()
    wvec = FockVector(wctx, wbasis, {wmono: Fraction(1)})
    out: Terms = {}
    # first series: a after the inner composite mode of the remainder
    cutoff = Fraction(2 * rest.degree + 3 * wmono.degree + wctx.i, 2)
    i = 0
    while n + Fraction(s, 2) + i <= cutoff:
        y = n + Fraction(s, 2) + i
        inner = _iter_mono(ctx0, rest, y, wmono, wctx, wbasis)
        if inner:
            # (-1)^i binom(-p, i) collapses to a plain binomial
            coeff = Fraction(math.comb(p + i - 1, i))
            moved = _gen_mode_raw(
                a_elem, -p + Fraction(ra, 2) - i, FockVector(wctx, wbasis, dict(inner))
            )
            _merge(out, moved.terms, coeff)
        i += 1
    # second series: a first, then the remainder's composite mode
    sign = -Fraction((-1) ** p)
    for i in range(0, wmono.degree + 2):
        first = _gen_mode_raw(a_elem, Fraction(ra, 2) + i, wvec)
        if first.is_zero:
            continue
        coeff = sign * math.comb(p + i - 1, i)
        y = -p + n + Fraction(s, 2) - i
        for mono2, c2 in first.terms.items():
            _merge(out, _iter_mono(ctx0, rest, y, mono2, wctx, wbasis), coeff * c2)
    # corrections from the binomial expansion of the fractional power
    if ra == 1:
        for i in range(1, p + rest.degree + 1):
            coeff = -half_binom(HALF, i)
            shifted = ctx0.act_gen(Basis.PRIMED, g, -p + i, rest)
            for mono2, c2 in shifted.items():
                _merge(out, _iter_mono(ctx0, mono2, x - i, wmono, wctx, wbasis),
                       coeff * c2)
    out = {mo: c for mo, c in out.items() if c}
    cache[key] = out
    return out
