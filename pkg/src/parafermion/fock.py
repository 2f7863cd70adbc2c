"""Weight modules for the level-k affine sl2 algebra in PBW coordinates.

A module context fixes a level k >= 3 and a top-space label 0 <= i <= k.  The
underlying space has a basis of canonical monomials

    x1(n1) x2(n2) ... xs(ns) v[i,j],    n1 <= n2 <= ... <= ns <= -1,

with ties at equal mode broken by the symbol order h < e < f (or the primed
order), applied to one of the i+1 top states v[i,0], ..., v[i,i].  Applying a
generator mode to a canonical vector is rewritten back into canonical form with
the commutation rule

    [a(m), b(n)] = [a,b](m+n) + m * delta(m+n, 0) * k * (a|b),

zero modes acting on top states through the finite-dimensional action

    h(0) v[i,j] = (i-2j) v[i,j]
    e(0) v[i,j] = (i-j+1) v[i,j-1]   (zero at j = 0)
    f(0) v[i,j] = (j+1) v[i,j+1]     (zero at j = i)

and strictly positive modes annihilating top states.  All coefficients are
exact rationals; a per-context degree cap guards runaway rewriting.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple

from . import sl2
from .errors import (
    BasisMismatch,
    ContextMismatch,
    DegreeCapExceeded,
    InhomogeneousVector,
    NotSigmaEigenvector,
)
from .sl2 import Basis, Gen, GenElem, Scalar

DEFAULT_DEGREE_CAP = 6

_GEN_ORDER = (Gen.H, Gen.E, Gen.F)
# h(0)-weight contributed by a creation factor, per symbol (standard basis).
_FACTOR_WEIGHT = {Gen.H: 0, Gen.E: 2, Gen.F: -2}


class Monomial(NamedTuple):
    """One canonical PBW word applied to a top state; hashable and ordered."""

    factors: tuple[tuple[int, int], ...]  # ((gen, mode), ...) sorted (mode, gen)
    top: int

    @property
    def degree(self) -> int:
        return -sum(m for _, m in self.factors)

    def sort_key(self):
        return (self.degree, self.factors, self.top)


def _mono(factors, top) -> Monomial:
    return Monomial(tuple(factors), top)


Terms = dict  # Monomial -> Scalar


def _merge(dst: Terms, src: Terms, coeff: Scalar = Fraction(1)) -> None:
    if coeff == 0:
        return
    for mono, c in src.items():
        acc = dst.get(mono, 0) + coeff * c
        if acc == 0:
            dst.pop(mono, None)
        else:
            dst[mono] = acc


class ModuleContext:
    """Level, top-space label, degree cap, and the per-session rewrite caches."""

    def __init__(self, k: int, i: int, degree_cap: int = DEFAULT_DEGREE_CAP):
        if not isinstance(k, int) or k < 3:
            raise ValueError(f"level must be an integer >= 3, got {k!r}")
        if not isinstance(i, int) or not 0 <= i <= k:
            raise ValueError(f"top label must satisfy 0 <= i <= k, got {i!r}")
        self.k = k
        self.i = i
        self.degree_cap = degree_cap
        self._act_cache: dict = {}
        self.caches: dict[str, dict] = {}

    def __repr__(self) -> str:
        return f"ModuleContext(k={self.k}, i={self.i})"

    def cache(self, name: str) -> dict:
        return self.caches.setdefault(name, {})

    # -- basic builders ----------------------------------------------------

    def zero(self, basis: Basis = Basis.CHEVALLEY) -> "FockVector":
        return FockVector(self, basis, {})

    def top(self, j: int, basis: Basis = Basis.CHEVALLEY) -> "FockVector":
        if not 0 <= j <= self.i:
            raise ValueError(f"top index must satisfy 0 <= j <= {self.i}, got {j}")
        return FockVector(self, basis, {_mono((), j): Fraction(1)})

    def vacuum(self) -> "FockVector":
        if self.i != 0:
            raise ValueError("vacuum vector lives in the i = 0 context")
        return self.top(0)

    def _check_cap(self, degree: int) -> None:
        if degree > self.degree_cap:
            raise DegreeCapExceeded(
                f"degree {degree} exceeds cap {self.degree_cap} (k={self.k}, i={self.i})"
            )

    # -- single generator mode, the rewriting workhorse --------------------

    def _zero_mode_top(self, basis: Basis, g: int, j: int) -> Terms:
        """a(0) acting on v[i,j], expanded over top states."""
        i = self.i
        if basis is Basis.CHEVALLEY:
            if g == Gen.H:
                return {_mono((), j): Fraction(i - 2 * j)} if i != 2 * j else {}
            if g == Gen.E:
                return {_mono((), j - 1): Fraction(i - j + 1)} if j >= 1 else {}
            return {_mono((), j + 1): Fraction(j + 1)} if j <= i - 1 else {}
        out: Terms = {}
        for g2, c2 in sl2.CONVERT_TABLE[g]:
            _merge(out, self._zero_mode_top(Basis.CHEVALLEY, g2, j), c2)
        return out

    def act_gen(self, basis: Basis, g: int, m: int, mono: Monomial) -> Terms:
        """Apply a single generator mode a(m) to a canonical monomial."""
        key = (basis, g, m, mono)
        cached = self._act_cache.get(key)
        if cached is not None:
            return cached
        factors = mono.factors
        out: Terms
        if not factors:
            if m > 0:
                out = {}
            elif m == 0:
                out = self._zero_mode_top(basis, g, mono.top)
            else:
                self._check_cap(-m)
                out = {_mono(((g, m),), mono.top): Fraction(1)}
        else:
            g0, m0 = factors[0]
            if m < m0 or (m == m0 and g <= g0):
                self._check_cap(mono.degree - m)
                out = {_mono(((g, m),) + factors, mono.top): Fraction(1)}
            else:
                rest = _mono(factors[1:], mono.top)
                out = {}
                for mono2, c2 in self.act_gen(basis, g, m, rest).items():
                    _merge(out, self.act_gen(basis, g0, m0, mono2), c2)
                for gb, cb in sl2.BRACKET_TABLE[(g, g0)]:
                    _merge(out, self.act_gen(basis, gb, m + m0, rest), Fraction(cb))
                if m + m0 == 0:
                    pairing = sl2.FORM_TABLE.get((g, g0))
                    if pairing:
                        _merge(out, {rest: Fraction(1)}, Fraction(m * self.k * pairing))
        self._act_cache[key] = out
        return out

    # -- canonical monomial enumeration ------------------------------------

    def monomials(self, degree: int) -> tuple[Monomial, ...]:
        """All canonical monomials of the given degree, sorted."""
        cache = self.cache("monomials")
        got = cache.get(degree)
        if got is not None:
            return got
        shapes = _factor_shapes(degree)
        out = tuple(
            _mono(shape, j)
            for shape in shapes
            for j in range(self.i + 1)
        )
        out = tuple(sorted(out, key=Monomial.sort_key))
        cache[degree] = out
        return out


def _factor_shapes(degree: int) -> list[tuple[tuple[int, int], ...]]:
    """Canonical factor tuples of total degree `degree` (any of 3 symbols)."""

    def factors_from(remaining: int, min_key: tuple[int, int]):
        if remaining == 0:
            yield ()
            return
        for mode in range(-remaining, 0):
            for g in _GEN_ORDER:
                key = (mode, int(g))
                if key < min_key:
                    continue
                for tail in factors_from(remaining + mode, key):
                    yield ((int(g), mode),) + tail

    return [tuple(shape) for shape in factors_from(degree, (-degree, 0))]


_context_registry: dict[tuple[int, int, int], ModuleContext] = {}


def module_context(k: int, i: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> ModuleContext:
    """Shared per-process context so rewrite caches persist across callers."""
    key = (k, i, degree_cap)
    ctx = _context_registry.get(key)
    if ctx is None:
        ctx = ModuleContext(k, i, degree_cap)
        _context_registry[key] = ctx
    return ctx


@dataclass
class FockVector:
    """A finite rational combination of canonical monomials in one context."""

    context: ModuleContext
    basis: Basis
    terms: Terms = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {m: Fraction(c) for m, c in self.terms.items() if c != 0}

    # -- ring-module operations --------------------------------------------

    def _require_compatible(self, other: "FockVector") -> None:
        if self.context is not other.context and (
            self.context.k != other.context.k or self.context.i != other.context.i
        ):
            raise ContextMismatch(
                f"cannot combine vectors from {self.context!r} and {other.context!r}"
            )
        if self.basis is not other.basis:
            raise BasisMismatch("cannot combine vectors written in different bases")

    def __add__(self, other: "FockVector") -> "FockVector":
        self._require_compatible(other)
        out = dict(self.terms)
        _merge(out, other.terms)
        return FockVector(self.context, self.basis, out)

    def __sub__(self, other: "FockVector") -> "FockVector":
        self._require_compatible(other)
        out = dict(self.terms)
        _merge(out, other.terms, Fraction(-1))
        return FockVector(self.context, self.basis, out)

    def __neg__(self) -> "FockVector":
        return FockVector(self.context, self.basis, {m: -c for m, c in self.terms.items()})

    def __rmul__(self, scalar) -> "FockVector":
        s = Fraction(scalar)
        if s == 0:
            return FockVector(self.context, self.basis, {})
        return FockVector(self.context, self.basis, {m: s * c for m, c in self.terms.items()})

    __mul__ = __rmul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return (
            self.context.k == other.context.k
            and self.context.i == other.context.i
            and self.basis is other.basis
            and self.terms == other.terms
        )

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mono: Monomial) -> Scalar:
        return self.terms.get(mono, Fraction(0))

    # -- grading -----------------------------------------------------------

    def grade(self):
        """Common degree of all monomials, None for 0, error if mixed."""
        degrees = {m.degree for m in self.terms}
        if not degrees:
            return None
        if len(degrees) > 1:
            raise InhomogeneousVector(f"vector mixes degrees {sorted(degrees)}")
        return degrees.pop()

    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted({m.degree for m in self.terms}))

    def component(self, degree: int) -> "FockVector":
        return FockVector(
            self.context,
            self.basis,
            {m: c for m, c in self.terms.items() if m.degree == degree},
        )

    def __str__(self) -> str:
        return format_vector(self)

    __repr__ = __str__

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: mc[0].sort_key())


# -- canonicalisation and generator-mode application -----------------------


def canonicalize(
    context: ModuleContext,
    word: Iterable[tuple[int, int]],
    top: int,
    basis: Basis = Basis.CHEVALLEY,
) -> FockVector:
    """Apply the operator word (leftmost factor acting last) to v[i,top]."""
    if not 0 <= top <= context.i:
        raise ValueError(f"top index must satisfy 0 <= top <= {context.i}, got {top}")
    terms: Terms = {_mono((), top): Fraction(1)}
    for g, m in reversed(list(word)):
        nxt: Terms = {}
        for mono, c in terms.items():
            _merge(nxt, context.act_gen(basis, g, m, mono), c)
        terms = nxt
    return FockVector(context, basis, terms)


def act(a: GenElem, m: int, v: FockVector) -> FockVector:
    """Apply the mode a(m) of a Lie-algebra element to a vector.

    The element is converted to the vector's basis first, so primed symbols can
    act on standard-basis vectors and vice versa.
    """
    a = sl2.convert_basis(a, v.basis)
    out: Terms = {}
    for g, cg in a.coeffs:
        for mono, c in v.terms.items():
            _merge(out, v.context.act_gen(v.basis, g, m, mono), cg * c)
    return FockVector(v.context, v.basis, out)


def act_word(v: FockVector, word: Iterable[tuple[GenElem, int]]) -> FockVector:
    """Apply a list of (element, mode) pairs, rightmost first."""
    for a, m in reversed(list(word)):
        v = act(a, m, v)
    return v


# -- basis conversion, sigma, eigen-decomposition ---------------------------


def convert_vector(v: FockVector, target: Basis) -> FockVector:
    """Rewrite every monomial of v in the other generator basis."""
    if v.basis is target:
        return v
    out: Terms = {}
    for mono, c in v.terms.items():
        expanded = _convert_word(v.context, v.basis, target, mono)
        _merge(out, expanded, c)
    return FockVector(v.context, target, out)


def _convert_word(context, source, target, mono: Monomial) -> Terms:
    cache = context.cache(("convert", source, target))
    got = cache.get(mono)
    if got is not None:
        return got
    words = [((), Fraction(1))]
    for g, m in mono.factors:
        expansion = sl2.CONVERT_TABLE[g]
        words = [
            (w + ((g2, m),), c * c2)
            for w, c in words
            for g2, c2 in expansion
        ]
    out: Terms = {}
    for w, c in words:
        _merge(out, canonicalize(context, w, mono.top, target).terms, c)
    cache[mono] = out
    return out


def sigma_vector(v: FockVector) -> FockVector:
    """Lift of sigma to the vacuum module; defined for i = 0 contexts only."""
    if v.context.i != 0:
        raise ValueError("sigma acts on the i = 0 module only")
    table = sl2.SIGMA_TABLE[v.basis]
    out: Terms = {}
    for mono, c in v.terms.items():
        sign = Fraction(1)
        word = []
        for g, m in mono.factors:
            img, s = table[Gen(g)]
            sign *= s
            word.append((int(img), m))
        _merge(out, canonicalize(v.context, word, mono.top, v.basis).terms, sign * c)
    return FockVector(v.context, v.basis, out)


def sigma_grade(v: FockVector) -> int:
    """0 for sigma-fixed vectors, 1 for negated ones; error otherwise."""
    if v.is_zero:
        return 0
    image = sigma_vector(v)
    if image == v:
        return 0
    if image == -v:
        return 1
    raise NotSigmaEigenvector(
        "vector is not a sigma-eigenvector; decompose it first"
    )


def hpp_eigendecompose(v: FockVector) -> list[tuple[Scalar, FockVector]]:
    """Split v into eigencomponents of the zero mode of h'/4.

    The operator acts semisimply on every graded piece with eigenvalues among
    {a/2 + (i-2j)/4}, so the components are extracted with exact Lagrange
    projectors and verified before being returned (sorted by eigenvalue).
    """
    if v.is_zero:
        return []
    hq = sl2.hpp()
    candidates: set[Scalar] = set()
    for mono in v.terms:
        d = mono.degree
        for a in range(-2 * d, 2 * d + 1):
            for j in range(v.context.i + 1):
                candidates.add(Fraction(a, 2) + Fraction(v.context.i - 2 * j, 4))
    ordered = sorted(candidates)
    components: list[tuple[Scalar, FockVector]] = []
    recombined = v.context.zero(v.basis)
    for lam in ordered:
        comp = v
        for mu in ordered:
            if mu == lam:
                continue
            comp = Fraction(1, lam - mu) * (act(hq, 0, comp) - mu * comp)
            if comp.is_zero:
                break
        if comp.is_zero:
            continue
        check = act(hq, 0, comp) - lam * comp
        if not check.is_zero:
            raise NotSigmaEigenvector(
                f"projector output failed the eigenvector check at {lam}"
            )
        components.append((lam, comp))
        recombined = recombined + comp
    if recombined != v:
        raise NotSigmaEigenvector("eigencomponents failed to recombine to the input")
    return components


# -- distinguished top-level vectors ----------------------------------------


def eta(context: ModuleContext) -> FockVector:
    """Alternating sum of the top states; killed by f'(0), weight -i for h'(0)."""
    terms = {
        _mono((), j): Fraction((-1) ** j) for j in range(context.i + 1)
    }
    return FockVector(context, Basis.CHEVALLEY, terms)


def primed_top_basis(context: ModuleContext) -> list[FockVector]:
    """The h'(0)-eigenbasis e'(0)^m eta of the top space, eigenvalues -i+2m."""
    out = [eta(context)]
    for _ in range(context.i):
        out.append(act(sl2.ep(), 0, out[-1]))
    return out


# -- rendering ---------------------------------------------------------------


def format_scalar(c: Scalar) -> str:
    return str(c)


def format_vector(v: FockVector) -> str:
    """Canonical text form; parsed back exactly by the literal parser."""
    if v.is_zero:
        return "0"
    parts = []
    for idx, (mono, c) in enumerate(v.sorted_terms()):
        names = sl2.GEN_NAMES[v.basis]
        word = "".join(f"{names[Gen(g)]}({m})" for g, m in mono.factors)
        body = f"{word}|{v.context.i},{mono.top}>"
        mag = abs(c)
        coeff = "" if mag == 1 else f"{mag}*"
        if idx == 0:
            parts.append(("-" if c < 0 else "") + coeff + body)
        else:
            parts.append((" - " if c < 0 else " + ") + coeff + body)
    return "".join(parts)
