"""Contravariant form, graded Gram blocks, and reduction to the simple quotient.

The maximal submodule of each highest-weight module is recovered degree by
degree as the radical of the contravariant form, so equality in the simple
quotient is decided by exact linear algebra on one graded piece at a time.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, lcm

from . import sl2
from .errors import ContextMismatch, InhomogeneousVector
from .fock import (
    FockVector,
    ModuleContext,
    Monomial,
    Terms,
    _merge,
    _mono,
    convert_vector,
)
from .sl2 import Basis, Gen, Scalar

# theta swaps the raising and lowering symbols and negates modes; the same
# swap works in both bases because the change of basis commutes with it.
_THETA = {int(Gen.H): int(Gen.H), int(Gen.E): int(Gen.F), int(Gen.F): int(Gen.E)}

_WEIGHT = {int(Gen.H): 0, int(Gen.E): 2, int(Gen.F): -2}


def _mono_weight(ctx: ModuleContext, mono: Monomial) -> int:
    return ctx.i - 2 * mono.top + sum(_WEIGHT[g] for g, _ in mono.factors)


def _pair_mono(ctx: ModuleContext, vmono: Monomial, wmono: Monomial) -> Scalar:
    """Pairing of two standard-basis canonical monomials."""
    if vmono.degree != wmono.degree:
        return Fraction(0)
    if _mono_weight(ctx, vmono) != _mono_weight(ctx, wmono):
        return Fraction(0)
    key = (vmono, wmono) if vmono.sort_key() <= wmono.sort_key() else (wmono, vmono)
    cache = ctx.cache("pairing")
    got = cache.get(key)
    if got is not None:
        return got
    vm, wm = key
    if not vm.factors:
        # two top states
        out = Fraction(comb(ctx.i, vm.top)) if vm.top == wm.top else Fraction(0)
    else:
        g, m = vm.factors[0]
        rest = _mono(vm.factors[1:], vm.top)
        moved = ctx.act_gen(Basis.CHEVALLEY, _THETA[g], -m, wm)
        out = Fraction(0)
        for mono2, c2 in moved.items():
            out += c2 * _pair_mono(ctx, rest, mono2)
    cache[key] = out
    return out


def contravariant_pairing(u: FockVector, v: FockVector) -> Scalar:
    """Exact value of the contravariant form; symmetric, graded, bilinear."""
    if u.context is not v.context:
        raise ContextMismatch(
            f"pairing needs a common context, got {u.context} and {v.context}"
        )
    u = convert_vector(u, Basis.CHEVALLEY)
    v = convert_vector(v, Basis.CHEVALLEY)
    total = Fraction(0)
    for um, cu in u.terms.items():
        for wm, cw in v.terms.items():
            if um.degree == wm.degree:
                total += cu * cw * _pair_mono(u.context, um, wm)
    return total


class GramBlock:
    """Pairing matrix of one graded piece, on the canonical monomial basis."""

    def __init__(self, context, degree, basis, matrix):
        self.context = context
        self.degree = degree
        self.basis = basis
        self.matrix = matrix

    def __repr__(self):
        n = len(self.basis)
        return f"GramBlock(k={self.context.k}, i={self.context.i}, degree={self.degree}, size={n})"

    def rank(self) -> int:
        return len(self.basis) - len(_nullspace(self.matrix))


def gram_block(context: ModuleContext, d: int) -> GramBlock:
    context._check_cap(d)
    cache = context.cache("gram")
    got = cache.get(d)
    if got is not None:
        return got
    monos = context.monomials(d)
    index = {m: x for x, m in enumerate(monos)}
    n = len(monos)
    matrix = [[Fraction(0)] * n for _ in range(n)]
    for block in _weight_blocks(context, monos).values():
        for a in range(len(block)):
            for b in range(a, len(block)):
                val = _pair_mono(context, block[a], block[b])
                xa, xb = index[block[a]], index[block[b]]
                matrix[xa][xb] = val
                matrix[xb][xa] = val
    out = GramBlock(context, d, list(monos), matrix)
    cache[d] = out
    return out


def _weight_blocks(ctx, monos):
    blocks: dict[int, list[Monomial]] = {}
    for m in monos:
        blocks.setdefault(_mono_weight(ctx, m), []).append(m)
    return blocks


# -- exact nullspace ---------------------------------------------------------


def _nullspace(matrix):
    """Nullspace basis of an exact rational matrix.

    Rows are scaled to integers and brought to echelon form with the
    fraction-free one-step elimination (every interior division is exact),
    then the free columns are back-substituted.
    """
    nrows = len(matrix)
    if nrows == 0:
        return []
    ncols = len(matrix[0])
    rows = []
    for row in matrix:
        scale = lcm(*(c.denominator for c in row)) if row else 1
        rows.append([int(c * scale) for c in row])
    pivots = []  # (row, col)
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((x for x in range(r, nrows) if rows[x][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        for x in range(r + 1, nrows):
            rows[x] = [
                (piv * rows[x][y] - rows[x][c] * rows[r][y]) // prev
                for y in range(ncols)
            ]
        prev = piv
        pivots.append((r, c))
        r += 1
    pivot_cols = {c for _, c in pivots}
    basis = []
    for fc in (c for c in range(ncols) if c not in pivot_cols):
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for pr, pc in reversed(pivots):
            s = sum(rows[pr][y] * vec[y] for y in range(pc + 1, ncols))
            vec[pc] = Fraction(-s, rows[pr][pc])
        basis.append(vec)
    return basis


def _rref(vectors):
    """Reduce a list of coordinate vectors to canonical reduced echelon form."""
    rows = [list(v) for v in vectors]
    ncols = len(rows[0]) if rows else 0
    out = []
    r = 0
    for c in range(ncols):
        pr = next((x for x in range(r, len(rows)) if rows[x][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [inv * y for y in rows[r]]
        for x in range(len(rows)):
            if x != r and rows[x][c] != 0:
                f = rows[x][c]
                rows[x] = [a - f * b for a, b in zip(rows[x], rows[r])]
        out.append((c, rows[r]))
        r += 1
    return out


# -- the radical and the simple quotient -------------------------------------


def _radical_rows(context: ModuleContext, d: int):
    """Reduced-echelon rows (pivot monomial, vector) spanning the degree-d radical."""
    context._check_cap(d)
    cache = context.cache("radical")
    got = cache.get(d)
    if got is not None:
        return got
    monos = context.monomials(d)
    coords = []
    for block in _weight_blocks(context, monos).values():
        size = len(block)
        gram = [
            [_pair_mono(context, block[a], block[b]) for b in range(size)]
            for a in range(size)
        ]
        for vec in _nullspace(gram):
            full = {block[x]: c for x, c in zip(range(size), vec) if c}
            coords.append([full.get(m, Fraction(0)) for m in monos])
    rows = []
    for c, vec in _rref(coords):
        terms: Terms = {m: x for m, x in zip(monos, vec) if x}
        rows.append((monos[c], FockVector(context, Basis.CHEVALLEY, terms)))
    rows.sort(key=lambda pv: pv[0].sort_key())
    cache[d] = rows
    return rows


def radical_basis(context: ModuleContext, d: int) -> list[FockVector]:
    """Basis of the degree-d radical, i.e. the maximal submodule's graded piece.

    Rows come back in reduced echelon form against the canonical monomial
    order, which is what makes reduce_mod_max a canonical representative map.
    """
    return [v for _, v in _radical_rows(context, d)]


def reduce_mod_max(v: FockVector) -> FockVector:
    """Canonical representative of v modulo the maximal submodule."""
    if v.is_zero:
        return v
    d = v.grade()  # raises on inhomogeneous input
    ctx = v.context
    basis = v.basis
    v = convert_vector(v, Basis.CHEVALLEY)
    for pivot, row in _radical_rows(ctx, d):
        c = v.coefficient(pivot)
        if c:
            v = v - c * row
    return convert_vector(v, basis)


def reduce_components(v: FockVector) -> FockVector:
    """reduce_mod_max applied degree by degree; accepts inhomogeneous input."""
    out = v.context.zero(v.basis)
    for d in v.degrees():
        out = out + reduce_mod_max(v.component(d))
    return out


def is_zero_in_simple(v: FockVector) -> bool:
    """Whether v lies in the maximal submodule, by orthogonality.

    The vector vanishes in the simple quotient exactly when it pairs to zero
    with every canonical monomial of its degree, which avoids building the
    radical at degrees where only a membership test is needed.
    """
    if v.is_zero:
        return True
    d = v.grade()
    ctx = v.context
    v = convert_vector(v, Basis.CHEVALLEY)
    weights = {_mono_weight(ctx, m) for m in v.terms}
    for mono in ctx.monomials(d):
        if _mono_weight(ctx, mono) not in weights:
            continue
        total = Fraction(0)
        for vm, cv in v.terms.items():
            total += cv * _pair_mono(ctx, vm, mono)
        if total:
            return False
    return True


def equal_in_simple(v: FockVector, w: FockVector) -> bool:
    """Equality in the simple quotient; inhomogeneous vectors compared piecewise."""
    if v.basis is not w.basis:
        w = convert_vector(w, v.basis)
    diff = v - w
    if diff.is_zero:
        return True
    return all(is_zero_in_simple(diff.component(d)) for d in diff.degrees())
