"""Seeded random generation and exact linear spaces of hom elements.

Everything here is deterministic given the seed (``random.Random``,
whose algorithm is stable across platforms).  Morphism and graded-hom
spaces are computed exactly: entries are expanded over a finite field
basis of the backend (all of it when the backend is finite
dimensional, a degree-truncated slice otherwise) and the defining
squares become one field-linear system whose kernel is the space.
Sampling a random element means drawing a random combination of the
kernel basis, so samples are valid by construction and re-checked by
the callers' verifiers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import linalg
from .context import Context, MatrixMap, compose
from .dg import GradedHom, graded_to_homotopy, zero_graded
from .errors import UnsupportedOperation
from .factorization import (
    FactMorphism,
    FactorizationD,
    boundary_of_homotopy,
    cone,
    direct_sum,
    identity_morphism,
    make_factorization,
    morphism,
    scalar_morphism,
    suspend,
    trivial_factorization,
    unsuspend,
    zero_morphism,
)
from .fdalg import FDAlgebra
from .rings import QuotientRing


# -- random backend elements -------------------------------------------


def random_poly(rng: random.Random, ring: QuotientRing, max_degree=2, max_terms=3):
    amb = ring.amb
    p = amb.zero()
    for _ in range(rng.randint(0, max_terms)):
        mon = tuple(rng.randint(0, max_degree) for _ in range(amb.nvars))
        if sum(mon) > max_degree:
            mon = tuple(0 for _ in mon)
        if amb.field.char:
            c = rng.randrange(amb.field.char)
        else:
            c = rng.randint(-5, 5)
        p = p + amb.monomial(mon, c)
    return ring.nf(p)


def random_element(rng: random.Random, backend, max_degree=2, max_terms=3):
    if isinstance(backend, QuotientRing):
        return random_poly(rng, backend, max_degree, max_terms)
    span = backend.field.char or 11
    return tuple(
        backend.field.from_fraction(__import__("fractions").Fraction(rng.randrange(span)))
        for _ in range(backend.dim)
    )


# -- field bases of backend slices --------------------------------------


def element_basis(backend, cap: int | None):
    """Basis elements spanning (a slice of) the backend over its field.

    Rings: standard monomials, all of them when the quotient is finite
    dimensional, else up to total degree ``cap``.  Algebras: the whole
    basis.  Returns (elements, encode) where encode maps an element to
    its coordinate list and raises KeyError outside the span.
    """
    if isinstance(backend, FDAlgebra):
        elems = [backend.basis(i) for i in range(backend.dim)]

        def encode(a):
            return list(a)

        return elems, encode
    mons = backend.standard_monomials()
    if mons is None:
        if cap is None:
            raise UnsupportedOperation("infinite-dimensional ring needs a degree cap")
        mons = backend.standard_monomials(max_degree=cap)
    amb = backend.amb
    index = {m: i for i, m in enumerate(mons)}
    elems = [amb.monomial(m) for m in mons]

    def encode(p):
        out = [amb.field.zero] * len(mons)
        for mon, c in p.terms:
            out[index[mon]] = c  # KeyError = outside the slice
        return out

    return elems, encode


class GradedSpace:
    """The degree-n hom space between two factorizations, coordinatized.

    ``valid_basis`` solves the double-square constraints,
    ``cycle_basis`` (degree 0) the single squares.  Both return actual
    graded elements; ``encode`` expresses any well-shaped element in
    the same coordinates, so images of the differential can be ranked
    against cycles.
    """

    def __init__(self, X: FactorizationD, Y: FactorizationD, degree: int, cap: int | None = None):
        self.X, self.Y, self.degree = X, Y, degree
        backend = X.ctx.backend
        self.backend = backend
        self.field = backend.field if isinstance(backend, FDAlgebra) else backend.amb.field
        self.base_elems, self._encode_elem = element_basis(backend, cap)
        self.shapes = [
            (X.objects[i - 1], Y.obj_at(i + degree)) for i in range(1, X.d + 1)
        ]
        self.layout = []
        for k, (src, tgt) in enumerate(self.shapes):
            for r in range(tgt.rank):
                for c in range(src.rank):
                    for b in range(len(self.base_elems)):
                        self.layout.append((k, r, c, b))
        self._valid = None
        self._cycles = None

    @property
    def dim_ambient(self):
        return len(self.layout)

    def decode(self, vec) -> GradedHom:
        comps = []
        pos = 0
        nb = len(self.base_elems)
        backend = self.backend
        for src, tgt in self.shapes:
            rows = []
            for r in range(tgt.rank):
                row = []
                for c in range(src.rank):
                    acc = backend.zero()
                    for b in range(nb):
                        coeff = vec[pos]
                        pos += 1
                        if coeff != self.field.zero:
                            acc = backend.add(acc, backend.scale(self.base_elems[b], coeff))
                    row.append(acc)
                rows.append(row)
            comps.append(MatrixMap.make(self.X.ctx, src, tgt, rows))
        return GradedHom(self.X, self.Y, self.degree, tuple(comps))

    def encode(self, gh: GradedHom):
        out = []
        for comp, (src, tgt) in zip(gh.components, self.shapes):
            for r in range(tgt.rank):
                for c in range(src.rank):
                    out.extend(self._encode_elem(comp.rows[r][c]))
        return out

    def _defect_rows(self, defect_of_elementary):
        """Constraint matrix columns by evaluating on each unknown."""
        rows_index: dict = {}
        cols = []
        for k, r, c, b in self.layout:
            src, tgt = self.shapes[k]
            comps = [
                MatrixMap.zero(self.X.ctx, s, t) for s, t in self.shapes
            ]
            grid = [[self.backend.zero()] * src.rank for _ in range(tgt.rank)]
            grid[r][c] = self.base_elems[b]
            comps[k] = MatrixMap.make(self.X.ctx, src, tgt, grid)
            elem = GradedHom(self.X, self.Y, self.degree, tuple(comps))
            col: dict = {}
            for block, mat in enumerate(defect_of_elementary(elem)):
                for i, row in enumerate(mat.rows):
                    for j, entry in enumerate(row):
                        if self.backend.is_zero(entry):
                            continue
                        if isinstance(self.backend, FDAlgebra):
                            items = [(t, cf) for t, cf in enumerate(entry) if cf != self.field.zero]
                        else:
                            items = list(entry.terms)
                        for unit, cf in items:
                            key = (block, i, j, unit)
                            idx = rows_index.setdefault(key, len(rows_index))
                            col[idx] = self.field.add(col.get(idx, self.field.zero), cf)
            cols.append(col)
        nrows = len(rows_index)
        mat = [[self.field.zero] * len(cols) for _ in range(nrows)]
        for jcol, col in enumerate(cols):
            for irow, cf in col.items():
                mat[irow][jcol] = cf
        return mat

    def _dg_defect(self, elem: GradedHom):
        X, Y, n = self.X, self.Y, self.degree
        out = []
        for i in range(1, X.d + 1):
            lhs = compose(elem.comp_at(i + 2), compose(X.map_at(i + 1), X.map_at(i)))
            rhs = compose(compose(Y.map_at(i + n + 1), Y.map_at(i + n)), elem.comp_at(i))
            out.append(lhs - rhs)
        return out

    def _square_defect(self, elem: GradedHom):
        X, Y = self.X, self.Y
        out = []
        for i in range(1, X.d + 1):
            lhs = compose(Y.map_at(i + self.degree), elem.comp_at(i))
            rhs = compose(elem.comp_at(i + 1), X.map_at(i))
            out.append(lhs - rhs)
        return out

    def valid_basis(self):
        if self._valid is None:
            if not self.layout:
                self._valid = []
            else:
                mat = self._defect_rows(self._dg_defect)
                kern = (
                    linalg.kernel_basis(mat, self.field)
                    if mat
                    else linalg.kernel_basis([[self.field.zero] * len(self.layout)], self.field)
                )
                self._valid = [self.decode(v) for v in kern]
        return self._valid

    def cycle_basis(self):
        if self.degree != 0:
            raise ValueError("cycles are a degree-0 notion here")
        if self._cycles is None:
            if not self.layout:
                self._cycles = []
            else:
                mat = self._defect_rows(self._square_defect)
                kern = (
                    linalg.kernel_basis(mat, self.field)
                    if mat
                    else linalg.kernel_basis([[self.field.zero] * len(self.layout)], self.field)
                )
                self._cycles = [self.decode(v) for v in kern]
        return self._cycles


_SPACE_CACHE: dict = {}


def graded_space(X, Y, degree, cap=None) -> GradedSpace:
    key = (id(X), id(Y), degree, cap)
    space = _SPACE_CACHE.get(key)
    if space is None or space.X is not X or space.Y is not Y:
        space = GradedSpace(X, Y, degree, cap)
        _SPACE_CACHE[key] = space
    return space


def morphism_space_basis(X, Y, cap=2):
    """Basis of the space of morphisms X -> Y (bounded degree slice)."""
    space = graded_space(X, Y, 0, _cap_for(X, cap))
    return [FactMorphism(X, Y, gh.components) for gh in space.cycle_basis()]


def _cap_for(X, cap):
    backend = X.ctx.backend
    if isinstance(backend, FDAlgebra):
        return None
    return None if backend.standard_monomials() is not None else cap


def random_morphism(rng: random.Random, X, Y, cap=2) -> FactMorphism:
    """Random element of the (degree-capped) morphism space; verified."""
    basis = morphism_space_basis(X, Y, cap)
    phi = zero_morphism(X, Y)
    if not basis:
        return phi
    span = X.ctx.backend.field.char if isinstance(X.ctx.backend, FDAlgebra) else X.ctx.backend.amb.field.char
    span = span or 7
    for elem in basis:
        c = rng.randrange(span)
        if c:
            scaled = FactMorphism(X, Y, tuple(_scale_map(m, c) for m in elem.components))
            phi = phi + scaled
    return morphism(X, Y, phi.components)


def _scale_map(m: MatrixMap, c):
    backend = m.ctx.backend
    rows = [[backend.scale(e, c) for e in row] for row in m.rows]
    return MatrixMap.make(m.ctx, m.source, m.target, rows)


def random_graded(rng: random.Random, X, Y, degree, cap=2) -> GradedHom:
    """Random dg-valid element of the given degree."""
    space = graded_space(X, Y, degree, _cap_for(X, cap))
    basis = space.valid_basis()
    out = zero_graded(X, Y, degree)
    span = (space.field.char or 7)
    for elem in basis:
        c = rng.randrange(span)
        if c:
            out = out + GradedHom(
                X, Y, degree, tuple(_scale_map(m, c) for m in elem.components)
            )
    return out


def random_homotopy_pair(rng: random.Random, phi: FactMorphism, cap=2):
    """(phi, phi + boundary(s), witness): a homotopic pair.

    The returned witness is -s, since the convention reads
    phi - phi2 = boundary(witness)."""
    t = random_graded(rng, phi.source, phi.target, -1, cap)
    s = graded_to_homotopy(t)
    phi2 = phi + boundary_of_homotopy(s)
    return phi, phi2, -s


# -- pools of random factorizations --------------------------------------


@dataclass
class FixturePool:
    ctx: Context
    d: int
    seeds: list
    max_rank: int = 8

    def __post_init__(self):
        self.seeds = list(self.seeds)
        self.seeds.append(trivial_factorization(self.ctx, self.d, rank=1))

    def random_factorization(self, rng: random.Random, steps: int = 2) -> FactorizationD:
        X = rng.choice(self.seeds)
        for _ in range(steps):
            op = rng.choice(("sum", "suspend", "unsuspend", "cone_id", "cone_scalar", "keep"))
            if op == "sum":
                other = rng.choice(self.seeds)
                if X.total_rank + other.total_rank <= self.max_rank:
                    X = direct_sum(X, other)
            elif op == "suspend":
                X = suspend(X)
            elif op == "unsuspend":
                X = unsuspend(X)
            elif op == "cone_id" and 2 * X.total_rank <= self.max_rank:
                X = cone(identity_morphism(X)).cone
            elif op == "cone_scalar" and 2 * X.total_rank <= self.max_rank:
                elem = random_element(rng, self.ctx.backend, max_degree=1, max_terms=1)
                phi = scalar_morphism(X, elem)
                from .factorization import is_morphism

                if is_morphism(phi).ok:
                    X = cone(phi).cone
        return X


def seeds_for_ring_fixture(ctx: Context, d: int):
    """Known splittings for the workhorse contexts over F_7[x,y].

    Unknown contexts just get the trivial seeds that FixturePool adds.
    """
    backend = ctx.backend
    if not isinstance(backend, QuotientRing):
        return []
    from .context import FreeObj

    amb = backend.amb
    w = ctx.eta
    seeds = []

    def fact_from_strings(matrices):
        objects = [FreeObj.of(len(m[0])) for m in matrices]
        maps = []
        for i, m in enumerate(matrices):
            src = objects[i]
            tgt = objects[i + 1] if i < d - 1 else objects[0].twist(1)
            maps.append(MatrixMap.from_strings(ctx, src, tgt, m))
        return make_factorization(ctx, d, objects, maps)

    try:
        if w == backend.parse("x*y"):
            if d == 2:
                seeds = [fact_from_strings([[["x"]], [["y"]]]),
                         fact_from_strings([[["y"]], [["x"]]])]
            elif d == 4:
                seeds = [fact_from_strings([[["x"]], [["y"]], [["1"]], [["1"]]]),
                         fact_from_strings([[["1"]], [["x"]], [["1"]], [["y"]]])]
        elif w == backend.parse("x^2 + y^2"):
            pair = [[["x", "y"], ["-y", "x"]], [["x", "-y"], ["y", "x"]]]
            if d == 2:
                seeds = [fact_from_strings(pair)]
            elif d == 4:
                ident = [["1", "0"], ["0", "1"]]
                seeds = [fact_from_strings([pair[0], pair[1], ident, ident])]
        elif w == backend.parse("x^4"):
            if d == 2:
                seeds = [fact_from_strings([[["x"]], [["x^3"]]]),
                         fact_from_strings([[["x^2"]], [["x^2"]]])]
            elif d == 4:
                seeds = [fact_from_strings([[["x"]], [["x"]], [["x"]], [["x"]]])]
    except Exception:
        seeds = []
    return seeds


def make_pool(ctx: Context, d: int, extra_seeds=(), max_rank: int = 8) -> FixturePool:
    return FixturePool(ctx, d, seeds_for_ring_fixture(ctx, d) + list(extra_seeds), max_rank)
