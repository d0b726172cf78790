"""The graded hom complex between two factorizations.

Degree-n elements are d-tuples of maps phi_i: M_i -> N_{i+n} subject
to the double-square condition; the differential is
``g . phi + (-1)^(n+1) phi . f`` and squares to zero on elements that
satisfy it.  Degree-0 cycles are exactly the morphisms, and degree
-1 elements map onto homotopy witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass

from .context import MatrixMap, compose
from .errors import ShapeMismatch, UnsupportedOperation
from .factorization import FactMorphism, FactorizationD, Homotopy, _wrap
from .fdalg import FDAlgebra
from .rings import QuotientRing


@dataclass(frozen=True)
class GradedHom:
    source: FactorizationD
    target: FactorizationD
    degree: int
    components: tuple

    def comp_at(self, m: int) -> MatrixMap:
        q, r = _wrap(m, self.source.d)
        return self.components[r - 1].twisted(q)

    def __add__(self, other: "GradedHom") -> "GradedHom":
        if (self.source, self.target, self.degree) != (
            other.source,
            other.target,
            other.degree,
        ):
            raise ShapeMismatch("graded elements not parallel")
        return GradedHom(
            self.source,
            self.target,
            self.degree,
            tuple(a + b for a, b in zip(self.components, other.components)),
        )

    def __neg__(self) -> "GradedHom":
        return GradedHom(
            self.source, self.target, self.degree, tuple(-c for c in self.components)
        )

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)


def graded_hom(X: FactorizationD, Y: FactorizationD, degree: int, components) -> GradedHom:
    """Shape-checked construction; the double-square law is dg_check's job."""
    if X.ctx != Y.ctx or X.d != Y.d:
        raise ShapeMismatch("graded hom needs matching context and d")
    components = tuple(components)
    if len(components) != X.d:
        raise ShapeMismatch(f"need {X.d} components")
    for i, c in enumerate(components, start=1):
        if c.source != X.objects[i - 1] or c.target != Y.obj_at(i + degree):
            raise ShapeMismatch(
                f"component {i}: got {c.source}->{c.target}, expected "
                f"{X.objects[i - 1]}->{Y.obj_at(i + degree)}"
            )
    return GradedHom(X, Y, degree, components)


def zero_graded(X: FactorizationD, Y: FactorizationD, degree: int) -> GradedHom:
    comps = [
        MatrixMap.zero(X.ctx, X.objects[i - 1], Y.obj_at(i + degree))
        for i in range(1, X.d + 1)
    ]
    return GradedHom(X, Y, degree, tuple(comps))


def dg_check(phi: GradedHom) -> bool:
    """Every double square commutes (indices modulo d through twists)."""
    X, Y, n = phi.source, phi.target, phi.degree
    for i in range(1, X.d + 1):
        lhs = compose(phi.comp_at(i + 2), compose(X.map_at(i + 1), X.map_at(i)))
        rhs = compose(compose(Y.map_at(i + n + 1), Y.map_at(i + n)), phi.comp_at(i))
        if lhs != rhs:
            return False
    return True


def dg_differential(phi: GradedHom) -> GradedHom:
    """g . phi + (-1)^(n+1) phi . f, one degree up."""
    X, Y, n = phi.source, phi.target, phi.degree
    sign = 1 if (n + 1) % 2 == 0 else -1
    comps = []
    for i in range(1, X.d + 1):
        term1 = compose(Y.map_at(i + n), phi.comp_at(i))
        term2 = compose(phi.comp_at(i + 1), X.map_at(i))
        comps.append(term1 + term2 if sign > 0 else term1 - term2)
    return GradedHom(X, Y, n + 1, tuple(comps))


def morphism_to_graded(phi: FactMorphism) -> GradedHom:
    return GradedHom(phi.source, phi.target, 0, phi.components)


def graded_to_morphism(phi: GradedHom) -> FactMorphism:
    if phi.degree != 0:
        raise ShapeMismatch("only degree-0 elements are morphisms")
    return FactMorphism(phi.source, phi.target, phi.components)


def homotopy_to_graded(s: Homotopy) -> GradedHom:
    """s_i: M_{i+1} -> N_i repackaged as a degree -1 element."""
    d = s.source.d
    comps = [s.comp_at(i - 1) for i in range(1, d + 1)]
    return GradedHom(s.source, s.target, -1, tuple(comps))


def graded_to_homotopy(t: GradedHom) -> Homotopy:
    if t.degree != -1:
        raise ShapeMismatch("homotopies are degree -1 elements")
    d = t.source.d
    comps = [t.comp_at(i + 1) for i in range(1, d + 1)]
    return Homotopy(t.source, t.target, tuple(comps))


def is_cycle(phi: GradedHom) -> bool:
    return dg_differential(phi).is_zero


def h0_dimension(X: FactorizationD, Y: FactorizationD) -> int:
    """dim over the field of degree-0 cohomology: morphisms modulo
    boundaries of valid degree -1 elements.

    Requires a backend of finite field dimension (an FD algebra, or a
    quotient ring with finitely many standard monomials); otherwise
    UNSUPPORTED.
    """
    backend = X.ctx.backend
    if isinstance(backend, QuotientRing):
        if backend.standard_monomials() is None:
            raise UnsupportedOperation(
                "H^0 needs a quotient ring of finite field dimension"
            )
    elif not isinstance(backend, FDAlgebra):
        raise UnsupportedOperation("H^0 needs a finite-dimensional backend")

    from . import linalg, sampling

    field = backend.field if isinstance(backend, FDAlgebra) else backend.amb.field
    space0 = sampling.graded_space(X, Y, 0, None)
    z0 = space0.cycle_basis()
    if not z0:
        return 0
    vminus1 = sampling.graded_space(X, Y, -1, None).valid_basis()
    if not vminus1:
        return len(z0)
    boundary_rows = [space0.encode(dg_differential(t)) for t in vminus1]
    return len(z0) - linalg.rank(boundary_rows, field)
