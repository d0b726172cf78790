"""From factorizations to periodic complexes and back.

The sequence functor unrolls a factorization into a finite window of
its doubly infinite periodic sequence; reduction modulo a central
element lands in d-complexes over the quotient and is certified by the
factors-through witness.  Windowed exactness (kernels equal images,
decided by syzygies), duals, total acyclicity, End rings of cyclic
modules via colon ideals, and instance-level faithful/full checks of
the reduction functor all live here.

Downstairs objects are modelled two ways at once: as a
:class:`ComplexWindow` (the external, positional surface) and as a
factorization over the quotient context with zero eta (the periodic
model every homotopy decision runs on, so window size never affects a
verdict).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .context import Context, FreeObj, MatrixMap, compose, compose_chain
from .errors import HypothesesUnmet, ShapeMismatch, UnsupportedOperation
from .factorization import (
    FactMorphism,
    FactorizationD,
    Homotopy,
    NotHomotopic,
    homotopy_decide,
    is_morphism,
    make_factorization,
    morphism,
    verify_witness,
    zero_morphism,
)
from .fdalg import CentralElement, FDAlgebra, quotient_by_central
from .modgb import (
    LinearSolution,
    colon_ideal,
    is_regular,
    matrix_kernel,
    membership_lift,
    solve_linear,
)
from .rings import Ideal, Poly, QuotientRing


# -- end rings of cyclic modules ----------------------------------------


@dataclass(frozen=True)
class EndRingPresentation:
    """Endomorphisms of the cyclic module R*g, presented as a quotient.

    gamma = ambient/(0 : g); the defining ideal is the reduced basis
    of the colon, which contains the relations of R itself.
    """

    ring: QuotientRing
    element: Poly
    gamma: QuotientRing
    colon_basis: tuple

    def scalar_image(self, p: Poly) -> Poly:
        """The image of an ambient scalar in the presented End ring."""
        return self.gamma.nf(p)

    def induced_context(self, u) -> Context:
        """Context over gamma with eta = multiplication by the image of u."""
        u = self.gamma.nf(u if isinstance(u, Poly) else self.gamma.amb.poly(u))
        return Context(self.gamma, eta=u)


def end_ring_cyclic(R: QuotientRing, g: Poly, deadline: float | None = None) -> EndRingPresentation:
    g = R.nf(g)
    if g.is_zero:
        raise ValueError("cyclic generator must be nonzero in the ring")
    basis, _certs = colon_ideal([], g, R, deadline=deadline)
    gamma = QuotientRing(R.amb, Ideal(R.amb, list(basis)))
    return EndRingPresentation(R, g, gamma, tuple(basis))


# -- windows -------------------------------------------------------------


@dataclass(frozen=True)
class ComplexWindow:
    """Finite window of a d-periodic sequence of matrices.

    ``maps[k]`` sends position lo+k to position lo+k+1.  ``nilpotency``
    is the degree t whose t-fold adjacent compositions vanish (t = d
    for reductions; None for raw sequences).
    """

    ctx: Context
    lo: int
    hi: int
    maps: tuple
    period: int
    nilpotency: int | None = None

    def map_at(self, p: int) -> MatrixMap:
        if not self.lo <= p < self.hi:
            raise IndexError(f"position {p} outside window [{self.lo}, {self.hi})")
        return self.maps[p - self.lo]

    @property
    def backend(self):
        return self.ctx.backend

    def validate(self) -> "ComplexWindow":
        for k in range(len(self.maps) - 1):
            if self.maps[k].target != self.maps[k + 1].source:
                raise ShapeMismatch(f"window breaks between positions {self.lo+k} and {self.lo+k+1}")
        for k in range(len(self.maps) - self.period):
            if self.maps[k + self.period] != self.maps[k].twisted(1):
                raise ShapeMismatch(f"window is not {self.period}-periodic at offset {k}")
        if self.nilpotency is not None:
            t = self.nilpotency
            for k in range(len(self.maps) - t + 1):
                comp = compose_chain(self.maps[k : k + t])
                if not comp.is_zero:
                    raise ShapeMismatch(
                        f"{t}-fold composition at position {self.lo+k} is nonzero"
                    )
        return self


def window_from_factorization(X: FactorizationD, ctx, lo: int, hi: int, nilpotency):
    """Unroll positions lo..hi; position p carries X's map at index p+1."""
    maps = []
    backend = ctx.backend
    for p in range(lo, hi):
        m = X.map_at(p + 1)
        if ctx is X.ctx:
            maps.append(m)
        else:
            rows = [[_transport(backend, X.ctx.backend, e) for e in row] for row in m.rows]
            maps.append(MatrixMap.make(ctx, m.source, m.target, rows))
    return ComplexWindow(
        ctx=ctx, lo=lo, hi=hi, maps=tuple(maps), period=X.d, nilpotency=nilpotency
    ).validate()


def _transport(target_backend, source_backend, entry):
    if isinstance(target_backend, QuotientRing):
        return target_backend.nf(entry)
    raise TypeError("entry transport only defined for ring quotients here")


def to_sequence(X: FactorizationD, length: int | None = None) -> ComplexWindow:
    """The sequence functor: unroll, matrices unchanged, no nilpotency."""
    if not isinstance(X.ctx.backend, QuotientRing):
        raise UnsupportedOperation("sequence unrolling expects a commutative backend")
    length = length if length is not None else 4 * X.d
    if length < 2 * X.d:
        raise ValueError(f"window length {length} is below 2*d")
    half = length // 2
    return window_from_factorization(X, X.ctx, -half, length - half, None)


@dataclass(frozen=True)
class Reduction:
    """Reduction mod f: the window, its periodic model, and the
    factors-through certificate eta = h*f."""

    window: ComplexWindow
    downstairs: FactorizationD
    h: object
    f: object


def _reduce_ring(X: FactorizationD, f: Poly, length: int, deadline) -> Reduction:
    ring: QuotientRing = X.ctx.backend
    f = ring.nf(f)
    if f.is_zero:
        raise HypothesesUnmet("cannot reduce modulo zero")
    outcome = solve_linear([(f,)], [X.ctx.eta], ring, deadline=deadline)
    if not isinstance(outcome, LinearSolution):
        raise HypothesesUnmet(
            "eta does not factor through f (membership certificate not found)"
        )
    h = outcome.solution[0]
    rbar = ring.extend_ideal([f])
    ctx_bar = Context(rbar, eta=rbar.nf(X.ctx.eta))
    assert ctx_bar.eta_is_zero, "eta must die in the quotient by f"
    maps = []
    for m in X.maps:
        rows = [[rbar.nf(e) for e in row] for row in m.rows]
        maps.append(MatrixMap.make(ctx_bar, m.source, m.target, rows))
    downstairs = make_factorization(ctx_bar, X.d, X.objects, maps)
    half = length // 2
    window = window_from_factorization(downstairs, ctx_bar, -half, length - half, X.d)
    return Reduction(window, downstairs, h, f)


def _reduce_algebra(X: FactorizationD, f, length: int) -> Reduction:
    alg: FDAlgebra = X.ctx.backend
    f = alg.canon(f)
    if alg.is_zero(f):
        raise HypothesesUnmet("cannot reduce modulo zero")
    # certify eta = f*h for some h: left multiplication by f, solved exactly
    mat = alg.left_mult_matrix(f)
    h, cert = linalg.solve(mat, list(X.ctx.eta), alg.field)
    if cert is not None:
        raise HypothesesUnmet("eta does not factor through f over the algebra")
    A, proj = quotient_by_central(alg, CentralElement(alg, f), nu=X.ctx.twist)
    ctx_bar = Context(A, eta=A.zero())
    maps = []
    for m in X.maps:
        rows = [[proj.apply(e) for e in row] for row in m.rows]
        maps.append(MatrixMap.make(ctx_bar, m.source, m.target, rows))
    downstairs = make_factorization(ctx_bar, X.d, X.objects, maps)
    half = length // 2
    window = ComplexWindow(
        ctx=ctx_bar,
        lo=-half,
        hi=length - half,
        maps=tuple(downstairs.map_at(p + 1) for p in range(-half, length - half)),
        period=X.d,
        nilpotency=X.d,
    ).validate()
    return Reduction(window, downstairs, tuple(h), f)


def reduce_full(X: FactorizationD, f, length: int | None = None, deadline=None) -> Reduction:
    length = length if length is not None else 4 * X.d
    if length < 2 * X.d:
        raise ValueError(f"window length {length} is below 2*d")
    if isinstance(X.ctx.backend, QuotientRing):
        return _reduce_ring(X, f, length, deadline)
    return _reduce_algebra(X, f, length)


def reduce_mod_f(X: FactorizationD, f, length: int | None = None, deadline=None) -> ComplexWindow:
    return reduce_full(X, f, length, deadline).window


def reduce_morphism(theta: FactMorphism, red_src: Reduction, red_tgt: Reduction) -> FactMorphism:
    """Image of a morphism under the reduction functor (periodic model)."""
    ctx_bar = red_src.downstairs.ctx
    backend = ctx_bar.backend
    comps = []
    for m in theta.components:
        if isinstance(backend, QuotientRing):
            rows = [[backend.nf(e) for e in row] for row in m.rows]
        else:
            raise UnsupportedOperation("morphism reduction implemented for ring backends")
        comps.append(MatrixMap.make(ctx_bar, m.source, m.target, rows))
    return morphism(red_src.downstairs, red_tgt.downstairs, comps)


# -- exactness ------------------------------------------------------------


@dataclass(frozen=True)
class ExactnessReport:
    ok: bool
    failing_position: int | None = None
    detail: str = ""
    witness: tuple | None = None
    certificate: object = None

    def __bool__(self):
        return self.ok


def window_exact(C: ComplexWindow, deadline=None) -> ExactnessReport:
    """Kernel equals image at every interior position.

    Ring backends: kernels from syzygies, membership by certified
    linear solving.  Algebra backends: exact field linear algebra.
    Only ordinary complexes (nilpotency 2) have an exactness notion
    here; other nilpotencies are rejected.  A negative verdict carries
    the kernel element outside the image together with the solver's
    no-solution certificate.
    """
    if C.nilpotency != 2:
        raise HypothesesUnmet("exactness is defined for nilpotency-2 windows only")
    backend = C.backend
    for p in range(C.lo + 1, C.hi):
        incoming = C.map_at(p - 1)
        outgoing = C.map_at(p)
        residual = compose(outgoing, incoming)
        if not residual.is_zero:
            return ExactnessReport(False, p, "composition nonzero", witness=residual.rows)
        if isinstance(backend, QuotientRing):
            ok, witness, cert = _exact_at_ring(incoming, outgoing, backend, deadline)
            if not ok:
                return ExactnessReport(
                    False, p, "kernel not covered by image", witness=witness, certificate=cert
                )
        elif isinstance(backend, FDAlgebra):
            if not _exact_at_algebra(incoming, outgoing, backend):
                return ExactnessReport(False, p, "field ranks disagree")
        else:
            raise UnsupportedOperation("unknown backend")
    return ExactnessReport(True)


def _exact_at_ring(incoming: MatrixMap, outgoing: MatrixMap, ring: QuotientRing, deadline):
    if outgoing.source.rank == 0:
        return True, None, None
    kernel = matrix_kernel([list(r) for r in outgoing.rows], ring, deadline=deadline)
    if incoming.source.rank == 0:
        for v in kernel:
            if not all(ring.nf(e).is_zero for e in v):
                return False, v, None
        return True, None, None
    rows = [list(r) for r in incoming.rows]
    for v in kernel:
        outcome = solve_linear(rows, list(v), ring, deadline=deadline)
        if not isinstance(outcome, LinearSolution):
            return False, v, outcome
    return True, None, None


def _field_matrix_of_map(m: MatrixMap, alg: FDAlgebra):
    """Coordinates of v -> m(v): right multiplication blockwise."""
    d = alg.dim
    rows_out = m.target.rank * d
    cols_out = m.source.rank * d
    out = [[alg.field.zero] * cols_out for _ in range(rows_out)]
    for j in range(m.target.rank):
        for k in range(m.source.rank):
            entry = m.rows[j][k]
            if alg.is_zero(entry):
                continue
            block = alg.right_mult_matrix(entry)
            for r in range(d):
                for c in range(d):
                    out[j * d + r][k * d + c] = alg.field.add(
                        out[j * d + r][k * d + c], block[r][c]
                    )
    return out


def _exact_at_algebra(incoming: MatrixMap, outgoing: MatrixMap, alg: FDAlgebra) -> bool:
    d = alg.dim
    out_mat = _field_matrix_of_map(outgoing, alg)
    in_mat = _field_matrix_of_map(incoming, alg)
    dim_source = outgoing.source.rank * d
    rank_out = linalg.rank(out_mat, alg.field) if out_mat else 0
    rank_in = linalg.rank(in_mat, alg.field) if in_mat else 0
    return dim_source - rank_out == rank_in


def dual_window(C: ComplexWindow) -> ComplexWindow:
    """Apply Hom(-, ring) to a window of free modules: transpose and
    reverse; twist offsets negate."""
    if not isinstance(C.backend, QuotientRing):
        raise UnsupportedOperation(
            "duals need a commutative backend; algebra windows only offer plain acyclicity"
        )
    if C.nilpotency is not None and C.nilpotency != 2:
        raise HypothesesUnmet("dualization implemented for nilpotency-2 windows")

    def transpose(m: MatrixMap) -> MatrixMap:
        src = FreeObj(tuple(-o for o in m.target.offsets))
        tgt = FreeObj(tuple(-o for o in m.source.offsets))
        rows = [
            [m.rows[j][i] for j in range(m.target.rank)] for i in range(m.source.rank)
        ]
        return MatrixMap.make(C.ctx, src, tgt, rows)

    maps = tuple(transpose(C.map_at(-q - 1)) for q in range(-C.hi, -C.lo))
    return ComplexWindow(
        ctx=C.ctx,
        lo=-C.hi,
        hi=-C.lo,
        maps=maps,
        period=C.period,
        nilpotency=C.nilpotency,
    ).validate()


@dataclass(frozen=True)
class TotalAcyclicityReport:
    primal: ExactnessReport
    dual: ExactnessReport | None

    @property
    def ok(self) -> bool:
        return self.primal.ok and self.dual is not None and self.dual.ok

    def __bool__(self):
        return self.ok


def total_acyclicity_report(
    X: FactorizationD, f, length: int | None = None, deadline=None
) -> TotalAcyclicityReport:
    """Exact and dual-exact after reduction; hypotheses are certified
    first and their failure raises HypothesesUnmet, never a plain False."""
    ring = X.ctx.backend
    if not isinstance(ring, QuotientRing):
        raise UnsupportedOperation("total acyclicity is a commutative-backend notion")
    f = ring.nf(f if isinstance(f, Poly) else ring.parse(f))
    if f.is_zero or not is_regular(f, ring, deadline=deadline):
        raise HypothesesUnmet("reduction element is not regular on the backend")
    red = reduce_full(X, f, length, deadline)
    primal = window_exact(red.window, deadline)
    if not primal.ok:
        return TotalAcyclicityReport(primal, None)
    dual = window_exact(dual_window(red.window), deadline)
    return TotalAcyclicityReport(primal, dual)


def is_totally_acyclic(X: FactorizationD, f, length: int | None = None, deadline=None) -> bool:
    return total_acyclicity_report(X, f, length, deadline).ok


# -- the dual-quotient identification -------------------------------------


def dual_quotient_check(n: int, x: Poly, gamma: QuotientRing, seed: int = 0) -> bool:
    """Hom(P, G)/Hom(P, G)x matches Hom_{G/(x)}(P/Px, G/(x)) for free P.

    Both sides are coordinatized by length-n rows; the comparison map
    is entrywise reduction.  Checks: canonical bases correspond,
    well-definedness (x-multiples die), injectivity on representatives
    (a row reducing to zero lies in the x-multiples, certified by
    membership), and naturality against a sampled map.
    """
    import random as _random

    from .sampling import random_poly

    rng = _random.Random(seed)
    x = gamma.nf(x)
    gbar = gamma.extend_ideal([x])

    def reduce_row(row):
        return tuple(gbar.nf(e) for e in row)

    # canonical bases correspond and the round trip is the identity
    for i in range(n):
        e_i = tuple(gamma.one() if j == i else gamma.zero() for j in range(n))
        if reduce_row(e_i) != tuple(gbar.nf(e) for e in e_i):
            return False
    for _ in range(5):
        row = tuple(random_poly(rng, gamma) for _ in range(n))
        bump = tuple(gamma.mul(random_poly(rng, gamma), x) for _ in range(n))
        shifted = tuple(gamma.add(a, b) for a, b in zip(row, bump))
        if reduce_row(shifted) != reduce_row(row):
            return False
        if all(e.is_zero for e in reduce_row(row)):
            for e in row:
                outcome = solve_linear([(x,)], [e], gamma)
                if not isinstance(outcome, LinearSolution):
                    return False
    # naturality against a sampled matrix U: P -> P', acting on rows
    m = max(1, n - 1)
    U = [[random_poly(rng, gamma) for _ in range(m)] for _ in range(n)]
    for _ in range(3):
        row = [random_poly(rng, gamma) for _ in range(n)]
        path1 = []
        path2 = []
        for j in range(m):
            acc = gamma.zero()
            for i in range(n):
                acc = gamma.add(acc, gamma.mul(row[i], U[i][j]))
            path1.append(gbar.nf(acc))
        rbar = reduce_row(row)
        for j in range(m):
            acc = gbar.zero()
            for i in range(n):
                acc = gbar.add(acc, gbar.mul(rbar[i], gbar.nf(U[i][j])))
            path2.append(acc)
        if tuple(path1) != tuple(path2):
            return False
    return True


# -- fully faithful, instance-certified ------------------------------------


@dataclass(frozen=True)
class FaithfulVerdict:
    downstairs_null: bool
    downstairs_witness: Homotopy | None
    upstairs_witness: Homotopy | None
    contradiction: bool

    @property
    def consistent(self) -> bool:
        return not self.contradiction


def _require_d2_regular(X: FactorizationD, f, deadline):
    ring = X.ctx.backend
    if X.d != 2:
        raise HypothesesUnmet("instance checks are stated for d = 2")
    if not isinstance(ring, QuotientRing):
        raise HypothesesUnmet("instance checks need a commutative backend")
    f = ring.nf(f if isinstance(f, Poly) else ring.parse(f))
    if f.is_zero or not is_regular(f, ring, deadline=deadline):
        raise HypothesesUnmet("reduction element is not regular on the backend")
    return f


def faithful_check(theta: FactMorphism, f, deadline=None) -> FaithfulVerdict:
    """Reduce, decide periodic null-homotopy downstairs; when null,
    the upstairs witness must exist (the faithfulness direction)."""
    X, U = theta.source, theta.target
    f = _require_d2_regular(X, f, deadline)
    red_x = reduce_full(X, f, deadline=deadline)
    red_u = reduce_full(U, f, deadline=deadline)
    theta_bar = reduce_morphism(theta, red_x, red_u)
    down = homotopy_decide(theta_bar, zero_morphism(red_x.downstairs, red_u.downstairs), deadline)
    if isinstance(down, NotHomotopic):
        return FaithfulVerdict(False, None, None, False)
    up = homotopy_decide(theta, zero_morphism(X, U), deadline)
    if isinstance(up, NotHomotopic):
        return FaithfulVerdict(True, down, None, True)
    return FaithfulVerdict(True, down, up, False)


@dataclass(frozen=True)
class NoLift:
    certificate: object
    hypotheses_certified: bool

    @property
    def contradiction(self) -> bool:
        return self.hypotheses_certified


@dataclass(frozen=True)
class Lift:
    theta: FactMorphism
    downstairs_witness: Homotopy


def full_lift(phibar: FactMorphism, X: FactorizationD, U: FactorizationD, f, deadline=None):
    """Find theta upstairs with F(theta) homotopic to the given periodic
    chain map, by one combined membership solve over the ambient ring.

    Unknowns: entries of the two components of theta over the ring,
    plus the periodic homotopy entries over the quotient.  Block rows:
    the two strict commuting squares modulo the defining ideal, and
    the two homotopy equations modulo (ideal, f).
    """
    f = _require_d2_regular(X, f, deadline)
    ring: QuotientRing = X.ctx.backend
    amb = ring.amb
    red_x = reduce_full(X, f, deadline=deadline)
    red_u = reduce_full(U, f, deadline=deadline)
    if phibar.source != red_x.downstairs or phibar.target != red_u.downstairs:
        raise ShapeMismatch("chain map must run between the two reductions")
    check = is_morphism(phibar)
    if not check.ok:
        raise HypothesesUnmet("input is not a verified periodic chain map")

    fX, gX = X.maps
    p_map, q_map = U.maps
    rx1, rx2 = X.objects[0].rank, X.objects[1].rank
    ru1, ru2 = U.objects[0].rank, U.objects[1].rank

    blocks = [
        ("alpha", ru1 * rx1),
        ("beta", ru2 * rx2),
        ("sigma1", ru1 * rx2),
        ("sigma2", ru2 * rx1),
    ]
    offsets = {}
    total = 0
    for name, size in blocks:
        offsets[name] = total
        total += size

    def idx(name, i, j, cols):
        return offsets[name] + i * cols + j

    rows = []
    rhs = []
    row_mods = []  # 0: mod ideal, 1: mod ideal + (f)
    zero = amb.zero()

    # E1: p.alpha - beta.fX = 0  (mod I)
    for i in range(ru2):
        for k in range(rx1):
            row = [zero] * total
            for j in range(ru1):
                row[idx("alpha", j, k, rx1)] = row[idx("alpha", j, k, rx1)] + p_map.rows[i][j]
            for j in range(rx2):
                row[idx("beta", i, j, rx2)] = row[idx("beta", i, j, rx2)] - fX.rows[j][k]
            rows.append(row)
            rhs.append(zero)
            row_mods.append(0)
    # E2: q.beta - (S alpha).gX = 0  (mod I)
    for i in range(ru1):
        for k in range(rx2):
            row = [zero] * total
            for j in range(ru2):
                row[idx("beta", j, k, rx2)] = row[idx("beta", j, k, rx2)] + q_map.rows[i][j]
            for j in range(rx1):
                row[idx("alpha", i, j, rx1)] = row[idx("alpha", i, j, rx1)] - gX.rows[j][k]
            rows.append(row)
            rhs.append(zero)
            row_mods.append(0)
    # E3: alpha - sigma1.fX - q.sigma2 = phibar_1  (mod I + f)
    for i in range(ru1):
        for k in range(rx1):
            row = [zero] * total
            row[idx("alpha", i, k, rx1)] = amb.one()
            for j in range(rx2):
                row[idx("sigma1", i, j, rx2)] = row[idx("sigma1", i, j, rx2)] - fX.rows[j][k]
            for j in range(ru2):
                row[idx("sigma2", j, k, rx1)] = row[idx("sigma2", j, k, rx1)] - q_map.rows[i][j]
            rows.append(row)
            rhs.append(phibar.components[0].rows[i][k])
            row_mods.append(1)
    # E4: beta - sigma2.gX - p.sigma1 = phibar_2  (mod I + f)
    for i in range(ru2):
        for k in range(rx2):
            row = [zero] * total
            row[idx("beta", i, k, rx2)] = amb.one()
            for j in range(rx1):
                row[idx("sigma2", i, j, rx1)] = row[idx("sigma2", i, j, rx1)] - gX.rows[j][k]
            for j in range(ru1):
                row[idx("sigma1", j, k, rx2)] = row[idx("sigma1", j, k, rx2)] - p_map.rows[i][j]
            rows.append(row)
            rhs.append(phibar.components[1].rows[i][k])
            row_mods.append(1)

    m = len(rows)
    cols = [tuple(rows[i][j] for i in range(m)) for j in range(total)]
    injections = []
    f_ideal = list(ring.ideal.basis) + [f]
    for i in range(m):
        gens_here = ring.ideal.basis if row_mods[i] == 0 else f_ideal
        for h in gens_here:
            injections.append(tuple(h if k == i else zero for k in range(m)))
    coeffs, cert = membership_lift(cols + injections, tuple(rhs), amb, deadline=deadline)
    if cert is None:
        sol = [ring.nf(c) for c in coeffs[:total]]
        alpha = MatrixMap.make(
            X.ctx, X.objects[0], U.objects[0],
            [[sol[idx("alpha", i, j, rx1)] for j in range(rx1)] for i in range(ru1)],
        )
        beta = MatrixMap.make(
            X.ctx, X.objects[1], U.objects[1],
            [[sol[idx("beta", i, j, rx2)] for j in range(rx2)] for i in range(ru2)],
        )
        theta = morphism(X, U, [alpha, beta])
        rbar: QuotientRing = red_x.downstairs.ctx.backend
        ctx_bar = red_x.downstairs.ctx
        sigma1 = MatrixMap.make(
            ctx_bar, red_x.downstairs.objects[1], red_u.downstairs.objects[0],
            [[rbar.nf(sol[idx("sigma1", i, j, rx2)]) for j in range(rx2)] for i in range(ru1)],
        )
        sigma2 = MatrixMap.make(
            ctx_bar,
            red_x.downstairs.objects[0].twist(1),
            red_u.downstairs.objects[1],
            [[rbar.nf(sol[idx("sigma2", i, j, rx1)]) for j in range(rx1)] for i in range(ru2)],
        )
        theta_bar = reduce_morphism(theta, red_x, red_u)
        witness = Homotopy(red_x.downstairs, red_u.downstairs, (sigma1, sigma2))
        if not verify_witness(witness, theta_bar, phibar):
            raise AssertionError("lift solver produced an invalid downstairs witness")
        return Lift(theta, witness)
    return NoLift(cert, hypotheses_certified=True)
