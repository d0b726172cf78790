"""JSON wire formats for every object the CLI reads or writes.

Polynomial entries are strings in the shared expression syntax.
Factorizations carry ranks (offsets optional, for suspended or dual
data); morphisms embed their source and target.  All emitters produce
deterministic structures: plain dicts of sorted-key-stable content.
"""

from __future__ import annotations

from .context import Context, FreeObj, MatrixMap
from .errors import ParseError
from .factorization import FactMorphism, FactorizationD, make_factorization
from .fdalg import AlgebraMap, FDAlgebra, algebra_from_json
from .functors import ComplexWindow
from .rings import QuotientRing


# -- backends and contexts ------------------------------------------------


def backend_from_json(desc: dict):
    if not isinstance(desc, dict):
        raise ParseError("backend description must be an object")
    if "gens" in desc:
        return algebra_from_json(desc)
    return QuotientRing.from_json(desc)


def backend_to_json(backend) -> dict:
    return backend.to_json()


def context_from_json(desc: dict) -> Context:
    """An explicit "twist" wins; otherwise an algebra description's own
    "nu" is adopted.  Likewise "eta" falls back to the algebra's "w"."""
    backend = backend_from_json(desc.get("ring", {}))
    ring_desc = desc.get("ring", {})
    twist_desc = desc.get("twist")
    if twist_desc is None and isinstance(backend, FDAlgebra) and "nu" in ring_desc:
        twist_desc = {"nu": ring_desc["nu"]}
    twist = None
    if twist_desc in (None, "identity"):
        pass
    elif isinstance(twist_desc, dict) and "nu" in twist_desc:
        if not isinstance(backend, FDAlgebra):
            raise ParseError("twists require an algebra backend")
        twist = AlgebraMap.from_generator_images(backend, twist_desc["nu"], automorphism=True)
    else:
        raise ParseError(f"bad twist {twist_desc!r}")
    eta_text = desc.get("eta")
    if eta_text is None and "w" in ring_desc:
        eta_text = ring_desc["w"]
    if eta_text is None:
        eta_text = "0"
    eta = backend.zero() if eta_text == "0" else backend.parse(eta_text)
    return Context(backend, twist=twist, eta=eta)


def context_to_json(ctx: Context) -> dict:
    out = {"ring": backend_to_json(ctx.backend)}
    if ctx.twist is None:
        out["twist"] = "identity"
    else:
        alg = ctx.backend
        images = {}
        for g in alg.gens:
            idx = alg._word_index((g,))
            images[g] = alg.format(ctx.twist.images[idx])
        out["twist"] = {"nu": images}
    out["eta"] = "0" if ctx.eta_is_zero else ctx.backend.format(ctx.eta)
    return out


# -- factorizations ---------------------------------------------------------


def _objects_from_json(desc: dict, d: int):
    if "offsets" in desc:
        return [FreeObj(tuple(o)) for o in desc["offsets"]]
    ranks = desc.get("ranks")
    if ranks is None or len(ranks) != d:
        raise ParseError("need \"ranks\" (one per position) or explicit \"offsets\"")
    return [FreeObj.of(r) for r in ranks]


def _maps_from_json(ctx, objects, d, mats):
    if len(mats) != d:
        raise ParseError(f"need {d} matrices")
    maps = []
    for i, m in enumerate(mats):
        src = objects[i]
        tgt = objects[i + 1] if i < d - 1 else objects[0].twist(1)
        maps.append(MatrixMap.from_strings(ctx, src, tgt, m))
    return maps


def factorization_from_json(desc: dict, ctx: Context | None = None, allow_odd_d=False) -> FactorizationD:
    if ctx is None:
        ctx = context_from_json(desc.get("context", {}))
    d = int(desc.get("d", 0))
    if d < 2:
        raise ParseError("factorization needs d >= 2")
    objects = _objects_from_json(desc, d)
    maps = _maps_from_json(ctx, objects, d, desc.get("maps", []))
    return make_factorization(ctx, d, objects, maps, allow_odd_d=allow_odd_d)


def factorization_to_json(X: FactorizationD, include_context=True) -> dict:
    fmt = X.ctx.backend.format
    out = {
        "d": X.d,
        "ranks": [o.rank for o in X.objects],
        "maps": [[[fmt(e) for e in row] for row in m.rows] for m in X.maps],
    }
    if any(any(o != 0 for o in obj.offsets) for obj in X.objects):
        out["offsets"] = [list(o.offsets) for o in X.objects]
    if include_context:
        out["context"] = context_to_json(X.ctx)
    return out


def morphism_from_json(desc: dict, allow_odd_d=False):
    ctx = context_from_json(desc.get("context", {}))
    src = factorization_from_json({**desc["source"], "d": desc.get("d")}, ctx, allow_odd_d)
    tgt = factorization_from_json({**desc["target"], "d": desc.get("d")}, ctx, allow_odd_d)
    comps = []
    mats = desc.get("components", [])
    if len(mats) != src.d:
        raise ParseError(f"need {src.d} components")
    for i, m in enumerate(mats):
        comps.append(MatrixMap.from_strings(ctx, src.objects[i], tgt.objects[i], m))
    return FactMorphism(src, tgt, tuple(comps))


def morphism_to_json(phi: FactMorphism) -> dict:
    fmt = phi.source.ctx.backend.format
    return {
        "context": context_to_json(phi.source.ctx),
        "d": phi.source.d,
        "source": factorization_to_json(phi.source, include_context=False),
        "target": factorization_to_json(phi.target, include_context=False),
        "components": [[[fmt(e) for e in row] for row in m.rows] for m in phi.components],
    }


def graded_from_json(desc: dict):
    from .dg import graded_hom

    ctx = context_from_json(desc.get("context", {}))
    src = factorization_from_json({**desc["source"], "d": desc.get("d")}, ctx)
    tgt = factorization_from_json({**desc["target"], "d": desc.get("d")}, ctx)
    degree = int(desc.get("degree", 0))
    comps = []
    for i, m in enumerate(desc.get("components", []), start=1):
        comps.append(
            MatrixMap.from_strings(ctx, src.objects[i - 1], tgt.obj_at(i + degree), m)
        )
    return graded_hom(src, tgt, degree, comps)


def graded_to_json(gh) -> dict:
    fmt = gh.source.ctx.backend.format
    return {
        "context": context_to_json(gh.source.ctx),
        "d": gh.source.d,
        "degree": gh.degree,
        "source": factorization_to_json(gh.source, include_context=False),
        "target": factorization_to_json(gh.target, include_context=False),
        "components": [[[fmt(e) for e in row] for row in m.rows] for m in gh.components],
    }


# -- windows ----------------------------------------------------------------


def window_to_json(W: ComplexWindow) -> dict:
    fmt = W.backend.format
    positions = list(range(W.lo, W.hi + 1))
    offsets = []
    for p in positions:
        if p < W.hi:
            offsets.append(list(W.map_at(p).source.offsets))
        else:
            offsets.append(list(W.maps[-1].target.offsets))
    return {
        "ring": backend_to_json(W.backend),
        "lo": W.lo,
        "hi": W.hi,
        "period": W.period,
        "nilpotency": W.nilpotency,
        "offsets": offsets,
        "maps": [[[fmt(e) for e in row] for row in m.rows] for m in W.maps],
    }


def window_from_json(desc: dict) -> ComplexWindow:
    backend = backend_from_json(desc.get("ring", {}))
    ctx = Context(backend, eta=backend.zero())
    lo, hi = int(desc["lo"]), int(desc["hi"])
    period = int(desc.get("period", 2))
    mats = desc.get("maps", [])
    if len(mats) != hi - lo:
        raise ParseError(f"window [{lo},{hi}] needs {hi - lo} maps")
    ranks = [len(m[0]) if m else 0 for m in mats]
    ranks.append(len(mats[-1]) if mats else 0)
    if "offsets" in desc:
        offsets = [tuple(o) for o in desc["offsets"]]
    else:
        offsets = []
        for k, p in enumerate(range(lo, hi + 1)):
            q = p // period
            offsets.append((q,) * ranks[k])
    objects = [FreeObj(tuple(o)) for o in offsets]
    maps = []
    for k, m in enumerate(mats):
        maps.append(MatrixMap.from_strings(ctx, objects[k], objects[k + 1], m))
    nil = desc.get("nilpotency")
    return ComplexWindow(
        ctx=ctx,
        lo=lo,
        hi=hi,
        maps=tuple(maps),
        period=period,
        nilpotency=int(nil) if nil is not None else None,
    ).validate()
