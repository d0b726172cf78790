"""Reference polynomial term kernel, generic over the coefficient field.

A polynomial is a tuple of ``(monomial, coeff)`` pairs with monomials
strictly descending in the ambient order and no zero coefficients; a
monomial is a tuple of nonnegative exponents.  The compiled twin in
``_speedups`` implements the same functions specialized to prime
fields; this module is the fallback and the only implementation used
over the rationals.

``key`` arguments are monomial sort keys (bigger key = bigger
monomial); they come from :class:`dfactor.rings.MonomialOrder`.
"""

from __future__ import annotations


def mon_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mon_divides(a, b):
    """True when monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def mon_div(b, a):
    """b / a, assuming a divides b."""
    return tuple(y - x for x, y in zip(a, b))


def add(ta, tb, field, key):
    """Merge two canonical term tuples."""
    out = []
    i = j = 0
    na, nb = len(ta), len(tb)
    while i < na and j < nb:
        ma, ca = ta[i]
        mb, cb = tb[j]
        if ma == mb:
            c = field.add(ca, cb)
            if c != field.zero:
                out.append((ma, c))
            i += 1
            j += 1
        elif key(ma) > key(mb):
            out.append(ta[i])
            i += 1
        else:
            out.append(tb[j])
            j += 1
    out.extend(ta[i:])
    out.extend(tb[j:])
    return tuple(out)


def neg(ta, field):
    return tuple((m, field.neg(c)) for m, c in ta)


def scale(ta, c, field):
    if c == field.zero:
        return ()
    return tuple((m, field.mul(cc, c)) for m, cc in ta)


def shift(ta, mon, c, field):
    """Multiply by the single term c*mon.  Order is preserved because
    monomial orders are multiplicative."""
    if c == field.zero:
        return ()
    return tuple((mon_mul(m, mon), field.mul(cc, c)) for m, cc in ta)


def mul(ta, tb, field, key):
    if not ta or not tb:
        return ()
    acc = {}
    zero = field.zero
    for ma, ca in ta:
        for mb, cb in tb:
            m = mon_mul(ma, mb)
            c = field.add(acc.get(m, zero), field.mul(ca, cb))
            if c == zero:
                acc.pop(m, None)
            else:
                acc[m] = c
    return tuple(sorted(acc.items(), key=lambda t: key(t[0]), reverse=True))


def divmod_basis(f, basis, field, key, want_quotients=False):
    """Fully reduce f against a list of term tuples.

    Returns ``(remainder, quotients)`` with f = sum(q_i * basis_i) +
    remainder and no remainder term divisible by any basis lead.  The
    quotients are canonical term tuples (or None when not requested).
    Basis elements must be nonzero.
    """
    quotients = [[] for _ in basis] if want_quotients else None
    leads = [g[0] for g in basis]
    rem = []
    work = f
    while work:
        lm, lc = work[0]
        for gi, (gm, gc) in enumerate(leads):
            if mon_divides(gm, lm):
                qmon = mon_div(lm, gm)
                qc = field.mul(lc, field.inv(gc))
                work = add(work, shift(basis[gi], qmon, field.neg(qc), field), field, key)
                if want_quotients:
                    quotients[gi].append((qmon, qc))
                break
        else:
            rem.append(work[0])
            work = work[1:]
    if want_quotients:
        return tuple(rem), tuple(tuple(q) for q in quotients)
    return tuple(rem), None
