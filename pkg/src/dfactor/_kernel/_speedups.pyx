# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term kernel specialized to prime fields.

Mirrors dfactor._kernel.pure term by term: canonical descending term
tuples, monomials as exponent tuples, coefficients as machine ints in
[0, p).  Order codes: 0 = grevlex, 1 = lex.
"""


cdef inline int mon_cmp(tuple a, tuple b, int code):
    """1 if a > b, -1 if a < b, 0 if equal."""
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t i
    cdef long ai, bi, da, db
    if code == 0:
        da = 0
        db = 0
        for i in range(n):
            da += <long> a[i]
            db += <long> b[i]
        if da != db:
            return 1 if da > db else -1
        for i in range(n - 1, -1, -1):
            ai = <long> a[i]
            bi = <long> b[i]
            if ai != bi:
                # rightmost difference: smaller exponent wins
                return 1 if ai < bi else -1
        return 0
    for i in range(n):
        ai = <long> a[i]
        bi = <long> b[i]
        if ai != bi:
            return 1 if ai > bi else -1
    return 0


cdef inline tuple mon_mul_c(tuple a, tuple b):
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t i
    return tuple([<long> a[i] + <long> b[i] for i in range(n)])


cdef inline bint mon_divides_c(tuple a, tuple b):
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t i
    for i in range(n):
        if <long> a[i] > <long> b[i]:
            return False
    return True


cdef inline tuple mon_div_c(tuple b, tuple a):
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t i
    return tuple([<long> b[i] - <long> a[i] for i in range(n)])


cdef inline long inv_mod(long a, long p):
    cdef long t = 0, newt = 1, r = p, newr = a % p
    cdef long q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def add(tuple ta, tuple tb, long p, int code):
    cdef list out = []
    cdef Py_ssize_t i = 0, j = 0
    cdef Py_ssize_t na = len(ta), nb = len(tb)
    cdef tuple ea, eb, ma, mb
    cdef long c
    cdef int cmp
    while i < na and j < nb:
        ea = <tuple> ta[i]
        eb = <tuple> tb[j]
        ma = <tuple> ea[0]
        mb = <tuple> eb[0]
        cmp = mon_cmp(ma, mb, code)
        if cmp == 0:
            c = ((<long> ea[1]) + (<long> eb[1])) % p
            if c != 0:
                out.append((ma, c))
            i += 1
            j += 1
        elif cmp > 0:
            out.append(ea)
            i += 1
        else:
            out.append(eb)
            j += 1
    while i < na:
        out.append(ta[i])
        i += 1
    while j < nb:
        out.append(tb[j])
        j += 1
    return tuple(out)


def neg(tuple ta, long p):
    cdef list out = []
    cdef tuple e
    for e in ta:
        out.append((e[0], (p - <long> e[1]) % p))
    return tuple(out)


def scale(tuple ta, long c, long p):
    cdef list out = []
    cdef tuple e
    cdef long cc
    c = c % p
    if c == 0:
        return ()
    for e in ta:
        cc = ((<long> e[1]) * c) % p
        out.append((e[0], cc))
    return tuple(out)


def shift(tuple ta, tuple mon, long c, long p):
    cdef list out = []
    cdef tuple e
    cdef long cc
    c = c % p
    if c == 0:
        return ()
    for e in ta:
        cc = ((<long> e[1]) * c) % p
        out.append((mon_mul_c(<tuple> e[0], mon), cc))
    return tuple(out)


cdef tuple _sort_terms(dict acc, int code):
    cdef list items = list(acc.items())
    cdef Py_ssize_t n = len(items)
    cdef Py_ssize_t i, j
    # insertion sort with mon_cmp, descending; term counts stay small
    for i in range(1, n):
        j = i
        while j > 0 and mon_cmp(<tuple> (<tuple> items[j - 1])[0],
                                <tuple> (<tuple> items[j])[0], code) < 0:
            items[j - 1], items[j] = items[j], items[j - 1]
            j -= 1
    return tuple(items)


def mul(tuple ta, tuple tb, long p, int code):
    if len(ta) == 0 or len(tb) == 0:
        return ()
    cdef dict acc = {}
    cdef tuple ea, eb, m
    cdef long c
    for ea in ta:
        for eb in tb:
            m = mon_mul_c(<tuple> ea[0], <tuple> eb[0])
            c = (<long> acc.get(m, 0) + (<long> ea[1]) * (<long> eb[1])) % p
            if c == 0:
                acc.pop(m, None)
            else:
                acc[m] = c
    return _sort_terms(acc, code)


def divmod_basis(tuple f, list basis, long p, int code, bint want_quotients=False):
    cdef list quotients = None
    cdef list rem = []
    cdef tuple work = f
    cdef tuple lead, lm, gm, g, qmon
    cdef long lc, gc, qc
    cdef Py_ssize_t gi, nb = len(basis)
    cdef bint hit
    if want_quotients:
        quotients = [[] for _ in range(nb)]
    while len(work) > 0:
        lead = <tuple> work[0]
        lm = <tuple> lead[0]
        lc = <long> lead[1]
        hit = False
        for gi in range(nb):
            g = <tuple> basis[gi]
            gm = <tuple> (<tuple> g[0])[0]
            if mon_divides_c(gm, lm):
                gc = <long> (<tuple> g[0])[1]
                qmon = mon_div_c(lm, gm)
                qc = (lc * inv_mod(gc, p)) % p
                work = add(work, shift(g, qmon, p - qc, p), p, code)
                if want_quotients:
                    quotients[gi].append((qmon, qc))
                hit = True
                break
        if not hit:
            rem.append(lead)
            work = work[1:]
    if want_quotients:
        return tuple(rem), tuple([tuple(q) for q in quotients])
    return tuple(rem), None
