"""Pure-Python monomial kernels.

A monomial ``alpha beta*`` is keyed ``(alpha, beta, v)`` with paths as tuples
of edge indices and ``v = r(alpha) = r(beta)``.  ``tables`` is
``(edge_src, edge_rng, designated, siblings)``: per-edge source and range
vertex, per-vertex designated edge (``-1`` at sinks), and per-vertex
non-designated out-edges.  ``modulus`` is 0 outside Z/nZ.
"""


def mono_mul(k1, k2, edge_src):
    """Product of two monomials as a key, or None when it vanishes."""
    a1, b1, v1 = k1
    a2, b2, v2 = k2
    nb = len(b1)
    ng = len(a2)
    # s(beta) and s(gamma) must agree
    sb = edge_src[b1[0]] if nb else v1
    sg = edge_src[a2[0]] if ng else v2
    if sb != sg:
        return None
    if nb <= ng:
        if a2[:nb] != b1:
            return None
        return (a1 + a2[nb:], b2, v2)
    if b1[:ng] != a2:
        return None
    return (a1, b2 + b1[ng:], v1)


def reduce_terms(raw, tables, modulus, order=None):
    """Rewrite ``d d*`` tails until no monomial ends in its designated pair.

    ``order``, if given, is a ``random.Random`` used to shuffle the worklist.
    """
    edge_src, edge_rng, designated, siblings = tables
    out = {}
    work = list(raw.items())
    while work:
        if order is not None:
            i = order.randrange(len(work))
            work[i], work[-1] = work[-1], work[i]
        key, c = work.pop()
        if not c:
            continue
        a, b, v = key
        if a and b:
            e = a[-1]
            if e == b[-1]:
                w = edge_src[e]
                if designated[w] == e:
                    a0 = a[:-1]
                    b0 = b[:-1]
                    work.append(((a0, b0, w), c))
                    for f in siblings[w]:
                        work.append(((a0 + (f,), b0 + (f,), edge_rng[f]), -c))
                    continue
        out[key] = out.get(key, 0) + c
    if modulus:
        return {k: c % modulus for k, c in out.items() if c % modulus}
    return {k: c for k, c in out.items() if c}


def mul_terms(x, y, tables, modulus):
    edge_src = tables[0]
    raw = {}
    for k1, c1 in x.items():
        for k2, c2 in y.items():
            k = mono_mul(k1, k2, edge_src)
            if k is not None:
                raw[k] = raw.get(k, 0) + c1 * c2
    return reduce_terms(raw, tables, modulus)
