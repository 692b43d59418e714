# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled monomial kernels; same contract as ``_kernel_py``."""


cdef inline object _mono_mul(tuple k1, tuple k2, tuple edge_src):
    cdef tuple a1 = <tuple>k1[0]
    cdef tuple b1 = <tuple>k1[1]
    cdef tuple a2 = <tuple>k2[0]
    cdef tuple b2 = <tuple>k2[1]
    cdef Py_ssize_t nb = len(b1)
    cdef Py_ssize_t ng = len(a2)
    cdef Py_ssize_t i
    cdef object sb = edge_src[<Py_ssize_t>b1[0]] if nb else k1[2]
    cdef object sg = edge_src[<Py_ssize_t>a2[0]] if ng else k2[2]
    if sb != sg:
        return None
    if nb <= ng:
        for i in range(nb):
            if b1[i] != a2[i]:
                return None
        return (a1 + a2[nb:], b2, k2[2])
    for i in range(ng):
        if b1[i] != a2[i]:
            return None
    return (a1, b2 + b1[ng:], k1[2])


def mono_mul(k1, k2, edge_src):
    return _mono_mul(k1, k2, edge_src)


def reduce_terms(dict raw, tuple tables, object modulus, order=None):
    if order is not None:
        # randomized orders are a test device; defer to the reference kernel
        from ._kernel_py import reduce_terms as py_reduce
        return py_reduce(raw, tables, modulus, order)
    cdef tuple edge_src = <tuple>tables[0]
    cdef tuple edge_rng = <tuple>tables[1]
    cdef tuple designated = <tuple>tables[2]
    cdef tuple siblings = <tuple>tables[3]
    cdef dict out = {}
    cdef list work = list(raw.items())
    cdef tuple item, key, a, b, a0, b0, f1
    cdef object c, e, w, f, prev
    while work:
        item = <tuple>work.pop()
        key = <tuple>item[0]
        c = item[1]
        if not c:
            continue
        a = <tuple>key[0]
        b = <tuple>key[1]
        if a and b:
            e = a[len(a) - 1]
            if e == b[len(b) - 1]:
                w = edge_src[<Py_ssize_t>e]
                if designated[<Py_ssize_t>w] == e:
                    a0 = a[:len(a) - 1]
                    b0 = b[:len(b) - 1]
                    work.append(((a0, b0, w), c))
                    for f in <tuple>siblings[<Py_ssize_t>w]:
                        f1 = (f,)
                        work.append(((a0 + f1, b0 + f1, edge_rng[<Py_ssize_t>f]), -c))
                    continue
        prev = out.get(key)
        out[key] = c if prev is None else prev + c
    if modulus:
        return {k: v % modulus for k, v in out.items() if v % modulus}
    return {k: v for k, v in out.items() if v}


def mul_terms(dict x, dict y, tuple tables, object modulus):
    cdef tuple edge_src = <tuple>tables[0]
    cdef dict raw = {}
    cdef object k, k1, k2, c1, c2, prev
    cdef list ys = list(y.items())
    cdef tuple item
    for k1, c1 in x.items():
        for item in ys:
            k2 = item[0]
            k = _mono_mul(<tuple>k1, <tuple>k2, edge_src)
            if k is not None:
                c2 = item[1]
                prev = raw.get(k)
                raw[k] = c1 * c2 if prev is None else prev + c1 * c2
    return reduce_terms(raw, tables, modulus)
