# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled permutation kernels; same contract as ``_pykernels``."""

from collections import deque


def mul(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [None] * n
    for i in range(n):
        out[i] = b[<Py_ssize_t>a[i]]
    return tuple(out)


def inv(tuple a):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [None] * n
    for i in range(n):
        out[<Py_ssize_t>a[i]] = i
    return tuple(out)


def conj(tuple a, tuple g, tuple ginv):
    cdef Py_ssize_t x, n = len(a)
    cdef list out = [None] * n
    for x in range(n):
        out[x] = g[<Py_ssize_t>a[<Py_ssize_t>ginv[x]]]
    return tuple(out)


def orbit(point, list gens):
    cdef set seen = {point}
    cdef list out = [point]
    cdef Py_ssize_t i = 0
    cdef tuple g
    while i < len(out):
        x = out[i]
        i += 1
        for g in gens:
            y = g[<Py_ssize_t>x]
            if y not in seen:
                seen.add(y)
                out.append(y)
    return out


def orbits(Py_ssize_t n, list gens):
    cdef list label = [-1] * n
    cdef list result = []
    cdef Py_ssize_t start
    for start in range(n):
        if label[start] >= 0:
            continue
        orb = orbit(start, gens)
        for x in orb:
            label[x] = len(result)
        result.append(sorted(orb))
    return result


cdef inline tuple _mul(tuple a, tuple b, Py_ssize_t n):
    cdef list out = [None] * n
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = b[<Py_ssize_t>a[i]]
    return tuple(out)


def closure(list gens, Py_ssize_t n, Py_ssize_t limit):
    cdef tuple ident = tuple(range(n))
    cdef set seen = {ident}
    cdef list out = [ident]
    cdef Py_ssize_t head = 0
    cdef tuple x, y, g
    while head < len(out):
        x = out[head]
        head += 1
        for g in gens:
            y = _mul(x, g, n)
            if y not in seen:
                seen.add(y)
                out.append(y)
                if len(out) > limit:
                    return None
    return out


def strip(tuple g, list base, list tinv, Py_ssize_t start):
    cdef Py_ssize_t level, nb = len(base), n = len(g)
    cdef dict t
    for level in range(start, nb):
        b = base[level]
        beta = g[<Py_ssize_t>b]
        if beta == b:
            continue
        t = tinv[level]
        u = t.get(beta)
        if u is None:
            return g, level
        g = _mul(g, <tuple>u, n)
    return g, nb


def expand(list levels, Py_ssize_t n):
    cdef list elems = [tuple(range(n))]
    cdef list reps, nxt
    cdef tuple e, u
    cdef Py_ssize_t k
    for k in range(len(levels) - 1, -1, -1):
        reps = levels[k]
        if len(reps) == 1:
            continue
        nxt = []
        for e in elems:
            for u in reps:
                nxt.append(_mul(e, u, n))
        elems = nxt
    return elems


def class_labels(list elements, list gens, list gens_inv):
    cdef dict index = {e: i for i, e in enumerate(elements)}
    cdef Py_ssize_t total = len(elements)
    cdef list label = [-1] * total
    cdef Py_ssize_t i, j, k, n, count = 0, ng = len(gens)
    cdef list stack, out
    cdef tuple x, g, gi
    for i in range(total):
        if label[i] >= 0:
            continue
        label[i] = count
        stack = [elements[i]]
        while stack:
            x = stack.pop()
            n = len(x)
            for k in range(ng):
                g = gens[k]
                gi = gens_inv[k]
                out = [None] * n
                for j in range(n):
                    out[j] = g[<Py_ssize_t>x[<Py_ssize_t>gi[j]]]
                j = index[tuple(out)]
                if label[j] < 0:
                    label[j] = count
                    stack.append(tuple(out))
        count += 1
    return label
