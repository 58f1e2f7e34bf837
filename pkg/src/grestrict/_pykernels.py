"""Pure-Python permutation kernels.

Permutations are tuples of 0-based images, ``p[i]`` being the image of
``i``.  Products act on the right: ``mul(a, b)`` applies ``a`` first.
The compiled module ``_ckernels`` exports the same functions.
"""

from __future__ import annotations

from collections import deque


def mul(a, b):
    return tuple([b[i] for i in a])


def inv(a):
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def conj(a, g, ginv):
    """``g^-1 a g``: the image of ``g(x)`` is ``g(a(x))``."""
    return tuple([g[a[x]] for x in ginv])


def orbit(point, gens):
    seen = {point}
    out = [point]
    i = 0
    while i < len(out):
        x = out[i]
        i += 1
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                out.append(y)
    return out


def orbits(n, gens):
    label = [-1] * n
    result = []
    for start in range(n):
        if label[start] >= 0:
            continue
        orb = orbit(start, gens)
        for x in orb:
            label[x] = len(result)
        result.append(sorted(orb))
    return result


def closure(gens, n, limit):
    """All elements of the group generated by ``gens`` in BFS order.

    Returns ``None`` once more than ``limit`` elements have been found.
    """
    ident = tuple(range(n))
    seen = {ident}
    out = [ident]
    queue = deque(out)
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple([g[i] for i in x])
            if y not in seen:
                seen.add(y)
                out.append(y)
                if len(out) > limit:
                    return None
                queue.append(y)
    return out


def strip(g, base, tinv, start):
    """Sift ``g`` through chain levels ``start..``.

    ``tinv[l]`` maps each point of the level-``l`` basic orbit to the
    inverse of its transversal element.  Returns the residue and the
    level at which sifting stopped (``len(base)`` on success).
    """
    for level in range(start, len(base)):
        b = base[level]
        beta = g[b]
        if beta == b:
            continue
        u = tinv[level].get(beta)
        if u is None:
            return g, level
        g = tuple([u[i] for i in g])
    return g, len(base)


def expand(levels, n):
    """Every product ``v_k * ... * v_0`` with ``v_l`` from ``levels[l]``.

    ``levels`` is ordered top level first; the identity comes first in
    the output when each level lists the identity first.
    """
    elems = [tuple(range(n))]
    for reps in reversed(levels):
        if len(reps) == 1:
            continue
        elems = [tuple([u[i] for i in e]) for e in elems for u in reps]
    return elems


def class_labels(elements, gens, gens_inv):
    """Label each element by its conjugacy class under ``<gens>``."""
    index = {e: i for i, e in enumerate(elements)}
    label = [-1] * len(elements)
    count = 0
    for i in range(len(elements)):
        if label[i] >= 0:
            continue
        label[i] = count
        stack = [elements[i]]
        while stack:
            x = stack.pop()
            for g, gi in zip(gens, gens_inv):
                y = tuple([g[x[k]] for k in gi])
                j = index[y]
                if label[j] < 0:
                    label[j] = count
                    stack.append(y)
        count += 1
    return label
