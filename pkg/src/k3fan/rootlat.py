"""Negative-definite lattices: reference Grams and isomorphism testing.

Isomorphism is decided by rank, determinant and, for rank >= 3, by the
Dynkin type of the (-2)-vectors together with the requirement that they
generate the lattice.  In rank <= 2 reduced binary forms are compared.
That is complete for the reference lattices used here, all of which are
root lattices once the rank is at least 3.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Sequence

from . import intmat

Gram = tuple[tuple[int, ...], ...]


def cartan(edges: Sequence[tuple[int, int]], n: int) -> Gram:
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = -2
    for i, j in edges:
        g[i][j] = g[j][i] = 1
    return tuple(tuple(r) for r in g)


def type_a(k: int) -> Gram:
    return cartan([(i, i + 1) for i in range(k - 1)], k)


def type_d(k: int) -> Gram:
    if k == 0:
        return ()
    if k == 1:
        return ((-4,),)
    if k == 2:
        return cartan([], 2)
    if k == 3:
        return type_a(3)
    return cartan([(i, i + 1) for i in range(k - 2)] + [(k - 3, k - 1)], k)


def type_e(k: int, prime: bool = False) -> Gram:
    if prime:
        if k != 1:
            raise ValueError("only E'_1 exists")
        return ((-2,),)
    if k == 0:
        return ()
    if k == 1:
        return ((-8,),)
    if k == 2:
        return ((-2, 1), (1, -4))
    if k == 3:
        return cartan([(0, 1)], 3)
    if k == 4:
        return type_a(4)
    if k == 5:
        return type_d(5)
    # chain 0-1-2-...-(k-2) with node k-1 attached to node 2
    return cartan([(i, i + 1) for i in range(k - 2)] + [(2, k - 1)], k)


def reference_gram(family: str, k: int, prime: bool = False) -> Gram:
    if family == "A":
        return type_a(k)
    if family == "D":
        return type_d(k)
    if family == "E":
        return type_e(k, prime)
    raise ValueError(f"unknown family {family}")


def _cholesky(q: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Upper-triangular Fincke-Pohst coefficients of a positive definite form."""
    n = len(q)
    a = [[Fraction(x) for x in r] for r in q]
    for i in range(n):
        for j in range(i + 1, n):
            a[j][i] = a[i][j]
            a[i][j] = a[i][j] / a[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                a[k][l] -= a[k][i] * a[i][l]
    return a


def short_vectors(gram: Sequence[Sequence[int]], norm: int) -> list[tuple[int, ...]]:
    """All x with x^T (-gram) x == norm, for negative definite gram."""
    q = [[-x for x in r] for r in gram]
    n = len(q)
    if n == 0:
        return []
    a = _cholesky(q)
    out: list[tuple[int, ...]] = []
    x = [0] * n

    def rec(i: int, remaining: Fraction) -> None:
        c = -sum(a[i][j] * x[j] for j in range(i + 1, n))
        span = remaining / a[i][i]
        r = isqrt(int(span)) + 1
        lo, hi = int(c) - r - 1, int(c) + r + 1
        for v in range(lo, hi + 1):
            t = a[i][i] * (v - c) ** 2
            if t <= remaining:
                x[i] = v
                if i == 0:
                    if any(x):
                        val = sum(q[s][t2] * x[s] * x[t2] for s in range(n) for t2 in range(n))
                        if val == norm:
                            out.append(tuple(x))
                else:
                    rec(i - 1, remaining - t)
        x[i] = 0

    rec(n - 1, Fraction(norm))
    return out


def _dot(g, u, v) -> int:
    return sum(g[i][j] * u[i] * v[j] for i in range(len(u)) for j in range(len(v)) if u[i] and v[j])


def root_system_type(gram: Sequence[Sequence[int]]) -> tuple[tuple[str, int], ...]:
    """Sorted ADE components of the (-2)-vectors; empty for no roots."""
    roots = short_vectors(gram, 2)
    if not roots:
        return ()
    n = len(gram)
    # generic functional: weights growing fast enough to avoid ties
    f = [1 + 1000 ** i for i in range(n)]
    pos = [r for r in roots if sum(a * b for a, b in zip(f, r)) > 0]
    pset = set(pos)
    simple = []
    for r in pos:
        if not any(tuple(a - b for a, b in zip(r, s)) in pset for s in pos if s != r):
            simple.append(r)
    m = len(simple)
    adj = {i: [j for j in range(m) if j != i and _dot(gram, simple[i], simple[j]) != 0] for i in range(m)}
    seen: set[int] = set()
    comps = []
    for i in range(m):
        if i in seen:
            continue
        stack, comp = [i], []
        seen.add(i)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(_classify(comp, adj))
    return tuple(sorted(comps))


def _classify(comp: list[int], adj: dict[int, list[int]]) -> tuple[str, int]:
    k = len(comp)
    deg = {u: len(adj[u]) for u in comp}
    branch = [u for u in comp if deg[u] == 3]
    if not branch:
        return ("A", k)
    b = branch[0]
    arms = []
    for start in adj[b]:
        length, prev, cur = 1, b, start
        while deg[cur] == 2:
            nxt = next(w for w in adj[cur] if w != prev)
            prev, cur = cur, nxt
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ("D", k)
    return ("E", k)


def root_sublattice_index(gram: Sequence[Sequence[int]]) -> int:
    """Index of the span of all roots in the lattice; 0 if the roots do not have full rank."""
    roots = short_vectors(gram, 2)
    n = len(gram)
    if not roots or intmat.rank(roots) < n:
        return 0
    d = intmat.elementary_divisors(roots)
    p = 1
    for x in d:
        p *= x
    return p


def _reduced_binary(g: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """Gauss-reduced (a, b, c) of the positive binary form -g."""
    a, b, c = -g[0][0], -2 * g[0][1], -g[1][1]
    while True:
        if c < a:
            a, c = c, a
            b = -b
        if abs(b) > a:
            # translate b into (-a, a]
            q = (b + a) // (2 * a)
            b, c = b - 2 * q * a, c - q * b + q * q * a
            continue
        break
    if b < 0 and (a == c or abs(b) == a):
        b = -b
    return a, b, c


def isomorphic(g1: Sequence[Sequence[int]], g2: Sequence[Sequence[int]]) -> bool:
    if len(g1) != len(g2):
        return False
    n = len(g1)
    if n == 0:
        return True
    if intmat.det(g1) != intmat.det(g2):
        return False
    if n == 1:
        return g1[0][0] == g2[0][0]
    if n == 2:
        return _reduced_binary(g1) == _reduced_binary(g2)
    if root_sublattice_index(g1) != 1 or root_sublattice_index(g2) != 1:
        raise NotImplementedError("isomorphism test needs root-generated lattices in rank >= 3")
    return root_system_type(g1) == root_system_type(g2)
