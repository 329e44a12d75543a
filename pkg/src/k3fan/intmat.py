"""Exact linear algebra over the integers and rationals.

Matrices are lists of lists of Python ints (or Fractions); nothing here
touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def _copy(m: Sequence[Sequence]) -> list[list]:
    return [list(r) for r in m]


def det(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    a = _copy(m)
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def rref(m: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    a = [[Fraction(x) for x in r] for r in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def primitive(v: Sequence) -> list[int]:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    iv = [int(x * den) for x in fr]
    g = 0
    for x in iv:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive multiple")
    return [x // g for x in iv]


def kernel(m: Sequence[Sequence], ncols: int | None = None) -> list[list[int]]:
    """Basis of the right kernel, each vector primitive integral."""
    if not m:
        assert ncols is not None
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    a, piv = rref(m)
    cols = len(a[0])
    free = [c for c in range(cols) if c not in piv]
    out = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -a[i][f]
        out.append(primitive(v))
    return out


def solve(m: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Unique solution of m x = b; raises ValueError otherwise."""
    aug = [list(r) + [bi] for r, bi in zip(m, b)]
    a, piv = rref(aug)
    cols = len(m[0])
    if cols in piv:
        raise ValueError("inconsistent system")
    if len(piv) != cols:
        raise ValueError("system is underdetermined")
    x = [Fraction(0)] * cols
    for i, p in enumerate(piv):
        x[p] = a[i][cols]
    return x


def elementary_divisors(m: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero Smith normal form diagonal d_1 | d_2 | ... of an integer matrix."""
    a = [list(map(int, r)) for r in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    out: list[int] = []
    t = 0
    while t < min(rows, cols):
        # smallest nonzero pivot in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for r in a:
            r[t], r[j] = r[j], r[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t] != 0:
                    dirty = True
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for r in a:
                        r[j] -= q * r[t]
                if a[t][j] != 0:
                    dirty = True
            if dirty:
                # move a smaller remainder into the pivot position
                best = None
                for i in range(t, rows):
                    if a[i][t] != 0 and (best is None or abs(a[i][t]) < abs(a[best][t])):
                        best = i
                a[t], a[best] = a[best], a[t]
                bj = None
                for j in range(t, cols):
                    if a[t][j] != 0 and (bj is None or abs(a[t][j]) < abs(a[t][bj])):
                        bj = j
                for r in a:
                    r[t], r[bj] = r[bj], r[t]
                continue
            # divisibility: pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % p != 0), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
        out.append(abs(a[t][t]))
        t += 1
    return out


def symmetric_signature(m: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of a symmetric integer matrix."""
    a = [[Fraction(x) for x in r] for r in m]
    n = len(a)
    pos = neg = 0
    active = list(range(n))
    while active:
        k = next((i for i in active if a[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in active for j in active if i != j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # congruence: e_i <- e_i + e_j makes the diagonal entry nonzero
            for r in range(n):
                a[i][r] += a[j][r]
            for r in range(n):
                a[r][i] += a[r][j]
            k = i
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(k)
        for i in active:
            f = a[i][k] / p
            if f:
                for j in active:
                    a[i][j] -= f * a[k][j]
        for i in active:
            a[i][k] = a[k][i] = Fraction(0)
    return pos, neg, n - pos - neg


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(r, c)) for c in bt] for r in a]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(c) for c in zip(*a)]


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s a + t b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def saturation_basis(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Z-basis of (row space over Q) intersected with Z^n, for independent integer rows.

    Column operations bring the rows to lower-triangular form B C = [H | 0];
    the first r rows of C^{-1} then span the saturation.
    """
    b = [list(map(int, r)) for r in rows]
    r = len(b)
    if r == 0:
        return []
    n = len(b[0])
    cinv = [[int(i == j) for j in range(n)] for i in range(n)]
    for p in range(r):
        if all(b[p][j] == 0 for j in range(p, n)):
            raise ValueError("rows are linearly dependent")
        if b[p][p] == 0:
            j = next(j for j in range(p + 1, n) if b[p][j] != 0)
            for row in b:
                row[p], row[j] = row[j], row[p]
            cinv[p], cinv[j] = cinv[j], cinv[p]
        for j in range(p + 1, n):
            y = b[p][j]
            if y == 0:
                continue
            x = b[p][p]
            g, s, t = ext_gcd(x, y)
            u, v = x // g, y // g
            for row in b:
                cp, cj = row[p], row[j]
                row[p], row[j] = s * cp + t * cj, -v * cp + u * cj
            rp, rj = cinv[p], cinv[j]
            cinv[p] = [u * a + v * c for a, c in zip(rp, rj)]
            cinv[j] = [-t * a + s * c for a, c in zip(rp, rj)]
    return [cinv[i] for i in range(r)]
