from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from k3fan import intmat


def matrices(rows, cols, lo=-6, hi=6):
    return st.lists(st.lists(st.integers(lo, hi), min_size=cols, max_size=cols),
                    min_size=rows, max_size=rows)


@given(st.integers(1, 5).flatmap(lambda n: matrices(n, n)))
def test_det_matches_sympy(m):
    assert intmat.det(m) == sympy.Matrix(m).det()


@settings(max_examples=60)
@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 5).flatmap(lambda c: matrices(r, c))))
def test_elementary_divisors_match_smith_form(m):
    from sympy.matrices.normalforms import smith_normal_form
    snf = smith_normal_form(sympy.Matrix(m), domain=sympy.ZZ)
    diag = [abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0]
    assert sorted(intmat.elementary_divisors(m)) == sorted(diag)


@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 6).flatmap(lambda c: matrices(r, c))))
def test_kernel_is_primitive_and_annihilated(m):
    ker = intmat.kernel(m)
    assert len(ker) == len(m[0]) - intmat.rank(m)
    for v in ker:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
        assert intmat.primitive(v) in (v, [-x for x in v])


def test_rank_and_solve():
    m = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert intmat.rank(m) == 2
    x = intmat.solve([[2, 1], [1, 3]], [3, 4])
    assert x == [Fraction(1), Fraction(1)]


@given(st.integers(1, 5).flatmap(lambda n: matrices(n, n)))
def test_signature_matches_eigenvalues(m):
    sym = [[m[i][j] + m[j][i] for j in range(len(m))] for i in range(len(m))]
    pos, neg, zero = intmat.symmetric_signature(sym)
    M = sympy.Matrix(sym)
    evs = M.eigenvals()
    p = sum(k for v, k in evs.items() if sympy.re(sympy.N(v, 50)) > 1e-20)
    n = sum(k for v, k in evs.items() if sympy.re(sympy.N(v, 50)) < -1e-20)
    assert (pos, neg, zero) == (p, n, len(sym) - p - n)


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_ext_gcd(a, b):
    g, x, y = intmat.ext_gcd(a, b)
    from math import gcd
    assert g == gcd(a, b) and a * x + b * y == g
