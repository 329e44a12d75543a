import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from k3fan.errors import IdenticallySingular, InfiniteGroup, RowViolation
from k3fan.weier import (
    PARAMS,
    ROWS,
    NormalForm,
    RationalPoly,
    cascade_check,
    cubic_in_y,
    discriminant,
    fiber_at,
    sample,
    semiinvariance_order,
    verify_row,
)

X, Y = sympy.symbols("x y")
fracs = st.fractions(min_value=-50, max_value=50, max_denominator=20)
polys = st.lists(fracs, max_size=6).map(RationalPoly)


def to_sympy(p: RationalPoly):
    return sum(sympy.Rational(c.numerator, c.denominator) * X ** i for i, c in enumerate(p.c))


def sympy_f(nf: NormalForm):
    g = {k: sympy.Rational(nf.get(k).numerator, nf.get(k).denominator) for k in PARAMS}
    return (Y ** 3 + g["c2p"] * Y ** 2 + g["c1p"] * Y - (X * Y - g["cpp"]) ** 2 / 4
            + sum(g[f"c{i}"] * X ** i for i in range(6)))


@given(polys, polys)
def test_poly_ring_matches_sympy(a, b):
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0
    assert sympy.expand(to_sympy(a + b) - to_sympy(a) - to_sympy(b)) == 0
    assert sympy.expand(to_sympy(a.derivative()) - sympy.diff(to_sympy(a), X)) == 0
    if not b.is_zero():
        q, r = a.divmod(b)
        assert q * b + r == a and r.degree() < b.degree()


@given(polys, polys)
def test_gcd_divides(a, b):
    if a.is_zero() and b.is_zero():
        return
    g = a.gcd(b)
    assert a.divmod(g)[1].is_zero() and b.divmod(g)[1].is_zero()


def test_cubic_in_y_examples():
    p, q, r = cubic_in_y(NormalForm({}))
    assert p == RationalPoly([0, 0, Fraction(-1, 4)]) and q.is_zero() and r.is_zero()
    p, q, r = cubic_in_y(NormalForm({"cpp": 1}))
    assert q == RationalPoly([0, Fraction(1, 2)]) and r == RationalPoly([Fraction(-1, 4)])
    assert p.degree() == 2


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_discriminant_matches_sympy(seed):
    rng = random.Random(seed)
    nf = NormalForm({k: Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for k in PARAMS})
    # the cubic discriminant in y is -(4A^3 + 27B^2)
    want = -sympy.discriminant(sympy_f(nf), Y)
    assert sympy.expand(to_sympy(discriminant(nf)) - want) == 0
    assert discriminant(nf).degree() <= 11


def test_d0_is_identically_singular():
    nf = NormalForm({"c2p": 1})
    assert discriminant(nf).is_zero()
    with pytest.raises(IdenticallySingular):
        fiber_at(nf, 0)


def test_e8_leading_coefficient():
    nf = sample(ROWS["E8"], random.Random(1))
    D = discriminant(nf)
    assert D.degree() == 11 and -16 * D.coeff(11) == nf.get("c5") == 1


@pytest.mark.parametrize("name", list(ROWS))
def test_rows(name):
    r = verify_row(name, trials=100, seed=7)
    assert r.passed, r.failures[:1]


def test_row_specific_identities():
    rng = random.Random(3)
    nf = sample(ROWS["E2"], rng)
    assert -16 * discriminant(nf).coeff(5) == nf.get("c1p") * nf.get("cpp")
    nf = sample(ROWS["E'1"], rng)
    assert -16 * discriminant(nf).coeff(4) == 1
    nf = sample(ROWS["E7"], rng)
    assert -16 * discriminant(nf).coeff(10) == nf.get("c4") == 1


def test_cascade():
    assert all(ok for _, ok in cascade_check(seed=1))


def test_fiber_detection():
    # f(0, y) = y^3 - y^2/4 with a double root at 0
    nf = NormalForm({"c2p": Fraction(-1, 4), "cpp": 2, "c0": 1, "c3": 5})
    assert nf.fiber_cubic(0) == RationalPoly([0, 0, Fraction(-1, 4), 1])
    info = fiber_at(nf, 0)
    assert info.nodal and info.multiplicity >= 1
    D = discriminant(nf)
    x0 = 7
    while D(x0) == 0:
        x0 += 1
    assert fiber_at(nf, x0) == type(info)(0, False)


@settings(max_examples=10)
@given(st.integers(0, 10 ** 6))
def test_e8_fiber_multiplicities_sum_to_twelve(seed):
    nf = sample(ROWS["E8"], random.Random(seed), bound=9)
    D = discriminant(nf)
    _, factors = sympy.factor_list(to_sympy(D))
    finite = sum(sympy.degree(f, X) * k for f, k in factors)
    assert finite == 11 and finite + 1 == 12


@pytest.mark.parametrize("n,m,order", [(5, 0, 1), (4, 0, 2), (0, 0, 6), (1, 1, 3), (0, 1, 4), (0, 2, 2)])
def test_semiinvariance(n, m, order):
    assert semiinvariance_order(n, m) == order


def test_semiinvariance_rejects_infinite():
    with pytest.raises(InfiniteGroup):
        semiinvariance_order(6, 0)
    assert all(semiinvariance_order(*r.monomial) == r.group for r in ROWS.values())


def test_strict_raises(monkeypatch):
    import k3fan.weier as w
    good = w.ROWS["E8"]
    # claiming an I_2 fiber for the E8 row must fail on the degree check
    monkeypatch.setitem(w.ROWS, "E8", w.WeierRow("E8", 2, good.fixed, good.stars, (),
                                                  good.monomial, good.group, "c5"))
    with pytest.raises(RowViolation) as exc:
        verify_row("E8", trials=3, strict=True)
    assert "c5" in exc.value.params
