"""Weierstrass normal forms of rational elliptic surfaces with an I_n fiber at infinity.

The trisection is f(x, y) = y^3 + c2' y^2 + c1' y - (x y - c'')^2 / 4
+ c0 + c1 x + ... + c5 x^5, a cubic in y over Q[x].
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import IdenticallySingular, InfiniteGroup, RowViolation
Number = int | Fraction


class RationalPoly:
    """Dense univariate polynomial over Q, coefficients from low to high degree."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = c

    @classmethod
    def x(cls) -> "RationalPoly":
        return cls([0, 1])

    @classmethod
    def const(cls, a: Number) -> "RationalPoly":
        return cls([a])

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.c) - 1

    def coeff(self, i: int) -> Fraction:
        return self.c[i] if 0 <= i < len(self.c) else Fraction(0)

    def is_zero(self) -> bool:
        return not self.c

    def _lift(self, other) -> "RationalPoly":
        return other if isinstance(other, RationalPoly) else RationalPoly([other])

    def __add__(self, other) -> "RationalPoly":
        o = self._lift(other)
        n = max(len(self.c), len(o.c))
        return RationalPoly([self.coeff(i) + o.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "RationalPoly":
        return RationalPoly([-a for a in self.c])

    def __sub__(self, other) -> "RationalPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "RationalPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "RationalPoly":
        o = self._lift(other)
        if not self.c or not o.c:
            return RationalPoly()
        out = [Fraction(0)] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "RationalPoly":
        out = RationalPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return self.c == self._lift(other).c

    def __hash__(self) -> int:
        return hash(tuple(self.c))

    def __call__(self, x0: Number) -> Fraction:
        acc = Fraction(0)
        for a in reversed(self.c):
            acc = acc * x0 + a
        return acc

    def derivative(self) -> "RationalPoly":
        return RationalPoly([i * a for i, a in enumerate(self.c)][1:])

    def divmod(self, d: "RationalPoly") -> tuple["RationalPoly", "RationalPoly"]:
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        q = [Fraction(0)] * max(0, len(r) - len(d.c) + 1)
        lead = d.c[-1]
        while len(r) >= len(d.c) and any(r):
            k = len(r) - len(d.c)
            t = r[-1] / lead
            q[k] = t
            for i, b in enumerate(d.c):
                r[k + i] -= t * b
            while r and r[-1] == 0:
                r.pop()
        return RationalPoly(q), RationalPoly(r)

    def monic(self) -> "RationalPoly":
        return self * (1 / self.c[-1]) if self.c else self

    def gcd(self, other: "RationalPoly") -> "RationalPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def order_at(self, x0: Number) -> int:
        """Multiplicity of the root x0; raises for the zero polynomial."""
        if self.is_zero():
            raise ValueError("zero polynomial has infinite order")
        p = self
        lin = RationalPoly([-Fraction(x0), 1])
        k = 0
        while True:
            q, r = p.divmod(lin)
            if not r.is_zero():
                return k
            p, k = q, k + 1

    def __repr__(self) -> str:
        return f"RationalPoly({[str(a) for a in self.c]})"


PARAMS = ("c2p", "c1p", "cpp", "c0", "c1", "c2", "c3", "c4", "c5")


@dataclass(frozen=True)
class NormalForm:
    params: dict

    def get(self, name: str) -> Fraction:
        return Fraction(self.params.get(name, 0))

    def pqr(self) -> tuple[RationalPoly, RationalPoly, RationalPoly]:
        x = RationalPoly.x()
        g = self.get
        p = g("c2p") - x * x * Fraction(1, 4)
        q = g("c1p") + x * (g("cpp") / 2)
        r = RationalPoly([-g("cpp") ** 2 / 4 + g("c0")] + [g(f"c{i}") for i in range(1, 6)])
        return p, q, r

    def fiber_cubic(self, x0: Number) -> RationalPoly:
        """f(x0, y) as a polynomial in y."""
        p, q, r = self.pqr()
        return RationalPoly([r(x0), q(x0), p(x0), 1])


def cubic_in_y(nf: NormalForm) -> tuple[RationalPoly, RationalPoly, RationalPoly]:
    """(p, q, r) with f = y^3 + p y^2 + q y + r."""
    return nf.pqr()


def weierstrass_ab(nf: NormalForm) -> tuple[RationalPoly, RationalPoly]:
    p, q, r = nf.pqr()
    A = q - p * p * Fraction(1, 3)
    B = r - p * q * Fraction(1, 3) + (p ** 3) * Fraction(2, 27)
    return A, B


def discriminant(nf: NormalForm) -> RationalPoly:
    """4 A^3 + 27 B^2 for the depressed cubic of f in y."""
    A, B = weierstrass_ab(nf)
    D = 4 * A ** 3 + 27 * B ** 2
    if D.degree() > 11:
        raise AssertionError(f"discriminant of degree {D.degree()} exceeds 11")
    return D


@dataclass(frozen=True)
class FiberInfo:
    multiplicity: int
    nodal: bool  # the cubic has one double and one simple root


def fiber_at(nf: NormalForm, x0: Number) -> FiberInfo:
    d = discriminant(nf)
    if d.is_zero():
        raise IdenticallySingular("discriminant vanishes identically")
    m = d.order_at(x0)
    f = nf.fiber_cubic(x0)
    g = f.gcd(f.derivative())
    return FiberInfo(m, g.degree() == 1)


@dataclass(frozen=True)
class WeierRow:
    name: str
    n: int  # I_n at infinity
    fixed: dict  # parameter -> fixed value
    stars: tuple[str, ...]  # free parameters
    nonzero: tuple[str, ...]  # free but required nonzero
    monomial: tuple[int, int]  # x^n y^m
    group: int
    leading: str | None  # parameter equal to the leading coefficient of -16 Delta


_E_CHAIN = ("c5", "c4", "c3", "c2", "c1", "c0")

ROWS: dict[str, WeierRow] = {}
for _k, _lead in zip(range(8, 2, -1), _E_CHAIN):
    _pos = int(_lead[1])
    ROWS[f"E{_k}"] = WeierRow(
        f"E{_k}", 9 - _k, {_lead: 1},
        ("c2p", "c1p", "cpp") + tuple(f"c{i}" for i in range(_pos)), (),
        (_pos, 0), 9 - _k, _lead)
ROWS["E2"] = WeierRow("E2", 7, {"cpp": 1}, ("c2p",), ("c1p",), (1, 1), 3, "c1p")
ROWS["E1"] = WeierRow("E1", 8, {"cpp": 1}, (), ("c2p",), (1, 1), 3, "c2p")
ROWS["E'1"] = WeierRow("E'1", 8, {"c1p": 1}, ("c2p",), (), (0, 1), 4, "one")
ROWS["E0"] = WeierRow("E0", 9, {"cpp": 1}, (), (), (1, 1), 3, "one")
ROWS["D0"] = WeierRow("D0", 0, {"c2p": 1}, (), (), (0, 2), 2, None)
del _k, _lead, _pos


def semiinvariance_order(n: int, m: int) -> int:
    """Order of the scaling group fixing y^3 + x^2 y^2 + x^n y^m up to a common factor.

    Matching y^3 and x^2 y^2 forces t = s^2, leaving s^(n + 2m - 6) = 1.
    """
    if n < 0 or m < 0:
        raise ValueError("exponents must be nonnegative")
    k = abs(n + 2 * m - 6)
    if k == 0:
        raise InfiniteGroup(f"x^{n} y^{m} has the weight of y^3")
    return k


BOUND = 1000


def _rand_q(rng: random.Random, nonzero: bool = False, bound: int = BOUND) -> Fraction:
    while True:
        v = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if v or not nonzero:
            return v


def sample(row: WeierRow, rng: random.Random, bound: int = BOUND) -> NormalForm:
    params = dict(row.fixed)
    for s in row.stars:
        params[s] = _rand_q(rng, bound=bound)
    for s in row.nonzero:
        params[s] = _rand_q(rng, True, bound)
    return NormalForm(params)


@dataclass
class RowResult:
    row: str
    trials: int
    passed: bool
    failures: list = field(default_factory=list)
    leading_values: list = field(default_factory=list)


def _fmt(nf: NormalForm) -> dict:
    return {k: str(Fraction(v)) for k, v in sorted(nf.params.items())}


def verify_row(name: str, trials: int = 100, seed: int = 0, bound: int = BOUND,
               strict: bool = False) -> RowResult:
    """Check deg Delta = 12 - n and the leading coefficient identity on random parameters.

    With strict=True the first failure raises RowViolation.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    row = ROWS[name]
    rng = random.Random(f"{seed}:{name}")
    res = RowResult(name, trials, True)
    for t in range(trials):
        nf = sample(row, rng, bound)
        D = discriminant(nf)
        if row.name == "D0":
            if not D.is_zero():
                res.passed = False
                res.failures.append((t, _fmt(nf), "discriminant is not identically zero"))
            continue
        deg = 12 - row.n
        lead = -16 * D.coeff(deg)
        if D.degree() != deg:
            res.passed = False
            res.failures.append((t, _fmt(nf), f"degree {D.degree()} != {deg}"))
            continue
        if row.leading == "one":
            want = Fraction(1)
        elif row.leading is None:
            want = None
        else:
            want = nf.get(row.leading) * (nf.get("cpp") if row.leading == "c1p" else 1)
        if want is not None and lead != want:
            res.passed = False
            res.failures.append((t, _fmt(nf), f"leading coefficient {lead} != {want}"))
        if len(res.leading_values) < 3:
            res.leading_values.append(str(lead))
    if semiinvariance_order(*row.monomial) != row.group:
        res.passed = False
        res.failures.append((None, {}, "semi-invariance group order mismatch"))
    if strict and res.failures:
        t, params, msg = res.failures[0]
        raise RowViolation(f"{name} trial {t}: {msg}", params)
    return res


def cascade_check(seed: int = 0, trials: int = 20) -> list[tuple[str, bool]]:
    """Zeroing the leading parameter of E_k drops into the degree bound of E_{k-1}."""
    out = []
    rng = random.Random(f"cascade:{seed}")
    for k in range(8, 3, -1):
        row = ROWS[f"E{k}"]
        ok = True
        for _ in range(trials):
            nf = sample(row, rng)
            params = dict(nf.params)
            params[row.leading] = 0
            nxt = ROWS[f"E{k - 1}"].leading
            D = discriminant(NormalForm(params))
            deg = 12 - (row.n + 1)
            if D.degree() > deg or -16 * D.coeff(deg) != Fraction(params.get(nxt, 0)):
                ok = False
        out.append((f"E{k}->E{k - 1}", ok))
    return out
