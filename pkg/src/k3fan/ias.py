"""Integral-affine spheres B_LR(l) and their combinatorial data.

An ``EllVector`` holds the end labels (L, R) and the 19 edge lengths of the
polygon P_LR(l).  Edge i has direction v_i; y-coordinates are handled
doubled so that everything stays integral.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .chambers import (
    END_LABELS,
    Face,
    alpha,
    beta_left,
    beta_right,
    gamma_left,
    gamma_right,
    locate_vector,
    rc_chamber,
)
from .errors import NotDivisible, NotHorizontal
from .lattice import LatticeVector, pair, vector_with_pairings

Mat = tuple[tuple[int, int], tuple[int, int]]
IDENTITY: Mat = ((1, 0), (0, 1))


def mat_mul(a: Mat, b: Mat) -> Mat:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def shear(k: int, sign: int = 1) -> Mat:
    """sign * A^k with A = [[1, 1], [0, 1]]."""
    return ((sign, sign * k), (0, sign))


def edge_x(L: int, R: int) -> tuple[int, ...]:
    return (0 if L in (2, 3) else 1,) + (1,) * 17 + (0 if R in (2, 3) else 1,)


def edge_y2(L: int, R: int) -> tuple[int, ...]:
    """Doubled y-components of the edge directions."""
    return (2 if L in (2, 3) else 9,) + tuple(10 - i for i in range(2, 19)) + (-2 if R in (2, 3) else -9,)


@dataclass(frozen=True)
class EllVector:
    L: int
    R: int
    ell: tuple[int, ...]

    @classmethod
    def make(cls, L: int, R: int, ell: Iterable[int]) -> "EllVector":
        return cls(int(L), int(R), tuple(int(x) for x in ell))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i + 1 for i, x in enumerate(self.ell) if x)

    def residual(self) -> int:
        """Twice the y-component of sum l_i v_i; zero iff horizontal."""
        return sum(l * w for l, w in zip(self.ell, edge_y2(self.L, self.R)))

    def width(self) -> int:
        return sum(l * x for l, x in zip(self.ell, edge_x(self.L, self.R)))

    def canonical(self) -> "EllVector":
        """Relabel ends that sit on a chamber wall to the smallest admissible label."""
        L, R = self.L, self.R
        l1, l2 = self.ell[0], self.ell[1]
        r1, r2 = self.ell[18], self.ell[17]
        if L == 3 and l2 == 0:
            L = 1 if l1 == 0 else 2
        elif L == 2 and l1 == 0:
            L = 1
        if R == 3 and r2 == 0:
            R = 1 if r1 == 0 else 2
        elif R == 2 and r1 == 0:
            R = 1
        return EllVector(L, R, self.ell)

    def __str__(self) -> str:
        return f"({self.L},{self.R}) " + " ".join(map(str, self.ell))


def validate(e: EllVector) -> EllVector:
    if e.L not in END_LABELS or e.R not in END_LABELS:
        raise ValueError(f"end labels must lie in {{1,2,3}}, got ({e.L},{e.R})")
    if len(e.ell) != 19:
        raise ValueError(f"expected 19 edge lengths, got {len(e.ell)}")
    if any(x < 0 for x in e.ell):
        raise ValueError("edge lengths must be non-negative")
    if not any(e.ell):
        raise ValueError("all edge lengths vanish")
    r = e.residual()
    if r != 0:
        raise NotHorizontal(f"sum of l_i v_i has y-component {Fraction(r, 2)}")
    return e


# ---------------------------------------------------------------- symbols

@dataclass(frozen=True)
class Symbol:
    kind: str  # 'X', 'Y' or 'I'
    charge: int
    prime: bool = False
    tilde: bool = False

    def __str__(self) -> str:
        return ("~" if self.tilde else "") + self.kind + ("'" if self.prime else "") + str(self.charge)


@dataclass(frozen=True)
class CombType:
    symbols: tuple[Symbol, ...]
    type_ii: bool = False

    def charges(self) -> tuple[int, ...]:
        return tuple(s.charge for s in self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        out = []
        i = 0
        syms = self.symbols
        while i < len(syms):
            j = i
            while syms[i].kind == "I" and j + 1 < len(syms) and syms[j + 1] == syms[i]:
                j += 1
            run = j - i + 1
            s = str(syms[i])
            out.append(s if run == 1 else f"{s}^{run}")
            i = j + 1
        return "".join(out)

    @classmethod
    def parse(cls, text: str) -> "CombType":
        import re
        syms = []
        for m in re.finditer(r"(~?)([XYI])(')?(\d+)(?:\^(\d+))?", text):
            s = Symbol(m.group(2), int(m.group(4)), bool(m.group(3)), bool(m.group(1)))
            syms.extend([s] * int(m.group(5) or 1))
        return cls(tuple(syms), any(s.tilde for s in syms))


TYPE_II_E8E8 = CombType((Symbol("X", 12, tilde=True), Symbol("X", 12, tilde=True)), True)
TYPE_II_D16 = CombType((Symbol("Y", 4, tilde=True), Symbol("Y", 20, tilde=True)), True)


def comb_type_of_support(L: int, R: int, S: Sequence[int]) -> CombType:
    """Combinatorial type from the end labels and the sorted support."""
    S = tuple(S)
    if S == (10,):
        return TYPE_II_E8E8
    yl = L in (2, 3) and S[0] == 1
    yr = R in (2, 3) and S[-1] == 19
    if yl and yr and S == (1, 19):
        return TYPE_II_D16
    core = S[1 if yl else 0: len(S) - (1 if yr else 0)]
    syms: list[Symbol] = []
    a, b = core[0], core[-1]
    if yl:
        syms.append(Symbol("Y", 2))
        syms.append(Symbol("Y", a, prime=(L == 3 and a == 2)))
    else:
        syms.append(Symbol("X", a + 2, prime=(L == 3 and a == 2)))
    for c, d in zip(core, core[1:]):
        syms.append(Symbol("I", d - c))
    if yr:
        syms.append(Symbol("Y", 20 - b, prime=(R == 3 and b == 18)))
        syms.append(Symbol("Y", 2))
    else:
        syms.append(Symbol("X", 22 - b, prime=(R == 3 and b == 18)))
    return CombType(tuple(syms))


def comb_type(e: EllVector) -> CombType:
    return comb_type_of_support(e.L, e.R, sorted(e.support))


def is_type_ii(e: EllVector) -> bool:
    return comb_type(e).type_ii


# ---------------------------------------------------------------- monodromy

@dataclass(frozen=True)
class Generator:
    vertex: int  # polygon vertex index 0..19 where the singularity sits
    matrix: Mat
    charge: int


def generators(L: int, R: int) -> list[Generator]:
    """The 20 elementary singularities of P_LR with all l_i > 0, left to right."""
    gens = []
    if L == 1:
        gens.append(Generator(0, shear(9), 3))
        first = 1
    else:
        gens.append(Generator(0, shear(4, -1), 2))
        gens.append(Generator(1, shear(4, -1), 2))
        first = 2
    last = 18 if R == 1 else 17
    for i in range(first, last + 1):
        gens.append(Generator(i, shear(-1), 1))
    if R == 1:
        gens.append(Generator(19, shear(9), 3))
    else:
        gens.append(Generator(18, shear(4, -1), 2))
        gens.append(Generator(19, shear(4, -1), 2))
    return gens


def polygon_vertices(e: EllVector) -> list[tuple[int, int]]:
    """Vertices V_0..V_19 of the upper boundary in (x, 2y) coordinates."""
    xs, ys = edge_x(e.L, e.R), edge_y2(e.L, e.R)
    pts = [(0, 0)]
    for l, x, y in zip(e.ell, xs, ys):
        px, py = pts[-1]
        pts.append((px + l * x, py + l * y))
    return pts


@dataclass(frozen=True)
class SingularPoint:
    position: tuple[int, int]  # (x, 2y) in the polygon
    matrix: Mat
    charge: int


def singular_points(e: EllVector) -> list[SingularPoint]:
    """Merge the elementary singularities that collide, keeping left-to-right order."""
    verts = polygon_vertices(e)
    groups: dict[tuple[int, int], list[Generator]] = {}
    for g in generators(e.L, e.R):
        groups.setdefault(verts[g.vertex], []).append(g)
    out = []
    for pos, gs in groups.items():
        m = IDENTITY
        for g in gs:
            m = mat_mul(m, g.matrix)
        out.append(SingularPoint(pos, m, sum(g.charge for g in gs)))
    return out


def monodromy(e: EllVector) -> list[tuple[Symbol, Mat]]:
    """Local monodromy of every singular point, paired with its comb symbol."""
    validate(e)
    ct = comb_type(e)
    pts = singular_points(e)
    if len(pts) != len(ct.symbols):
        raise AssertionError(f"{len(pts)} singular points but type {ct} has {len(ct.symbols)} symbols")
    for s, p in zip(ct.symbols, pts):
        if s.charge != p.charge:
            raise AssertionError(f"charge mismatch {s} vs {p.charge}")
    return [(s, p.matrix) for s, p in zip(ct.symbols, pts)]


def monodromy_product(e: EllVector) -> Mat:
    m = IDENTITY
    for _, a in monodromy(e):
        m = mat_mul(m, a)
    return m


def charge_audit(e: EllVector) -> int:
    total = sum(comb_type(validate(e)).charges())
    if total != 24:
        raise AssertionError(f"charges of {e} sum to {total}")
    return total


# ---------------------------------------------------------------- lambda <-> l

def lambda_of_ell(e: EllVector) -> LatticeVector:
    """The unique vector of sigma_LR whose facet pairings are k_i l_i."""
    validate(e)
    ch = rc_chamber(e.L, e.R)
    idx = [i for i in range(19) if i != 8]
    lam = vector_with_pairings([ch.scales[i] * e.ell[i] for i in idx],
                               [ch.functionals[i] for i in idx])
    vals = ch.values(lam)
    want = tuple(k * l for k, l in zip(ch.scales, e.ell))
    if vals != want:
        raise AssertionError(f"pairing equations fail for {e}: {vals}")
    n = lam.norm()
    if n < 0 or (n == 0) != comb_type(e).type_ii:
        raise AssertionError(f"lambda^2 = {n} inconsistent with the type of {e}")
    return lam


def ell_of_lambda(v: LatticeVector) -> EllVector:
    """Inverse dictionary; raises NotDivisible with the least multiplier that works."""
    w, face = locate_vector(v)
    ch = face.chamber
    vals = ch.values(w)
    if all(x % k == 0 for x, k in zip(vals, ch.scales)):
        L, R = ch.ends
        return EllVector(L, R, tuple(x // k for x, k in zip(vals, ch.scales)))
    for m in range(2, 7):
        if all((m * x) % k == 0 for x, k in zip(vals, ch.scales)):
            raise NotDivisible(f"{w} needs multiplier {m}", m)
    raise AssertionError("multiplier 6 always clears the scales")


def strong_divisibility(v: LatticeVector) -> bool:
    """b_L, b_R divisible by 6 and c_L, c_R even, after reduction to the chamber."""
    w, _ = locate_vector(v)
    bl, br = pair(w, beta_left()), pair(w, beta_right())
    cl, cr = pair(w, gamma_left()), pair(w, gamma_right())
    return bl % 6 == 0 and br % 6 == 0 and cl % 2 == 0 and cr % 2 == 0


# ---------------------------------------------------------------- gamma tables

def gamma_vectors(L: int, R: int) -> tuple[LatticeVector, ...]:
    """The vectors gamma_1..gamma_19 attached to the ends of B_LR."""
    g = [alpha(i) for i in range(1, 20)]
    if L == 1:
        g[0] = -beta_left()
    elif L == 2:
        g[0], g[1] = beta_left(), -gamma_left()
    else:
        g[0], g[1], g[2] = alpha(2), gamma_left(), alpha(1)
    if R == 1:
        g[18] = -beta_right()
    elif R == 2:
        g[18], g[17] = beta_right(), -gamma_right()
    else:
        g[18], g[17], g[16] = alpha(18), gamma_right(), alpha(19)
    return tuple(g)


# Gram block of gamma_1..gamma_3 and the scales k with lambda . gamma_j = k_j l_j
GAMMA_TABLE = {
    1: {"gram": ((-8, 3, 0), (3, -2, 1), (0, 1, -2)), "weights": (3, 1, 1)},
    2: {"gram": ((-8, 2, 0), (2, -4, 2), (0, 2, -2)), "weights": (2, 2, 1)},
    3: {"gram": ((-2, 1, 0), (1, -4, 2), (0, 2, -2)), "weights": (1, 2, 1)},
}


def gamma_block(L: int, side: str = "left") -> tuple[tuple[int, ...], ...]:
    """Gram matrix of the three end vectors; the right end is read outward from gamma_19."""
    g = gamma_vectors(L, 1) if side == "left" else gamma_vectors(1, L)
    vs = g[:3] if side == "left" else (g[18], g[17], g[16])
    return tuple(tuple(pair(a, b) for b in vs) for a in vs)


def gamma_gram(L: int) -> tuple[int, int, int, int, int, int]:
    """(g1^2, g1.g2, g2^2, g2.g3, g3^2, g1.g3) at the left end."""
    b = gamma_block(L)
    return (b[0][0], b[0][1], b[1][1], b[1][2], b[2][2], b[0][2])


# ---------------------------------------------------------------- sampling

def horizontal_ell(L: int, R: int, S: Iterable[int]) -> EllVector:
    """A horizontal l with support exactly S (scaled to be primitive)."""
    S = sorted(set(S))
    w = edge_y2(L, R)
    P = [i for i in S if w[i - 1] > 0]
    N = [i for i in S if w[i - 1] < 0]
    Z = [i for i in S if w[i - 1] == 0]
    if (bool(P) != bool(N)) or not S:
        raise NotHorizontal(f"support {S} admits no horizontal l")
    wp = sum(w[i - 1] for i in P)
    wn = -sum(w[i - 1] for i in N)
    ell = [0] * 19
    for i in P:
        ell[i - 1] = wn
    for i in N:
        ell[i - 1] = wp
    for i in Z:
        ell[i - 1] = 1
    g = 0
    for x in ell:
        g = gcd(g, x)
    return EllVector(L, R, tuple(x // g for x in ell))


def random_ell(rng: random.Random, L: int | None = None, R: int | None = None,
               p_zero: float = 0.3, bound: int = 6) -> EllVector:
    """A random horizontal l; entries vanish with probability p_zero."""
    L = rng.choice(END_LABELS) if L is None else L
    R = rng.choice(END_LABELS) if R is None else R
    w = edge_y2(L, R)
    while True:
        ell = [0 if rng.random() < p_zero else rng.randint(1, bound) for _ in range(19)]
        s = sum(l * x for l, x in zip(ell, w))
        # slots 9 and 11 have doubled weights +1 and -1
        if s > 0:
            ell[10] += s
        elif s < 0:
            ell[8] += -s
        if any(ell):
            return EllVector(L, R, tuple(ell))


def is_wall_free(e: EllVector) -> bool:
    """True when no end of l sits on a chamber wall (canonical form is itself)."""
    return e.canonical() == e


def face_of_ell(e: EllVector) -> Face:
    ch = rc_chamber(e.L, e.R)
    return Face(ch, frozenset(i + 1 for i, x in enumerate(e.ell) if x == 0))
