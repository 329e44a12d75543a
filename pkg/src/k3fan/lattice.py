"""The even unimodular lattice II(1,17) presented by 19 simple roots.

Vectors are integer combinations of the roots alpha_1..alpha_19 modulo the
single linear relation ``RELATION``.  Since the coefficient of alpha_9 in the
relation is 1, every class has a unique representative with vanishing
alpha_9 coordinate; that representative is what ``LatticeVector`` stores.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import prod
from typing import Iterable, Sequence

from . import intmat
from .errors import InvariantViolation, NotInCone, NotIntegral, ReductionDiverged

N_ROOTS = 19
RELATION = (3, 2, 4, 6, 5, 4, 3, 2, 1, 0, -1, -2, -3, -4, -5, -6, -4, -2, -3)
ANCHOR = 9  # root whose coordinate is eliminated
EDGES = (
    (1, 4), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 10),
    (10, 11), (11, 12), (12, 13), (13, 14), (14, 15), (15, 16), (16, 17),
    (17, 18), (16, 19),
)

_A = ANCHOR - 1


def _gram() -> list[list[int]]:
    g = [[0] * N_ROOTS for _ in range(N_ROOTS)]
    for i in range(N_ROOTS):
        g[i][i] = -2
    for i, j in EDGES:
        g[i - 1][j - 1] = g[j - 1][i - 1] = 1
    return g


GRAM = _gram()
_ROWS = [tuple(r) for r in GRAM]


def _canon(x: list[int]) -> tuple[int, ...]:
    t = x[_A]
    if t:
        x = [xi - t * ci for xi, ci in zip(x, RELATION)]
    return tuple(x)


@dataclass(frozen=True, order=True)
class LatticeVector:
    coords: tuple[int, ...]

    @classmethod
    def from_coords(cls, coords: Iterable[int]) -> "LatticeVector":
        x = [int(c) for c in coords]
        if len(x) != N_ROOTS:
            raise ValueError(f"expected {N_ROOTS} root coordinates, got {len(x)}")
        return cls(_canon(x))

    @classmethod
    def from_roots(cls, terms: dict[int, int]) -> "LatticeVector":
        """Build sum(k * alpha_i) from a {i: k} map with 1-based root labels."""
        x = [0] * N_ROOTS
        for i, k in terms.items():
            x[i - 1] += k
        return cls.from_coords(x)

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(_canon([a + b for a, b in zip(self.coords, other.coords)]))

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(_canon([a - b for a, b in zip(self.coords, other.coords)]))

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(tuple(-a for a in self.coords))

    def __rmul__(self, k: int) -> "LatticeVector":
        return LatticeVector(tuple(k * a for a in self.coords))

    def dot(self, other: "LatticeVector") -> int:
        return pair(self, other)

    def norm(self) -> int:
        return pair(self, self)

    def pairings(self) -> tuple[int, ...]:
        """Values v . alpha_i for i = 1..19."""
        x = self.coords
        return tuple(sum(xi * gi for xi, gi in zip(x, row)) for row in _ROWS)

    def reduced(self) -> tuple[int, ...]:
        """Coordinates in the basis of the 18 roots other than the anchor."""
        return self.coords[:_A] + self.coords[_A + 1:]

    @classmethod
    def from_reduced(cls, y: Sequence[int]) -> "LatticeVector":
        y = list(y)
        return cls(tuple(y[:_A] + [0] + y[_A:]))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.coords)) + ")"


ZERO = LatticeVector((0,) * N_ROOTS)


def alpha(i: int) -> LatticeVector:
    return _alphas()[i - 1]


@lru_cache(maxsize=None)
def _alphas() -> tuple[LatticeVector, ...]:
    return tuple(LatticeVector.from_roots({i: 1}) for i in range(1, N_ROOTS + 1))


def pair(v: LatticeVector, w: LatticeVector) -> int:
    x, y = v.coords, w.coords
    s = 0
    for i, xi in enumerate(x):
        if xi:
            row = _ROWS[i]
            s += xi * sum(r * yj for r, yj in zip(row, y))
    return s


def reflect(v: LatticeVector, r: LatticeVector) -> LatticeVector:
    """Reflection in a (-2)-root: v + (v.r) r."""
    if r.norm() != -2:
        raise ValueError("reflection vector must be a (-2)-root")
    t = pair(v, r)
    return LatticeVector(_canon([a + t * b for a, b in zip(v.coords, r.coords)]))


def involution(v: LatticeVector) -> LatticeVector:
    """Diagram symmetry alpha_i -> alpha_{20-i}."""
    x = v.coords
    return LatticeVector.from_coords([x[N_ROOTS - 1 - i] for i in range(N_ROOTS)])


@dataclass(frozen=True)
class RootSystem:
    gram: tuple[tuple[int, ...], ...]
    relation: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    signature: tuple[int, int]
    reduced_det: int

    @property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        nb: dict[int, list[int]] = {i: [] for i in range(1, N_ROOTS + 1)}
        for i, j in self.edges:
            nb[i].append(j)
            nb[j].append(i)
        return {i: tuple(sorted(v)) for i, v in nb.items()}


@lru_cache(maxsize=None)
def build_root_system() -> RootSystem:
    """Assemble the diagram and check every structural invariant it must satisfy."""
    c = RELATION
    nb: dict[int, list[int]] = {i: [] for i in range(1, N_ROOTS + 1)}
    for i, j in EDGES:
        nb[i].append(j)
        nb[j].append(i)
    for i in range(1, N_ROOTS + 1):
        if sum(c[j - 1] for j in nb[i]) != 2 * c[i - 1]:
            raise InvariantViolation(f"relation is not in the radical at node {i}")
    radical = intmat.kernel(GRAM)
    if len(radical) != 1 or radical[0] not in (list(c), [-x for x in c]):
        raise InvariantViolation("Gram radical is not spanned by the relation")
    mirrored = sorted(tuple(sorted((20 - i, 20 - j))) for i, j in EDGES)
    if mirrored != sorted(EDGES):
        raise InvariantViolation("diagram is not symmetric under i -> 20 - i")
    keep = [i for i in range(N_ROOTS) if i != _A]
    g18 = [[GRAM[i][j] for j in keep] for i in keep]
    d = intmat.det(g18)
    if abs(d) != 1:
        raise InvariantViolation(f"reduced Gram has determinant {d}")
    pos, neg, zero = intmat.symmetric_signature(g18)
    if (pos, neg, zero) != (1, 17, 0):
        raise InvariantViolation(f"signature {(pos, neg, zero)} is not (1,17)")
    if any(GRAM[i][i] % 2 for i in range(N_ROOTS)):
        raise InvariantViolation("lattice is not even")
    return RootSystem(
        gram=tuple(tuple(r) for r in GRAM),
        relation=c,
        edges=EDGES,
        signature=(pos, neg),
        reduced_det=d,
    )


def reduced_gram() -> list[list[int]]:
    keep = [i for i in range(N_ROOTS) if i != _A]
    return [[GRAM[i][j] for j in keep] for i in keep]


def vector_with_pairings(values: Sequence[int],
                         functionals: Sequence[LatticeVector]) -> LatticeVector:
    """The unique vector v with v . f_i = values[i]; raises NotIntegral if it is not a lattice vector."""
    g = reduced_gram()
    rows = [[sum(a * b for a, b in zip(f.reduced(), col)) for col in zip(*g)] for f in functionals]
    x = intmat.solve(rows, list(values))
    if any(xi.denominator != 1 for xi in x):
        raise NotIntegral("pairing data does not come from a lattice vector")
    return LatticeVector.from_reduced([int(xi) for xi in x])


@lru_cache(maxsize=None)
def weyl_vector() -> LatticeVector:
    """Interior reference point: pairs to 1 with every simple root."""
    rho = vector_with_pairings([1] * (N_ROOTS - 1),
                               [alpha(i) for i in range(1, N_ROOTS + 1) if i != ANCHOR])
    if rho.pairings() != (1,) * N_ROOTS:
        raise InvariantViolation("Weyl vector does not pair to 1 with the anchor root")
    return rho


def in_positive_cone(v: LatticeVector) -> bool:
    if v.is_zero():
        return True
    return v.norm() >= 0 and pair(v, weyl_vector()) > 0


def in_chamber(v: LatticeVector) -> bool:
    return all(a >= 0 for a in v.pairings())


def reduce_to_chamber(v: LatticeVector, max_steps: int = 10**6) -> tuple[LatticeVector, list[int]]:
    """Move v into the fundamental chamber by simple reflections.

    Returns the reduced vector and the word (1-based root labels, in the
    order applied).  Each step strictly lowers the pairing with the Weyl
    vector, which bounds the number of steps for vectors of the cone.
    """
    if not in_positive_cone(v):
        raise NotInCone(f"{v} is not in the closed positive cone")
    x = list(v.coords)
    a = list(v.pairings())
    word: list[int] = []
    steps = 0
    while True:
        t = min(a)
        if t >= 0:
            break
        i = a.index(t)
        steps += 1
        if steps > max_steps:
            raise ReductionDiverged(f"no chamber reached after {max_steps} reflections")
        x[i] += t
        row = _ROWS[i]
        for j in range(N_ROOTS):
            if row[j]:
                a[j] += t * row[j]
        word.append(i + 1)
    return LatticeVector(_canon(x)), word


def apply_word(v: LatticeVector, word: Iterable[int]) -> LatticeVector:
    for i in word:
        v = reflect(v, alpha(i))
    return v


def elementary_divisors(vectors: Sequence[LatticeVector]) -> list[int]:
    if not vectors:
        return []
    return intmat.elementary_divisors([list(v.reduced()) for v in vectors])


def saturation_index(vectors: Sequence) -> int:
    """Index of the span of ``vectors`` inside its saturation in II(1,17)."""
    rows = []
    for v in vectors:
        if isinstance(v, LatticeVector):
            rows.append(list(v.reduced()))
            continue
        vals = list(v)
        if any(int(t) != t for t in vals):
            raise NotIntegral("non-integral generator")
        rows.append(list(LatticeVector.from_coords([int(t) for t in vals]).reduced()))
    if not rows:
        return 1
    return prod(intmat.elementary_divisors(rows))


def primitive_vector(v: LatticeVector) -> LatticeVector:
    """Primitive lattice vector on the ray through v."""
    return LatticeVector.from_reduced(intmat.primitive(v.reduced()))
