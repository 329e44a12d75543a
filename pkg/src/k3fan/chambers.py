"""Chambers of the three fans and their face lattices.

Every chamber here is a simplicial-like cone cut out by 19 functionals
f_1..f_19 satisfying one positive-coefficient relation
sum(n_i f_i) = 0 with n_i > 0 for slots 1..9, n_10 = 0 and n_i < 0 for
slots 11..19.  Faces are encoded by the set I of vanishing functionals.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from . import intmat
from .errors import InvalidFace, InvariantViolation
from .lattice import (
    LatticeVector,
    ZERO,
    alpha,
    in_positive_cone,
    involution,
    pair,
    reduce_to_chamber,
    reduced_gram,
)

SLOTS = tuple(range(1, 20))
POS = tuple(range(1, 10))
NEG = tuple(range(11, 20))
ZERO_SLOT = 10
END_LABELS = (1, 2, 3)


def beta_left() -> LatticeVector:
    return LatticeVector.from_roots({3: 1, 2: 2, 1: -1})


def gamma_left() -> LatticeVector:
    return LatticeVector.from_roots({3: 1, 1: -1})


def beta_right() -> LatticeVector:
    return LatticeVector.from_roots({17: 1, 18: 2, 19: -1})


def gamma_right() -> LatticeVector:
    return LatticeVector.from_roots({17: 1, 19: -1})


def _left_end(L: int) -> tuple[tuple[LatticeVector, ...], tuple[int, ...], tuple[int, ...]]:
    a1, a2, a3 = alpha(1), alpha(2), alpha(3)
    b, g = beta_left(), gamma_left()
    if L == 1:
        return (-b, a2, a3), (3, 8, 7), (3, 1, 1)
    if L == 2:
        return (b, -g, a3), (1, 4, 7), (2, 2, 1)
    if L == 3:
        return (a2, g, a1), (2, 4, 7), (1, 2, 1)
    raise ValueError(f"end label must be 1, 2 or 3, got {L}")


def _right_end(R: int) -> tuple[tuple[LatticeVector, ...], tuple[int, ...], tuple[int, ...]]:
    a17, a18, a19 = alpha(17), alpha(18), alpha(19)
    b, g = beta_right(), gamma_right()
    if R == 1:
        return (a17, a18, -b), (-7, -8, -3), (1, 1, 3)
    if R == 2:
        return (a17, -g, b), (-7, -4, -1), (1, 2, 2)
    if R == 3:
        return (a19, g, a18), (-7, -4, -2), (1, 2, 1)
    raise ValueError(f"end label must be 1, 2 or 3, got {R}")


@dataclass(frozen=True)
class Chamber:
    name: str
    functionals: tuple[LatticeVector, ...]
    relation: tuple[int, ...]
    scales: tuple[int, ...] = (1,) * 19
    ends: tuple[int, int] | None = None

    def rows(self) -> list[list[int]]:
        """Functionals as linear forms on reduced coordinates."""
        return _rows(self.functionals)

    def values(self, v: LatticeVector) -> tuple[int, ...]:
        return tuple(pair(v, f) for f in self.functionals)

    def contains(self, v: LatticeVector) -> bool:
        return all(x >= 0 for x in self.values(v))

    def zero_set(self, v: LatticeVector) -> frozenset[int]:
        return frozenset(i + 1 for i, x in enumerate(self.values(v)) if x == 0)

    def ray_subsets(self) -> list[tuple[int, ...]]:
        """Missing-slot pairs of the extreme rays, in a fixed order."""
        return [(p, n) for p in POS for n in NEG] + [(ZERO_SLOT,)]

    def ray(self, missing: tuple[int, ...]) -> LatticeVector:
        return _chamber_rays(self)[missing]

    def rays(self) -> dict[tuple[int, ...], LatticeVector]:
        return dict(_chamber_rays(self))

    def __repr__(self) -> str:
        return f"Chamber({self.name})"


def _rows(funcs: tuple[LatticeVector, ...]) -> list[list[int]]:
    g = reduced_gram()
    return [[sum(a * b for a, b in zip(f.reduced(), col)) for col in zip(*g)] for f in funcs]


@lru_cache(maxsize=None)
def _chamber_rays(ch: Chamber) -> dict[tuple[int, ...], LatticeVector]:
    rows = ch.rows()
    out: dict[tuple[int, ...], LatticeVector] = {}
    for missing in ch.ray_subsets():
        sub = [rows[i - 1] for i in SLOTS if i not in missing]
        ker = intmat.kernel(sub)
        if len(ker) != 1:
            raise InvariantViolation(f"{ch.name}: rays of face missing {missing} span {len(ker)} dims")
        v = LatticeVector.from_reduced(ker[0])
        vals = ch.values(v)
        if vals[missing[0] - 1] < 0:
            v = -v
            vals = ch.values(v)
        if any(x < 0 for x in vals) or any(vals[i - 1] == 0 for i in missing):
            raise InvariantViolation(f"{ch.name}: ray missing {missing} is not extreme")
        if not in_positive_cone(v):
            raise InvariantViolation(f"{ch.name}: ray missing {missing} is outside the positive cone")
        out[missing] = v
    return out


def _check_relation(ch: Chamber) -> None:
    total = ZERO
    for n, f in zip(ch.relation, ch.functionals):
        total = total + n * f
    if not total.is_zero():
        raise InvariantViolation(f"{ch.name}: facet relation fails")
    signs = [(n > 0) - (n < 0) for n in ch.relation]
    if signs != [1] * 9 + [0] + [-1] * 9:
        raise InvariantViolation(f"{ch.name}: relation has the wrong sign pattern")


@lru_cache(maxsize=None)
def coxeter_chamber() -> Chamber:
    from .lattice import RELATION
    ch = Chamber("COX", tuple(alpha(i) for i in SLOTS), RELATION)
    _check_relation(ch)
    return ch


@lru_cache(maxsize=None)
def ramification_chamber() -> Chamber:
    funcs = [alpha(i) for i in SLOTS]
    funcs[0] = alpha(1) + alpha(4)
    funcs[18] = alpha(16) + alpha(19)
    rel = (3, 2, 4, 3, 5, 4, 3, 2, 1, 0, -1, -2, -3, -4, -5, -3, -4, -2, -3)
    ch = Chamber("RAM", tuple(funcs), rel)
    _check_relation(ch)
    return ch


@lru_cache(maxsize=None)
def rc_chamber(L: int, R: int) -> Chamber:
    lf, ln, lk = _left_end(L)
    rf, rn, rk = _right_end(R)
    middle = tuple(alpha(i) for i in range(4, 17))
    funcs = lf + middle + rf
    rel = ln + tuple(range(6, -7, -1)) + rn
    scales = lk + (1,) * 13 + rk
    ch = Chamber(f"RC({L},{R})", funcs, rel, scales, (L, R))
    _check_relation(ch)
    return ch


def make_chambers(kind: str) -> list[Chamber]:
    kind = kind.lower()
    if kind == "cox":
        return [coxeter_chamber()]
    if kind == "ram":
        return [ramification_chamber()]
    if kind == "rc":
        return [rc_chamber(L, R) for L in END_LABELS for R in END_LABELS]
    raise ValueError(f"unknown fan {kind!r}; expected cox, ram or rc")


def is_valid_face(I: frozenset[int]) -> bool:
    """A vanishing set is a face iff it contains all positive slots exactly when it contains all negative ones."""
    return set(POS) <= I if set(NEG) <= I else not set(POS) <= I


def face_codim(I: frozenset[int]) -> int:
    return len(I) - 1 if set(POS) <= I else len(I)


@dataclass(frozen=True)
class Face:
    chamber: Chamber
    zeros: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if not set(self.zeros) <= set(SLOTS):
            raise InvalidFace(f"slots out of range: {sorted(self.zeros)}")
        if not is_valid_face(self.zeros):
            raise InvalidFace(f"{sorted(self.zeros)} is not the vanishing set of a face")

    @property
    def support(self) -> frozenset[int]:
        return frozenset(SLOTS) - self.zeros

    @property
    def codim(self) -> int:
        return face_codim(self.zeros)

    @property
    def dim(self) -> int:
        return 18 - self.codim

    def extreme_rays(self) -> list[LatticeVector]:
        rays = _chamber_rays(self.chamber)
        return [v for m, v in rays.items() if not (set(m) & self.zeros)]

    def key(self) -> "FaceKey":
        return FaceKey(tuple(sorted(v.coords for v in self.extreme_rays())))

    def interior_point(self) -> LatticeVector:
        total = ZERO
        for v in self.extreme_rays():
            total = total + v
        return total

    def __repr__(self) -> str:
        return f"Face({self.chamber.name}, zeros={sorted(self.zeros)})"


@dataclass(frozen=True, order=True)
class FaceKey:
    """Sorted tuple of the primitive extreme rays; equal keys mean equal cones."""
    rays: tuple[tuple[int, ...], ...]

    def involuted(self) -> "FaceKey":
        return FaceKey(tuple(sorted(involution(LatticeVector(r)).coords for r in self.rays)))


def extreme_rays(face: Face) -> list[LatticeVector]:
    return face.extreme_rays()


def face_key(face: Face) -> FaceKey:
    return face.key()


def enumerate_faces(chamber: Chamber) -> Iterator[Face]:
    """All faces, apex included, ordered by increasing codimension."""
    for k in range(0, 20):
        for I in combinations(SLOTS, k):
            s = frozenset(I)
            if is_valid_face(s):
                yield Face(chamber, s)


def end_label(b: int, c: int) -> int:
    """End chamber from the two pairings of one end; ties go to the smaller label."""
    if b <= 0:
        return 1
    if c <= 0:
        return 2
    return 3


def locate_vector(v: LatticeVector) -> tuple[LatticeVector, Face]:
    """W-reduce v and find the face of the refined fan containing it in its relative interior."""
    w, _ = reduce_to_chamber(v)
    L = end_label(pair(w, beta_left()), pair(w, gamma_left()))
    R = end_label(pair(w, beta_right()), pair(w, gamma_right()))
    ch = rc_chamber(L, R)
    vals = ch.values(w)
    if any(x < 0 for x in vals):
        raise InvariantViolation(f"{w} is not in {ch.name}")
    return w, Face(ch, ch.zero_set(w))


def locate(v: LatticeVector) -> Face:
    return locate_vector(v)[1]


def ram_wj_image(slots: frozenset[int], swap_left: bool, swap_right: bool) -> frozenset[int]:
    """Slot relabelling of a ramification face under the reflections in alpha_1 and alpha_19."""
    perm = {i: i for i in SLOTS}
    if swap_left:
        perm[1], perm[4] = 4, 1
    if swap_right:
        perm[16], perm[19] = 19, 16
    return frozenset(perm[i] for i in slots)
