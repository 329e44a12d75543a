import random

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from k3fan.errors import NotInCone
from k3fan.lattice import (
    EDGES,
    GRAM,
    RELATION,
    LatticeVector,
    alpha,
    apply_word,
    build_root_system,
    in_chamber,
    involution,
    pair,
    reduce_to_chamber,
    reduced_gram,
    reflect,
    saturation_index,
    weyl_vector,
)
from k3fan.chambers import beta_left, beta_right, gamma_left, gamma_right

vectors = st.lists(st.integers(-20, 20), min_size=19, max_size=19).map(LatticeVector.from_coords)


def test_root_system_invariants():
    rs = build_root_system()
    assert rs.signature == (1, 17)
    assert abs(rs.reduced_det) == 1
    assert RELATION == (3, 2, 4, 6, 5, 4, 3, 2, 1, 0, -1, -2, -3, -4, -5, -6, -4, -2, -3)


def test_gram_oracle_signature():
    g = np.array(reduced_gram(), dtype=float)
    ev = np.linalg.eigvalsh(g)
    assert (ev > 0).sum() == 1 and (ev < 0).sum() == 17
    assert sympy.Matrix(reduced_gram()).det() == -1


def test_relation_spans_radical():
    ns = sympy.Matrix(GRAM).nullspace()
    assert len(ns) == 1
    v = ns[0] / ns[0][0] * 3
    assert tuple(int(x) for x in v) == RELATION


def test_adjacency_satisfies_row_sums():
    nb = {i: [] for i in range(1, 20)}
    for i, j in EDGES:
        nb[i].append(j)
        nb[j].append(i)
    for i in range(1, 20):
        assert sum(RELATION[j - 1] for j in nb[i]) == 2 * RELATION[i - 1]
    assert sorted(EDGES)[:3] == [(1, 4), (2, 3), (3, 4)]
    assert len(EDGES) == 18


def test_end_vectors():
    bl, gl = beta_left(), gamma_left()
    assert bl.norm() == -8 and gl.norm() == -4 and pair(bl, gl) == -2
    assert (bl - gl) == 2 * alpha(2)
    assert pair(alpha(2), gl) == 1 and alpha(2).norm() == -2
    assert involution(bl) == beta_right() and involution(gl) == gamma_right()


def test_weyl_vector():
    rho = weyl_vector()
    assert rho.pairings() == (1,) * 19
    assert rho.norm() == 620


def test_reflect_examples():
    assert reflect(alpha(4), alpha(1)) == alpha(4) + alpha(1)
    with pytest.raises(ValueError):
        reflect(alpha(4), beta_left())


@given(vectors, vectors)
def test_reflection_is_involutive_isometry(u, v):
    r = alpha(7)
    assert reflect(reflect(u, r), r) == u
    assert pair(reflect(u, r), reflect(v, r)) == pair(u, v)


@given(vectors)
def test_involution(v):
    assert involution(involution(v)) == v
    assert involution(v).norm() == v.norm()
    assert involution(v).pairings() == tuple(reversed(v.pairings()))


@given(vectors, vectors)
def test_representation_well_defined(u, v):
    c = LatticeVector.from_coords(RELATION)
    assert c.is_zero()
    assert pair(u + v, u) == pair(u, u) + pair(v, u)


def test_reduce_interior_and_one_step():
    rho = weyl_vector()
    assert reduce_to_chamber(rho) == (rho, [])
    w, word = reduce_to_chamber(reflect(rho, alpha(2)))
    assert w == rho and len(word) == 1


def test_reduce_rejects_negative_cone():
    with pytest.raises(NotInCone):
        reduce_to_chamber(-weyl_vector())


def test_w_orbits_reduce_to_same_vector():
    rng = random.Random(3)
    rho = weyl_vector()
    for _ in range(1000):
        base = rho + LatticeVector.from_roots({rng.randint(1, 19): rng.randint(0, 3)})
        if base.norm() <= 0:
            continue
        w0, _ = reduce_to_chamber(base)
        word = [rng.randint(1, 19) for _ in range(rng.randint(1, 12))]
        v = apply_word(base, word)
        w1, back = reduce_to_chamber(v)
        assert w1 == w0 and in_chamber(w1)
        assert apply_word(v, back) == w1


@settings(max_examples=50)
@given(vectors)
def test_reduction_preserves_norm(v):
    v = v + 40 * weyl_vector()
    if v.norm() < 0 or pair(v, weyl_vector()) <= 0:
        return
    w, word = reduce_to_chamber(v)
    assert w.norm() == v.norm() and in_chamber(w)
    assert apply_word(v, word) == w


def test_saturation_index_examples():
    assert saturation_index([2 * alpha(2)]) == 2
    assert saturation_index([alpha(i) for i in range(1, 20) if i not in (2, 18)]) == 2
    assert saturation_index([alpha(i) for i in range(1, 20) if i != 10]) == 1
