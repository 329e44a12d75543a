from itertools import combinations
from math import comb

import pytest
import sympy

from k3fan.chambers import (
    NEG,
    POS,
    SLOTS,
    ZERO_SLOT,
    Face,
    coxeter_chamber,
    enumerate_faces,
    face_codim,
    is_valid_face,
    locate,
    make_chambers,
    ramification_chamber,
    rc_chamber,
)
from k3fan.errors import InvalidFace
from k3fan.chambers import beta_left
from k3fan.lattice import ZERO, alpha, reduced_gram, weyl_vector


def _combo(ch):
    total = ZERO
    for r, f in zip(ch.relation, ch.functionals):
        total = total + r * f
    return total


def test_relations_vanish():
    for kind in ("cox", "ram", "rc"):
        for ch in make_chambers(kind):
            assert _combo(ch).is_zero()
            assert sum(1 for r in ch.relation if r > 0) == 9
            assert sum(1 for r in ch.relation if r < 0) == 9
            assert ch.relation[ZERO_SLOT - 1] == 0


def test_chamber_counts_and_heads():
    assert len(make_chambers("cox")) == 1
    assert len(make_chambers("ram")) == 1
    assert len(make_chambers("rc")) == 9
    cox = coxeter_chamber()
    assert sum(r for r in cox.relation if r > 0) == 30
    rc = rc_chamber(1, 1)
    assert rc.relation[:3] == (3, 8, 7) and rc.scales[:3] == (3, 1, 1)
    assert rc.functionals[0] == -beta_left()
    assert (3 * rc.functionals[0] + 8 * alpha(2) + 7 * alpha(3)) == 3 * alpha(1) + 2 * alpha(2) + 4 * alpha(3)
    assert rc_chamber(2, 3).relation[:3] == (1, 4, 7)
    assert rc_chamber(3, 2).relation[-3:] == (-7, -4, -1)
    ram = ramification_chamber()
    assert ram.relation == (3, 2, 4, 3, 5, 4, 3, 2, 1, 0, -1, -2, -3, -4, -5, -3, -4, -2, -3)
    assert ram.functionals[0] == alpha(1) + alpha(4)


def test_face_bijection_conditions():
    assert is_valid_face(frozenset())
    assert not is_valid_face(frozenset(POS))
    assert is_valid_face(frozenset(POS) | frozenset(NEG))
    assert face_codim(frozenset(POS) | frozenset(NEG)) == 17
    with pytest.raises(InvalidFace):
        Face(coxeter_chamber(), frozenset(NEG))


def test_face_counts_by_codim_closed_form():
    cox = coxeter_chamber()
    counts = {}
    for f in enumerate_faces(cox):
        counts[f.dim] = counts.get(f.dim, 0) + 1
    assert sum(counts.values()) == 2 * 511 ** 2 + 2
    assert counts[17] == 19 and counts[1] == 82 and counts[0] == 1
    for dim in range(2, 18):
        k = 18 - dim
        want = sum(comb(9, i) * comb(9, j) * comb(1, k - i - j)
                   for i in range(9) for j in range(9) if 0 <= k - i - j <= 1)
        assert counts[dim] == want


def _kernel_ray(ch, missing):
    g = sympy.Matrix(reduced_gram())
    rows = [list(ch.functionals[i - 1].reduced()) for i in SLOTS if i not in missing]
    ns = (sympy.Matrix(rows) * g).nullspace()
    assert len(ns) == 1
    v = ns[0]
    den = sympy.ilcm(*[x.q for x in v])
    v = [int(x * den) for x in v]
    g0 = sympy.igcd(*v)
    return [x // g0 for x in v]


def test_cox_rays_against_kernel_oracle():
    cox = coxeter_chamber()
    iso = []
    for m in cox.ray_subsets():
        r = cox.ray(m)
        want = _kernel_ray(cox, m)
        assert list(r.reduced()) in (want, [-x for x in want])
        assert cox.contains(r)
        if r.norm() == 0:
            iso.append(m)
        else:
            assert r.norm() > 0
    assert sorted(iso) == [(2, 18), (10,)]


def test_rc_rays_dedupe_to_122():
    seen = set()
    for ch in make_chambers("rc"):
        for m in ch.ray_subsets():
            r = ch.ray(m)
            assert ch.contains(r)
            seen.add(r)
    assert len(seen) == 122


def test_rc_facets_dedupe():
    # a facet is identified with the set of its extreme rays
    keys = set()
    for ch in make_chambers("rc"):
        for i in SLOTS:
            keys.add(Face(ch, frozenset({i})).key())
    assert len(keys) == 159


def test_locate_examples():
    f = locate(weyl_vector())
    assert f.chamber.name == "RC(2,2)"
    assert sorted(f.zeros) == [2, 18] and f.dim == 16
    cox = coxeter_chamber()
    f2 = locate(cox.ray((2, 18)))
    assert sorted(f2.support) == [1, 19] and f2.dim == 1


def test_faces_in_dimension_one_are_rays():
    ch = rc_chamber(1, 3)
    for I in combinations(SLOTS, 17):
        s = frozenset(I)
        if is_valid_face(s) and face_codim(s) == 17:
            assert len(Face(ch, s).extreme_rays()) == 1
