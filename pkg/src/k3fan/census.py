"""Face census of the fans modulo W or Gamma = W x <iota>.

Faces of a chamber are indexed by (A, B, z): A and B are the positive and
negative slots in the support, z records whether the zero slot is in the
support.  The extreme rays of such a face are the rays missing (p, n) with
p in A, n in B, plus the ray missing the zero slot when z = 1.  Each face is
keyed by the bitmask of its extreme rays over a global ray table, which is
an exact canonical form of the cone; equal keys are equal cones.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .chambers import (
    NEG,
    POS,
    ZERO_SLOT,
    make_chambers,
    ram_wj_image,
    ramification_chamber,
)
from .errors import ResourceLimit
from .lattice import LatticeVector, involution, reduce_to_chamber

NSUB = 1 << 9
FACES_PER_CHAMBER = 2 * (NSUB - 1) ** 2 + 2


@dataclass(frozen=True)
class Expectation:
    quantity: str
    value: int
    basis: str


# Expected counts keyed by (fan, group).
EXPECTED: dict[tuple[str, str], list[Expectation]] = {
    ("cox", "W"): [
        Expectation("maximal", 1, "single chamber"),
        Expectation("facets", 19, "one per simple root"),
        Expectation("rays", 82, "81 pairs (p, n) plus the zero-slot ray"),
        Expectation("total", 522244, "closed form 2N^2 + 2 with N = 2^9 - 1"),
    ],
    ("cox", "Gamma"): [
        Expectation("maximal", 1, "single chamber"),
        Expectation("facets", 10, "iota orbits of simple roots"),
        Expectation("rays", 46, "iota orbits of rays"),
        Expectation("total", 261634, "closed form N^2 + N + 2"),
    ],
    ("rc", "W"): [
        Expectation("maximal", 9, "nine end combinations"),
        Expectation("facets", 27, "published census"),
        Expectation("rays", 122, "published census"),
        Expectation("total", 2093060, "closed form 2N^2 + 2 with N = 2^10 - 1"),
    ],
    ("rc", "Gamma"): [
        Expectation("maximal", 6, "published census"),
        Expectation("facets", 14, "published census"),
        Expectation("rays", 67, "published census"),
        Expectation("total", 1047554, "published census"),
    ],
    ("ram", "W"): [
        Expectation("facets", 17, "published census"),
        Expectation("rays", 63, "published census"),
    ],
    ("ram", "Gamma"): [
        Expectation("facets", 9, "published census"),
        Expectation("rays", 35, "published census"),
    ],
}


@dataclass
class CensusReport:
    fan: str
    group: str
    by_dim: dict[int, int]
    counts: dict[str, int]
    iota_fixed: dict[int, int] | None = None
    details: dict = field(default_factory=dict)
    seconds: float = 0.0
    peak_bytes: int = 0
    expected: list[Expectation] | None = None

    def checks(self) -> list[dict]:
        out = []
        table = self.expected if self.expected is not None else EXPECTED.get((self.fan, self.group), [])
        for e in table:
            got = self.counts.get(e.quantity)
            if got is None:
                continue
            out.append({"quantity": e.quantity, "expected": e.value, "observed": got,
                        "basis": e.basis, "pass": got == e.value})
        return out

    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks())

    def payload(self) -> dict:
        d = {
            "fan": self.fan,
            "group": self.group,
            "by_dim": {str(k): v for k, v in sorted(self.by_dim.items())},
            "counts": self.counts,
            "checks": self.checks(),
        }
        if self.iota_fixed is not None:
            d["iota_fixed_by_dim"] = {str(k): v for k, v in sorted(self.iota_fixed.items())}
        if self.details:
            d["details"] = self.details
        return d


def load_expectations(path: str) -> dict[tuple[str, str], list[Expectation]]:
    """Alternative expectation table: JSON mapping "fan/group" to {quantity: value}."""
    import json
    with open(path) as fh:
        raw = json.load(fh)
    out = {}
    for key, vals in raw.items():
        fan, group = key.split("/")
        out[(fan.lower(), group)] = [Expectation(q, int(v), f"override from {os.path.basename(path)}")
                                     for q, v in vals.items()]
    return out


def _threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("K3FAN_THREADS", "1") or 1)
    return max(1, threads)


class _RayTable:
    def __init__(self):
        self.index: dict[tuple[int, ...], int] = {}
        self.vectors: list[LatticeVector] = []

    def id(self, v: LatticeVector) -> int:
        k = v.coords
        if k not in self.index:
            self.index[k] = len(self.vectors)
            self.vectors.append(v)
        return self.index[k]


def _popcounts() -> np.ndarray:
    return np.array([bin(i).count("1") for i in range(NSUB)], dtype=np.int8)


def _bit_words(ids: list[int], words: int) -> np.ndarray:
    """Rows of uint64 words with the given bit set in each row."""
    out = np.zeros((len(ids), words), dtype=np.uint64)
    for r, b in enumerate(ids):
        out[r, b // 64] = np.uint64(1) << np.uint64(b % 64)
    return out


def _chamber_masks(pn_ids: np.ndarray, zero_id: int, words: int) -> np.ndarray:
    """Keys of every face of one chamber, shape (FACES_PER_CHAMBER, words).

    pn_ids[i, j] is the global id of the ray missing (POS[i], NEG[j]).  Row
    order: (A, B, z) for A, B in 1..511 and z in {0, 1}, then the zero-slot
    ray, then the apex.
    """
    bits = _bit_words(list(pn_ids.reshape(-1)), words).reshape(9, 9, words)
    # M[i, B] = OR of bits (i, j) over j in B
    M = np.zeros((9, NSUB, words), dtype=np.uint64)
    for B in range(1, NSUB):
        low = (B & -B).bit_length() - 1
        M[:, B] = M[:, B & (B - 1)] | bits[:, low]
    full = np.zeros((NSUB, NSUB, words), dtype=np.uint64)
    for A in range(1, NSUB):
        low = (A & -A).bit_length() - 1
        full[A] = full[A & (A - 1)] | M[low]
    inner = full[1:, 1:].reshape(-1, words)
    zbit = _bit_words([zero_id], words)[0]
    out = np.empty((FACES_PER_CHAMBER, words), dtype=np.uint64)
    n = inner.shape[0]
    out[0:2 * n:2] = inner
    out[1:2 * n:2] = inner | zbit
    out[2 * n] = zbit
    out[2 * n + 1] = 0
    return out


def _face_dims() -> np.ndarray:
    pc = _popcounts().astype(np.int16)
    ab = (pc[1:, None] + pc[None, 1:]).reshape(-1)
    dims = np.empty(FACES_PER_CHAMBER, dtype=np.int16)
    n = ab.shape[0]
    dims[0:2 * n:2] = ab - 1
    dims[1:2 * n:2] = ab
    dims[2 * n] = 1
    dims[2 * n + 1] = 0
    return dims


def _face_index_to_support(idx: int) -> tuple[int, int, int]:
    """(A, B, z) for a row of ``_chamber_masks``; A = B = 0 for the last two rows."""
    n = (NSUB - 1) ** 2
    if idx < 2 * n:
        ab, z = divmod(idx, 2)
        a, b = divmod(ab, NSUB - 1)
        return a + 1, b + 1, z
    return (0, 0, 1) if idx == 2 * n else (0, 0, 0)


def _void(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    return a.view(np.dtype((np.void, a.dtype.itemsize * a.shape[1]))).reshape(-1)


def _lex_min(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise lexicographic minimum of two word arrays (most significant word last)."""
    words = a.shape[1]
    less = np.zeros(a.shape[0], dtype=bool)
    decided = np.zeros(a.shape[0], dtype=bool)
    for w in range(words - 1, -1, -1):
        lt = a[:, w] < b[:, w]
        gt = a[:, w] > b[:, w]
        less |= ~decided & lt
        decided |= lt | gt
    return np.where(less[:, None], a, b)


def face_census(fan: str, group: str = "W", dims: set[int] | None = None,
                threads: int | None = None, max_bytes: int | None = None,
                max_seconds: float | None = None) -> CensusReport:
    """Count faces of the fan modulo W (``group='W'``) or Gamma."""
    fan = fan.lower()
    if group not in ("W", "Gamma"):
        raise ValueError("group must be 'W' or 'Gamma'")
    if fan == "ram":
        return ram_census(group)
    start = time.monotonic()
    chambers = make_chambers(fan)
    table = _RayTable()
    per = []
    for ch in chambers:
        rays = ch.rays()
        pn = np.array([[table.id(rays[(p, n)]) for n in NEG] for p in POS], dtype=np.int64)
        z = table.id(rays[(ZERO_SLOT,)])
        per.append((ch, rays, pn, z))
    iota_pn = []
    for ch, rays, pn, z in per:
        ipn = np.array([[table.id(involution(rays[(p, n)])) for n in NEG] for p in POS], dtype=np.int64)
        iz = table.id(involution(rays[(ZERO_SLOT,)]))
        iota_pn.append((ipn, iz))
    nrays = len(table.vectors)
    words = (nrays + 63) // 64
    want_gamma = group == "Gamma"
    est = len(chambers) * FACES_PER_CHAMBER * words * 8 * (4 if want_gamma else 2)
    if max_bytes is not None and est > max_bytes:
        raise ResourceLimit(f"census needs about {est} bytes, cap is {max_bytes}")

    dims_all = _face_dims()
    sel = np.ones(FACES_PER_CHAMBER, dtype=bool) if dims is None else np.isin(dims_all, sorted(dims))

    def build(i: int):
        ch, rays, pn, z = per[i]
        m = _chamber_masks(pn, z, words)[sel]
        if want_gamma:
            ipn, iz = iota_pn[i]
            mi = _chamber_masks(ipn, iz, words)[sel]
            return m, mi
        return m, None

    nthreads = _threads(threads)
    if nthreads > 1:
        with ThreadPoolExecutor(nthreads) as ex:
            parts = list(ex.map(build, range(len(per))))
    else:
        parts = [build(i) for i in range(len(per))]
    if max_seconds is not None and time.monotonic() - start > max_seconds:
        raise ResourceLimit(f"census exceeded {max_seconds} s while building keys")

    keys = np.concatenate([p[0] for p in parts])
    fdims = np.concatenate([dims_all[sel]] * len(parts))
    _, first = np.unique(_void(keys), return_index=True)
    w_keys = keys[first]
    w_dims = fdims[first]
    _check_dim_consistency(keys, fdims)
    details = {"global_rays": nrays, "faces_enumerated": int(keys.shape[0])}
    iota_fixed = None
    if want_gamma:
        ikeys = np.concatenate([p[1] for p in parts])[first]
        fixed = np.all(ikeys == w_keys, axis=1)
        canon = _lex_min(w_keys, ikeys)
        _, gfirst = np.unique(_void(canon), return_index=True)
        g_dims = w_dims[gfirst]
        by_dim = _hist(g_dims)
        iota_fixed = _hist(w_dims[fixed])
        w_hist = _hist(w_dims)
        for d in set(w_hist) | set(by_dim):
            if 2 * by_dim.get(d, 0) != w_hist.get(d, 0) + iota_fixed.get(d, 0):
                raise AssertionError(f"orbit count identity fails in dimension {d}")
        details["w_by_dim"] = {str(k): v for k, v in sorted(w_hist.items())}
    else:
        by_dim = _hist(w_dims)
    if max_seconds is not None and time.monotonic() - start > max_seconds:
        raise ResourceLimit(f"census exceeded {max_seconds} s")
    counts = {"total": sum(by_dim.values())}
    if dims is None or 18 in dims:
        counts["maximal"] = by_dim.get(18, 0)
    if dims is None or 17 in dims:
        counts["facets"] = by_dim.get(17, 0)
    if dims is None or 1 in dims:
        counts["rays"] = by_dim.get(1, 0)
    if dims is not None:
        counts.pop("total")
    peak = int(keys.nbytes * (2 if want_gamma else 1))
    return CensusReport(fan, group, by_dim, counts, iota_fixed, details,
                        time.monotonic() - start, peak)


def _hist(d: np.ndarray) -> dict[int, int]:
    vals, cnt = np.unique(d, return_counts=True)
    return {int(v): int(c) for v, c in zip(vals, cnt)}


def _check_dim_consistency(keys: np.ndarray, fdims: np.ndarray) -> None:
    order = np.argsort(_void(keys), kind="stable")
    k = keys[order]
    d = fdims[order]
    same = np.all(k[1:] == k[:-1], axis=1)
    if np.any(same & (d[1:] != d[:-1])):
        raise AssertionError("two faces with equal ray sets have different dimensions")


def ram_census(group: str = "W") -> CensusReport:
    """Facets and rays of the ramification chamber modulo W or Gamma.

    Rays are classified twice: by W-reduction of the ray vectors into the
    fundamental chamber, and by the slot swaps of the parabolic subgroup
    generated by the reflections in alpha_1 and alpha_19.
    """
    start = time.monotonic()
    ch = ramification_chamber()
    rays = ch.rays()
    reduced: dict[LatticeVector, list[tuple[int, ...]]] = {}
    for m, v in rays.items():
        w, _ = reduce_to_chamber(v)
        reduced.setdefault(w, []).append(m)
    if group == "Gamma":
        classes: dict[LatticeVector, list[tuple[int, ...]]] = {}
        for w, ms in reduced.items():
            classes.setdefault(min(w, involution(w)), []).extend(ms)
    else:
        classes = reduced
    isotropic = sorted(sorted(ms) for w, ms in classes.items() if w.norm() == 0)

    def wj_orbit(slots: frozenset[int]) -> frozenset[frozenset[int]]:
        out = {ram_wj_image(slots, a, b) for a in (False, True) for b in (False, True)}
        if group == "Gamma":
            out |= {frozenset(20 - i for i in s) for s in out}
        return frozenset(out)

    facet_orbits = {wj_orbit(frozenset({i})) for i in range(1, 20)}
    ray_orbits = {wj_orbit(frozenset(m)) for m in rays}
    counts = {
        "facets": len(facet_orbits),
        "rays": len(classes),
        "rays_type_iii": len(classes) - len(isotropic),
    }
    evidence = []
    for w, ms in sorted(classes.items(), key=lambda kv: sorted(kv[1])):
        evidence.append({"members": [list(m) for m in sorted(ms)], "norm": w.norm(),
                         "reduced_pairings": list(w.pairings())})
    details = {
        "rays_by_parabolic_swaps": len(ray_orbits),
        "orbit_evidence": evidence,
        "isotropic_ray_classes": [[list(m) for m in ms] for ms in isotropic],
    }
    return CensusReport("ram", group, {1: len(classes), 17: len(facet_orbits)}, counts,
                        None, details, time.monotonic() - start, 0)
