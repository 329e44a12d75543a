"""Exhaustive and sampled invariant sweeps over supports, faces and random l vectors."""
from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from .chambers import (
    END_LABELS,
    NEG,
    POS,
    SLOTS,
    ZERO_SLOT,
    Face,
    coxeter_chamber,
    face_codim,
    make_chambers,
    rc_chamber,
)
from .ias import (
    GAMMA_TABLE,
    IDENTITY,
    comb_type_of_support,
    gamma_block,
    gamma_vectors,
    lambda_of_ell,
    monodromy_product,
    random_ell,
)
from .lattice import pair
from .strata import chamber_generation_index, saturation, stable_type, type2_info

NSUB = 1 << len(POS)
_POS_SETS = [tuple(POS[i] for i in range(len(POS)) if a >> i & 1) for a in range(NSUB)]
_NEG_SETS = [tuple(NEG[i] for i in range(len(NEG)) if b >> i & 1) for b in range(NSUB)]


@dataclass
class AuditResult:
    scope: str
    cases: int = 0
    violations: int = 0
    counterexample: object = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violations == 0 and self.cases > 0

    def payload(self) -> dict:
        out = {"scope": self.scope, "cases": self.cases, "violations": self.violations,
               "passed": self.passed}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        out.update(self.details)
        return out


def supports():
    """Every nonempty support of a face of one refined chamber."""
    yield (ZERO_SLOT,)
    for a in range(1, NSUB):
        for b in range(1, NSUB):
            yield _POS_SETS[a] + _NEG_SETS[b]
            yield _POS_SETS[a] + (ZERO_SLOT,) + _NEG_SETS[b]


def _workers(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("K3FAN_THREADS", "0")) or (os.cpu_count() or 1)
    return max(1, min(threads, 9))


def _map(fn, args, threads: int | None):
    n = _workers(threads)
    if n == 1:
        return [fn(a) for a in args]
    with ProcessPoolExecutor(n) as ex:
        return list(ex.map(fn, args))


def _charges_one(ends: tuple[int, int]) -> tuple[int, tuple | None]:
    L, R = ends
    n = 0
    bad = None
    for S in supports():
        total = sum(s.charge for s in comb_type_of_support(L, R, S).symbols)
        n += 1
        if total != 24 and bad is None:
            bad = (L, R, S, total)
    return n, bad


def audit_charges(threads: int | None = None) -> AuditResult:
    """Charges sum to 24 for every (L, R, support)."""
    res = AuditResult("charges")
    for (n, bad) in _map(_charges_one, list(product(END_LABELS, END_LABELS)), threads):
        res.cases += n
        if bad is not None:
            res.violations += 1
            res.counterexample = res.counterexample or list(map(str, bad))
    return res


def audit_charges_sample(samples: int = 10_000, seed: int = 0) -> AuditResult:
    """Charges of random l vectors, read off the geometric singular points."""
    from .ias import charge_audit, singular_points
    rng = random.Random(seed)
    res = AuditResult("charges", details={"seed": seed, "mode": "sample"})
    for _ in range(samples):
        e = random_ell(rng)
        res.cases += 1
        total = sum(p.charge for p in singular_points(e))
        if total != 24 or charge_audit(e) != 24:
            res.violations += 1
            if res.counterexample is None:
                res.counterexample = {"L": e.L, "R": e.R, "ell": list(e.ell), "total": total}
    return res


def _mirror(S: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted(20 - i for i in S))


def _dims_one(ends: tuple[int, int]) -> tuple[int, int, tuple | None]:
    """Type III faces of one chamber up to the diagram flip; returns (cases, type II rays, worst, bad)."""
    L, R = ends
    n = t2 = 0
    bad = None
    for S in supports():
        if L == R and _mirror(S) < S:
            continue
        ct = comb_type_of_support(L, R, S)
        if ct.type_ii:
            # a Type II face is a ray, whose stratum has dimension 18 - 1
            t2 += 1
            if len(S) > 2 and bad is None:
                bad = (L, R, S, "type II on a non-ray")
            continue
        dim = 18 - face_codim(frozenset(SLOTS) - frozenset(S))
        st = stable_type(ct)
        n += 1
        if not (18 - dim == st.index_sum() == 20 - len(ct)) and bad is None:
            bad = (L, R, S, str(st), dim)
    return n, t2, bad


def audit_dims(threads: int | None = None) -> AuditResult:
    """18 - dim = sum of Dynkin indices = 20 - length on every Type III face, up to the flip."""
    res = AuditResult("dims")
    ends = [(L, R) for L in END_LABELS for R in END_LABELS if L <= R]
    t2 = 0
    for (n, k, bad) in _map(_dims_one, ends, threads):
        res.cases += n
        t2 += k
        if bad is not None:
            res.violations += 1
            res.counterexample = res.counterexample or list(map(str, bad))
    res.details["type_ii_rays_checked"] = t2
    res.details["type_ii_stratum_dim"] = 17
    return res


def audit_monodromy(samples: int = 10_000, seed: int = 0) -> AuditResult:
    """The ordered product of local monodromies around B_LR(l) is the identity."""
    rng = random.Random(seed)
    res = AuditResult("monodromy", details={"seed": seed})
    for _ in range(samples):
        e = random_ell(rng)
        res.cases += 1
        m = monodromy_product(e)
        if m != IDENTITY:
            res.violations += 1
            if res.counterexample is None:
                res.counterexample = {"L": e.L, "R": e.R, "ell": list(e.ell), "product": m}
    return res


def audit_gammas(samples: int = 200, seed: int = 0) -> AuditResult:
    """Gram blocks of the end vectors at both ends and the pairings lambda . gamma_i against the tables."""
    res = AuditResult("gammas", details={"seed": seed})
    tables = {}
    for L in END_LABELS:
        want = GAMMA_TABLE[L]["gram"]
        for side in ("left", "right"):
            got = gamma_block(L, side)
            tables[f"{side}{L}"] = [list(r) for r in got]
            for i in range(3):
                for j in range(3):
                    res.cases += 1
                    if got[i][j] != want[i][j]:
                        res.violations += 1
                        res.counterexample = res.counterexample or {"end": f"{side}{L}", "entry": [i, j]}
    rng = random.Random(seed)
    for _ in range(samples):
        e = random_ell(rng)
        lam = lambda_of_ell(e)
        g = gamma_vectors(e.L, e.R)
        kl, kr = GAMMA_TABLE[e.L]["weights"], GAMMA_TABLE[e.R]["weights"]
        want = list(kl) + [1] * 13 + list(reversed(kr))
        for i in range(19):
            res.cases += 1
            if pair(lam, g[i]) != want[i] * e.ell[i]:
                res.violations += 1
                res.counterexample = res.counterexample or {"L": e.L, "R": e.R, "ell": list(e.ell), "i": i + 1}
        for i in range(3, 16):
            res.cases += 1
            if g[i].norm() != -2 or pair(g[i], g[i - 1]) != 1:
                res.violations += 1
    res.details["tables"] = tables
    return res


def _rays_of(ch) -> list[Face]:
    return [Face(ch, frozenset(SLOTS) - frozenset(s)) for s in ch.ray_subsets()]


def audit_saturation(all_chambers: bool = False) -> AuditResult:
    """gcd lemma against Smith normal form on every ray; by default only on chambers whose functionals generate."""
    res = AuditResult("saturation")
    checked, skipped = [], []
    chambers = [coxeter_chamber()] + list(make_chambers("ram")) + [rc_chamber(L, R) for L in END_LABELS for R in END_LABELS]
    for ch in chambers:
        faces = _rays_of(ch)
        if not all_chambers and chamber_generation_index(faces[0]) != 1:
            skipped.append(ch.name)
            continue
        checked.append(ch.name)
        for f in faces:
            s = saturation(f)
            res.cases += 1
            if not s.agree:
                res.violations += 1
                if res.counterexample is None:
                    res.counterexample = {"chamber": ch.name, "support": sorted(f.support),
                                          "gcd": s.gcd_index, "snf": s.snf_index}
    cox = coxeter_chamber()
    iso = [sorted(s) for s in cox.ray_subsets() if cox.ray(s).norm() == 0]
    d16 = type2_info(Face(rc_chamber(2, 2), frozenset(SLOTS) - {1, 19}))
    e8 = type2_info(Face(rc_chamber(1, 1), frozenset(SLOTS) - {ZERO_SLOT}))
    res.details.update({
        "chambers_checked": checked, "chambers_skipped": skipped,
        "coxeter_isotropic_rays": iso,
        "d16_saturation": d16["coxeter_face_saturation"],
        "e8e8_saturation": saturation(Face(cox, frozenset(SLOTS) - {ZERO_SLOT})).snf_index,
        "d16_degree": d16["degree"], "e8e8_degree": e8["degree"],
    })
    if len(iso) != 2 or res.details["d16_saturation"] != 2 or res.details["e8e8_saturation"] != 1:
        res.violations += 1
    return res
