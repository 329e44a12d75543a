"""Toroidal strata attached to faces of the rational-curve fan."""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Sequence

from . import intmat, rootlat
from .chambers import SLOTS, Face, coxeter_chamber, rc_chamber
from .errors import InvalidFace, NotApplicable, NotTypeIII
from .ias import CombType, comb_type_of_support
from .lattice import LatticeVector, pair, saturation_index


@dataclass(frozen=True)
class StableSymbol:
    family: str  # 'A', 'D', 'E'
    index: int
    prime: bool = False
    affine: bool = False

    def __str__(self) -> str:
        s = self.family + ("'" if self.prime else "") + ("~" if self.affine else "") + str(self.index)
        return s


@dataclass(frozen=True)
class StableType:
    symbols: tuple[StableSymbol, ...]
    type_ii: bool = False

    def index_sum(self) -> int:
        return sum(s.index for s in self.symbols)

    def __str__(self) -> str:
        if self.type_ii:
            if self.symbols[0].family == "D":
                return "D~16"
            return "E~8E~8"
        out = []
        syms = [str(s) for s in self.symbols]
        i = 0
        while i < len(syms):
            j = i
            while syms[i].startswith("A") and j + 1 < len(syms) and syms[j + 1] == syms[i]:
                j += 1
            out.append(syms[i] if j == i else f"{syms[i]}^{j - i + 1}")
            i = j + 1
        return "".join(out)


def stable_type(ct: CombType) -> StableType:
    """Replace Y pairs by D, I_{k+1} by A_k and X_{k+3} by E_k."""
    if ct.type_ii:
        if ct.symbols[0].kind == "Y":
            return StableType((StableSymbol("D", 16, affine=True),), True)
        return StableType((StableSymbol("E", 8, affine=True), StableSymbol("E", 8, affine=True)), True)
    syms = list(ct.symbols)
    out: list[StableSymbol] = []
    i = 0
    while i < len(syms):
        s = syms[i]
        if s.kind == "Y":
            t = syms[i + 1]
            if t.kind != "Y":
                raise ValueError(f"unpaired Y symbol in {ct}")
            out.append(StableSymbol("D", (s.charge - 2) + (t.charge - 2)))
            i += 2
            continue
        if s.kind == "I":
            out.append(StableSymbol("A", s.charge - 1))
        elif s.kind == "X":
            if s.prime:
                out.append(StableSymbol("E", 1, prime=True))
            else:
                out.append(StableSymbol("E", s.charge - 3))
        i += 1
    return StableType(tuple(out))


def face_comb_type(face: Face) -> CombType:
    if face.chamber.ends is None:
        raise InvalidFace("combinatorial types are defined on faces of the rational-curve fan")
    L, R = face.chamber.ends
    S = sorted(face.support)
    if not S:
        raise InvalidFace("the apex has no combinatorial type")
    return comb_type_of_support(L, R, S)


@dataclass(frozen=True)
class StratumDims:
    cone_dim: int
    toroidal_dim: int
    index_sum: int
    length: int

    def consistent(self) -> bool:
        return self.toroidal_dim == self.index_sum == 20 - self.length


def stratum_dims(face: Face) -> StratumDims:
    ct = face_comb_type(face)
    if ct.type_ii:
        raise NotTypeIII(f"{face} is a Type II ray")
    st = stable_type(ct)
    return StratumDims(face.dim, 18 - face.dim, st.index_sum(), len(ct))


# ---------------------------------------------------------------- face lattice

@dataclass(frozen=True)
class LatticeBlock:
    symbol: StableSymbol
    slots: tuple[int, ...]
    gram: tuple[tuple[int, ...], ...]
    saturated_gram: tuple[tuple[int, ...], ...]
    isomorphic: bool
    needed_saturation: bool


@dataclass(frozen=True)
class FaceLattice:
    generators: tuple[LatticeVector, ...]
    rank: int
    blocks: tuple[LatticeBlock, ...]

    def all_blocks_match(self) -> bool:
        return all(b.isomorphic for b in self.blocks)


def _gram(vs: Sequence[LatticeVector]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(pair(a, b) for b in vs) for a in vs)


def _saturate(vs: Sequence[LatticeVector]) -> list[LatticeVector]:
    rows = [list(v.reduced()) for v in vs]
    return [LatticeVector.from_reduced(r) for r in intmat.saturation_basis(rows)]


def _block_slots(L: int, R: int, S: Sequence[int]) -> list[tuple[int, ...]]:
    """Zero slots grouped by the stable-type symbol they belong to, left to right."""
    S = list(S)
    yl = L in (2, 3) and S[0] == 1
    yr = R in (2, 3) and S[-1] == 19
    core = S[1 if yl else 0: len(S) - (1 if yr else 0)]
    out = []
    a, b = core[0], core[-1]
    out.append(tuple(range(2 if yl else 1, a)))
    for c, d in zip(core, core[1:]):
        out.append(tuple(range(c + 1, d)))
    out.append(tuple(range(b + 1, 19 if yr else 20)))
    return out


def face_lattice(face: Face) -> FaceLattice:
    """Span of the vanishing facet functionals, split into stable-type blocks.

    Each block is compared with the reference lattice of its symbol.  When
    the end functionals of a chamber with end label 2 span an imprimitive
    sublattice, the comparison is made after saturating the block inside
    II(1,17) and the block is flagged.
    """
    ct = face_comb_type(face)
    if ct.type_ii:
        raise NotTypeIII(f"{face} is a Type II ray")
    st = stable_type(ct)
    L, R = face.chamber.ends
    funcs = face.chamber.functionals
    groups = _block_slots(L, R, sorted(face.support))
    if len(groups) != len(st.symbols):
        raise AssertionError("block structure does not match the stable type")
    blocks = []
    for sym, slots in zip(st.symbols, groups):
        vs = [funcs[i - 1] for i in slots]
        g = _gram(vs)
        ref = rootlat.reference_gram(sym.family, sym.index, sym.prime)
        iso = rootlat.isomorphic(g, ref)
        sg = g
        needed = False
        if not iso:
            sat = _saturate(vs)
            sg = _gram(sat)
            iso = rootlat.isomorphic(sg, ref)
            needed = True
        blocks.append(LatticeBlock(sym, slots, g, sg, iso, needed))
    gens = tuple(funcs[i - 1] for i in sorted(face.zeros))
    return FaceLattice(gens, intmat.rank([list(v.reduced()) for v in gens]) if gens else 0, tuple(blocks))


# ---------------------------------------------------------------- saturation

@dataclass(frozen=True)
class Saturation:
    gcd_index: int
    snf_index: int
    chamber_generates: bool

    @property
    def agree(self) -> bool:
        return self.gcd_index == self.snf_index


def chamber_generation_index(face: Face) -> int:
    return saturation_index(list(face.chamber.functionals[:8]) + list(face.chamber.functionals[9:]))


def saturation(face: Face) -> Saturation:
    """gcd of the omitted relation coefficients against the Smith normal form index."""
    omitted = [abs(face.chamber.relation[j - 1]) for j in face.support]
    d = reduce(gcd, omitted, 0) or 1
    gens = [face.chamber.functionals[i - 1] for i in sorted(face.zeros)]
    s = saturation_index(gens) if gens else 1
    return Saturation(d, s, chamber_generation_index(face) == 1)


# ---------------------------------------------------------------- moduli

def moduli_descriptor(sym: StableSymbol) -> dict:
    """Local moduli stack attached to one stable-type symbol."""
    k = sym.index
    if sym.affine:
        if sym.family == "E":
            return {"symbol": "E~8", "stack": "[Hom(E_8, Ecurve) : W(E_8)]"}
        return {"symbol": "D~16", "stack": "[Hom(D_16, Ecurve) : O(D_16)]"}
    if sym.family == "A":
        return {"symbol": str(sym), "stack": f"[A^{k} : mu_{k + 1}]", "group_order": k + 1}
    if sym.family == "D":
        return {"symbol": str(sym), "stack": f"[A^{k} : mu_2]", "coarse": f"T/O(D_{k})", "group_order": 2}
    if sym.prime:
        return {"symbol": "E'1", "stack": "[A^1 : mu_4]", "group_order": 4}
    if k >= 3:
        return {"symbol": str(sym), "stack": f"[A^{k} : mu_{9 - k}]", "group_order": 9 - k}
    if k == 2:
        return {"symbol": "E2", "stack": "G_m x A^1", "group_order": 3, "note": "mu_3 acts freely"}
    if k == 1:
        return {"symbol": "E1", "stack": "G_m", "group_order": 1}
    return {"symbol": "E0", "stack": "[pt : mu_3]", "group_order": 3}


# ---------------------------------------------------------------- gluing and Type II

def glued_partners(face: Face) -> list[Face]:
    """Faces sharing the interior data but with end label 2 and 3 swapped where both Y2 symbols appear."""
    L, R = face.chamber.ends
    S = face.support
    swap_l = L in (2, 3) and 1 in S and 2 in S
    swap_r = R in (2, 3) and 19 in S and 18 in S
    out = []
    for sl in ([False, True] if swap_l else [False]):
        for sr in ([False, True] if swap_r else [False]):
            if not (sl or sr):
                continue
            L2 = (5 - L) if sl else L
            R2 = (5 - R) if sr else R
            out.append(Face(rc_chamber(L2, R2), face.zeros))
    return out


def glued_partner(face: Face) -> Face | None:
    ps = glued_partners(face)
    return ps[0] if ps else None


def _d16_plus_index() -> tuple[int, list[int]]:
    """Index of D_16 in the even unimodular lattice D_16^+ built in doubled coordinates."""
    n = 16
    gens = [[2 if j == i else -2 if j == i + 1 else 0 for j in range(n)] for i in range(n - 1)]
    gens.append([0] * (n - 2) + [2, 2])
    glue = [1] * n
    # doubled coordinates: D_16 spanned by 2(e_i - e_{i+1}) and 2(e_15 + e_16), glue (1, ..., 1)
    allgens = gens + [glue]
    lat = _lattice_basis(allgens)
    coords = [intmat.solve(intmat.transpose(lat), g) for g in gens]
    if any(c.denominator != 1 for row in coords for c in row):
        raise AssertionError("D_16 is not contained in D_16^+")
    d = intmat.elementary_divisors([[int(c) for c in row] for row in coords])
    gram = [[sum(a * b for a, b in zip(u, v)) // 4 for v in lat] for u in lat]
    if abs(intmat.det(gram)) != 1 or any(gram[i][i] % 2 for i in range(n)):
        raise AssertionError("constructed D_16^+ is not even unimodular")
    idx = 1
    for x in d:
        idx *= x
    return idx, d


def _lattice_basis(gens: list[list[int]]) -> list[list[int]]:
    """Z-basis of the lattice spanned by possibly dependent integer vectors (row HNF)."""
    a = [list(r) for r in gens]
    n = len(a[0])
    basis = []
    row = 0
    for col in range(n):
        piv = [i for i in range(row, len(a)) if a[i][col] != 0]
        if not piv:
            continue
        while True:
            piv = [i for i in range(row, len(a)) if a[i][col] != 0]
            best = min(piv, key=lambda i: abs(a[i][col]))
            a[row], a[best] = a[best], a[row]
            done = True
            for i in range(row + 1, len(a)):
                if a[i][col]:
                    q = a[i][col] // a[row][col]
                    a[i] = [x - q * y for x, y in zip(a[i], a[row])]
                    if a[i][col]:
                        done = False
            if done:
                break
        basis.append(a[row])
        row += 1
    return basis


def type2_info(face: Face) -> dict:
    """Data of the two Type II rays: stable type, root sublattice and degree over the Baily-Borel boundary."""
    L, R = face.chamber.ends if face.chamber.ends else (None, None)
    S = tuple(sorted(face.support))
    if face.chamber.ends is None:
        raise NotApplicable("Type II data is attached to faces of the rational-curve fan")
    ct = comb_type_of_support(L, R, S)
    if not ct.type_ii:
        raise NotApplicable(f"{face} is not a Type II ray")
    if S == (10,):
        return {"type": "E~8E~8", "root_lattice": "E8 + E8", "degree": 1,
                "group": "W(E8^2) x| Z2"}
    idx, divisors = _d16_plus_index()
    cox = coxeter_chamber()
    gens = [cox.functionals[i - 1] for i in SLOTS if i not in (2, 18)]
    sat = saturation_index(gens)
    return {"type": "D~16", "root_lattice": "D16", "degree": 4 * idx,
            "overlattice_index": idx, "elementary_divisors": divisors,
            "coxeter_face_saturation": sat, "outer_factor": 2,
            "group": "O(D16) with |O(D16) : W(D16)| = 2"}
