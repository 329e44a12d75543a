"""Unimodular triangulations of B_LR(l) and local charge computation.

B_LR(l) is cut into unit-width vertical cylinders; cutting each cylinder
along the base line gives a trapezoid with integral vertical sides of
lengths H(k), H(k+1) and integral slopes.  Trapezoid k lives in its own
affine chart (x, y) with 0 <= y <= H(x); the upper half of the polygon is
y <= H(x)/2 and the lower half is laid out above it.  Junction
singularities on the circle x = k sit at the lattice point
ceil(H(k)/2), i.e. half a unit above the seam when H(k) is odd.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotTypeIII
from .ias import CombType, EllVector, comb_type, edge_x, edge_y2, polygon_vertices, validate

Point = tuple[int, int]
# affine map p -> M p + t on column vectors
Affine = tuple[tuple[tuple[int, int], tuple[int, int]], tuple[int, int]]
ID: Affine = (((1, 0), (0, 1)), (0, 0))

# linear part of the fold gluing at a vertical end edge is -[[1, 0], [FOLD_SHEAR, 1]]
FOLD_SHEAR = 4


def apply(a: Affine, p: Point) -> Point:
    (m, t) = a
    return (m[0][0] * p[0] + m[0][1] * p[1] + t[0], m[1][0] * p[0] + m[1][1] * p[1] + t[1])


def apply_lin(a: Affine, v: Point) -> Point:
    m = a[0]
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


def compose(a: Affine, b: Affine) -> Affine:
    """a after b."""
    (ma, _), (mb, tb) = a, b
    m = ((ma[0][0] * mb[0][0] + ma[0][1] * mb[1][0], ma[0][0] * mb[0][1] + ma[0][1] * mb[1][1]),
         (ma[1][0] * mb[0][0] + ma[1][1] * mb[1][0], ma[1][0] * mb[0][1] + ma[1][1] * mb[1][1]))
    return (m, apply(a, tb))


def inverse(a: Affine) -> Affine:
    (m, t) = a
    d = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if d not in (1, -1):
        raise ValueError("not invertible over Z")
    mi = ((m[1][1] * d, -m[0][1] * d), (-m[1][0] * d, m[0][0] * d))
    ti = apply((mi, (0, 0)), t)
    return (mi, (-ti[0], -ti[1]))


def vertical_shear(m: int, x0: int) -> Affine:
    """(x, y) -> (x, y + m (x - x0))."""
    return (((1, 0), (m, 1)), (0, -m * x0))


@dataclass
class Triangle:
    chart: int
    pts: tuple[Point, Point, Point]  # counter-clockwise


@dataclass
class TriangulatedIAS:
    ell: EllVector
    type_ii: bool
    heights: list[int]
    triangles: list[Triangle] = field(default_factory=list)
    # glue[t][e] = (t2, e2, map from chart of t2 to chart of t); edge e joins corners e, e+1
    glue: list[list[tuple[int, int, Affine]]] = field(default_factory=list)
    corner_vertex: list[list[int]] = field(default_factory=list)
    vertex_count: int = 0
    edge_id: list[list[int]] = field(default_factory=list)
    singular: dict[int, dict] = field(default_factory=dict)
    junction_rows: dict[int, int] = field(default_factory=dict)

    @property
    def width(self) -> int:
        return len(self.heights) - 1

    _corners: dict[int, list[tuple[int, int]]] | None = None

    def corners_of(self, v: int) -> list[tuple[int, int]]:
        if self._corners is None:
            idx: dict[int, list[tuple[int, int]]] = {}
            for t, cv in enumerate(self.corner_vertex):
                for i in range(3):
                    idx.setdefault(cv[i], []).append((t, i))
            self._corners = idx
        return self._corners.get(v, [])

    def vertex_position(self, v: int) -> tuple[int, Point]:
        t, i = self.corners_of(v)[0]
        return self.triangles[t].chart, self.triangles[t].pts[i]

    def area(self) -> Fraction:
        """Total lattice area; each unimodular triangle counts 1/2."""
        return Fraction(len(self.triangles), 2)


def heights(e: EllVector) -> list[int]:
    """Developed cylinder circumference H(x) = 2 h(x) at each integer x."""
    verts = polygon_vertices(e)
    W = verts[-1][0]
    H = [0] * (W + 1)
    xs, ys = edge_x(e.L, e.R), edge_y2(e.L, e.R)
    # upper boundary: walk non-vertical edges
    for i in range(19):
        if xs[i] == 0 or e.ell[i] == 0:
            continue
        (x0, y0) = verts[i]
        for d in range(e.ell[i] + 1):
            H[x0 + d] = y0 + ys[i] * d
    if W == 0:
        raise NotTypeIII("degenerate polygon")
    return H


def _strip_triangles(k: int, p: int, q: int) -> list[tuple[Point, Point, Point]]:
    """Zig-zag triangulation of the trapezoid with left column 0..p and right column 0..q."""
    out = []
    i = j = 0
    while i < p or j < q:
        left = i < p and (j == q or (2 * i + 1) * q <= (2 * j + 1) * p)
        if left:
            out.append(((k, i), (k + 1, j), (k, i + 1)))
            i += 1
        else:
            out.append(((k, i), (k + 1, j), (k + 1, j + 1)))
            j += 1
    return out


def triangulate(e: EllVector) -> TriangulatedIAS:
    validate(e)
    ct = comb_type(e)
    if ct.type_ii:
        return TriangulatedIAS(e, True, [])
    H = heights(e)
    W = len(H) - 1
    slope = [H[k + 1] - H[k] for k in range(W)]
    sigma = {}
    for k in range(1, W):
        if slope[k] != slope[k - 1]:
            sigma[k] = -(-H[k] // 2)
    T = TriangulatedIAS(e, False, H)
    T.junction_rows = dict(sigma)
    for k in range(W):
        for tri in _strip_triangles(k, H[k], H[k + 1]):
            T.triangles.append(Triangle(k, tri))
    lookup: dict[tuple[int, frozenset], list[tuple[int, int]]] = {}
    for t, tri in enumerate(T.triangles):
        for ei in range(3):
            key = (tri.chart, frozenset((tri.pts[ei], tri.pts[(ei + 1) % 3])))
            lookup.setdefault(key, []).append((t, ei))

    def fold_left() -> Affine:
        mu = slope[0] - FOLD_SHEAR
        return (((-1, 0), (mu, -1)), (0, H[0]))

    def fold_right() -> Affine:
        mu = slope[W - 1] + FOLD_SHEAR
        return (((-1, 0), (mu, -1)), (2 * W, H[W] - mu * W))

    def neighbour(t: int, ei: int) -> tuple[int, Affine]:
        tri = T.triangles[t]
        k = tri.chart
        p, q = tri.pts[ei], tri.pts[(ei + 1) % 3]
        ymax = max(p[1], q[1])
        if p[0] == q[0]:
            x = p[0]
            if x == k:
                if k == 0:
                    f = fold_left()
                    phi = f if 2 * ymax <= H[0] else inverse(f)
                    return 0, phi
                s = vertical_shear(slope[k] - slope[k - 1], k) if k in sigma and ymax > sigma[k] else ID
                return k - 1, s
            if x == W:
                f = fold_right()
                phi = f if 2 * ymax <= H[W] else inverse(f)
                return k, phi
            s = vertical_shear(slope[k + 1] - slope[k], k + 1) if (k + 1) in sigma and ymax > sigma[k + 1] else ID
            return k + 1, inverse(s)
        pts = {p, q}
        if pts == {(k, H[k]), (k + 1, H[k + 1])}:
            b2t = vertical_shear(slope[k], k)
            b2t = (b2t[0], (0, b2t[1][1] + H[k]))
            return k, b2t
        if pts == {(k, 0), (k + 1, 0)}:
            b2t = vertical_shear(slope[k], k)
            b2t = (b2t[0], (0, b2t[1][1] + H[k]))
            return k, inverse(b2t)
        return k, ID

    for t, tri in enumerate(T.triangles):
        row = []
        for ei in range(3):
            c2, phi = neighbour(t, ei)
            p, q = tri.pts[ei], tri.pts[(ei + 1) % 3]
            inv = inverse(phi)
            key = (c2, frozenset((apply(inv, p), apply(inv, q))))
            cands = [c for c in lookup.get(key, []) if c != (t, ei)]
            if len(cands) != 1:
                raise AssertionError(f"edge {p}-{q} of triangle {t} has {len(cands)} partners")
            row.append((cands[0][0], cands[0][1], phi))
        T.glue.append(row)
    _identify(T)
    _mark_singular(T, ct)
    return T


def _identify(T: TriangulatedIAS) -> None:
    n = len(T.triangles)
    parent = list(range(3 * n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    eparent = list(range(3 * n))

    def efind(a: int) -> int:
        while eparent[a] != a:
            eparent[a] = eparent[eparent[a]]
            a = eparent[a]
        return a

    for t, tri in enumerate(T.triangles):
        for ei in range(3):
            t2, e2, phi = T.glue[t][ei]
            p = tri.pts[ei]
            q2 = T.triangles[t2].pts
            a = q2[e2]
            # corner of t2 that lands on p
            if apply(phi, a) == p:
                pa, pb = e2, (e2 + 1) % 3
            else:
                pa, pb = (e2 + 1) % 3, e2
            parent[find(3 * t + ei)] = find(3 * t2 + pa)
            parent[find(3 * t + (ei + 1) % 3)] = find(3 * t2 + pb)
            eparent[efind(3 * t + ei)] = efind(3 * t2 + e2)
    roots: dict[int, int] = {}
    T.corner_vertex = [[roots.setdefault(find(3 * t + i), len(roots)) for i in range(3)] for t in range(n)]
    T.vertex_count = len(roots)
    eroots: dict[int, int] = {}
    T.edge_id = [[eroots.setdefault(efind(3 * t + i), len(eroots)) for i in range(3)] for t in range(n)]


@dataclass(frozen=True)
class VertexStar:
    point: Point
    edges: tuple[Point, ...]  # primitive edge vectors in one developed chart, ccw
    edge_ids: tuple[int, ...]
    monodromy: Affine


def vertex_star(T: TriangulatedIAS, v: int) -> VertexStar:
    """Walk counter-clockwise around v, developing every triangle into the first chart."""
    corners = T.corners_of(v)
    if not corners:
        raise ValueError(f"no vertex {v}")
    t0, i0 = corners[0]
    t, i = t0, i0
    M = ID
    p = T.triangles[t0].pts[i0]
    edges: list[Point] = []
    ids: list[int] = []
    for _ in range(4 * len(corners) + 8):
        pts = T.triangles[t].pts
        a = apply(M, pts[(i + 1) % 3])
        edges.append((a[0] - p[0], a[1] - p[1]))
        ids.append(T.edge_id[t][i])
        # cross the edge from corner i to corner i+2, which is edge index i+2
        ei = (i + 2) % 3
        t2, e2, phi = T.glue[t][ei]
        M = compose(M, phi)
        q2 = T.triangles[t2].pts
        # corner of t2 mapping to our vertex
        here = pts[i]
        cand = [e2, (e2 + 1) % 3]
        j = next(c for c in cand if apply(phi, q2[c]) == here)
        t, i = t2, j
        if (t, i) == (t0, i0):
            if apply(M, p) != p:
                raise AssertionError("monodromy does not fix the vertex")
            return VertexStar(p, tuple(edges), tuple(ids), M)
    raise AssertionError(f"walk around vertex {v} did not close")


def vertex_charge(T: TriangulatedIAS, v: int) -> int:
    """Q = 12 + sum(d_i - 3) over the cyclic fan of primitive edge vectors at v."""
    st = vertex_star(T, v)
    e = list(st.edges)
    n = len(e)

    def at(j: int) -> Point:
        # e_{j+n} is the monodromy image of e_j
        v = e[j % n]
        for _ in range(j // n):
            v = apply_lin(st.monodromy, v)
        return v

    total = 0
    for i in range(1, n + 1):
        a, b, c = at(i - 1), at(i), at(i + 1)
        s = (a[0] + c[0], a[1] + c[1])
        if s[0] * b[1] - s[1] * b[0] != 0:
            raise AssertionError(f"edge vectors around vertex {v} are not a unimodular fan")
        d = s[0] // b[0] if b[0] else s[1] // b[1]
        total += d - 3
    return 12 + total


def _mark_singular(T: TriangulatedIAS, ct: CombType) -> None:
    """Locate the singular vertices and attach their comb symbols left to right."""
    H = T.heights
    W = len(H) - 1
    spots: list[tuple[int, Point]] = []
    if H[0] == 0:
        spots.append((0, (0, 0)))
    else:
        spots.append((0, (0, 0)))
        spots.append((0, (0, H[0] // 2)))
    for k in sorted(T.junction_rows):
        spots.append((k, (k, T.junction_rows[k])))
    if H[W] == 0:
        spots.append((W - 1, (W, 0)))
    else:
        spots.append((W - 1, (W, H[W] // 2)))
        spots.append((W - 1, (W, 0)))
    where: dict[tuple[int, Point], int] = {}
    for t, tri in enumerate(T.triangles):
        for i in range(3):
            where.setdefault((tri.chart, tri.pts[i]), T.corner_vertex[t][i])
    if len(spots) != len(ct.symbols):
        raise AssertionError(f"{len(spots)} singular spots for type {ct}")
    for sym, (chart, pt) in zip(ct.symbols, spots):
        key = (chart, pt)
        if key not in where:
            # the spot may only be present in the neighbouring chart
            key = (chart - 1, pt) if (chart - 1, pt) in where else (chart + 1, pt)
        v = where[key]
        T.singular[v] = {"symbol": str(sym), "charge": sym.charge, "position": pt,
                         "marked": marked_rays(sym)}


def marked_rays(sym) -> list[tuple[int, int]]:
    """Primitive marked directions of the local model, when the symbol carries them."""
    if sym.kind == "X" and sym.prime:
        return [(1, -4), (1, 4)]
    if sym.kind == "Y" and sym.prime:
        return [(0, 1)]
    return []


@dataclass(frozen=True)
class DivisorLine:
    kind: str  # 'horizontal' or 'vertical'
    x: int | None
    weight: int
    edge_ids: tuple[int, ...]


def ia_divisor(T: TriangulatedIAS) -> list[DivisorLine]:
    """Base segment with weight 1 and the vertical line through each singular column, weighted by total charge."""
    if T.type_ii:
        return []
    base = []
    for t, tri in enumerate(T.triangles):
        for i in range(3):
            p, q = tri.pts[i], tri.pts[(i + 1) % 3]
            if p[1] == 0 and q[1] == 0 and p[0] != q[0]:
                base.append(T.edge_id[t][i])
    lines = [DivisorLine("horizontal", None, 1, tuple(sorted(set(base))))]
    charge_at: dict[int, int] = {}
    for v, info in T.singular.items():
        x = info["position"][0]
        charge_at[x] = charge_at.get(x, 0) + info["charge"]
    for x in sorted(charge_at):
        ids = set()
        for t, tri in enumerate(T.triangles):
            for i in range(3):
                p, q = tri.pts[i], tri.pts[(i + 1) % 3]
                if p[0] == q[0] == x:
                    ids.add(T.edge_id[t][i])
        lines.append(DivisorLine("vertical", x, charge_at[x], tuple(sorted(ids))))
    return lines


def divisor_balancing(T: TriangulatedIAS, lines: list[DivisorLine]) -> dict[int, Point]:
    """Weighted sum of divisor edge directions at every nonsingular divisor vertex."""
    weight: dict[int, int] = {}
    for ln in lines:
        for i in ln.edge_ids:
            weight[i] = weight.get(i, 0) + ln.weight
    touched = set()
    for t in range(len(T.triangles)):
        for i in range(3):
            if T.edge_id[t][i] in weight:
                touched.add(T.corner_vertex[t][i])
                touched.add(T.corner_vertex[t][(i + 1) % 3])
    out = {}
    for v in sorted(touched - set(T.singular)):
        st = vertex_star(T, v)
        sx = sy = 0
        for vec, eid in zip(st.edges, st.edge_ids):
            w = weight.get(eid, 0)
            sx += w * vec[0]
            sy += w * vec[1]
        out[v] = (sx, sy)
    return out


def polygon_area(e: EllVector) -> Fraction:
    """Euclidean area of the doubled polygon Q (shoelace on the upper boundary)."""
    verts = [(Fraction(x), Fraction(y, 2)) for x, y in polygon_vertices(e)]
    a = Fraction(0)
    for (x0, y0), (x1, y1) in zip(verts, verts[1:]):
        a += x0 * y1 - x1 * y0
    # closing edge along the base contributes nothing; P has area |a|/2, Q twice that
    return abs(a)
