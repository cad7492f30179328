"""Fano polygons: validation, edge data, singularity content, normal forms
and combinatorial mutation.

Points of the lattice M are plain ``(x, y)`` integer tuples; covectors in
the dual lattice N use the same representation and pair with points via
:func:`pair`.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

Point = tuple[int, int]
Matrix2 = tuple[tuple[int, int], tuple[int, int]]


class PolygonError(ValueError):
    """Base class for invalid polygon input."""

    def __init__(self, message: str, point: Point | None = None):
        super().__init__(message)
        self.point = point


class NotConvex(PolygonError):
    pass


class OriginNotInterior(PolygonError):
    pass


class NonPrimitiveVertex(PolygonError):
    pass


class NotMutable(PolygonError):
    """Raised when a negative-height slice does not contain the factor."""

    def __init__(self, message: str, height: int):
        super().__init__(message)
        self.height = height


class MutationFault(RuntimeError):
    """A mutation produced something that is not a Fano polygon.

    This can only happen through a bug; mutation of a Fano polygon along
    admissible data is always Fano.
    """


def pair(u: Sequence[int], p: Sequence[int]) -> int:
    return u[0] * p[0] + u[1] * p[1]


def cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def det2(a: Sequence[int], b: Sequence[int]) -> int:
    return a[0] * b[1] - a[1] * b[0]


def is_primitive(p: Sequence[int]) -> bool:
    return math.gcd(p[0], p[1]) == 1


def primitive_perp(v: Sequence[int]) -> Point:
    """A primitive generator of the orthogonal complement of ``v``."""
    g = math.gcd(v[0], v[1])
    return (-v[1] // g, v[0] // g)


def apply_matrix(U: Matrix2, p: Sequence) -> tuple:
    return (U[0][0] * p[0] + U[0][1] * p[1], U[1][0] * p[0] + U[1][1] * p[1])


def matmul(A: Matrix2, B: Matrix2) -> Matrix2:
    return (
        (A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
        (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]),
    )


def inverse_unimodular(U: Matrix2) -> Matrix2:
    d = U[0][0] * U[1][1] - U[0][1] * U[1][0]
    if d not in (1, -1):
        raise ValueError(f"matrix {U} is not unimodular")
    return ((U[1][1] * d, -U[0][1] * d), (-U[1][0] * d, U[0][0] * d))


def convex_hull(points: Iterable[Sequence]) -> list[tuple]:
    """Strict convex hull (no collinear boundary points), counterclockwise.

    Works for int and Fraction coordinates. Returns fewer than three points
    for degenerate input.
    """
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 2:
        return pts
    lower: list[tuple] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return hull


def _rotate_to_min(vertices: list[Point]) -> tuple[Point, ...]:
    i = vertices.index(min(vertices))
    return tuple(vertices[i:] + vertices[:i])


@dataclass(frozen=True)
class FanoPolygon:
    """Counterclockwise vertex list starting at the lexicographically
    smallest vertex. Build instances with :func:`validate_fano`."""

    vertices: tuple[Point, ...]

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self):
        return len(self.vertices)

    def edges(self) -> list[tuple[Point, Point]]:
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def transform(self, U: Matrix2) -> "FanoPolygon":
        return validate_fano([apply_matrix(U, p) for p in self.vertices])

    def boundary_points(self) -> list[Point]:
        pts = []
        for p, q in self.edges():
            g = math.gcd(q[0] - p[0], q[1] - p[1])
            dx, dy = (q[0] - p[0]) // g, (q[1] - p[1]) // g
            pts.extend((p[0] + j * dx, p[1] + j * dy) for j in range(g))
        return pts

    def lattice_points(self) -> list[Point]:
        xs = [p[0] for p in self.vertices]
        ys = [p[1] for p in self.vertices]
        edges = self.edges()
        out = []
        for x in range(min(xs), max(xs) + 1):
            for y in range(min(ys), max(ys) + 1):
                if all(cross(p, q, (x, y)) >= 0 for p, q in edges):
                    out.append((x, y))
        return out

    def interior_points(self) -> list[Point]:
        edges = self.edges()
        return [
            pt for pt in self.lattice_points() if all(cross(p, q, pt) > 0 for p, q in edges)
        ]

    def contains(self, pt: Sequence) -> bool:
        return all(cross(p, q, pt) >= 0 for p, q in self.edges())

    def to_json(self) -> dict:
        return {"vertices": [list(p) for p in self.vertices]}

    @classmethod
    def from_json(cls, data) -> "FanoPolygon":
        if isinstance(data, dict):
            data = data["vertices"]
        return validate_fano([tuple(int(c) for c in p) for p in data])

    def __str__(self):
        return "conv{" + ", ".join(f"({x},{y})" for x, y in self.vertices) + "}"


def validate_fano(points: Iterable[Sequence[int]]) -> FanoPolygon:
    """Check the Fano conditions and return the canonical vertex list.

    Points on the boundary that are not vertices are dropped; a point in the
    strict interior of the hull means the input was not in convex position.
    """
    pts = [(int(p[0]), int(p[1])) for p in points]
    if len(pts) < 3:
        raise NotConvex(f"need at least 3 points, got {len(pts)}")
    hull = convex_hull(pts)
    if len(hull) < 3:
        raise NotConvex("points are collinear; polygon is not full-dimensional")
    n = len(hull)
    for pt in pts:
        if all(cross(hull[i], hull[(i + 1) % n], pt) > 0 for i in range(n)):
            raise NotConvex(f"point {pt} lies in the interior of the hull", pt)
    for v in hull:
        if not is_primitive(v):
            raise NonPrimitiveVertex(f"vertex {v} is not primitive", v)
    if not all(cross(hull[i], hull[(i + 1) % n], (0, 0)) > 0 for i in range(n)):
        raise OriginNotInterior("origin is not in the strict interior", (0, 0))
    return FanoPolygon(_rotate_to_min(hull))


# -- edge data and singularity content ---------------------------------------


@dataclass(frozen=True)
class EdgeData:
    start: Point
    end: Point
    normal: Point
    height: int
    length: int
    t_count: int
    residue: int


@dataclass(frozen=True)
class SingularityContent:
    t_cones: int
    basket: tuple[tuple[int, int], ...]

    def key(self) -> tuple:
        """Comparison key ignoring the cyclic position of basket entries."""
        return (self.t_cones, tuple(sorted(self.basket)))

    def to_json(self) -> dict:
        return {"t_cones": self.t_cones, "basket": [list(b) for b in self.basket]}


def edge_data(P: FanoPolygon) -> list[EdgeData]:
    out = []
    for p, q in P.edges():
        dx, dy = q[0] - p[0], q[1] - p[1]
        length = math.gcd(dx, dy)
        normal = (-dy // length, dx // length)
        height = -pair(normal, p)
        a, m = divmod(length, height)
        out.append(EdgeData(p, q, normal, height, length, a, m))
    return out


def singularity_content(P: FanoPolygon) -> SingularityContent:
    data = edge_data(P)
    return SingularityContent(
        t_cones=sum(e.t_count for e in data),
        basket=tuple((e.residue, e.height) for e in data if e.residue > 0),
    )


def is_t_polygon(P: FanoPolygon) -> bool:
    return all(e.residue == 0 for e in edge_data(P))


def normal_vector_index(P: FanoPolygon) -> int:
    """Index in Z^2 of the span of the primitive inward edge normals.

    For a rank-two integer matrix the product of the Smith invariants is the
    gcd of its 2x2 minors.
    """
    normals = [e.normal for e in edge_data(P)]
    g = 0
    for i in range(len(normals)):
        for j in range(i + 1, len(normals)):
            g = math.gcd(g, det2(normals[i], normals[j]))
    return g


# -- normal form -------------------------------------------------------------


def _hermite_anchor(a: Point, b: Point) -> Matrix2:
    """Unique U in GL(2,Z) with U a = (1,0) and U b = (x, D), D > 0, 0 <= x < D."""
    g, p, q = _xgcd(a[0], a[1])
    assert g == 1
    U = ((p, q), (-a[1], a[0]))
    x, d = apply_matrix(U, b)
    if d < 0:
        U = (U[0], (-U[1][0], -U[1][1]))
        d = -d
    t = x // d
    return ((U[0][0] - t * U[1][0], U[0][1] - t * U[1][1]), U[1])


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        qt, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - qt * x1
        y0, y1 = y1, y0 - qt * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def normal_form_transforms(P: FanoPolygon) -> tuple[FanoPolygon, list[Matrix2]]:
    """Normal form of ``P`` and every unimodular map realising it.

    Each ordered pair of adjacent vertices (in either orientation) is sent to
    its Hermite form; the lexicographically smallest image vertex sequence
    wins. The returned maps differ by automorphisms of the normal form.
    """
    V = P.vertices
    n = len(V)
    best = None
    maps: list[Matrix2] = []
    for i in range(n):
        for step in (1, -1):
            U = _hermite_anchor(V[i], V[(i + step) % n])
            seq = tuple(apply_matrix(U, V[(i + step * j) % n]) for j in range(n))
            if best is None or seq < best:
                best, maps = seq, [U]
            elif seq == best:
                maps.append(U)
    return FanoPolygon(_rotate_to_min(_ccw(list(best)))), maps


def _ccw(seq: list[Point]) -> list[Point]:
    if cross(seq[0], seq[1], seq[2]) < 0:
        seq = seq[::-1]
    return seq


def normal_form(P: FanoPolygon) -> FanoPolygon:
    return normal_form_transforms(P)[0]


# -- mutation ----------------------------------------------------------------


@dataclass(frozen=True)
class MutationData:
    """Mutation along covector ``v`` with factor the segment ``[0, k w]``."""

    v: Point
    w: Point
    k: int = 1

    def __post_init__(self):
        if not (is_primitive(self.v) and is_primitive(self.w)):
            raise ValueError(f"v={self.v} and w={self.w} must be primitive")
        if pair(self.v, self.w) != 0:
            raise ValueError(f"w={self.w} is not orthogonal to v={self.v}")
        if self.k < 1:
            raise ValueError(f"k must be positive, got {self.k}")

    def inverse(self) -> "MutationData":
        return MutationData((-self.v[0], -self.v[1]), self.w, self.k)

    def transform(self, U: Matrix2) -> "MutationData":
        """Mutation data after the lattice change ``p -> U p``."""
        Uinv = inverse_unimodular(U)
        # covectors transform by the inverse transpose
        v = (self.v[0] * Uinv[0][0] + self.v[1] * Uinv[1][0],
             self.v[0] * Uinv[0][1] + self.v[1] * Uinv[1][1])
        return MutationData(v, apply_matrix(U, self.w), self.k)

    def label(self) -> str:
        return f"v=({self.v[0]},{self.v[1]}) w=({self.w[0]},{self.w[1]}) k={self.k}"

    def to_json(self) -> dict:
        return {"v": list(self.v), "w": list(self.w), "k": self.k}


def _slice_frame(v: Point, w: Point) -> tuple[Matrix2, Matrix2]:
    """Basis (w, z) with <z, v> = 1; returns (A, A^-1) with A columns w, z."""
    g, p, q = _xgcd(v[0], v[1])
    z = (p, q)
    A = ((w[0], z[0]), (w[1], z[1]))
    return A, inverse_unimodular(A)


def _slices(coords: list[Point], heights: Iterable[int]) -> dict[int, tuple[Fraction, Fraction]]:
    """Exact extent along the first coordinate of the polygon at each height."""
    n = len(coords)
    out = {}
    for h in heights:
        lo = hi = None
        for i in range(n):
            (s0, h0), (s1, h1) = coords[i], coords[(i + 1) % n]
            if min(h0, h1) <= h <= max(h0, h1):
                if h0 == h1:
                    cand = (Fraction(s0), Fraction(s1))
                else:
                    s = Fraction(s0) + Fraction((h - h0) * (s1 - s0), h1 - h0)
                    cand = (s, s)
                lo = min(cand) if lo is None else min(lo, *cand)
                hi = max(cand) if hi is None else max(hi, *cand)
        out[h] = (lo, hi)
    return out


def mutate_polygon(P: FanoPolygon, m: MutationData) -> FanoPolygon:
    """Apply the combinatorial mutation with data ``m``.

    Working in coordinates (s, h) with h = <x, v>, each slice [l, r] becomes
    [l, r + h k]; for h < 0 this needs r - l >= -h k.
    """
    A, Ainv = _slice_frame(m.v, m.w)
    coords = [apply_matrix(Ainv, p) for p in P.vertices]
    vert_heights = sorted({h for _, h in coords})
    hmin = vert_heights[0]
    for h, (lo, hi) in sorted(_slices(coords, range(hmin, 0)).items()):
        if hi - lo < -h * m.k:
            raise NotMutable(
                f"slice at height {h} has length {hi - lo} < {-h * m.k}", height=h
            )
    new_pts = []
    for h, (lo, hi) in _slices(coords, vert_heights).items():
        new_pts.append((lo, h))
        new_pts.append((hi + h * m.k, h))
    hull = convex_hull(new_pts)
    out = []
    for s, h in hull:
        if s.denominator != 1:
            raise MutationFault(f"non-lattice vertex ({s}, {h}) mutating {P} by {m}")
        out.append(apply_matrix(A, (int(s), h)))
    try:
        return validate_fano(out)
    except PolygonError as exc:
        raise MutationFault(f"mutating {P} by {m} gave {out}: {exc}") from exc


def admissible_mutations(P: FanoPolygon) -> list[MutationData]:
    """All mutation data with v an edge normal (or its negative)."""
    edges = edge_data(P)
    by_normal = {e.normal: e for e in edges}
    covectors = []
    for e in edges:
        for v in (e.normal, (-e.normal[0], -e.normal[1])):
            if v not in covectors:
                covectors.append(v)
    out = []
    for v in covectors:
        e = by_normal.get(v)
        if e is None:
            continue  # minimum of v is a vertex: nothing to contract
        w0 = primitive_perp(v)
        for w in (w0, (-w0[0], -w0[1])):
            for k in range(1, e.t_count + 1):
                m = MutationData(v, w, k)
                try:
                    mutate_polygon(P, m)
                except NotMutable:
                    continue
                out.append(m)
    return out


# -- mutation graph ----------------------------------------------------------


@dataclass
class MutationGraph:
    nodes: list[FanoPolygon]
    edges: list[tuple[int, int, MutationData]]
    depth: list[int]
    truncated: bool
    index: dict[FanoPolygon, int] = field(default_factory=dict, repr=False)

    def __contains__(self, P: FanoPolygon) -> bool:
        return normal_form(P) in self.index

    def to_dot(self) -> str:
        lines = ["graph mutations {"]
        for i, node in enumerate(self.nodes):
            lines.append(f'  n{i} [label="{node}"];')
        for i, j, m in self.edges:
            lines.append(f'  n{i} -- n{j} [label="{m.label()}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "nodes": [node.to_json()["vertices"] for node in self.nodes],
            "edges": [{"source": i, "target": j, **m.to_json()} for i, j, m in self.edges],
            "truncated": self.truncated,
        }


def mutation_graph(P: FanoPolygon, max_nodes: int = 5000, max_depth: int = 3) -> MutationGraph:
    """Breadth-first exploration of mutations, one node per normal form."""
    root = normal_form(P)
    graph = MutationGraph([root], [], [0], False, {root: 0})
    seen_edges: set[tuple[int, int]] = set()
    queue = deque([0])
    while queue:
        i = queue.popleft()
        node = graph.nodes[i]
        at_limit = graph.depth[i] >= max_depth
        for m in admissible_mutations(node):
            nf = normal_form(mutate_polygon(node, m))
            j = graph.index.get(nf)
            if j is None:
                if at_limit or len(graph.nodes) >= max_nodes:
                    graph.truncated = True
                    if at_limit:
                        break
                    continue
                j = len(graph.nodes)
                graph.nodes.append(nf)
                graph.depth.append(graph.depth[i] + 1)
                graph.index[nf] = j
                queue.append(j)
            if at_limit or j == i:
                continue
            key = (min(i, j), max(i, j))
            if key not in seen_edges:
                seen_edges.add(key)
                graph.edges.append((i, j, m))
    return graph


def mutation_path(
    P: FanoPolygon, target: FanoPolygon, max_nodes: int = 5000, max_depth: int = 12
) -> list[tuple[FanoPolygon, MutationData]] | None:
    """Shortest chain of mutations from ``P`` to ``target`` up to normal form.

    Each step is (normal form before the step, mutation data in that normal
    form's coordinates). ``None`` when the bounds are exhausted first.
    """
    start, goal = normal_form(P), normal_form(target)
    if start == goal:
        return []
    parent: dict[FanoPolygon, tuple[FanoPolygon, MutationData] | None] = {start: None}
    frontier = [start]
    for _ in range(max_depth):
        nxt = []
        for node in frontier:
            for m in admissible_mutations(node):
                nf = normal_form(mutate_polygon(node, m))
                if nf in parent:
                    continue
                parent[nf] = (node, m)
                if nf == goal:
                    chain = []
                    cur = nf
                    while parent[cur] is not None:
                        prev, mm = parent[cur]
                        chain.append((prev, mm))
                        cur = prev
                    return chain[::-1]
                if len(parent) >= max_nodes:
                    return None
                nxt.append(nf)
        if not nxt:
            return None
        frontier = nxt
    return None


def enumerate_fano_polygons(radius: int) -> list[FanoPolygon]:
    """Every Fano polygon whose vertices lie in the box [-radius, radius]^2.

    Vertices of such a polygon are primitive points met in angular order
    around the origin; a depth-first search over that order keeps only
    strictly convex chains whose consecutive angular gaps stay below pi.
    """
    prim = [
        (x, y)
        for x in range(-radius, radius + 1)
        for y in range(-radius, radius + 1)
        if (x, y) != (0, 0) and math.gcd(x, y) == 1
    ]
    prim.sort(key=lambda p: math.atan2(p[1], p[0]))
    n = len(prim)
    out: list[FanoPolygon] = []

    def extend(chain: list[int]) -> None:
        first, last = prim[chain[0]], prim[chain[-1]]
        if len(chain) >= 3 and det2(last, first) > 0:
            if cross(prim[chain[-2]], last, first) > 0 and cross(last, first, prim[chain[1]]) > 0:
                out.append(FanoPolygon(_rotate_to_min([prim[i] for i in chain])))
        for j in range(chain[-1] + 1, n):
            p = prim[j]
            if det2(last, p) <= 0:
                break  # angular gap reached pi
            if len(chain) >= 2 and cross(prim[chain[-2]], last, p) <= 0:
                continue
            if len(chain) >= 2 and cross(last, p, first) <= 0:
                continue
            chain.append(j)
            extend(chain)
            chain.pop()

    for i in range(n):
        extend([i])
    return out
