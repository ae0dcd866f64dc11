"""Planar lattice polygons attached to a configuration B, and their images.

Two polygons matter: the edge polygon of all rows of B, and the collapsed
polygon obtained by replacing every relevant line by its signed edge sum.
Affine maps built from row-wise support values send their vertices to the
exponent vectors of the Chow form, the full discriminant, and the dual-variety
discriminant respectively.  This module also provides Pick-formula lattice
point counts, central-symmetry detection, Newton polytopes of computed
polynomials, and an SVG emitter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InternalIdentityError, InvalidConfiguration
from .intlinalg import det2, primitive_vector, solve_rational
from .lattice import BConfig, compute_stats, relevant_lines, sort_counterclockwise
from .poly import Poly


def _det_row(b: tuple[int, int], u: tuple[int, int]) -> int:
    # Support functional used throughout: det(b, u) = b1*u2 - b2*u1.
    return b[0] * u[1] - b[1] * u[0]


@dataclass(frozen=True)
class LatticePolygon:
    """Convex lattice polygon as a counterclockwise vertex cycle.

    vertices[k+1] - vertices[k] is the k-th (merged) edge; edge_rows[k] lists
    the source row indices contributing to that edge (empty for synthetic
    edges).  A single-point polygon has one vertex and no edges.
    """

    vertices: tuple[tuple[int, int], ...]
    edge_rows: tuple[tuple[int, ...], ...] = ()

    @property
    def is_point(self) -> bool:
        return len(self.vertices) == 1

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        n = len(vs)
        if n == 1:
            return []
        return [
            (vs[(k + 1) % n][0] - vs[k][0], vs[(k + 1) % n][1] - vs[k][1])
            for k in range(n)
        ]

    def twice_area(self) -> int:
        vs = self.vertices
        n = len(vs)
        return sum(
            vs[k][0] * vs[(k + 1) % n][1] - vs[(k + 1) % n][0] * vs[k][1]
            for k in range(n)
        )

    def boundary_lattice_count(self) -> int:
        return sum(math.gcd(abs(e[0]), abs(e[1])) for e in self.edges())

    def lattice_point_count(self) -> int:
        """Pick's formula: points = area + boundary/2 + 1."""
        if self.is_point:
            return 1
        two_a = self.twice_area()
        bnd = self.boundary_lattice_count()
        return 1 + (two_a + bnd) // 2

    def lattice_points(self) -> list[tuple[int, int]]:
        """All lattice points, by horizontal slicing with exact arithmetic."""
        if self.is_point:
            return [self.vertices[0]]
        ys = [v[1] for v in self.vertices]
        pts = []
        vs = self.vertices
        n = len(vs)
        for y in range(min(ys), max(ys) + 1):
            xs: list[Fraction] = []
            for k in range(n):
                (x1, y1), (x2, y2) = vs[k], vs[(k + 1) % n]
                if y1 == y2 == y:
                    xs.extend((Fraction(x1), Fraction(x2)))
                elif min(y1, y2) <= y <= max(y1, y2) and y1 != y2:
                    xs.append(Fraction(x1) + Fraction((y - y1) * (x2 - x1), y2 - y1))
            lo, hi = min(xs), max(xs)
            pts.extend((x, y) for x in range(math.ceil(lo), math.floor(hi) + 1))
        return pts

    def contains(self, point: tuple[int, int]) -> bool:
        if self.is_point:
            return point == self.vertices[0]
        vs = self.vertices
        n = len(vs)
        for k in range(n):
            a, b = vs[k], vs[(k + 1) % n]
            cross = (b[0] - a[0]) * (point[1] - a[1]) - (b[1] - a[1]) * (point[0] - a[0])
            if cross < 0:
                return False
        return True

    def translated(self, dx: int, dy: int) -> "LatticePolygon":
        return LatticePolygon(
            tuple((x + dx, y + dy) for x, y in self.vertices), self.edge_rows
        )


def _chain_polygon(
    edges: list[tuple[tuple[int, int], tuple[int, ...]]]
) -> LatticePolygon:
    """Chain counterclockwise-sorted edges into the anchored polygon.

    Consecutive same-direction edges are merged (their row labels pooled);
    the translate places the lexicographically minimal vertex at the origin,
    and the vertex list starts there.
    """
    merged: list[tuple[tuple[int, int], tuple[int, ...]]] = []
    for vec, rows in edges:
        if merged:
            (pv, prows) = merged[-1]
            if det2(pv, vec) == 0 and pv[0] * vec[0] + pv[1] * vec[1] > 0:
                merged[-1] = ((pv[0] + vec[0], pv[1] + vec[1]), prows + rows)
                continue
        merged.append((vec, rows))
    verts = [(0, 0)]
    for vec, _ in merged[:-1]:
        verts.append((verts[-1][0] + vec[0], verts[-1][1] + vec[1]))
    last = (
        verts[-1][0] + merged[-1][0][0],
        verts[-1][1] + merged[-1][0][1],
    )
    if last != (0, 0):
        raise InternalIdentityError("edge vectors do not close up")
    anchor = min(verts)
    k0 = verts.index(anchor)
    verts = verts[k0:] + verts[:k0]
    rows = [r for _, r in merged]
    rows = rows[k0:] + rows[:k0]
    poly = LatticePolygon(
        tuple((x - anchor[0], y - anchor[1]) for x, y in verts), tuple(rows)
    )
    if poly.twice_area() <= 0:
        raise InternalIdentityError("chained polygon is not positively oriented")
    return poly


def build_PB(b: BConfig) -> LatticePolygon:
    """Edge polygon of all nonzero rows, counterclockwise from angle 0."""
    entries = sort_counterclockwise(b.nonzero_rows())
    if not entries:
        raise InvalidConfiguration("B has no nonzero rows")
    return _chain_polygon([(vec, (i,)) for i, vec in entries])


def build_QB(b: BConfig) -> LatticePolygon:
    """Collapsed polygon: rows off relevant lines plus each line's edge sum."""
    b.require_nonzero_rows("the collapsed polygon")
    lines = relevant_lines(b)
    on_line = {i for line in lines for i in line.member_indices}
    edges: list[tuple[int, tuple[int, int]]] = [
        (i, vec) for i, vec in b.nonzero_rows() if i not in on_line
    ]
    synthetic = [line.b_v for line in lines if line.alpha > 0]
    if not edges and not synthetic:
        return LatticePolygon(((0, 0),))
    tagged = [(i, vec) for i, vec in edges] + [(-1, v) for v in synthetic]
    ordered = sort_counterclockwise(tagged)
    return _chain_polygon(
        [(vec, (i,) if i >= 0 else ()) for i, vec in ordered]
    )


def mu_vector(b: BConfig, p: LatticePolygon | None = None) -> tuple[int, ...]:
    """Row-wise maxima of det(b_i, .) over the anchored edge polygon."""
    if p is None:
        p = build_PB(b)
    return tuple(
        max(_det_row(row, v) for v in p.vertices) if row != (0, 0) else 0
        for row in b.rows
    )


def nu_vector(b: BConfig, q: LatticePolygon | None = None) -> tuple[int, ...]:
    """Row-wise minima of det(b_i, .) over the collapsed polygon."""
    if q is None:
        q = build_QB(b)
    return tuple(
        min(_det_row(row, v) for v in q.vertices) for row in b.rows
    )


def intrinsic_coordinates(
    b: BConfig, v: tuple[int, int], mu: Sequence[int]
) -> tuple[int, ...]:
    coords = tuple(m - _det_row(row, v) for row, m in zip(b.rows, mu))
    if any(c < 0 for c in coords):
        raise InternalIdentityError("negative intrinsic coordinate")
    return coords


def chow_polygon(b: BConfig) -> list[tuple[int, ...]]:
    """Vertices of the Chow polytope, in the user's row order."""
    p = build_PB(b)
    mu = mu_vector(b, p)
    return [intrinsic_coordinates(b, v, mu) for v in p.vertices]


def secondary_polygon(b: BConfig) -> list[tuple[int, ...]]:
    """Vertices of the Newton polytope of the full discriminant."""
    d = compute_stats(b).degree
    return [
        tuple(d - c for c in coords) for coords in chow_polygon(b)
    ]


def newton_polygon_DA(b: BConfig) -> list[tuple[int, ...]]:
    """Vertices of the Newton polytope of the dual-variety discriminant."""
    b.require_nonzero_rows("the discriminant Newton polygon")
    q = build_QB(b)
    nu = nu_vector(b, q)
    return [
        tuple(_det_row(row, v) - m for row, m in zip(b.rows, nu))
        for v in q.vertices
    ]


def degree_via_mu(b: BConfig) -> int:
    total = sum(mu_vector(b))
    if total % 2:
        raise InternalIdentityError("support maxima sum to an odd number")
    return total // 2


def degree_DA(b: BConfig) -> int:
    b.require_nonzero_rows("the discriminant degree")
    d = -sum(nu_vector(b))
    if d < 0:
        raise InternalIdentityError("negative discriminant degree")
    return d


def lattice_point_count(b: BConfig | LatticePolygon) -> int:
    """Number of lattice points of the edge polygon, by Pick's formula."""
    p = build_PB(b) if isinstance(b, BConfig) else b
    return p.lattice_point_count()


def boundary_point_count(b: BConfig | LatticePolygon) -> int:
    p = build_PB(b) if isinstance(b, BConfig) else b
    return p.boundary_lattice_count()


def is_centrally_symmetric(b: BConfig) -> bool:
    """True iff the merged edge multiset of the edge polygon is negation-invariant."""
    edges = build_PB(b).edges()
    bag: dict[tuple[int, int], int] = {}
    for e in edges:
        bag[e] = bag.get(e, 0) + 1
    return all(bag.get((-e[0], -e[1]), 0) == c for e, c in bag.items())


def perp_config(b: BConfig) -> BConfig:
    """Rotate every row by -90 degrees: (b1, b2) -> (b2, -b1)."""
    return BConfig(tuple((r[1], -r[0]) for r in b.rows), b.var_names)


def dehomog_newton(b: BConfig) -> LatticePolygon:
    """Collapsed polygon of the rotated rows, pushed against both axes.

    This is the Newton polygon of the dehomogenized discriminant curve.
    """
    b.require_nonzero_rows("the dehomogenized Newton polygon")
    q = build_QB(perp_config(b))
    if q.is_point:
        return LatticePolygon(((0, 0),))
    dx = -min(v[0] for v in q.vertices)
    dy = -min(v[1] for v in q.vertices)
    return q.translated(dx, dy)


# -- Newton polytopes of computed polynomials ---------------------------


class NewtonHull:
    """Convex hull of the support of a polynomial (at most 2-dimensional here).

    Exposes the vertex set and an exact membership test for exponent vectors.
    """

    def __init__(self, f: Poly):
        if f.is_zero():
            raise InvalidConfiguration("zero polynomial has no Newton polytope")
        pts = sorted(set(f.support()))
        self.dim_ambient = f.ctx.nvars
        self._p0 = pts[0]
        d1 = None
        d2 = None
        for p in pts[1:]:
            d = tuple(a - b for a, b in zip(p, self._p0))
            if d1 is None:
                d1 = d
            elif _independent(d1, d):
                d2 = d
                break
        if d1 is None:
            self._mode = 0
            self.vertices = (self._p0,)
            return
        if d2 is None:
            # Collinear support: endpoints along the primitive direction.
            d = primitive_vector(d1)
            self._dir = d
            axis = next(i for i, x in enumerate(d) if x)
            ks = []
            for p in pts:
                diff = tuple(a - b for a, b in zip(p, self._p0))
                k, ok = _divide_vec(diff, d, axis)
                if not ok:
                    raise InternalIdentityError("support is not collinear after all")
                ks.append((k, p))
            ks.sort()
            self._mode = 1
            self._k_range = (ks[0][0], ks[-1][0])
            self.vertices = (ks[0][1], ks[-1][1])
            return
        self._mode = 2
        self._d1, self._d2 = d1, d2
        proj_axes = _injective_axes(d1, d2)
        self._axes = proj_axes
        proj = {}
        for p in pts:
            key = (p[proj_axes[0]], p[proj_axes[1]])
            proj[key] = p
        hull2d = _convex_hull_2d(list(proj.keys()))
        self._hull2d = hull2d
        self.vertices = tuple(proj[q] for q in hull2d)
        # Every support point must lie in the affine plane of the projection.
        for p in pts:
            if not self._in_plane(p):
                raise InternalIdentityError("polynomial support is not planar")

    def _in_plane(self, p: Sequence[int]) -> bool:
        diff = [a - b for a, b in zip(p, self._p0)]
        mat = [[self._d1[i], self._d2[i]] for i in range(len(diff))]
        return solve_rational(mat, diff) is not None

    def contains(self, exps: Sequence[int]) -> bool:
        exps = tuple(int(e) for e in exps)
        if self._mode == 0:
            return exps == self._p0
        if self._mode == 1:
            diff = tuple(a - b for a, b in zip(exps, self._p0))
            axis = next(i for i, x in enumerate(self._dir) if x)
            k, ok = _divide_vec(diff, self._dir, axis)
            return ok and self._k_range[0] <= k <= self._k_range[1]
        if not self._in_plane(exps):
            return False
        q = (exps[self._axes[0]], exps[self._axes[1]])
        return _point_in_hull_2d(q, self._hull2d)

    def vertex_set(self) -> set[tuple[int, ...]]:
        return set(self.vertices)


def newton_polygon_of(f: Poly) -> NewtonHull:
    return NewtonHull(f)


def _independent(u: Sequence[int], v: Sequence[int]) -> bool:
    for i in range(len(u)):
        for j in range(i + 1, len(u)):
            if u[i] * v[j] - u[j] * v[i]:
                return True
    return False


def _divide_vec(diff, d, axis) -> tuple[int, bool]:
    if diff[axis] % d[axis]:
        return 0, False
    k = diff[axis] // d[axis]
    return k, all(x == k * y for x, y in zip(diff, d))


def _injective_axes(d1, d2) -> tuple[int, int]:
    n = len(d1)
    for i in range(n):
        for j in range(i + 1, n):
            if d1[i] * d2[j] - d1[j] * d2[i]:
                return (i, j)
    raise InternalIdentityError("no injective coordinate projection found")


def _convex_hull_2d(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Andrew monotone chain; returns strict vertices counterclockwise."""
    pts = sorted(set(points))
    if len(pts) == 1:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while (
                len(out) >= 2
                and (out[-1][0] - out[-2][0]) * (p[1] - out[-2][1])
                - (out[-1][1] - out[-2][1]) * (p[0] - out[-2][0])
                <= 0
            ):
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(list(reversed(pts)))
    return lower[:-1] + upper[:-1]


def _point_in_hull_2d(q: tuple[int, int], hull: list[tuple[int, int]]) -> bool:
    if len(hull) == 1:
        return q == hull[0]
    if len(hull) == 2:
        a, b = hull
        cross = (b[0] - a[0]) * (q[1] - a[1]) - (b[1] - a[1]) * (q[0] - a[0])
        if cross:
            return False
        dot = (q[0] - a[0]) * (b[0] - a[0]) + (q[1] - a[1]) * (b[1] - a[1])
        return 0 <= dot <= (b[0] - a[0]) ** 2 + (b[1] - a[1]) ** 2
    n = len(hull)
    for k in range(n):
        a, b = hull[k], hull[(k + 1) % n]
        if (b[0] - a[0]) * (q[1] - a[1]) - (b[1] - a[1]) * (q[0] - a[0]) < 0:
            return False
    return True


# -- SVG ---------------------------------------------------------------

_SVG_UNIT = 20  # pixels per lattice unit


def polygon_svg(p: LatticePolygon, labels: Sequence[str] | None = None) -> str:
    """Render the polygon on a unit grid; one lattice unit is 20 px.

    Edge labels default to the 1-based source row indices recorded on the
    polygon.
    """
    xs = [v[0] for v in p.vertices]
    ys = [v[1] for v in p.vertices]
    pad = 1
    x0, x1 = min(xs) - pad, max(xs) + pad
    y0, y1 = min(ys) - pad, max(ys) + pad
    w = (x1 - x0) * _SVG_UNIT
    h = (y1 - y0) * _SVG_UNIT

    def px(v):
        return ((v[0] - x0) * _SVG_UNIT, (y1 - v[1]) * _SVG_UNIT)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">'
    ]
    for gx in range(x0, x1 + 1):
        X = (gx - x0) * _SVG_UNIT
        out.append(
            f'<line x1="{X}" y1="0" x2="{X}" y2="{h}" stroke="#ddd" stroke-width="1"/>'
        )
    for gy in range(y0, y1 + 1):
        Y = (y1 - gy) * _SVG_UNIT
        out.append(
            f'<line x1="0" y1="{Y}" x2="{w}" y2="{Y}" stroke="#ddd" stroke-width="1"/>'
        )
    if p.is_point:
        X, Y = px(p.vertices[0])
        out.append(f'<circle cx="{X}" cy="{Y}" r="3" fill="black"/>')
    else:
        path = " ".join(
            ("M" if k == 0 else "L") + f"{px(v)[0]},{px(v)[1]}"
            for k, v in enumerate(p.vertices)
        )
        out.append(
            f'<path d="{path} Z" fill="#9ecae1" fill-opacity="0.5" '
            f'stroke="black" stroke-width="2"/>'
        )
        n = len(p.vertices)
        for k in range(n):
            a, b = p.vertices[k], p.vertices[(k + 1) % n]
            if labels is not None:
                label = labels[k] if k < len(labels) else ""
            else:
                label = ",".join(str(i + 1) for i in p.edge_rows[k]) if p.edge_rows else ""
            if not label:
                continue
            mx = (px(a)[0] + px(b)[0]) / 2
            my = (px(a)[1] + px(b)[1]) / 2
            out.append(
                f'<text x="{mx}" y="{my}" font-size="11" fill="#b30000" '
                f'text-anchor="middle">{label}</text>'
            )
        for v in p.vertices:
            X, Y = px(v)
            out.append(f'<circle cx="{X}" cy="{Y}" r="2.5" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out)
