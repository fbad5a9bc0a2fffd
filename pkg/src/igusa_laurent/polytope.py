"""Newton polytope at infinity, the support function d and the first meet locus."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .laurent import Exponent, LaurentPolynomial


class DegeneratePolytopeError(ValueError):
    pass


def dot(a, b) -> int:
    return a[0] * b[0] + a[1] * b[1]


def cross(a, b) -> int:
    return a[0] * b[1] - a[1] * b[0]


def primitive(a) -> tuple[int, int]:
    g = gcd(a[0], a[1])
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return (a[0] // g, a[1] // g)


def convex_hull(points) -> list[Exponent]:
    """Vertices of the convex hull in counterclockwise order (Andrew's monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross((out[-1][0] - out[-2][0], out[-1][1] - out[-2][1]),
                                          (p[0] - out[-2][0], p[1] - out[-2][1])) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


@dataclass(frozen=True)
class Face:
    """A face of the Newton polytope, identified by its dimension and support points."""

    dim: int
    points: tuple[Exponent, ...]
    normal: tuple[int, int] | None = field(default=None, compare=False)

    def label(self) -> str:
        if self.dim == 2:
            return "Gamma"
        return "{" + ";".join(f"{a},{b}" for a, b in self.points) + "}"

    def to_json(self) -> dict:
        out = {"dim": self.dim, "points": [list(p) for p in self.points]}
        if self.normal is not None:
            out["normal"] = list(self.normal)
        return out


@dataclass(frozen=True)
class Facet:
    normal: tuple[int, int]
    offset: int
    endpoints: tuple[int, int]


class NewtonPolytope:
    """Convex hull of supp(f); requires dimension 2."""

    def __init__(self, support_points):
        self.support = tuple(sorted(set(support_points)))
        hull = convex_hull(self.support)
        if len(hull) < 3:
            raise DegeneratePolytopeError("degenerate polytope: the Newton polytope has dimension < 2")
        self.vertices: list[Exponent] = hull
        r = len(hull)
        self.facets: list[Facet] = []
        for i in range(r):
            v, w = hull[i], hull[(i + 1) % r]
            n = primitive((-(w[1] - v[1]), w[0] - v[0]))
            self.facets.append(Facet(n, dot(n, v), (i, (i + 1) % r)))
        self._faces = None

    def normals(self) -> list[tuple[int, int]]:
        return [F.normal for F in self.facets]

    def d(self, a) -> int:
        return min(dot(a, v) for v in self.vertices)

    def meet(self, a) -> Face:
        if a[0] == 0 and a[1] == 0:
            return self.full_face()
        m = self.d(a)
        pts = tuple(x for x in self.support if dot(a, x) == m)
        verts = [v for v in self.vertices if dot(a, v) == m]
        if len(verts) == 1:
            return Face(0, (verts[0],))
        return Face(1, pts, primitive(a))

    def full_face(self) -> Face:
        return Face(2, self.support)

    def faces(self) -> list[Face]:
        """All faces: vertices, edges (one per facet), and the polytope itself."""
        if self._faces is None:
            out = [Face(0, (v,)) for v in self.vertices]
            for F in self.facets:
                pts = tuple(x for x in self.support if dot(F.normal, x) == F.offset)
                out.append(Face(1, pts, F.normal))
            out.append(self.full_face())
            self._faces = out
        return list(self._faces)

    def to_json(self) -> dict:
        return {
            "vertices": [list(v) for v in self.vertices],
            "facets": [{"normal": list(F.normal), "offset": F.offset,
                        "vertices": [list(self.vertices[i]) for i in F.endpoints]}
                       for F in self.facets],
        }


def newton_polytope(f: LaurentPolynomial) -> NewtonPolytope:
    if not f or f.is_constant():
        raise DegeneratePolytopeError("f must be non-constant")
    return NewtonPolytope(f)


def d_value(a, P: NewtonPolytope) -> int:
    return P.d(a)


def first_meet_locus(a, P: NewtonPolytope) -> Face:
    return P.meet(a)


def support_faces(points) -> list[Face]:
    """Faces of conv(points) in any dimension 0, 1 or 2.

    The non-degeneracy test needs this for lower-dimensional supports, which
    NewtonPolytope itself rejects.
    """
    pts = tuple(sorted(set(points)))
    hull = convex_hull(pts)
    if len(hull) >= 3:
        return NewtonPolytope(pts).faces()
    if len(hull) == 1:
        return [Face(0, pts)]
    a, b = hull
    n = primitive((-(b[1] - a[1]), b[0] - a[0]))
    return [Face(0, (a,)), Face(0, (b,)), Face(1, pts, n)]
