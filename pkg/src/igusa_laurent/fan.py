"""Cones and fans subordinated to a Newton polytope.

Rays are primitive integer vectors. Angular order is decided by exact cross
products only.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key

from .polytope import Face, NewtonPolytope, cross, primitive

E1 = (1, 0)
E2 = (0, 1)

TAG_NORMAL = "D"
TAG_AXIS = "E"
TAG_INSERTED = "E'"


@dataclass(frozen=True)
class Cone:
    generators: tuple[tuple[int, int], ...]
    face_tau: Face
    det: int = 0

    @property
    def dim(self) -> int:
        return len(self.generators)

    def is_simple(self) -> bool:
        return self.dim == 1 or abs(self.det) == 1

    def contains(self, a) -> bool:
        """Closed-cone membership for a vector a."""
        if self.dim == 1:
            g = self.generators[0]
            return cross(g, a) == 0 and g[0] * a[0] + g[1] * a[1] >= 0
        u, v = self.generators
        return cross(u, a) >= 0 and cross(a, v) >= 0

    def contains_interior(self, a) -> bool:
        if self.dim == 1:
            g = self.generators[0]
            return cross(g, a) == 0 and g[0] * a[0] + g[1] * a[1] > 0
        u, v = self.generators
        return cross(u, a) > 0 and cross(a, v) > 0

    def to_json(self) -> dict:
        return {"generators": [list(g) for g in self.generators], "det": self.det,
                "face": self.face_tau.to_json()}


@dataclass
class Fan:
    cones: list[Cone]
    tags: dict[tuple[int, int], str]

    def rays(self) -> list[tuple[int, int]]:
        return [c.generators[0] for c in self.cones if c.dim == 1]

    def two_cones(self) -> list[Cone]:
        return [c for c in self.cones if c.dim == 2]

    def to_json(self) -> dict:
        return {
            "rays": [{"ray": list(r), "tag": self.tags.get(r, TAG_INSERTED)} for r in self.rays()],
            "cones": [c.to_json() for c in self.cones],
        }


def _angle_cmp(a, b) -> int:
    """Counterclockwise order for vectors within an open half plane containing the quadrant."""
    c = cross(a, b)
    return -1 if c > 0 else (1 if c < 0 else 0)


def _tags(rays, P: NewtonPolytope, inserted=()) -> dict:
    normals = set(P.normals())
    out = {}
    for r in rays:
        if r in normals:
            out[r] = TAG_NORMAL
        elif r in (E1, E2) and r not in inserted:
            out[r] = TAG_AXIS
        else:
            out[r] = TAG_INSERTED
    return out


def _cones_from_rays(rays, P: NewtonPolytope, closed_loop: bool) -> list[Cone]:
    cones = [Cone((r,), P.meet(r)) for r in rays]
    n = len(rays)
    pairs = [(rays[i], rays[(i + 1) % n]) for i in range(n if closed_loop else n - 1)]
    for u, v in pairs:
        sample = (u[0] + v[0], u[1] + v[1])
        cones.append(Cone((u, v), P.meet(sample), cross(u, v)))
    return cones


def build_normal_fan(P: NewtonPolytope) -> Fan:
    """The normal fan F_0: facet normal rays and the cones between consecutive normals."""
    rays = list(P.normals())
    cones = _cones_from_rays(rays, P, closed_loop=True)
    return Fan(cones, {r: TAG_NORMAL for r in rays})


def attainable_fan(P: NewtonPolytope) -> Fan:
    """Common refinement of the normal fan with the first quadrant (the fan F_A)."""
    inner = [n for n in P.normals() if n[0] > 0 and n[1] > 0]
    rays = sorted(set(inner) | {E1, E2}, key=cmp_to_key(_angle_cmp))
    return Fan(_cones_from_rays(rays, P, closed_loop=False), _tags(rays, P))


def _smooth_chain(u, v) -> list[tuple[int, int]]:
    """Rays strictly between u and v resolving cone(u, v) minimally (Hirzebruch-Jung).

    Each step takes the lattice point w with cross(u, w) = 1 inside the cone that is
    closest to u; these are the boundary points of the hull of the nonzero lattice
    points of the cone.
    """
    out = []
    while cross(u, v) > 1:
        D = cross(u, v)
        _, s, t = _ext_gcd(u[0], u[1])
        w = (-t, s)  # cross(u, w) = u0*s + u1*t = 1
        k = -(cross(w, v) // D)
        w = (w[0] + k * u[0], w[1] + k * u[1])
        out.append(w)
        u = w
    return out


def _ext_gcd(a: int, b: int):
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return (g, y, x - (a // b) * y)


def refine_to_simple(F: Fan, P: NewtonPolytope, insert_diagonal: bool = False) -> Fan:
    """Minimal smooth refinement F_+ of a simplicial fan.

    With insert_diagonal, a fan consisting of the single simple quadrant cone is
    additionally split along (1, 1).
    """
    rays = F.rays()
    new_rays = []
    inserted = []
    for i, r in enumerate(rays):
        new_rays.append(r)
        if i + 1 < len(rays):
            chain = _smooth_chain(r, rays[i + 1])
            new_rays.extend(chain)
            inserted.extend(chain)
    if insert_diagonal and new_rays == [E1, E2]:
        new_rays = [E1, (1, 1), E2]
        inserted.append((1, 1))
    tags = dict(F.tags)
    for r in inserted:
        tags[r] = TAG_INSERTED
    cones = _cones_from_rays(new_rays, P, closed_loop=False)
    return Fan(cones, {r: tags.get(r, TAG_INSERTED) for r in new_rays})


def fundamental_lattice_points(c: Cone) -> list[tuple[int, int]]:
    """Lattice points of the half-open parallelogram spanned by the generators."""
    if c.dim == 1:
        return [(0, 0)]
    a1, a2 = c.generators
    D = cross(a1, a2)
    xs = [0, a1[0], a2[0], a1[0] + a2[0]]
    ys = [0, a1[1], a2[1], a1[1] + a2[1]]
    out = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            # h = l1*a1 + l2*a2 with l1 = cross(h, a2)/D, l2 = cross(a1, h)/D
            n1 = cross((x, y), a2)
            n2 = cross(a1, (x, y))
            if D > 0:
                ok = 0 <= n1 < D and 0 <= n2 < D
            else:
                ok = D < n1 <= 0 and D < n2 <= 0
            if ok:
                out.append((x, y))
    return out


def classify_edges(F: Fan, P: NewtonPolytope) -> list[tuple[tuple[int, int], str]]:
    normals = set(P.normals())
    out = []
    for r in F.rays():
        if r in normals:
            out.append((r, TAG_NORMAL))
        elif r in (E1, E2) and F.tags.get(r) != TAG_INSERTED:
            out.append((r, TAG_AXIS))
        else:
            out.append((r, TAG_INSERTED))
    return out


__all__ = [
    "Cone", "Fan", "build_normal_fan", "attainable_fan", "refine_to_simple",
    "fundamental_lattice_points", "classify_edges", "primitive",
]
