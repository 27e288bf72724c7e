"""Rational convex polytopes with dual representations.

A Polytope carries both its vertex list and its facet inequalities, plus the
full face lattice computed from vertex–facet incidence.  Everything is exact;
degenerate inputs (empty, unbounded, lower-dimensional) are rejected rather
than repaired.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .feasibility import feasible_point
from .linalg import (DimensionError, IntVector, Vector, dot, frac, kernel_basis,
                     primitive, rank, vadd, vec, vneg, vscale, vsub)


class DegenerateInput(ValueError):
    """Input polytope/cone is empty, unbounded, or not full-dimensional."""


@dataclass(frozen=True)
class Halfspace:
    """The set ``normal·x ≥ offset`` (``>`` when strict).

    The normal is a primitive integer vector; together with the offset this
    makes the representation of a rational halfspace unique.
    """
    normal: IntVector
    offset: Fraction
    strict: bool = False

    def satisfied(self, x: Sequence) -> bool:
        s = dot(self.normal, x)
        return s > self.offset if self.strict else s >= self.offset

    def satisfied_scaled(self, nums: Sequence[int], den: int) -> bool:
        """Test the point (nums/den) using integer arithmetic only."""
        lhs = sum(n * a for n, a in zip(self.normal, nums))
        rhs = self.offset
        # lhs/den ≥ rhs  ⟺  lhs·rhs.den ≥ rhs.num·den   (den > 0)
        left = lhs * rhs.denominator
        right = rhs.numerator * den
        return left > right if self.strict else left >= right

    def complement(self) -> "Halfspace":
        """The complementary halfspace (closed flips to strict and back)."""
        return Halfspace(tuple(-a for a in self.normal), -self.offset,
                         not self.strict)

    def tight_at(self, x: Sequence) -> bool:
        return dot(self.normal, x) == self.offset


def halfspace(normal: Sequence, offset, strict: bool = False) -> Halfspace:
    """Canonical halfspace from a rational normal and offset."""
    n = vec(normal)
    if all(a == 0 for a in n):
        raise ValueError("halfspace: zero normal")
    prim = primitive(n)
    # primitive() scales by a positive rational; recover the factor from any
    # nonzero coordinate to scale the offset consistently.
    for a, b in zip(n, prim):
        if a != 0:
            scale = Fraction(b) / a
            break
    return Halfspace(prim, frac(offset) * scale, strict)


@dataclass(frozen=True)
class Face:
    """A nonempty face, identified by its vertex set and tight facet set."""
    dim: int
    vertex_ids: tuple[int, ...]
    facet_ids: tuple[int, ...]


@dataclass(frozen=True)
class Cone:
    """A (possibly shifted) polyhedral cone with both representations.

    Every constraint hyperplane passes through the apex, so the cone equals
    apex + {nonnegative combinations of the generators}.
    """
    apex: Vector
    generators: tuple[IntVector, ...]
    constraints: tuple[Halfspace, ...]
    lineality_dim: int

    @property
    def dim(self) -> int:
        return len(self.apex)

    def contains(self, x: Sequence) -> bool:
        return all(h.satisfied(x) for h in self.constraints)

    def is_pointed(self) -> bool:
        return self.lineality_dim == 0

    def is_simplicial(self) -> bool:
        return (self.lineality_dim == 0 and len(self.generators) == self.dim
                and rank(self.generators) == self.dim)


def lineality_dim(c: Cone) -> int:
    """Dimension of the largest linear subspace contained in the cone."""
    return c.lineality_dim


def _lineality_of_normals(normals: Sequence[IntVector], dim: int) -> int:
    if not normals:
        return dim
    return dim - rank(normals)


def extreme_rays(constraints: Sequence[Halfspace], dim: int) -> tuple[IntVector, ...]:
    """Extreme rays of the pointed cone {y : n·y ≥ 0 for each constraint normal}.

    Rays are found as kernels of (dim-1)-subsets of the normals, filtered by
    feasibility; this is the same exhaustive style as vertex enumeration.
    """
    normals = [h.normal for h in constraints]
    rays: list[IntVector] = []
    seen = set()
    subsets = combinations(range(len(normals)), dim - 1) if dim > 1 else [()]
    for subset in subsets:
        rows = [normals[i] for i in subset] or [(0,) * dim]
        ker = kernel_basis(rows)
        if len(ker) != 1:
            continue
        r = primitive(ker[0])
        for cand in (r, tuple(-a for a in r)):
            if cand in seen:
                continue
            if all(dot(n, cand) >= 0 for n in normals):
                seen.add(cand)
                rays.append(cand)
    return tuple(rays)


def cone_constraints_from_rays(rays: Sequence[IntVector], dim: int,
                               apex: Sequence = None) -> tuple[Halfspace, ...]:
    """Facet inequalities of the full-dimensional pointed cone spanned by rays."""
    if rank(rays) != dim:
        raise DegenerateInput("cone is not full-dimensional")
    apex = vec(apex) if apex is not None else tuple(Fraction(0) for _ in range(dim))
    out: list[Halfspace] = []
    seen = set()
    subsets = combinations(range(len(rays)), dim - 1) if dim > 1 else [()]
    for subset in subsets:
        rows = [rays[i] for i in subset] or [(0,) * dim]
        ker = kernel_basis(rows)
        if len(ker) != 1:
            continue
        h = primitive(ker[0])
        sides = [dot(h, r) for r in rays]
        if all(s >= 0 for s in sides):
            pass
        elif all(s <= 0 for s in sides):
            h = tuple(-a for a in h)
        else:
            continue
        if h not in seen:
            seen.add(h)
            out.append(Halfspace(h, dot(h, apex), False))
    return tuple(out)


def cone_from_rays(apex: Sequence, rays: Sequence[IntVector]) -> Cone:
    """Full-dimensional pointed cone from its extreme ray directions."""
    apex = vec(apex)
    dim = len(apex)
    rays = tuple(primitive(r) for r in rays)
    constraints = cone_constraints_from_rays(rays, dim, apex)
    cone = Cone(apex, rays, constraints, 0)
    _check_cone(cone)
    return cone


def _check_cone(c: Cone) -> None:
    for g in c.generators:
        for h in c.constraints:
            if dot(h.normal, g) < 0:
                raise AssertionError(f"cone generator {g} violates {h}")


# ---------------------------------------------------------------------------
# Polytope
# ---------------------------------------------------------------------------

class Polytope:
    """A full-dimensional bounded rational polytope.

    Immutable after construction.  ``faces`` lists every nonempty face
    (vertices up to the polytope itself) with its dimension, vertex set and
    tight facet set.
    """

    def __init__(self, dim: int, vertices: tuple[Vector, ...],
                 facets: tuple[Halfspace, ...], faces: tuple[Face, ...]):
        self.dim = dim
        self.vertices = vertices
        self.facets = facets
        self.faces = faces
        self._tight: list[tuple[int, ...]] = [
            tuple(i for i, h in enumerate(facets) if h.tight_at(v))
            for v in vertices]

    # -- queries ------------------------------------------------------------

    def tight_facets(self, vid: int) -> tuple[int, ...]:
        return self._tight[vid]

    def contains(self, x: Sequence) -> bool:
        return all(h.satisfied(x) for h in self.facets)

    def contains_interior(self, x: Sequence) -> bool:
        return all(dot(h.normal, x) > h.offset for h in self.facets)

    def faces_of_dim(self, k: int) -> list[Face]:
        return [f for f in self.faces if f.dim == k]

    @property
    def edges(self) -> list[Face]:
        return self.faces_of_dim(1)

    def edge_directions(self, vid: int) -> tuple[IntVector, ...]:
        """Primitive directions of the edges at a vertex, away from it."""
        dirs = []
        v = self.vertices[vid]
        for e in self.edges:
            if vid in e.vertex_ids:
                other = [w for w in e.vertex_ids if w != vid]
                if len(other) != 1:
                    raise AssertionError("edge without exactly two vertices")
                dirs.append(primitive(vsub(self.vertices[other[0]], v)))
        return tuple(dirs)

    def barycenter(self) -> Vector:
        n = len(self.vertices)
        acc = tuple(Fraction(0) for _ in range(self.dim))
        for v in self.vertices:
            acc = vadd(acc, v)
        return vscale(Fraction(1, n), acc)

    def bounding_box(self, inflate: int = 0) -> list[tuple[Fraction, Fraction]]:
        box = []
        for i in range(self.dim):
            vals = [v[i] for v in self.vertices]
            box.append((min(vals) - inflate, max(vals) + inflate))
        return box

    def vertex_index(self, point: Sequence) -> int:
        p = vec(point)
        for i, v in enumerate(self.vertices):
            if v == p:
                return i
        raise ValueError(f"{point} is not a vertex")

    def face_of_vertex(self, vid: int) -> Face:
        for f in self.faces:
            if f.dim == 0 and f.vertex_ids == (vid,):
                return f
        raise AssertionError("vertex face missing from lattice")

    def translate(self, shift: Sequence) -> "Polytope":
        s = vec(shift)
        verts = tuple(vadd(v, s) for v in self.vertices)
        facets = tuple(Halfspace(h.normal, h.offset + dot(h.normal, s), h.strict)
                       for h in self.facets)
        return Polytope(self.dim, verts, facets, self.faces)

    def __repr__(self) -> str:
        return (f"Polytope(dim={self.dim}, vertices={len(self.vertices)}, "
                f"facets={len(self.facets)}, faces={len(self.faces)})")


def _affine_rank(points: Sequence[Vector]) -> int:
    if len(points) <= 1:
        return 0
    p0 = points[0]
    return rank([vsub(p, p0) for p in points[1:]])


def _face_lattice(nverts: int, tights: list[frozenset[int]],
                  vertices: Sequence[Vector]) -> tuple[Face, ...]:
    """All nonempty faces as intersections of facet vertex sets, plus the
    polytope itself."""
    all_ids = frozenset(range(nverts))
    found = {all_ids}
    queue = []
    for t in tights:
        if t and t not in found:
            found.add(t)
            queue.append(t)
    while queue:
        s = queue.pop()
        for t in tights:
            i = s & t
            if i and i not in found:
                found.add(i)
                queue.append(i)
    faces = []
    for s in found:
        fids = tuple(i for i, t in enumerate(tights) if s <= t)
        pts = [vertices[i] for i in sorted(s)]
        faces.append(Face(_affine_rank(pts), tuple(sorted(s)), fids))
    faces.sort(key=lambda f: (f.dim, f.vertex_ids))
    return tuple(faces)


def _build(dim: int, vertices: list[Vector], facets: list[Halfspace]) -> Polytope:
    tights = [frozenset(i for i, v in enumerate(vertices) if h.tight_at(v))
              for h in facets]
    for i, v in enumerate(vertices):
        normals = [facets[j].normal for j, t in enumerate(tights) if i in t]
        if rank(normals) != dim:
            raise AssertionError(f"point {v} is not a vertex of the result")
    faces = _face_lattice(len(vertices), tights, vertices)
    if len([f for f in faces if f.dim == 0]) != len(vertices):
        raise AssertionError("face lattice lost a vertex")
    return Polytope(dim, tuple(vertices), tuple(facets), faces)


def polytope_from_vertices(points: Iterable[Sequence]) -> Polytope:
    """Exact V-to-H conversion by exhaustive hyperplane enumeration.

    Facet hyperplanes are found as affine spans of d-subsets of the input
    points that leave all points on one side; redundant (non-extreme) input
    points are discarded.
    """
    pts: list[Vector] = []
    for p in points:
        w = vec(p)
        if w not in pts:
            pts.append(w)
    if not pts:
        raise DegenerateInput("no points given")
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise DimensionError("points of mixed dimension")
    if _affine_rank(pts) != dim:
        raise DegenerateInput("points do not affinely span the space; "
                              "the polytope would be lower-dimensional")
    halfspaces: list[Halfspace] = []
    seen = set()
    for subset in combinations(range(len(pts)), dim):
        chosen = [pts[i] for i in subset]
        rows = [vsub(p, chosen[0]) for p in chosen[1:]]
        if dim == 1:
            ker = [(Fraction(1),)]
        else:
            if rank(rows) != dim - 1:
                continue
            ker = kernel_basis(rows)
            if len(ker) != 1:
                continue
        n = primitive(ker[0])
        c = dot(n, chosen[0])
        sides = [dot(n, p) - c for p in pts]
        if all(s >= 0 for s in sides):
            pass
        elif all(s <= 0 for s in sides):
            n = tuple(-a for a in n)
            c = -c
        else:
            continue
        if (n, c) not in seen:
            seen.add((n, c))
            halfspaces.append(Halfspace(n, c, False))
    kept = []
    for v in pts:
        tight_normals = [h.normal for h in halfspaces if h.tight_at(v)]
        if rank(tight_normals) == dim:
            kept.append(v)
    return _build(dim, kept, halfspaces)


def polytope_from_halfspaces(halfspaces: Iterable[Halfspace]) -> Polytope:
    """Exact H-to-V conversion by solving all d-subsets of tight systems.

    Rejects unbounded, empty and lower-dimensional intersections.  Redundant
    inequalities (those not supporting a facet) are dropped.
    """
    hs: list[Halfspace] = []
    for h in halfspaces:
        if h.strict:
            raise ValueError("polytope facets must be closed halfspaces")
        c = halfspace(h.normal, h.offset)
        if c not in hs:
            hs.append(c)
    if not hs:
        raise DegenerateInput("no halfspaces given")
    dim = len(hs[0].normal)
    normals = [h.normal for h in hs]
    if rank(normals) != dim:
        raise DegenerateInput("unbounded: facet normals do not span")
    # recession cone must be {0}
    subsets = combinations(range(len(hs)), dim - 1) if dim > 1 else [()]
    for subset in subsets:
        rows = [normals[i] for i in subset] or [(0,) * dim]
        ker = kernel_basis(rows)
        if len(ker) != 1:
            continue
        r = ker[0]
        for cand in (r, vneg(r)):
            if all(dot(n, cand) >= 0 for n in normals):
                raise DegenerateInput(f"unbounded along direction {primitive(cand)}")
    verts: list[Vector] = []
    for subset in combinations(range(len(hs)), dim):
        a = [normals[i] for i in subset]
        b = [hs[i].offset for i in subset]
        x = None
        if rank(a) == dim:
            from .linalg import solve_linear
            x = solve_linear(a, b)
        if x is None:
            continue
        if x not in verts and all(h.satisfied(x) for h in hs):
            verts.append(x)
    if not verts:
        raise DegenerateInput("empty intersection")
    if _affine_rank(verts) != dim:
        raise DegenerateInput("intersection is lower-dimensional")
    kept_facets = []
    for h in hs:
        tight = [v for v in verts if h.tight_at(v)]
        if tight and _affine_rank(tight) == dim - 1:
            kept_facets.append(h)
    return _build(dim, verts, kept_facets)


# ---------------------------------------------------------------------------
# Cones attached to a polytope
# ---------------------------------------------------------------------------

def tangent_cone(p: Polytope, f: Face) -> Cone:
    """Cone of directions into the polytope from (the relative interior of) a face.

    Constraints are the facets tight on the whole face; the apex is the face
    barycenter.  For the full polytope as a face this is all of space.
    """
    if f not in p.faces:
        raise ValueError("face does not belong to this polytope")
    if f.dim == p.dim:
        gens = []
        for i in range(p.dim):
            e = tuple(1 if j == i else 0 for j in range(p.dim))
            gens.append(e)
            gens.append(tuple(-a for a in e))
        return Cone(p.barycenter(), tuple(gens), (), p.dim)
    pts = [p.vertices[i] for i in f.vertex_ids]
    apex = vscale(Fraction(1, len(pts)), [sum(c[i] for c in pts) for i in range(p.dim)])
    constraints = tuple(p.facets[i] for i in f.facet_ids)
    if f.dim == 0:
        gens = p.edge_directions(f.vertex_ids[0])
    else:
        gens = []
        for v in p.vertices:
            d = vsub(v, apex)
            if not all(x == 0 for x in d):
                g = primitive(d)
                if g not in gens:
                    gens.append(g)
        gens = tuple(gens)
    cone = Cone(apex, gens, constraints,
                _lineality_of_normals([h.normal for h in constraints], p.dim))
    _check_cone(cone)
    if f.dim == 0 and len(gens) == p.dim and rank(gens) != p.dim:
        raise AssertionError("simple vertex with dependent edge directions")
    return cone


def normal_cone(p: Polytope, vid: int) -> Cone:
    """Cone spanned by the primitive inner facet normals tight at a vertex.

    Lives in the dual space; pointed because the polytope is full-dimensional.
    Generator order follows facet order.
    """
    if not 0 <= vid < len(p.vertices):
        raise ValueError(f"no vertex with index {vid}")
    tight = p.tight_facets(vid)
    if rank([p.facets[i].normal for i in tight]) != p.dim:
        raise ValueError(f"vertex {vid}: tight normals do not span")
    rays = tuple(p.facets[i].normal for i in tight)
    origin = tuple(Fraction(0) for _ in range(p.dim))
    constraints = cone_constraints_from_rays(rays, p.dim, origin)
    # pointedness: some strictly positive functional must exist
    w = feasible_point([(tuple(Fraction(a) for a in r), Fraction(1), False)
                        for r in rays], p.dim)
    if w is None:
        raise AssertionError("normal cone is not pointed")
    cone = Cone(origin, rays, constraints, 0)
    _check_cone(cone)
    return cone


def is_simple_vertex(p: Polytope, vid: int) -> bool:
    """True when exactly d facets meet the vertex, with independent normals."""
    tight = p.tight_facets(vid)
    if len(tight) != p.dim:
        return False
    return rank([p.facets[i].normal for i in tight]) == p.dim


def is_simple_polytope(p: Polytope) -> bool:
    return all(is_simple_vertex(p, i) for i in range(len(p.vertices)))


def polar_dual(p: Polytope) -> Polytope:
    """The polar polytope {y : ⟨y, x⟩ ≤ 1 for all x in P}.

    Requires the origin strictly inside; vertices and facets swap roles, and
    the bijection is checked on construction.
    """
    origin = tuple(Fraction(0) for _ in range(p.dim))
    if not p.contains_interior(origin):
        raise DegenerateInput("polar dual needs the origin strictly inside; "
                              "translate first (center_at_barycenter)")
    dual_hs = [halfspace(vneg(v), Fraction(-1)) for v in p.vertices]
    dual = polytope_from_halfspaces(dual_hs)
    expected = {tuple(vscale(1 / h.offset, h.normal)) for h in p.facets}
    if set(dual.vertices) != expected or len(dual.facets) != len(p.vertices):
        raise AssertionError("polar dual bijection failed")
    return dual


def dual_vertex_of_facet(p: Polytope, facet_id: int) -> Vector:
    """Vertex of the polar dual corresponding to a facet (origin interior)."""
    h = p.facets[facet_id]
    if h.offset >= 0:
        raise DegenerateInput("facet offset must be negative (origin inside)")
    return vscale(1 / h.offset, h.normal)


def center_at_barycenter(p: Polytope) -> tuple[Polytope, Vector]:
    """Translate so the vertex barycenter sits at the origin.

    Returns the shifted polytope and the applied shift s (new = old + s), so
    results can be mapped back by translating by -s.
    """
    s = vneg(p.barycenter())
    return p.translate(s), s
