"""Regular triangulations of pointed cones by lifting.

A cone is cut by a transversal hyperplane {w·x = 1}; each ray lands at a
slice point, slice points get lifted to their heights, and the cells are the
lower-hull simplices of the lifted configuration, coned back at the apex.
Each cell carries a linear certificate: the affine span of its lifted points
lies strictly below every other lifted point.  Heights that produce a
non-simplicial subdivision are rejected.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .feasibility import feasible_point
from .linalg import (IntVector, Vector, dot, frac, mat_inverse, primitive,
                     rank, solve_linear, vec, vscale)
from .polyhedra import Cone, DegenerateInput, cone_from_rays


class DegenerateHeights(ValueError):
    """The lifted lower hull has a non-simplicial face."""


@dataclass(frozen=True)
class LiftedTriangulation:
    """Regular triangulation of the cone spanned by `rays`.

    cells are index sets into `rays`; certificates[i] is the linear
    functional g with g·p = height on cell i's slice points and g·p < height
    on all the others.
    """
    rays: tuple[IntVector, ...]
    heights: tuple[Fraction, ...]
    slice_normal: Vector
    slice_points: tuple[Vector, ...]
    cells: tuple[tuple[int, ...], ...]
    certificates: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.rays[0])

    def verify_certificates(self) -> bool:
        for cell, g in zip(self.cells, self.certificates):
            for j, p in enumerate(self.slice_points):
                val = dot(g, p)
                if j in cell:
                    if val != self.heights[j]:
                        return False
                elif val >= self.heights[j]:
                    return False
        return True


def positive_functional(rays: Sequence[IntVector], dim: int) -> Optional[Vector]:
    """Some w with w·r > 0 for every ray; None when the cone is not pointed."""
    rows = [(tuple(Fraction(a) for a in r), Fraction(1), False) for r in rays]
    return feasible_point(rows, dim)


def regular_triangulation(rays: Sequence, heights: Sequence,
                          slice_normal: Optional[Sequence] = None
                          ) -> LiftedTriangulation:
    """Lower-hull triangulation of a pointed full-dimensional cone.

    Heights attach to the slice points ray/(w·ray).  A custom slice normal
    `w` may be supplied (it must be positive on every ray); by default one is
    found by exact feasibility search.
    """
    rays = tuple(primitive(r) for r in rays)
    if len(set(rays)) != len(rays):
        raise ValueError("duplicate rays")
    dim = len(rays[0])
    if rank(rays) != dim:
        raise DegenerateInput("rays do not span: cone is not full-dimensional")
    heights = tuple(frac(h) for h in heights)
    if len(heights) != len(rays):
        raise ValueError(f"{len(rays)} rays but {len(heights)} heights")
    if slice_normal is None:
        w = positive_functional(rays, dim)
        if w is None:
            raise DegenerateInput("cone is not pointed")
    else:
        w = vec(slice_normal)
        if any(dot(w, r) <= 0 for r in rays):
            raise ValueError("slice normal must be strictly positive on all rays")
    points = tuple(vscale(1 / dot(w, r), r) for r in rays)
    cells: list[tuple[int, ...]] = []
    certs: list[Vector] = []
    for subset in combinations(range(len(rays)), dim):
        mtx = [points[j] for j in subset]
        g = solve_linear(mtx, [heights[j] for j in subset])
        if g is None:
            continue
        is_cell = True
        for k, p in enumerate(points):
            if k in subset:
                continue
            val = dot(g, p)
            if val > heights[k]:
                is_cell = False
                break
            if val == heights[k]:
                raise DegenerateHeights(
                    f"heights are not generic: slice point {k} lies on the "
                    f"lower-hull face of {subset}")
        if is_cell:
            cells.append(subset)
            certs.append(g)
    if not cells:
        raise AssertionError("no lower-hull cell found")
    used = set()
    for c in cells:
        used.update(c)
    if used != set(range(len(rays))):
        raise AssertionError("a ray is missing from every cell")
    return LiftedTriangulation(rays, heights, w, points,
                               tuple(cells), tuple(certs))


def seeded_heights(n: int, seed: int) -> tuple[Fraction, ...]:
    rng = random.Random(seed)
    return tuple(Fraction(rng.randint(0, 4 * n + 8)) for _ in range(n))


def triangulation_with_retries(rays: Sequence, seed: int,
                               slice_normal: Optional[Sequence] = None,
                               retries: int = 64) -> LiftedTriangulation:
    """Seeded random heights, redrawn until the subdivision is simplicial."""
    for attempt in range(retries):
        try:
            return regular_triangulation(
                rays, seeded_heights(len(rays), seed + 7919 * attempt),
                slice_normal)
        except DegenerateHeights:
            continue
    raise DegenerateHeights(f"no simplicial lift found after {retries} draws")


def simplicial_cone_facet_normals(rays: Sequence[IntVector]) -> tuple[IntVector, ...]:
    """Inward facet normals h_i of a simplicial cone: h_i·r_j = 0 for j ≠ i
    and h_i·r_i > 0."""
    cols = tuple(zip(*rays))  # matrix with the rays as columns
    inv = mat_inverse(cols)
    return tuple(primitive(row) for row in inv)


def generic_interior_point(rays: Sequence[IntVector],
                           cells: Sequence[Sequence[int]]) -> Vector:
    """Interior point of the cone avoiding every cell facet hyperplane."""
    walls = []
    for cell in cells:
        cell_rays = [rays[j] for j in cell]
        walls.extend(simplicial_cone_facet_normals(cell_rays))
    for t in range(1, 1000):
        q = [Fraction(0)] * len(rays[0])
        for j, r in enumerate(rays):
            c = Fraction((t + 1) ** j)
            q = [a + c * b for a, b in zip(q, r)]
        if all(dot(h, q) != 0 for h in walls):
            return tuple(q)
    raise AssertionError("no generic interior point found")  # pragma: no cover


def half_open_flags(rays: Sequence[IntVector], cells: Sequence[tuple[int, ...]],
                    ) -> list[tuple[bool, ...]]:
    """Open/closed flags making the cells a disjoint cover of the cone.

    A cell keeps a facet closed exactly when the reference point (generic in
    the cone, inside the first cell's side of every wall it is compatible
    with) lies on that facet's inner side; facets looking away from the
    reference point are excluded.  Flag i refers to the facet opposite
    generator i (True = generator coefficient must be strictly positive).
    """
    if len(cells) == 1:
        return [tuple(False for _ in cells[0])]
    q = generic_interior_point(rays, cells)
    flags = []
    for cell in cells:
        cell_rays = [rays[j] for j in cell]
        normals = simplicial_cone_facet_normals(cell_rays)
        flags.append(tuple(dot(h, q) < 0 for h in normals))
    return flags


def triangulate_cone(cone: Cone, seed: int = 0) -> list[Cone]:
    """Split a pointed cone into simplicial cones sharing its apex.

    Simplicial input comes back unchanged as a single cell.
    """
    if cone.lineality_dim > 0:
        raise DegenerateInput("cannot triangulate a cone containing a line")
    if cone.is_simplicial():
        return [cone]
    tri = triangulation_with_retries(cone.generators, seed)
    return [cone_from_rays(cone.apex, tuple(tri.rays[j] for j in cell))
            for cell in tri.cells]
