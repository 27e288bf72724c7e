"""Polar decomposition at non-simple vertices via virtual deformations.

A non-simple vertex is handled by regular-triangulating its normal cone:
each simplicial cell of normals defines a simple cone containing the tangent
cone, the functional is written in the cell's basis, negative coefficients
flip their inequalities strict, and the signed cell sum is the vertex's
local contribution.  The headline fact, that the contribution does not
depend on the triangulation, is machine-checked here, together with the
compatible (polar-dual) construction and the positivity/conicity uniqueness
criterion.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .feasibility import feasible_point
from .indicators import (IndicatorSum, VerificationReport, ZPoly, default_box,
                         piece, verify_identity)
from .linalg import (IntVector, Vector, dot, frac, mat_inverse, primitive,
                     solve_linear, transpose, vadd, vec, vneg)
from .polar import GenericityError, as_functional
from .polyhedra import Cone, DegenerateInput, Halfspace, Polytope
from .triangulation import (LiftedTriangulation, regular_triangulation,
                            triangulation_with_retries)


@dataclass(frozen=True)
class LocalContribution:
    """Signed sum of polarized simple cones at one vertex.

    cell_indices[i] is the number of flipped inequalities of the i-th cell;
    the piece order matches the cell order of the triangulation.
    """
    vertex_id: int
    vertex: Vector
    xi: IntVector
    cell_indices: tuple[int, ...]
    sum: IndicatorSum


def normal_cone_rays(p: Polytope, vid: int) -> tuple[IntVector, ...]:
    """Primitive inner normals of the facets through a vertex, in facet order."""
    return tuple(p.facets[i].normal for i in p.tight_facets(vid))


def vertex_triangulation(p: Polytope, vid: int,
                         heights: Optional[Sequence] = None,
                         seed: int = 0) -> LiftedTriangulation:
    """Regular triangulation of the normal cone at a vertex.

    Explicit heights (one per tight facet, facet order) reproduce a chosen
    triangulation; otherwise seeded heights are drawn until simplicial.
    """
    rays = normal_cone_rays(p, vid)
    if heights is not None:
        return regular_triangulation(rays, heights)
    return triangulation_with_retries(rays, seed + 1009 * vid)


def t_sigma(p: Polytope, vid: int, cell: Sequence[int],
            tri: LiftedTriangulation) -> Cone:
    """Simple cone of a triangulation cell: the tangent-cone inequalities
    restricted to the cell's normals."""
    if tuple(cell) not in tri.cells:
        raise ValueError(f"{tuple(cell)} is not a cell of the triangulation")
    v = p.vertices[vid]
    normals = [tri.rays[j] for j in cell]
    constraints = tuple(Halfspace(n, dot(n, v), False) for n in normals)
    dual = tuple(primitive(col) for col in transpose(mat_inverse(normals)))
    cone = Cone(vec(v), dual, constraints, 0)
    return cone


def local_contribution(p: Polytope, vid: int, tri: LiftedTriangulation,
                       xi: Sequence) -> LocalContribution:
    """Signed sum over triangulation cells of the polarized simple cones.

    For each cell the functional is written in the basis of the cell's
    normals; zero coefficients mean the functional is constant on a ray of
    the cell's cone and are rejected as non-generic.
    """
    xi = as_functional(xi)
    v = p.vertices[vid]
    if set(tri.rays) != set(normal_cone_rays(p, vid)):
        raise ValueError("triangulation rays do not match the normal cone "
                         f"of vertex {v}")
    terms = []
    indices = []
    for cell in tri.cells:
        normals = [tri.rays[j] for j in cell]
        alpha = solve_linear(transpose(normals), xi)
        if alpha is None:
            raise AssertionError("cell normals are not a basis")
        if any(a == 0 for a in alpha):
            dual = tuple(primitive(col) for col in transpose(mat_inverse(normals)))
            bad = [dual[i] for i, a in enumerate(alpha) if a == 0]
            raise GenericityError(
                f"functional {xi} is constant on triangulation ray(s) {bad} "
                f"of cell {cell} at vertex {v}")
        cons = []
        witness = v
        dual = tuple(primitive(col) for col in transpose(mat_inverse(normals)))
        for i, (n, a) in enumerate(zip(normals, alpha)):
            c = dot(n, v)
            if a > 0:
                cons.append(Halfspace(n, c, False))
                witness = vadd(witness, tuple(Fraction(x) for x in dual[i]))
            else:
                cons.append(Halfspace(tuple(-x for x in n), -c, True))
                witness = vadd(witness, tuple(-Fraction(x) for x in dual[i]))
        index = sum(1 for a in alpha if a < 0)
        indices.append(index)
        terms.append((ZPoly.const((-1) ** index),
                      piece(p.dim, cons, witness=witness)))
    return LocalContribution(vid, vec(v), xi, tuple(indices),
                             IndicatorSum(p.dim, tuple(terms)))


def local_contributions(p: Polytope, xi: Sequence,
                        heights: Optional[dict[int, Sequence]] = None,
                        seed: int = 0) -> dict[int, LocalContribution]:
    """Local contribution of every vertex (simple ones are single cells)."""
    heights = heights or {}
    out = {}
    for vid in range(len(p.vertices)):
        tri = vertex_triangulation(p, vid, heights.get(vid), seed)
        out[vid] = local_contribution(p, vid, tri, xi)
    return out


def nonsimple_decomposition(p: Polytope, xi: Sequence,
                            heights: Optional[dict[int, Sequence]] = None,
                            seed: int = 0) -> IndicatorSum:
    """Sum of all local contributions; evaluates to the polytope indicator."""
    acc = IndicatorSum(p.dim, ())
    for lc in local_contributions(p, xi, heights, seed).values():
        acc = acc + lc.sum
    return acc


def delta_invariance_check(p: Polytope, vid: int, xi: Sequence,
                           tri1: LiftedTriangulation, tri2: LiftedTriangulation,
                           box=None, step=Fraction(1, 2),
                           extra_samples: int = 0, seed: int = 0
                           ) -> VerificationReport:
    """Local contributions of two triangulations must agree pointwise."""
    a = local_contribution(p, vid, tri1, xi)
    b = local_contribution(p, vid, tri2, xi)
    if box is None:
        box = default_box(p)
    return verify_identity(a.sum, b.sum, box, step, extra_samples, seed,
                           name=f"delta-invariance@v{vid}")


# ---------------------------------------------------------------------------
# Compatible triangulations from the polar dual
# ---------------------------------------------------------------------------

def compatible_from_dual(p: Polytope, dual_heights: Sequence
                         ) -> dict[int, LiftedTriangulation]:
    """Per-vertex triangulations induced by one lifting of the polar dual.

    The facet of the dual polytope corresponding to a vertex v lies in the
    hyperplane {y : v·y = 1}; lifting the dual vertices (one per facet of the
    polytope, which is where the heights live) and restricting the lower hull
    to that facet triangulates the normal cone of v.  The restriction is
    realized by slicing the normal cone with -v, which carries the facet's
    vertices exactly (up to central reflection, which preserves cells).
    """
    origin = tuple(Fraction(0) for _ in range(p.dim))
    if not p.contains_interior(origin):
        raise DegenerateInput("dual-compatible triangulations need the origin "
                              "inside; translate first (center_at_barycenter)")
    heights = [frac(h) for h in dual_heights]
    if len(heights) != len(p.facets):
        raise ValueError(f"need one dual height per facet "
                         f"({len(p.facets)}), got {len(heights)}")
    out = {}
    for vid, v in enumerate(p.vertices):
        tight = p.tight_facets(vid)
        rays = [p.facets[i].normal for i in tight]
        restricted = [heights[i] for i in tight]
        out[vid] = regular_triangulation(rays, restricted, slice_normal=vneg(v))
    return out


def compatible_decomposition(p: Polytope, xi: Sequence, dual_heights: Sequence
                             ) -> IndicatorSum:
    """Decomposition from one regular triangulation of the polar dual."""
    tris = compatible_from_dual(p, dual_heights)
    acc = IndicatorSum(p.dim, ())
    for vid, tri in tris.items():
        acc = acc + local_contribution(p, vid, tri, xi).sum
    return acc


def seeded_dual_heights(p: Polytope, seed: int, retries: int = 64) -> list[Fraction]:
    """Dual heights drawn until every facet restriction is simplicial."""
    rng = random.Random(seed)
    for _ in range(retries):
        heights = [Fraction(rng.randint(0, 8 * len(p.facets))) for _ in p.facets]
        try:
            compatible_from_dual(p, heights)
            return heights
        except Exception:
            continue
    raise ValueError("no generic dual heights found")


# ---------------------------------------------------------------------------
# Positive + conic checker and per-vertex uniqueness
# ---------------------------------------------------------------------------

@dataclass
class PositiveConicReport:
    directions_checked: int
    structurally_conic: bool
    violations: list[dict]

    @property
    def success(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {
            "directions_checked": self.directions_checked,
            "structurally_conic": self.structurally_conic,
            "success": self.success,
            "violations": self.violations,
        }


def _direction_grid(dim: int, radius: int = 2):
    for t in product(range(-radius, radius + 1), repeat=dim):
        if any(t):
            yield t


def _piece_direction_probes(pc, v: Vector, xi: IntVector) -> list[IntVector]:
    """Directions aimed at a piece: one in its relative interior, and one in
    the part of the piece where the functional decreases (if any)."""
    dim = len(v)
    rows = []
    for h in pc.constraints:
        n = tuple(Fraction(a) for a in h.normal)
        rows.append((n, Fraction(1), False))
    probes = []
    t = feasible_point(rows, dim)
    if t is None:
        # piece too thin for strict interior; settle for the closure
        rows = [(tuple(Fraction(a) for a in h.normal), Fraction(0), h.strict)
                for h in pc.constraints]
        t = feasible_point(rows, dim)
    if t is not None and any(t):
        probes.append(primitive(t))
    neg = rows + [(tuple(Fraction(-a) for a in xi), Fraction(1), False)]
    t = feasible_point(neg, dim)
    if t is not None and any(t):
        probes.append(primitive(t))
    return probes


def positive_conic_check(contribs: dict[int, LocalContribution] | Sequence,
                         xi: Sequence, direction_samples: int = 32,
                         seed: int = 0) -> PositiveConicReport:
    """Certify a family of per-vertex functions as conic and positive.

    Conic: the value along v + λ·t does not change with λ > 0 (checked at
    λ = 1/2, 1, 3 and structurally: every piece's constraints are tight at
    the vertex).  Positive: the value at v + t vanishes whenever the
    functional decreases along t.  Directions sweep a small integer grid,
    seeded random vectors, and exact probes into each piece (in particular
    into any part of a piece on which the functional decreases), so a wrongly
    flipped piece cannot hide between grid points.
    """
    xi = as_functional(xi)
    if isinstance(contribs, dict):
        family = [contribs[k] for k in sorted(contribs)]
    else:
        family = list(contribs)
    if not family:
        raise ValueError("empty family")
    dim = len(family[0].vertex)
    rng = random.Random(seed)
    base_dirs = list(_direction_grid(dim))
    for _ in range(direction_samples):
        t = tuple(rng.randint(-5, 5) for _ in range(dim))
        if any(t) and t not in base_dirs:
            base_dirs.append(t)
    structural = True
    violations: list[dict] = []
    lambdas = (Fraction(1, 2), Fraction(1), Fraction(3))
    total_dirs = 0
    for lc in family:
        v = lc.vertex
        dirs = list(base_dirs)
        for _c, pc in lc.sum.terms:
            for h in pc.constraints:
                if dot(h.normal, v) != h.offset:
                    structural = False
            for probe in _piece_direction_probes(pc, v, xi):
                if probe not in dirs:
                    dirs.append(probe)
        total_dirs += len(dirs)
        for t in dirs:
            vals = [lc.sum.evaluate(vadd(v, tuple(lam * x for x in t)))
                    for lam in lambdas]
            if not (vals[0] == vals[1] == vals[2]):
                violations.append({
                    "kind": "conic", "vertex": [str(c) for c in v],
                    "direction": list(t),
                    "values": [repr(x) for x in vals]})
                continue
            if dot(xi, t) < 0 and not vals[1].is_zero():
                violations.append({
                    "kind": "positive", "vertex": [str(c) for c in v],
                    "direction": list(t), "value": repr(vals[1])})
    return PositiveConicReport(total_dirs, structural, violations)


def uniqueness_crosscheck(p: Polytope, xi: Sequence,
                          decomp_a: dict[int, LocalContribution],
                          decomp_b: dict[int, LocalContribution],
                          box=None, step=Fraction(1, 2),
                          extra_samples: int = 0, seed: int = 0
                          ) -> list[VerificationReport]:
    """Vertexwise equality of two positive conic decompositions."""
    if box is None:
        box = default_box(p)
    reports = []
    for vid in sorted(decomp_a):
        a, b = decomp_a[vid], decomp_b[vid]
        reports.append(verify_identity(a.sum, b.sum, box, step, extra_samples,
                                       seed, name=f"uniqueness@v{vid}"))
    return reports


def flip_one_constraint(lc: LocalContribution, term_index: int = 0,
                        constraint_index: int = 0) -> LocalContribution:
    """Deliberately corrupt a contribution by flipping one inequality.

    Used to demonstrate that the positive/conic checker rejects wrong
    families with a concrete witness.
    """
    terms = list(lc.sum.terms)
    coeff, pc = terms[term_index]
    cons = list(pc.constraints)
    cons[constraint_index] = cons[constraint_index].complement()
    from .indicators import LocallyClosedPiece
    terms[term_index] = (coeff, LocallyClosedPiece(pc.dim, tuple(
        sorted(cons, key=lambda h: (h.normal, h.offset, h.strict)))))
    return LocalContribution(lc.vertex_id, lc.vertex, lc.xi, lc.cell_indices,
                             IndicatorSum(lc.sum.dim, tuple(terms)))
