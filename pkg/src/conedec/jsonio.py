"""JSON serialization: rationals as strings, everything else plain lists.

Rationals are always written as "p/q" (or "p" for integers) so files are
bit-exact and diffable.
"""

from __future__ import annotations

from typing import Sequence

from .genfunc import RationalGF, gf_pretty, make_term
from .indicators import IndicatorSum, LocallyClosedPiece, ZPoly
from .linalg import frac
from .polyhedra import (Halfspace, Polytope, halfspace, polytope_from_halfspaces,
                        polytope_from_vertices)


def rat_str(x) -> str:
    x = frac(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def vec_json(v: Sequence) -> list[str]:
    return [rat_str(x) for x in v]


def polytope_to_json(p: Polytope) -> dict:
    return {
        "dim": p.dim,
        "vertices": [vec_json(v) for v in p.vertices],
        "inequalities": [
            {"normal": [str(a) for a in h.normal], "offset": rat_str(h.offset)}
            for h in p.facets],
    }


def polytope_from_json(obj: dict) -> Polytope:
    if not isinstance(obj, dict) or "dim" not in obj:
        raise ValueError("polytope JSON needs a 'dim' field")
    dim = int(obj["dim"])
    if "vertices" in obj:
        verts = [[frac(x) for x in row] for row in obj["vertices"]]
        if any(len(v) != dim for v in verts):
            raise ValueError("vertex dimension disagrees with 'dim'")
        return polytope_from_vertices(verts)
    if "inequalities" in obj:
        hs = []
        for ineq in obj["inequalities"]:
            normal = [frac(x) for x in ineq["normal"]]
            if len(normal) != dim:
                raise ValueError("normal dimension disagrees with 'dim'")
            hs.append(halfspace(normal, frac(ineq["offset"])))
        return polytope_from_halfspaces(hs)
    raise ValueError("polytope JSON needs 'vertices' or 'inequalities'")


def halfspace_to_json(h: Halfspace) -> dict:
    return {
        "normal": [str(a) for a in h.normal],
        "offset": rat_str(h.offset),
        "sense": "gt" if h.strict else "ge",
    }


def indicator_sum_to_json(s: IndicatorSum) -> list:
    out = []
    for coeff, pc in s.terms:
        out.append({
            "coeff": [str(c) for c in coeff.coeffs] or ["0"],
            "constraints": [halfspace_to_json(h) for h in pc.constraints],
        })
    return out


def indicator_sum_from_json(obj: list, dim: int) -> IndicatorSum:
    terms = []
    for t in obj:
        coeff = ZPoly(tuple(int(c) for c in t["coeff"]))
        cons = []
        for c in t["constraints"]:
            h = halfspace([frac(x) for x in c["normal"]], frac(c["offset"]),
                          c.get("sense", "ge") == "gt")
            cons.append(h)
        terms.append((coeff, LocallyClosedPiece(dim, tuple(sorted(
            cons, key=lambda h: (h.normal, h.offset, h.strict))))))
    return IndicatorSum(dim, tuple(terms))


def gf_to_json(g: RationalGF) -> dict:
    return {
        "dim": g.dim,
        "terms": [
            {"coeff": rat_str(t.coeff),
             "numerator": [list(a) for a in t.numerators],
             "denominators": [list(b) for b in t.denominators]}
            for t in g.terms],
        "pretty": gf_pretty(g),
    }


def gf_from_json(obj: dict) -> RationalGF:
    terms = tuple(make_term(frac(t["coeff"]),
                            [tuple(a) for a in t["numerator"]],
                            [tuple(b) for b in t["denominators"]])
                  for t in obj["terms"])
    return RationalGF(int(obj["dim"]), terms)
