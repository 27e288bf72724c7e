"""Locally closed pieces, weighted indicator sums, and identity verification.

An IndicatorSum is a formal integer-polynomial combination of locally closed
polyhedral pieces.  It can be evaluated exactly at any rational point, which
is how every decomposition identity in this library gets machine-checked:
evaluate both sides on a witness grid plus seeded random rational points.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil, floor
from typing import Iterable, Optional, Sequence

from .feasibility import feasible_point
from .linalg import Vector, dot, frac, vec
from .polyhedra import Face, Halfspace, Polytope


# ---------------------------------------------------------------------------
# Integer polynomials in one variable z
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZPoly:
    """Dense integer polynomial in z; coeffs[k] multiplies z**k."""
    coeffs: tuple[int, ...] = ()

    @staticmethod
    def const(n: int) -> "ZPoly":
        return ZPoly((n,)) if n else ZPoly(())

    @staticmethod
    def z_power(k: int) -> "ZPoly":
        return ZPoly((0,) * k + (1,))

    @staticmethod
    def one_minus_z_power(k: int) -> "ZPoly":
        """(1 - z)**k"""
        out = ZPoly.const(1)
        for _ in range(k):
            out = out * ZPoly((1, -1))
        return out

    def __add__(self, other: "ZPoly") -> "ZPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        cs = [0] * n
        for i, c in enumerate(self.coeffs):
            cs[i] += c
        for i, c in enumerate(other.coeffs):
            cs[i] += c
        return ZPoly(_trim(cs))

    def __neg__(self) -> "ZPoly":
        return ZPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "ZPoly") -> "ZPoly":
        return self + (-other)

    def __mul__(self, other) -> "ZPoly":
        if isinstance(other, int):
            return ZPoly(_trim([c * other for c in self.coeffs]))
        cs = [0] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    cs[i + j] += a * b
        return ZPoly(_trim(cs))

    __rmul__ = __mul__

    def __call__(self, z) -> Fraction:
        z = frac(z)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def is_zero(self) -> bool:
        return not self.coeffs

    def at_one(self) -> int:
        return sum(self.coeffs)

    def at_zero(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mon = "z" if k == 1 else f"z^{k}"
                if c == 1:
                    parts.append(mon)
                elif c == -1:
                    parts.append(f"-{mon}")
                else:
                    parts.append(f"{c}{mon}")
        return " + ".join(parts).replace("+ -", "- ")


def _trim(cs: Sequence[int]) -> tuple[int, ...]:
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    return tuple(cs[:n])


ZERO = ZPoly(())
ONE = ZPoly((1,))


# ---------------------------------------------------------------------------
# Locally closed pieces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LocallyClosedPiece:
    """Finite conjunction of closed (≥) and strict (>) rational constraints.

    Constraints are kept in a canonical sorted, deduplicated form so that
    syntactic equality of pieces is meaningful.  Pieces are nonempty by
    construction (checked with an exact feasibility witness).
    """
    dim: int
    constraints: tuple[Halfspace, ...]

    def contains(self, x: Sequence) -> bool:
        return all(h.satisfied(x) for h in self.constraints)

    def contains_scaled(self, nums: Sequence[int], den: int) -> bool:
        for h in self.constraints:
            if not h.satisfied_scaled(nums, den):
                return False
        return True

    def translate(self, shift: Sequence) -> "LocallyClosedPiece":
        s = vec(shift)
        return LocallyClosedPiece(self.dim, tuple(
            Halfspace(h.normal, h.offset + dot(h.normal, s), h.strict)
            for h in self.constraints))


def piece(dim: int, constraints: Iterable[Halfspace],
          witness: Optional[Sequence] = None) -> LocallyClosedPiece:
    """Canonicalize and validate a locally closed piece.

    Duplicate constraints are removed and parallel constraints collapse to
    the binding one.  Nonemptiness is certified either by the supplied
    witness or by exact feasibility search.
    """
    binding: dict[tuple, tuple[Fraction, bool]] = {}
    order: list[tuple] = []
    for h in constraints:
        key = h.normal
        if key in binding:
            off, strict = binding[key]
            if h.offset > off or (h.offset == off and h.strict and not strict):
                binding[key] = (h.offset, h.strict)
        else:
            binding[key] = (h.offset, h.strict)
            order.append(key)
    canon = tuple(sorted((Halfspace(n, *binding[n]) for n in order),
                         key=lambda h: (h.normal, h.offset, h.strict)))
    pc = LocallyClosedPiece(dim, canon)
    if witness is not None:
        if not pc.contains(witness):
            raise ValueError(f"piece witness {witness} not inside the piece")
    else:
        rows = [(tuple(Fraction(a) for a in h.normal), h.offset, h.strict)
                for h in canon]
        if feasible_point(rows, dim) is None:
            raise ValueError("piece is empty")
    return pc


def whole_space_piece(dim: int) -> LocallyClosedPiece:
    return LocallyClosedPiece(dim, ())


# ---------------------------------------------------------------------------
# Indicator sums
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IndicatorSum:
    """Formal sum of (coefficient in Z[z], piece) terms."""
    dim: int
    terms: tuple[tuple[ZPoly, LocallyClosedPiece], ...] = ()

    def evaluate(self, x: Sequence) -> ZPoly:
        x = vec(x)
        if len(x) != self.dim:
            raise ValueError(f"point dimension {len(x)} != {self.dim}")
        acc = ZERO
        for coeff, pc in self.terms:
            if pc.contains(x):
                acc = acc + coeff
        return acc

    def evaluate_scaled(self, nums: Sequence[int], den: int) -> ZPoly:
        acc = ZERO
        for coeff, pc in self.terms:
            if pc.contains_scaled(nums, den):
                acc = acc + coeff
        return acc

    def __add__(self, other: "IndicatorSum") -> "IndicatorSum":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return IndicatorSum(self.dim, self.terms + other.terms)

    def __neg__(self) -> "IndicatorSum":
        return IndicatorSum(self.dim, tuple((-c, p) for c, p in self.terms))

    def scaled(self, c) -> "IndicatorSum":
        cp = ZPoly.const(c) if isinstance(c, int) else c
        return IndicatorSum(self.dim, tuple((cp * co, p) for co, p in self.terms))

    def translate(self, shift: Sequence) -> "IndicatorSum":
        return IndicatorSum(self.dim, tuple((c, p.translate(shift))
                                            for c, p in self.terms))

    def substitute(self, z_value: int) -> "IndicatorSum":
        """Specialize every coefficient at an integer value of z."""
        out = []
        for c, p in self.terms:
            v = c(z_value)
            if v != 0:
                out.append((ZPoly.const(int(v)), p))
        return IndicatorSum(self.dim, tuple(out))


def evaluate(s: IndicatorSum, x: Sequence) -> ZPoly:
    return s.evaluate(x)


def indicator_of_polytope(p: Polytope) -> IndicatorSum:
    pc = piece(p.dim, p.facets, witness=p.barycenter())
    return IndicatorSum(p.dim, ((ONE, pc),))


def indicator_of_interior(p: Polytope) -> IndicatorSum:
    strict = [Halfspace(h.normal, h.offset, True) for h in p.facets]
    pc = piece(p.dim, strict, witness=p.barycenter())
    return IndicatorSum(p.dim, ((ONE, pc),))


def _face_barycenter(p: Polytope, f: Face) -> Vector:
    pts = [p.vertices[i] for i in f.vertex_ids]
    return tuple(sum(q[i] for q in pts) / len(pts) for i in range(p.dim))


def gram_decomposition(p: Polytope) -> IndicatorSum:
    """Alternating sum of the tangent cones of all nonempty faces.

    Evaluates to the indicator function of the polytope everywhere.
    """
    terms = []
    for f in p.faces:
        sign = -1 if f.dim % 2 else 1
        if f.dim == p.dim:
            pc = whole_space_piece(p.dim)
        else:
            pc = piece(p.dim, (p.facets[i] for i in f.facet_ids),
                       witness=_face_barycenter(p, f))
        terms.append((ZPoly.const(sign), pc))
    return IndicatorSum(p.dim, tuple(terms))


def relative_interior_piece(p: Polytope, f: Face) -> LocallyClosedPiece:
    """Relative interior of a face: tight facets as equalities, the rest strict."""
    cons: list[Halfspace] = []
    fset = set(f.facet_ids)
    for i, h in enumerate(p.facets):
        if i in fset:
            cons.append(Halfspace(h.normal, h.offset, False))
            cons.append(Halfspace(tuple(-a for a in h.normal), -h.offset, False))
        else:
            cons.append(Halfspace(h.normal, h.offset, True))
    return piece(p.dim, cons, witness=_face_barycenter(p, f))


def weighted_indicator(p: Polytope) -> IndicatorSum:
    """Sum valuing z**k on the relative interior of each codimension-k face.

    Realized with one relative-interior piece per face; the relative
    interiors of all faces partition the polytope.
    """
    terms = []
    for f in p.faces:
        codim = p.dim - f.dim
        terms.append((ZPoly.z_power(codim), relative_interior_piece(p, f)))
    return IndicatorSum(p.dim, tuple(terms))


# ---------------------------------------------------------------------------
# Verification harness
# ---------------------------------------------------------------------------

Box = Sequence[tuple[Fraction, Fraction]]


@dataclass
class VerificationReport:
    identity: str
    parameters: dict
    points_checked: int
    success: bool
    counterexample: Optional[dict] = None
    wall_time: float = 0.0

    def to_json_dict(self) -> dict:
        # wall time is intentionally excluded: reports must be byte-identical
        # across runs with the same inputs
        out = {
            "identity": self.identity,
            "parameters": self.parameters,
            "points_checked": self.points_checked,
            "success": self.success,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def default_box(p: Polytope, inflate: int = 1) -> Box:
    """Bounding box of the polytope grown by `inflate` in every direction."""
    return p.bounding_box(inflate=inflate)


def grid_points(box: Box, step: Fraction):
    """Lattice step·Z^d clipped to the box, in lexicographic order.

    Yields (nums, den) pairs: the point is nums/den coordinatewise.
    """
    step = frac(step)
    if step <= 0:
        raise ValueError("step must be positive")
    axes = []
    for lo, hi in box:
        k0 = ceil(Fraction(lo) / step)
        k1 = floor(Fraction(hi) / step)
        axes.append(range(k0, k1 + 1))
    p, q = step.numerator, step.denominator
    for ks in product(*axes):
        yield tuple(k * p for k in ks), q


def random_rational_points(box: Box, count: int, seed: int):
    """Seeded rational samples in the box with small random denominators."""
    rng = random.Random(seed)
    for _ in range(count):
        den = rng.randint(1, 6)
        nums = []
        for lo, hi in box:
            a = ceil(Fraction(lo) * den)
            b = floor(Fraction(hi) * den)
            nums.append(rng.randint(a, b) if a <= b else a)
        yield tuple(nums), den


def verify_identity(lhs: IndicatorSum, rhs: IndicatorSum, box: Box,
                    step, extra_samples: int = 0, seed: int = 0,
                    name: str = "identity") -> VerificationReport:
    """Compare two indicator sums on the grid plus seeded random points.

    Sound for refutation: the first mismatch (in lexicographic grid order,
    random samples afterwards) is reported with both values.
    """
    t0 = time.monotonic()
    step = frac(step)
    params = {
        "box": [[str(lo), str(hi)] for lo, hi in box],
        "step": str(step),
        "extra_samples": extra_samples,
        "seed": seed,
    }
    checked = 0

    def run(points) -> Optional[dict]:
        nonlocal checked
        for nums, den in points:
            a = lhs.evaluate_scaled(nums, den)
            b = rhs.evaluate_scaled(nums, den)
            checked += 1
            if a != b:
                pt = [str(Fraction(n, den)) for n in nums]
                return {"point": pt, "lhs": repr(a), "rhs": repr(b)}
        return None

    bad = run(grid_points(box, step))
    if bad is None and extra_samples > 0:
        bad = run(random_rational_points(box, extra_samples, seed))
    return VerificationReport(name, params, checked, bad is None, bad,
                              time.monotonic() - t0)


def verify_identity_exact(lhs: IndicatorSum, rhs: IndicatorSum,
                          name: str = "identity") -> VerificationReport:
    """Decide an identity exactly by enumerating arrangement cells.

    Splits space by every constraint hyperplane appearing on either side and
    checks one witness per nonempty sign cell; both sides are constant on
    cells, so this is a complete decision procedure.  Exponential in the
    number of hyperplanes; intended for small identities (--exact-cells).
    """
    t0 = time.monotonic()
    dim = lhs.dim
    planes: list[tuple[tuple[int, ...], Fraction]] = []
    seen = set()
    for s in (lhs, rhs):
        for _c, pc in s.terms:
            for h in pc.constraints:
                n, off = h.normal, h.offset
                for k, a in enumerate(n):
                    if a:
                        if a < 0:
                            n, off = tuple(-x for x in n), -off
                        break
                if (n, off) not in seen:
                    seen.add((n, off))
                    planes.append((n, off))
    checked = 0
    bad: Optional[dict] = None
    stack: list[tuple[int, list]] = [(0, [])]
    while stack and bad is None:
        k, rows = stack.pop()
        if k == len(planes):
            w = feasible_point(rows, dim)
            if w is None:
                continue
            checked += 1
            a, b = lhs.evaluate(w), rhs.evaluate(w)
            if a != b:
                bad = {"point": [str(c) for c in w], "lhs": repr(a), "rhs": repr(b)}
            continue
        n, off = planes[k]
        nf = tuple(Fraction(a) for a in n)
        neg_nf = tuple(-a for a in nf)
        branches = [
            rows + [(nf, off, True)],                          # n·x > off
            rows + [(nf, off, False), (neg_nf, -off, False)],  # n·x = off
            rows + [(neg_nf, -off, True)],                     # n·x < off
        ]
        for br in reversed(branches):
            if feasible_point(br, dim) is not None:
                stack.append((k + 1, br))
    return VerificationReport(name, {"mode": "exact-cells"}, checked,
                              bad is None, bad, time.monotonic() - t0)
