"""Recession cones, integer enumeration, outer approximation, and bands.

Everything here works on intersections W = B_1 cap ... cap B_k of conic
blocks (see conic2d).  The machinery is exact:

* recession cones and their duals through integer angular comparisons,
* integer-point enumeration over boxes (compiled kernel when available),
* convex hulls of the enumerated points with primitive facet normals,
* rational polyhedra with Fourier-Motzkin projection for emptiness,
  boxes, boundedness, and integer scans,
* strictly separating rational cuts for integer points outside W,
* bounded outer approximations: finitely many rational inequalities, each
  valid for W, whose intersection clipped at a level of a chosen objective
  is bounded and whose integer points can be audited one by one,
* lattice-free bands: directions in which W is provably squeezed between
  two consecutive integer levels.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from conecuts import kernels
from conecuts.cgf import CutInequality, Derivation
from conecuts.conic2d import (
    ConicBlock2D,
    SupportResult,
    cross2,
    recession_normals,
    rot90,
    solve2x2,
    support_minimize,
)
from conecuts.errors import (
    HypothesisViolationError,
    InternalInconsistencyError,
    MalformedInputError,
    NotSeparableError,
)
from conecuts.exact import (
    QuadraticSurd,
    Vec,
    as_vec,
    dot,
    format_rational,
    primitive_integer_vector,
    vec_add,
    vec_scale,
    vec_sub,
)

Blocks = tuple[ConicBlock2D, ...]
IntPoint = tuple[int, int]

_DYADIC_BITS = 20


def _as_blocks(blocks: Sequence[ConicBlock2D]) -> Blocks:
    blocks = tuple(blocks)
    if not blocks:
        raise MalformedInputError("at least one block is required")
    return blocks


# ------------------------------------------------------- angular order


def _half(v: Vec) -> int:
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def _angle_cmp(u: Vec, v: Vec) -> int:
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = cross2(u, v)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def _sorted_directions(vecs: Sequence[Vec]) -> list[Vec]:
    prims = []
    seen = set()
    for v in vecs:
        p, _ = primitive_integer_vector(v)
        if p not in seen:
            seen.add(p)
            prims.append(as_vec(p))
    return sorted(prims, key=functools.cmp_to_key(_angle_cmp))


@dataclass(frozen=True)
class Cone2D:
    """{d : n.d >= 0 for every stored normal}."""

    normals: tuple[Vec, ...]

    def contains(self, d: Sequence) -> bool:
        d = as_vec(d)
        return all(dot(n, d) >= 0 for n in self.normals)

    def interior_contains(self, d: Sequence) -> bool:
        d = as_vec(d)
        return all(dot(n, d) > 0 for n in self.normals)

    def is_origin_only(self) -> bool:
        return GeneratedCone2D(self.normals).case == "plane"


@dataclass(frozen=True)
class GeneratedCone2D:
    """cone(generators): all nonnegative combinations of the generators.

    The case analysis is by the largest counterclockwise gap between
    consecutive generator directions: a gap over pi leaves a pointed
    sector, exactly pi leaves a halfplane (or, with only two antiparallel
    generators, a line), anything less covers the plane.
    """

    generators: tuple[Vec, ...]

    def __post_init__(self):
        dirs = _sorted_directions(self.generators)
        if not dirs:
            raise MalformedInputError("a generated cone needs generators")
        object.__setattr__(self, "generators", tuple(dirs))
        if len(dirs) == 1:
            case, lo, hi = "sector", dirs[0], dirs[0]
        elif len(dirs) == 2 and cross2(dirs[0], dirs[1]) == 0:
            case, lo, hi = "line", dirs[0], dirs[1]
        else:
            best_gap = None
            best_i = 0
            for i, a in enumerate(dirs):
                b = dirs[(i + 1) % len(dirs)]
                c = cross2(a, b)
                # gap class: 2 => > pi, 1 => = pi, 0 => < pi
                cls = 2 if c < 0 else (1 if c == 0 else 0)
                if best_gap is None or cls > best_gap:
                    best_gap, best_i = cls, i
            if best_gap == 0:
                case, lo, hi = "plane", None, None
            elif best_gap == 1:
                case = "halfplane"
                lo = dirs[(best_i + 1) % len(dirs)]
                hi = dirs[best_i]
            else:
                case = "sector"
                lo = dirs[(best_i + 1) % len(dirs)]
                hi = dirs[best_i]
        object.__setattr__(self, "case", case)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def contains(self, v: Sequence) -> bool:
        v = as_vec(v)
        if all(c == 0 for c in v):
            return True
        if self.case == "plane":
            return True
        if self.case == "line":
            return cross2(self.lo, v) == 0
        if self.case == "halfplane":
            return dot(rot90(self.lo), v) >= 0
        if self.lo == self.hi:
            return cross2(self.lo, v) == 0 and dot(self.lo, v) > 0
        return cross2(self.lo, v) >= 0 and cross2(v, self.hi) >= 0

    def interior_contains(self, v: Sequence) -> bool:
        v = as_vec(v)
        if all(c == 0 for c in v):
            return self.case == "plane"
        if self.case == "plane":
            return True
        if self.case == "line":
            return False
        if self.case == "halfplane":
            return dot(rot90(self.lo), v) > 0
        if self.lo == self.hi:
            return False
        return cross2(self.lo, v) > 0 and cross2(v, self.hi) > 0


def recession_cone(blocks: Sequence[ConicBlock2D]) -> Cone2D:
    """rec(W) as an intersection of halfplanes through the origin."""
    blocks = _as_blocks(blocks)
    normals: list[Vec] = []
    for b in blocks:
        normals.extend(recession_normals(b))
    return Cone2D(tuple(_sorted_directions(normals)))


def recession_dual(blocks: Sequence[ConicBlock2D]) -> GeneratedCone2D:
    """rec(W)* = cone generated by all blocks' recession normals."""
    blocks = _as_blocks(blocks)
    normals: list[Vec] = []
    for b in blocks:
        normals.extend(recession_normals(b))
    return GeneratedCone2D(tuple(normals))


# ---------------------------------------------------------- enumeration


Box = tuple[int, int, int, int]  # x_lo, x_hi, y_lo, y_hi inclusive


def _check_box(box: Sequence[int]) -> Box:
    if len(box) != 4:
        raise MalformedInputError("box must be (x_lo, x_hi, y_lo, y_hi)")
    x0, x1, y0, y1 = (int(v) for v in box)
    if x0 > x1 or y0 > y1:
        raise MalformedInputError("box bounds are reversed")
    return x0, x1, y0, y1


def enumerate_integer_points(blocks: Sequence[ConicBlock2D], box: Sequence[int]) -> tuple[IntPoint, ...]:
    """All integer points of the intersection inside the inclusive box."""
    blocks = _as_blocks(blocks)
    box = _check_box(box)
    data = tuple(b.kernel_data() for b in blocks)
    return tuple((int(x), int(y)) for x, y in kernels.lattice_points(data, box))


def contains_point(blocks: Sequence[ConicBlock2D], x: Sequence) -> bool:
    return all(b.contains(x) for b in blocks)


def interior_contains_point(blocks: Sequence[ConicBlock2D], x: Sequence) -> bool:
    return all(b.interior_contains(x) for b in blocks)


def _hull_monotone_chain(points: Sequence[IntPoint]) -> list[IntPoint]:
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out: list[IntPoint] = []
        for p in seq:
            while len(out) >= 2 and (
                (out[-1][0] - out[-2][0]) * (p[1] - out[-2][1])
                - (out[-1][1] - out[-2][1]) * (p[0] - out[-2][0])
            ) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(list(reversed(pts)))
    return lower[:-1] + upper[:-1]


@dataclass(frozen=True)
class HullWindow:
    """Convex hull of the integer points found inside a window."""

    box: Box
    points: tuple[IntPoint, ...]
    vertices: tuple[IntPoint, ...]
    facets: tuple[tuple[Vec, Fraction], ...]  # n.x >= c, n primitive integer
    dimension: int  # -1 empty, 0 point, 1 segment, 2 full
    window_truncated: bool

    def as_dict(self) -> dict:
        return {
            "box": list(self.box),
            "count": len(self.points),
            "vertices": [list(v) for v in self.vertices],
            "facets": [
                {"normal": [str(int(c)) for c in n], "rhs": format_rational(c)}
                for n, c in self.facets
            ],
            "dimension": self.dimension,
            "window_truncated": self.window_truncated,
        }


def integer_hull_window(blocks: Sequence[ConicBlock2D], box: Sequence[int]) -> HullWindow:
    """Hull of W's integer points within the box, with primitive facets.

    The truncation flag is conservative: it is set whenever some found
    point touches the window boundary, in which case the hull outside the
    window may have more vertices.
    """
    box = _check_box(box)
    pts = enumerate_integer_points(blocks, box)
    x0, x1, y0, y1 = box
    truncated = any(p[0] in (x0, x1) or p[1] in (y0, y1) for p in pts)
    verts = _hull_monotone_chain(pts)
    if not pts:
        return HullWindow(box, pts, (), (), -1, truncated)
    if len(verts) == 1:
        return HullWindow(box, pts, tuple(verts), (), 0, truncated)
    facets: list[tuple[Vec, Fraction]] = []
    if len(verts) == 2:
        a, b = verts
        d = (b[0] - a[0], b[1] - a[1])
        n = rot90(as_vec(d))
        np_, _ = primitive_integer_vector(n)
        for nn in (as_vec(np_), vec_scale(-1, as_vec(np_))):
            facets.append((nn, dot(nn, a)))
        return HullWindow(box, pts, tuple(verts), tuple(facets), 1, truncated)
    k = len(verts)
    for i in range(k):
        a, b = verts[i], verts[(i + 1) % k]
        d = (b[0] - a[0], b[1] - a[1])
        n = rot90(as_vec(d))  # hull is counterclockwise; rot90 points inward
        np_, _ = primitive_integer_vector(n)
        facets.append((as_vec(np_), dot(np_, a)))
    return HullWindow(box, pts, tuple(verts), tuple(facets), 2, truncated)


# ----------------------------------------------------------- polyhedra


@dataclass(frozen=True)
class Interval:
    empty: bool
    lo: Optional[Fraction] = None  # None = unbounded below
    hi: Optional[Fraction] = None  # None = unbounded above


@dataclass(frozen=True)
class Polyhedron2D:
    """{x : n.x >= c for all stored (n, c)}; everything exact."""

    constraints: tuple[tuple[Vec, Fraction], ...]

    def __post_init__(self):
        cons = []
        for n, c in self.constraints:
            n = as_vec(n)
            if len(n) != 2 or all(v == 0 for v in n):
                raise MalformedInputError("polyhedron normals must be nonzero 2d")
            cons.append((n, Fraction(c)))
        object.__setattr__(self, "constraints", tuple(cons))

    def with_constraints(self, extra: Sequence[tuple[Vec, Fraction]]) -> "Polyhedron2D":
        return Polyhedron2D(self.constraints + tuple(extra))

    def contains(self, x: Sequence) -> bool:
        x = as_vec(x)
        return all(dot(n, x) >= c for n, c in self.constraints)

    def _project(self, keep: int) -> Interval:
        """Exact Fourier-Motzkin projection onto coordinate `keep`."""
        drop = 1 - keep
        one_d: list[tuple[Fraction, Fraction]] = []  # coef * t >= rhs
        lows: list[tuple[Fraction, Fraction, Fraction]] = []  # (a, b, c), b > 0
        ups: list[tuple[Fraction, Fraction, Fraction]] = []  # (a, b, c), b < 0
        for n, c in self.constraints:
            a, b = n[keep], n[drop]
            if b == 0:
                one_d.append((a, c))
            elif b > 0:
                lows.append((a, b, c))
            else:
                ups.append((a, b, c))
        # a_i t + b_i x >= c_i (b_i > 0) and a_j t + b_j x >= c_j (b_j < 0)
        # admit a common x iff (b_i a_j - b_j a_i) t >= b_i c_j - b_j c_i
        for (ai, bi, ci), (aj, bj, cj) in itertools.product(lows, ups):
            one_d.append((bi * aj - bj * ai, bi * cj - bj * ci))
        lo: Optional[Fraction] = None
        hi: Optional[Fraction] = None
        for a, c in one_d:
            if a == 0:
                if c > 0:
                    return Interval(True)
            elif a > 0:
                bound = c / a
                lo = bound if lo is None else max(lo, bound)
            else:
                bound = c / a
                hi = bound if hi is None else min(hi, bound)
        if lo is not None and hi is not None and lo > hi:
            return Interval(True)
        return Interval(False, lo, hi)

    def x_interval(self) -> Interval:
        return self._project(0)

    def y_interval(self) -> Interval:
        return self._project(1)

    def is_empty(self) -> bool:
        return self.x_interval().empty

    def is_bounded(self) -> bool:
        ix = self.x_interval()
        if ix.empty:
            return True
        iy = self.y_interval()
        return None not in (ix.lo, ix.hi, iy.lo, iy.hi)

    def _column_interval(self, x1: int) -> Interval:
        lo: Optional[Fraction] = None
        hi: Optional[Fraction] = None
        for n, c in self.constraints:
            a, b = n[0], n[1]
            if b == 0:
                if a * x1 < c:
                    return Interval(True)
            elif b > 0:
                bound = (c - a * x1) / b
                lo = bound if lo is None else max(lo, bound)
            else:
                bound = (c - a * x1) / b
                hi = bound if hi is None else min(hi, bound)
        if lo is not None and hi is not None and lo > hi:
            return Interval(True)
        return Interval(False, lo, hi)

    def integer_points(self) -> tuple[IntPoint, ...]:
        ix = self.x_interval()
        if ix.empty:
            return ()
        if ix.lo is None or ix.hi is None:
            raise MalformedInputError("cannot enumerate an x-unbounded polyhedron")
        out: list[IntPoint] = []
        for x1 in range(math.ceil(ix.lo), math.floor(ix.hi) + 1):
            col = self._column_interval(x1)
            if col.empty:
                continue
            if col.lo is None or col.hi is None:
                raise MalformedInputError("cannot enumerate a y-unbounded polyhedron")
            for x2 in range(math.ceil(col.lo), math.floor(col.hi) + 1):
                out.append((x1, x2))
        return tuple(out)

    def is_lattice_free(self) -> bool:
        return len(self.integer_points()) == 0

    def vertices(self) -> tuple[Vec, ...]:
        out: list[Vec] = []
        k = len(self.constraints)
        for i in range(k):
            for j in range(i + 1, k):
                (ni, ci), (nj, cj) = self.constraints[i], self.constraints[j]
                if cross2(ni, nj) == 0:
                    continue
                x = solve2x2((ni, nj), (ci, cj))
                if self.contains(x) and x not in out:
                    out.append(x)
        return tuple(sorted(out))

    def as_dict(self) -> dict:
        return {
            "constraints": [
                {"normal": [format_rational(v) for v in n], "rhs": format_rational(c)}
                for n, c in self.constraints
            ]
        }


def axis_ray_threshold(poly: Polyhedron2D, axis: int) -> Optional[int]:
    """Smallest k0 >= 0 such that t * e_axis lies in the polyhedron for every
    integer t >= k0, or None when no tail of the axis ray is contained.

    Row by row: a positive axis coefficient a with offset c admits the ray
    tail from ceil(c / a); a row whose axis coefficient is negative, or zero
    with a positive offset, excludes every large t.
    """
    if axis not in (0, 1):
        raise MalformedInputError("axis must be 0 or 1")
    k0 = 0
    for n, c in poly.constraints:
        a = n[axis]
        if a > 0:
            k0 = max(k0, math.ceil(c / a))
        elif a < 0 or c > 0:
            return None
    return k0


# -------------------------------------------------------- support bounds


def _dyadic_floor(value, bits: int = _DYADIC_BITS) -> Fraction:
    """Largest multiple of 2^-bits that is <= value (value may be a surd)."""
    scaled = value * (2**bits)
    return Fraction(math.floor(scaled), 2**bits)


@dataclass(frozen=True)
class SupportBound:
    """A finite lower bound on pi.x over the whole intersection."""

    pi: Vec
    value: QuadraticSurd  # exact best per-block bound
    rational_bound: Fraction  # rational relaxation, <= value
    block_index: int
    result: SupportResult


def support_bound(blocks: Sequence[ConicBlock2D], pi: Sequence) -> Optional[SupportBound]:
    """max over blocks of (min pi.x over the block), when some block is finite.

    The intersection lies in every block, so each finite per-block value is
    a valid lower bound for W; the strongest one is returned together with
    a rational relaxation safe to use as polyhedron data.
    """
    blocks = _as_blocks(blocks)
    pi = as_vec(pi)
    best: Optional[SupportBound] = None
    for i, b in enumerate(blocks):
        res = support_minimize(b, pi)
        if not res.finite:
            continue
        if best is None or res.value > best.value:
            best = SupportBound(pi, res.value, _dyadic_floor(res.value), i, res)
    return best


def support_results(blocks: Sequence[ConicBlock2D], pi: Sequence) -> tuple[SupportResult, ...]:
    blocks = _as_blocks(blocks)
    return tuple(support_minimize(b, pi) for b in blocks)


# ------------------------------------------------------------ separation


def rational_separate(blocks: Sequence[ConicBlock2D], z: Sequence) -> CutInequality:
    """A rational inequality valid for the whole intersection and strictly
    violated at z; raises NotSeparableError when z lies in every block.

    Validity is certified on the spot: the emitted cut's support minimum
    over the violated block is checked to be >= the cut's rhs.
    """
    blocks = _as_blocks(blocks)
    z = as_vec(z)
    for idx, b in enumerate(blocks):
        if b.contains(z):
            continue
        pi, rhs = _separate_from_block(b, z)
        cut = CutInequality(
            pi,
            rhs,
            Derivation.make("separation", block=idx, point=[format_rational(c) for c in z]),
        )
        if dot(pi, z) >= rhs:
            raise InternalInconsistencyError("separation is not strict at z")
        res = support_minimize(b, pi)
        if not res.finite or not (res.value >= rhs):
            raise InternalInconsistencyError("separating cut is not valid for its block")
        return cut
    raise NotSeparableError("the point lies in every block")


def _separate_from_block(b: ConicBlock2D, z: Vec) -> tuple[Vec, Fraction]:
    if b.kind == "halfspace":
        return b.rows[-1], b.rhs[-1]
    if b.kind == "ellipse":
        from conecuts.conic2d import _ellipse_center, _gram  # local structure helpers

        center = _ellipse_center(b)
        gram = _gram(b)
        u = vec_sub(z, center)
        pi = vec_scale(-1, (gram[0][0] * u[0] + gram[0][1] * u[1],
                            gram[1][0] * u[0] + gram[1][1] * u[1]))
        pi = as_vec(pi)
        g = dot(u, (gram[0][0] * u[0] + gram[0][1] * u[1],
                    gram[1][0] * u[0] + gram[1][1] * u[1]))
        f_cap = -b.rhs[-1]
        # pi.z + (g - F^2)/2 lies strictly between pi.z and the support min
        rhs = dot(pi, z) + (g - f_cap * f_cap) / 2
        return pi, rhs
    if b.kind == "parabola":
        from conecuts.conic2d import _parabola_data

        u, u0, w, w0 = _parabola_data(b)
        t_z = dot(u, z) - u0
        pi = vec_sub(w, vec_scale(2 * t_z, u))
        rhs = w0 - t_z * t_z - 2 * t_z * u0
        return as_vec(pi), rhs
    # hyperbola branch
    from conecuts.conic2d import _hyperbola_data

    r2, r3, b2, b3, eta = _hyperbola_data(b)
    s_z = dot(r3, z) - b3
    d_z = dot(r2, z) - b2
    if s_z <= 0:
        return r3, b3 + eta
    target = eta * eta + d_z * d_z  # need rational s_tilde >= sqrt(target)
    s_tilde = eta + abs(d_z)
    while s_z * s_tilde >= target:
        s_tilde = (s_tilde + target / s_tilde) / 2
        if s_tilde * s_tilde < target:
            raise InternalInconsistencyError("separation rounding fell below the root")
    pi = vec_sub(vec_scale(s_tilde, r3), vec_scale(d_z, r2))
    rhs = s_tilde * b3 - d_z * b2 + eta * eta
    return as_vec(pi), rhs


# ------------------------------------------------- bounded outer approx


@dataclass(frozen=True)
class OuterApprox:
    """Finitely many rational inequalities, each valid for W, that clip to
    a bounded polyhedron below the stated level of the objective."""

    pi: Vec
    level: Fraction
    cuts: tuple[CutInequality, ...]
    separations: int

    def polyhedron(self) -> Polyhedron2D:
        return Polyhedron2D(tuple((c.pi, c.rhs) for c in self.cuts))

    def clipped(self, level) -> Polyhedron2D:
        level = Fraction(level)
        clip = (vec_scale(-1, self.pi), -level)
        return self.polyhedron().with_constraints((clip,))

    def as_dict(self) -> dict:
        return {
            "pi": [format_rational(c) for c in self.pi],
            "level": format_rational(self.level),
            "cuts": [c.as_dict() for c in self.cuts],
            "p": len(self.cuts),
            "p_bound": 4,
            "separations": self.separations,
        }


class OuterApproxBuilder:
    """Builds an OuterApprox for (blocks, pi): support cuts make the clipped
    region bounded, then separation removes integer points outside W."""

    def __init__(self, blocks: Sequence[ConicBlock2D], pi: Sequence):
        self.blocks = _as_blocks(blocks)
        self.pi = as_vec(pi)
        if len(self.pi) != 2 or all(c == 0 for c in self.pi):
            raise MalformedInputError("objective must be a nonzero 2d vector")
        dual = recession_dual(self.blocks)
        if not dual.interior_contains(self.pi):
            raise HypothesisViolationError(
                "the objective is not interior to the dual recession cone; "
                "the region below a level line cannot be bounded"
            )
        self.cuts: list[CutInequality] = []
        self.separations = 0
        self._seen: set[tuple] = set()

    # -- cut management

    def _add_support_cut(self, w: Vec) -> bool:
        w = as_vec(w)
        if all(c == 0 for c in w):
            return False
        key = tuple(w)
        if key in self._seen:
            return False
        self._seen.add(key)
        sb = support_bound(self.blocks, w)
        if sb is None:
            return False
        der = Derivation.make(
            "support-bound",
            block=sb.block_index,
            exact_value={"p": format_rational(sb.value.p),
                         "q": format_rational(sb.value.q),
                         "radicand": sb.value.r},
        )
        self.cuts.append(CutInequality(w, sb.rational_bound, der))
        return True

    def _candidate_directions(self, eps: Fraction) -> list[Vec]:
        v = rot90(self.pi)
        dirs = [self.pi,
                vec_add(self.pi, vec_scale(eps, v)),
                vec_sub(self.pi, vec_scale(eps, v))]
        for b in self.blocks:
            if b.kind == "halfspace":
                dirs.append(b.rows[-1])
            elif b.kind == "hyperbola":
                r2, r3 = b.rows[1], b.rows[2]
                n1 = vec_add(r2, r3)
                n2 = vec_sub(r3, r2)
                dirs.extend([n1, n2, vec_add(n1, n2),
                             vec_add(n1, vec_scale(4, n2)),
                             vec_add(vec_scale(4, n1), n2)])
            elif b.kind == "parabola":
                from conecuts.conic2d import _parabola_data

                u, _, w, _ = _parabola_data(b)
                dirs.append(w)
                delta = eps
                dirs.extend([vec_add(u, vec_scale(delta, w)),
                             vec_add(vec_scale(-1, u), vec_scale(delta, w))])
            # ellipse blocks have finite support in every direction; the
            # pi / pi +- eps cuts above already bound the clip
        return dirs

    def _clipped(self, level: Fraction) -> Polyhedron2D:
        cons = [(c.pi, c.rhs) for c in self.cuts]
        cons.append((vec_scale(-1, self.pi), -level))
        return Polyhedron2D(tuple(cons))

    def ensure_bounded(self, level: Fraction) -> None:
        eps = Fraction(1, 2)
        for _ in range(24):
            for w in self._candidate_directions(eps):
                self._add_support_cut(w)
            if self._clipped(level).is_bounded():
                return
            eps /= 4
        raise InternalInconsistencyError(
            "could not bound the clipped region despite an interior objective"
        )

    def clean_integer_points(self, level: Fraction, max_rounds: int = 10000) -> tuple[IntPoint, ...]:
        """Integer points of the clipped region after separating every
        integer point that is not in W.  Returned points all lie in W."""
        self.ensure_bounded(Fraction(level))
        for _ in range(max_rounds):
            pts = self._clipped(Fraction(level)).integer_points()
            strays = [z for z in pts if not contains_point(self.blocks, z)]
            if not strays:
                return tuple(pts)
            for z in strays:
                self.cuts.append(rational_separate(self.blocks, z))
                self.separations += 1
        raise InternalInconsistencyError("separation did not terminate")

    # -- pruning

    def _certifies(self, cuts: Sequence[CutInequality], level: Fraction) -> bool:
        cons = tuple((c.pi, c.rhs) for c in cuts) + (
            (vec_scale(-1, self.pi), -Fraction(level)),
        )
        poly = Polyhedron2D(cons)
        if not poly.is_bounded():
            return False
        return poly.is_lattice_free()

    def prune_for_level(self, level: Fraction) -> bool:
        """Shrink the cut list while the region clipped at `level` stays
        bounded and free of integer points.  Returns False (and leaves the
        cuts alone) when even the full list does not certify that."""
        level = Fraction(level)
        if not self._certifies(self.cuts, level):
            return False
        kept = list(self.cuts)
        for cut in sorted(range(len(kept)), reverse=True):
            trial = kept[:cut] + kept[cut + 1 :]
            if trial and self._certifies(trial, level):
                kept = trial
        if len(kept) > 4:
            for size in (1, 2, 3, 4):
                for combo in itertools.combinations(self.cuts, size):
                    if self._certifies(combo, level):
                        self.cuts = list(combo)
                        return True
        self.cuts = kept
        return True

    def snapshot(self, level) -> OuterApprox:
        return OuterApprox(self.pi, Fraction(level), tuple(self.cuts), self.separations)


def outer_approx_bounded(
    blocks: Sequence[ConicBlock2D], pi: Sequence, pi0
) -> tuple[OuterApprox, tuple[IntPoint, ...]]:
    """Outer approximation of W, bounded below level pi0 of pi, whose
    integer points at that level all belong to W (they are returned)."""
    builder = OuterApproxBuilder(blocks, pi)
    pts = builder.clean_integer_points(Fraction(pi0))
    return builder.snapshot(pi0), pts


# ------------------------------------------------------------- bands


@dataclass(frozen=True)
class Band:
    """Direction pi in which lo <= pi.x <= hi on all of W with
    hi <= floor(lo) + 1: the region is squeezed into a unit strip."""

    pi: Vec  # primitive integer
    lower: QuadraticSurd
    upper: QuadraticSurd
    floor_level: int
    lower_block: int
    upper_block: int

    def as_dict(self) -> dict:
        return {
            "pi": [str(int(c)) for c in self.pi],
            "lower": str(self.lower),
            "upper": str(self.upper),
            "floor_level": self.floor_level,
        }


def _canonical_directions(bound: int) -> Iterator[Vec]:
    for size in range(1, bound + 1):
        cells = []
        for a in range(-size, size + 1):
            for b in range(-size, size + 1):
                if max(abs(a), abs(b)) != size:
                    continue
                if a < 0 or (a == 0 and b <= 0):
                    continue  # canonical half of the direction circle
                if math.gcd(a, b) != 1:
                    continue
                cells.append((a, b))
        for a, b in sorted(cells):
            yield (Fraction(a), Fraction(b))


def band_candidates(blocks: Sequence[ConicBlock2D], bound: int = 64) -> Iterator[Band]:
    """Yield unit-strip bands in primitive directions ordered by max-norm.

    For each direction both pi and -pi supports are needed; directions where
    either side is unbounded over every block are skipped.
    """
    blocks = _as_blocks(blocks)
    for pi in _canonical_directions(bound):
        lo_b = support_bound(blocks, pi)
        if lo_b is None:
            continue
        hi_b = support_bound(blocks, vec_scale(-1, pi))
        if hi_b is None:
            continue
        lower = lo_b.value
        upper = -hi_b.value  # sup pi.x = -min(-pi.x)
        floor_level = math.floor(lower)
        if upper <= floor_level + 1:
            yield Band(pi, lower, upper, floor_level, lo_b.block_index, hi_b.block_index)


def lattice_free_band(blocks: Sequence[ConicBlock2D], bound: int = 64) -> Optional[Band]:
    """First band whose strip misses the integer levels entirely:
    floor(lower) < lower and upper < floor(lower) + 1, so no integer value
    of pi.x can occur on W at all."""
    for band in band_candidates(blocks, bound):
        if band.lower > band.floor_level and band.upper < band.floor_level + 1:
            return band
    return None


# --------------------------------------------------- integer point search


def find_integer_point(
    blocks: Sequence[ConicBlock2D], max_radius: int = 64, interior: bool = False
) -> Optional[IntPoint]:
    """Grid search for an integer point of W (optionally interior to W),
    scanning boxes of doubling radius; None if none is found in budget."""
    blocks = _as_blocks(blocks)
    radius = 4
    seen_radius = 0
    while radius <= max_radius:
        pts = enumerate_integer_points(blocks, (-radius, radius, -radius, radius))
        for p in pts:
            if max(abs(p[0]), abs(p[1])) <= seen_radius:
                continue
            if not interior or interior_contains_point(blocks, p):
                return p
        seen_radius = radius
        radius *= 2
    return None


def _interior_seeds(blocks: Blocks) -> list[Vec]:
    """Cheap per-block interior candidates plus their centroid."""
    from conecuts.conic2d import _ellipse_center, _hyperbola_data, _parabola_data

    seeds: list[Vec] = []
    for b in blocks:
        if b.kind == "halfspace":
            n, c = b.rows[-1], b.rhs[-1]
            seeds.append(vec_scale((c + 1) / dot(n, n), n))
        elif b.kind == "ellipse":
            seeds.append(_ellipse_center(b))
        elif b.kind == "parabola":
            u, u0, w, w0 = _parabola_data(b)
            seeds.append(solve2x2((u, w), (u0, w0 + 1)))
        else:
            r2, r3, b2, b3, eta = _hyperbola_data(b)
            seeds.append(solve2x2((r2, r3), (b2, b3 + eta + 1)))
    if len(seeds) > 1:
        k = len(seeds)
        centroid = (sum(s[0] for s in seeds) / k, sum(s[1] for s in seeds) / k)
        seeds.append(as_vec(centroid))
    return seeds


def find_rational_interior_point(blocks: Sequence[ConicBlock2D]) -> Optional[Vec]:
    """Point interior to every block: per-block seeds, then refining grids."""
    blocks = _as_blocks(blocks)
    for x in _interior_seeds(blocks):
        if interior_contains_point(blocks, x):
            return x
    # dyadic grids: (denominator, half-width) pairs from coarse to fine
    for den, radius in ((1, 8), (2, 8), (4, 8), (1, 32), (8, 8), (2, 32), (1, 128)):
        step = Fraction(1, den)
        n_steps = radius * den
        for i in range(-n_steps, n_steps + 1):
            for j in range(-n_steps, n_steps + 1):
                x = (i * step, j * step)
                if interior_contains_point(blocks, x):
                    return as_vec(x)
    return None
