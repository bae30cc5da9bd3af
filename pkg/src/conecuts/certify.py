"""Emptiness and face certificates for planar conic intersections.

Two constructive procedures over W = B_1 cap ... cap B_k:

* ``certify_empty``: when W has no integer point, exhibit two integer cuts,
  each valid for the integer points of W (vacuously) by an audited
  derivation, whose conjunction is infeasible over the reals.  Bounded sets
  go through a two-inequality rational slab around a lattice-free band;
  unbounded sets derive each side's cut from the single block that binds
  the band direction (half-space rounding or an asymptote-aligned cut).

* ``derive_face``: given a claimed valid inequality pi.x >= pi0 with
  primitive integer pi, reproduce it by exactly one cut derivation and
  certify tightness with an exhibited integer point (plus a ray of the
  face line when it is unbounded).  The dispatch follows the position of
  pi relative to the dual recession cone: interior -> bounded outer
  approximation; boundary -> binding-block analysis; outside -> the claim
  cannot be valid.

Everything is exact: supports are surds, feasibility along a line is
solved by quadratic sign analysis in Q(sqrt(r)), and every emitted cut is
re-checked against enumerated integer points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from conecuts.cgf import CutInequality, Derivation
from conecuts.conic2d import (
    ConicBlock2D,
    blocks_hash,
    hyperbola_cuts,
    rot90,
    support_minimize,
)
from conecuts.errors import (
    HypothesisViolationError,
    InternalInconsistencyError,
    InvalidInequalityError,
    MalformedInputError,
    NotAFaceError,
    NotEmptyError,
)
from conecuts.exact import (
    QuadraticSurd,
    Vec,
    as_vec,
    dot,
    format_rational,
    format_surd,
    sqrt_surd,
    vec_add,
    vec_scale,
)
from conecuts.hull import (
    Band,
    OuterApproxBuilder,
    Polyhedron2D,
    _dyadic_floor,
    band_candidates,
    enumerate_integer_points,
    find_rational_interior_point,
    interior_contains_point,
    recession_cone,
    recession_dual,
    support_results,
)

IntPoint = tuple[int, int]
Box = tuple[int, int, int, int]

DEFAULT_BOX: Box = (-100, 100, -100, 100)

#: gap tolerated when witnessing an unattained support value inside W
WITNESS_GAP = Fraction(1, 2**20)

_EVIDENCE_DIRECTIONS = (
    (1, 0), (0, 1), (-1, 0), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1),
)


def _fmt(x) -> str:
    if isinstance(x, QuadraticSurd):
        return format_surd(x)
    return format_rational(x)


def _primitive_int(pi: Sequence) -> tuple[int, int]:
    v = as_vec(pi)
    if len(v) != 2:
        raise MalformedInputError("the direction must be a 2d vector")
    if any(c.denominator != 1 for c in v):
        raise MalformedInputError("the direction must have integer entries")
    a, b = int(v[0]), int(v[1])
    if a == 0 and b == 0:
        raise MalformedInputError("the direction must be nonzero")
    if math.gcd(a, b) != 1:
        raise MalformedInputError("the direction must be primitive (gcd 1)")
    return a, b


# ------------------------------------------------- exact line feasibility


def _interval_meet(cur, new):
    """Intersect two closed intervals given as [lo, hi] with None = infinite."""
    lo = cur[0] if new[0] is None else (new[0] if cur[0] is None else max(cur[0], new[0]))
    hi = cur[1] if new[1] is None else (new[1] if cur[1] is None else min(cur[1], new[1]))
    return [lo, hi]


def _interval_empty(iv) -> bool:
    return iv[0] is not None and iv[1] is not None and iv[0] > iv[1]


def _block_line_interval(block: ConicBlock2D, base: Vec, d: Vec):
    """Parameters s for which base + s*d lies in the block, as a closed
    interval [lo, hi] (None = unbounded side), or None when empty.

    Along a line every coordinate of v = A x - b is affine in s, so the
    axis bound is linear and the cone inequality is a quadratic sign
    condition; convexity of the region guarantees the joint solution set
    is a single interval, which is asserted.
    """
    p = [dot(r, base) - rhs for r, rhs in zip(block.rows, block.rhs)]
    q = [dot(r, d) for r in block.rows]
    # axis coordinate (last) must be nonnegative
    pm, qm = p[-1], q[-1]
    if qm == 0:
        if pm < 0:
            return None
        lin = [None, None]
    elif qm > 0:
        lin = [-pm / qm, None]
    else:
        lin = [None, -pm / qm]
    # quadratic: (pm + qm s)^2 - sum (pi + qi s)^2 >= 0
    a = qm * qm - sum(x * x for x in q[:-1])
    b = 2 * (pm * qm - sum(x * y for x, y in zip(p[:-1], q[:-1])))
    c = pm * pm - sum(x * x for x in p[:-1])
    if a == 0:
        if b == 0:
            quad = None if c < 0 else [None, None]
        elif b > 0:
            quad = [-c / b, None]
        else:
            quad = [None, -c / b]
        if quad is None:
            return None
        iv = _interval_meet(lin, quad)
        return None if _interval_empty(iv) else iv
    disc = b * b - 4 * a * c
    if a < 0:
        if disc < 0:
            return None
        root = sqrt_surd(disc)
        r1 = (root * -1 - b) / (2 * a)
        r2 = (root - b) / (2 * a)
        lo, hi = (r1, r2) if r1 <= r2 else (r2, r1)
        iv = _interval_meet(lin, [lo, hi])
        return None if _interval_empty(iv) else iv
    # a > 0: the quadratic region is everything, or two outer rays; the
    # axis halfline must select at most one ray (convexity)
    if disc <= 0:
        return None if _interval_empty(lin) else lin
    root = sqrt_surd(disc)
    r1 = (root * -1 - b) / (2 * a)
    r2 = (root - b) / (2 * a)
    lo, hi = (r1, r2) if r1 <= r2 else (r2, r1)
    left = _interval_meet(lin, [None, lo])
    right = _interval_meet(lin, [hi, None])
    left_ok = not _interval_empty(left)
    right_ok = not _interval_empty(right)
    if left_ok and right_ok:
        raise InternalInconsistencyError(
            "line meets a conic block in two pieces; the region is not convex"
        )
    if left_ok:
        return left
    if right_ok:
        return right
    return None


def _line_interval(blocks: Sequence[ConicBlock2D], base: Vec, d: Vec):
    iv = [None, None]
    for b in blocks:
        piece = _block_line_interval(b, base, d)
        if piece is None:
            return None
        iv = _interval_meet(iv, piece)
        if _interval_empty(iv):
            return None
    return iv


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b)."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        qt = old_r // r
        old_r, r = r, old_r - qt * r
        old_x, x = x, old_x - qt * x
        old_y, y = y, old_y - qt * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _line_lattice(blocks: Sequence[ConicBlock2D], pi: tuple[int, int], level: int):
    """Integer points on {pi.x = level} inside W, described exactly.

    Returns (base, d, klo, khi): the points are base + k*d for integers
    k in [klo, khi] (None = unbounded side), or None when there are none.
    """
    g, xa, xb = _ext_gcd(pi[0], pi[1])
    if g != 1:
        raise MalformedInputError("the direction must be primitive (gcd 1)")
    base = (Fraction(xa * level), Fraction(xb * level))
    d = rot90(pi)
    iv = _line_interval(blocks, base, d)
    if iv is None:
        return None
    lo, hi = iv
    klo = None if lo is None else math.ceil(lo)
    khi = None if hi is None else math.floor(hi)
    if klo is not None and khi is not None and klo > khi:
        return None
    return base, d, klo, khi


def integer_point_on_line(
    blocks: Sequence[ConicBlock2D], pi: Sequence, level: int
) -> Optional[IntPoint]:
    """An integer point of W with pi.x == level (smallest parameter by
    absolute value, for determinism), or None when the level line misses
    every integer point of W."""
    pi = _primitive_int(pi)
    lat = _line_lattice(tuple(blocks), pi, int(level))
    if lat is None:
        return None
    base, d, klo, khi = lat
    if (klo is None or klo <= 0) and (khi is None or khi >= 0):
        k = 0
    elif klo is not None and klo > 0:
        k = klo
    else:
        k = khi
    pt = vec_add(base, vec_scale(k, d))
    return int(pt[0]), int(pt[1])


def rational_point_on_line(
    blocks: Sequence[ConicBlock2D], pi: Sequence, level
) -> Optional[Vec]:
    """A rational point of W on the line {pi.x = level}, or None."""
    pi_v = as_vec(pi)
    level = Fraction(level)
    nn = dot(pi_v, pi_v)
    base = vec_scale(level / nn, pi_v)
    d = rot90(pi_v)
    iv = _line_interval(tuple(blocks), base, d)
    if iv is None:
        return None
    lo, hi = iv
    if lo is None and hi is None:
        s = Fraction(0)
    elif lo is None:
        s = Fraction(math.floor(hi))
    elif hi is None:
        s = Fraction(math.ceil(lo))
    elif lo == hi:
        if isinstance(lo, QuadraticSurd):
            if not lo.is_rational:
                return None
            s = lo.rational_value()
        else:
            s = Fraction(lo)
    else:
        s = None
        for bits in range(0, 130, 8):
            cand = Fraction(math.ceil(lo * 2**bits), 2**bits)
            if cand <= hi:
                s = cand
                break
        if s is None:
            return None
    return vec_add(base, vec_scale(s, d))


# ------------------------------------------------------ binding block


def find_binding_conic(blocks: Sequence[ConicBlock2D], pi: Sequence):
    """The single block whose support equals the support of the whole
    intersection for a boundary direction pi of the dual recession cone.

    Returns (index, SupportResult).  The support value is witnessed inside
    W: exactly on the level line when attained, and within 2^-20 above it
    when the infimum is approached along an asymptote.
    """
    blocks = tuple(blocks)
    if not blocks:
        raise MalformedInputError("at least one block is required")
    pi = _primitive_int(pi)
    if recession_cone(blocks).is_origin_only():
        raise HypothesisViolationError(
            "the intersection is bounded; binding-block analysis applies to "
            "unbounded sets only"
        )
    dual = recession_dual(blocks)
    if not dual.contains(pi):
        raise HypothesisViolationError(
            "the direction lies outside the dual recession cone; the "
            "objective is unbounded below"
        )
    if dual.interior_contains(pi):
        raise HypothesisViolationError(
            "the direction is interior to the dual recession cone; no single "
            "block binds it"
        )
    results = support_results(blocks, pi)
    finite = [(i, r) for i, r in enumerate(results) if r.finite]
    if not finite:
        # reachable when the boundary ray of the dual is contributed by a
        # parabola's recession ray alone: every block recedes, so the
        # objective is unbounded below on the whole intersection
        raise HypothesisViolationError(
            "no single conic bounds the direction; the objective is "
            "unbounded below on the intersection"
        )
    best = max(r.value for _, r in finite)
    rank = {"halfspace": 0, "hyperbola": 1}
    tied = sorted(
        (i for i, r in finite if r.value == best),
        key=lambda i: (rank.get(blocks[i].kind, 2), i),
    )
    i0 = tied[0]
    res = results[i0]
    kind = blocks[i0].kind
    if kind in ("ellipse", "parabola"):
        raise InternalInconsistencyError(
            f"binding block {i0} is a {kind}; a boundary direction must bind "
            "a half-space or a hyperbola asymptote"
        )
    if kind == "hyperbola" and res.status != "infimum":
        raise InternalInconsistencyError(
            f"binding hyperbola block {i0} attains its support away from the "
            "asymptote; no asymptote is orthogonal to the direction"
        )
    if not res.value.is_rational:
        raise InternalInconsistencyError(
            "binding support value on a boundary direction must be rational"
        )
    alpha = res.value.rational_value()
    witness_level = alpha if res.attained else alpha + WITNESS_GAP
    if rational_point_on_line(blocks, pi, witness_level) is None:
        raise HypothesisViolationError(
            f"the support value {format_rational(alpha)} of block {i0} is not "
            "approached inside the intersection (a non-redundancy or "
            "nonempty-interior hypothesis fails)"
        )
    return i0, res


# ------------------------------------------------------ certificates


@dataclass(frozen=True)
class NotProven:
    """Emptiness could not be certified; carries the diagnostics."""

    reasons: tuple[str, ...]
    instance: str

    def as_dict(self) -> dict:
        return {
            "status": "not-proven",
            "reasons": list(self.reasons),
            "instance": self.instance,
        }


@dataclass(frozen=True)
class Certificate:
    """An audited emptiness or face derivation.

    variant "empty": two cuts whose conjunction is infeasible over the
    reals, each valid for the integer points of W.  variant "face": one
    cut reproduced by a single derivation, tight at ``tight_point`` (and
    along ``tight_ray`` when the face line is unbounded inside W).
    """

    variant: str
    cuts: tuple[CutInequality, ...]
    pathways: tuple[dict, ...]
    box: Box
    instance: str
    oracle_points: int
    band: Optional[Band] = None
    tight_point: Optional[IntPoint] = None
    tight_ray: Optional[Vec] = None

    def as_dict(self) -> dict:
        out = {
            "status": "certified",
            "variant": self.variant,
            "cuts": [c.as_dict() for c in self.cuts],
            "pathways": list(self.pathways),
            "box": list(self.box),
            "instance": self.instance,
            "oracle_points": self.oracle_points,
        }
        if self.band is not None:
            out["band"] = self.band.as_dict()
        if self.tight_point is not None:
            out["tight_point"] = list(self.tight_point)
        if self.tight_ray is not None:
            out["tight_ray"] = [format_rational(c) for c in self.tight_ray]
        return out


def _redundancy_unevidenced(blocks: tuple[ConicBlock2D, ...]) -> list[int]:
    """Indices of blocks with no direction (out of eight) in which they
    strictly determine the best per-block support bound."""
    if len(blocks) < 2:
        return []
    evidenced: set[int] = set()
    for d in _EVIDENCE_DIRECTIONS:
        values = []
        for i, b in enumerate(blocks):
            r = support_minimize(b, d)
            values.append(r.value if r.finite else None)
        finite = [(i, v) for i, v in enumerate(values) if v is not None]
        if not finite:
            continue
        best = max(v for _, v in finite)
        tops = [i for i, v in finite if v == best]
        if len(tops) == 1:
            evidenced.add(tops[0])
    return [i for i in range(len(blocks)) if i not in evidenced]


def _dyadic_above(value, threshold: int) -> Optional[Fraction]:
    """A rational lower bound of `value` that still exceeds the integer
    threshold, by dyadic refinement; None if the margin is below 2^-160."""
    for bits in (20, 40, 80, 160):
        cand = _dyadic_floor(value, bits)
        if cand > threshold:
            return cand
    return None


def _matching_asymptote_cut(block: ConicBlock2D, pi: tuple[int, int]):
    target = as_vec(pi)
    for idx, cut in enumerate(hyperbola_cuts(block)):
        if cut.pi == target:
            return cut, idx
    raise InternalInconsistencyError(
        "no asymptote cut of the binding hyperbola aligns with the direction"
    )


def _empty_cuts_bounded(blocks, band: Band):
    """Two slab cuts around a strict lattice-free band of a bounded set."""
    floor_ = band.floor_level
    lb = _dyadic_above(band.lower, floor_)
    if lb is None:
        return None
    ub = _dyadic_above(-band.upper, -(floor_ + 1))
    if ub is None:
        return None
    ub = -ub  # rational upper bound of the band, < floor_ + 1
    pi = band.pi
    neg = vec_scale(-1, pi)
    slab = Polyhedron2D(((pi, lb), (neg, -ub)))
    common = {
        "kind": "BoundedOuterApprox",
        "p": 2,
        "p_bound": 4,
        "polyhedron": slab.as_dict(),
        "prune_trace": {"before": 2, "after": 2, "separations": 0},
        "support_lower": _fmt(band.lower),
        "support_upper": _fmt(band.upper),
    }
    cut_lo = CutInequality(
        pi,
        floor_ + 1,
        Derivation.make(
            "ceil-of-support",
            bound=format_rational(lb),
            block=band.lower_block,
        ),
        integer_face=True,
    )
    cut_hi = CutInequality(
        neg,
        -floor_,
        Derivation.make(
            "ceil-of-support",
            bound=format_rational(-ub),
            block=band.upper_block,
        ),
        integer_face=True,
    )
    lo_path = dict(common, side="lower")
    hi_path = dict(common, side="upper")
    return (cut_lo, lo_path), (cut_hi, hi_path)


def _empty_cuts_unbounded(blocks, band: Band):
    """Derive each side's cut of a strict lattice-free band from the block
    binding that direction; None if a side's rounding misses the target."""
    floor_ = band.floor_level
    pi = tuple(int(c) for c in band.pi)
    out = []
    for direction, target in (
        (pi, floor_ + 1),
        ((-pi[0], -pi[1]), -floor_),
    ):
        i0, res = find_binding_conic(blocks, direction)
        alpha = res.value.rational_value()
        block = blocks[i0]
        if block.kind == "halfspace":
            bound = math.ceil(alpha)
            cut = CutInequality(
                as_vec(direction),
                bound,
                Derivation.make(
                    "halfspace-rounding",
                    block=i0,
                    support=format_rational(alpha),
                ),
                integer_face=True,
            )
            path = {
                "kind": "HalfSpaceRounding",
                "block": i0,
                "alpha": format_rational(alpha),
                "ceil": bound,
            }
        else:
            cut, idx = _matching_asymptote_cut(block, direction)
            beta = alpha + 1 if alpha.denominator == 1 else Fraction(math.ceil(alpha))
            if cut.rhs != beta:
                raise InternalInconsistencyError(
                    "asymptote cut disagrees with the support rounding rule"
                )
            path = {
                "kind": "HyperbolaCut",
                "block": i0,
                "asymptote": idx,
                "alpha": format_rational(alpha),
                "beta": int(beta),
            }
        if cut.rhs != target:
            return None
        out.append((cut, path))
    return tuple(out)


def certify_empty(
    blocks: Sequence[ConicBlock2D],
    box: Box = DEFAULT_BOX,
    direction_bound: int = 64,
):
    """Certificate that W contains no integer point, or NotProven.

    Raises NotEmptyError when enumeration finds an integer point.  The
    hypotheses (nonempty interior, per-block non-redundancy) are verified
    up front; failures downgrade the result to NotProven rather than
    assuming them.
    """
    blocks = tuple(blocks)
    if not blocks:
        raise MalformedInputError("at least one block is required")
    h = blocks_hash(blocks)
    if find_rational_interior_point(blocks) is None:
        return NotProven(
            ("no rational interior point was found; the nonempty-interior "
             "hypothesis is unverified",),
            h,
        )
    missing = _redundancy_unevidenced(blocks)
    if missing:
        return NotProven(
            tuple(
                f"block {i} is never the strict support maximizer in the "
                "eight probe directions; non-redundancy is unverified"
                for i in missing
            ),
            h,
        )
    pts = enumerate_integer_points(blocks, box)
    if pts:
        raise NotEmptyError(
            f"the intersection contains the integer point {pts[0]}"
        )
    bounded = recession_cone(blocks).is_origin_only()
    diagnostics: list[str] = []
    for band in band_candidates(blocks, direction_bound):
        floor_ = band.floor_level
        if not (band.lower > floor_ and band.upper < floor_ + 1):
            continue  # the strip touches an integer level; not certifying
        try:
            pair = (
                _empty_cuts_bounded(blocks, band)
                if bounded
                else _empty_cuts_unbounded(blocks, band)
            )
        except HypothesisViolationError as exc:
            diagnostics.append(f"direction {tuple(map(int, band.pi))}: {exc}")
            continue
        if pair is None:
            continue
        (cut_lo, path_lo), (cut_hi, path_hi) = pair
        if tuple(vec_scale(-1, cut_lo.pi)) != tuple(cut_hi.pi) or (
            cut_lo.rhs + cut_hi.rhs <= 0
        ):
            diagnostics.append(
                f"direction {tuple(map(int, band.pi))}: derived cuts are not "
                "linearly inconsistent"
            )
            continue
        for cut in (cut_lo, cut_hi):
            if any(not cut.satisfied_by(p) for p in pts):
                raise InternalInconsistencyError("cut fails on an oracle point")
        return Certificate(
            "empty",
            (cut_lo, cut_hi),
            (path_lo, path_hi),
            box,
            h,
            0,
            band=band,
        )
    return NotProven(
        (
            "no strict lattice-free band certified emptiness within "
            f"direction bound {direction_bound}",
            *diagnostics,
        ),
        h,
    )


# ------------------------------------------------------ face derivation


def _walk_true_rhs(blocks, pi: tuple[int, int], pi0: int, pts) -> int:
    """Exact minimum of pi.x over the integer points of W, located by
    walking the level lines upward from pi0 + 1 (an enumerated point
    bounds the walk)."""
    cap = min(int(dot(pi, p)) for p in pts)
    for level in range(pi0 + 1, cap + 1):
        if _line_lattice(blocks, pi, level) is not None:
            return level
    return cap


def _face_bounded(blocks, pi, pi0: int, pts, box, h) -> Certificate:
    builder = OuterApproxBuilder(blocks, pi)
    clean = builder.clean_integer_points(Fraction(pi0))
    below = sorted(p for p in clean if dot(pi, p) < pi0)
    if below:
        raise InvalidInequalityError(
            f"the inequality is violated at the integer point {below[0]} of "
            "the intersection"
        )
    tight = sorted(p for p in clean if dot(pi, p) == pi0)
    if not tight:
        true_rhs = _walk_true_rhs(blocks, pi, pi0, pts)
        raise NotAFaceError(
            f"the inequality is valid but never tight; the face at this "
            f"normal has right-hand side {true_rhs}",
            true_rhs=true_rhs,
        )
    before = len(builder.cuts)
    if not builder.prune_for_level(Fraction(pi0 - 1)):
        raise InternalInconsistencyError(
            "the cleaned outer approximation does not certify its own level"
        )
    oa = builder.snapshot(pi0)
    path = {
        "kind": "BoundedOuterApprox",
        "p": len(oa.cuts),
        "p_bound": 4,
        "outer_approx": oa.as_dict(),
        "prune_trace": {
            "before": before,
            "after": len(oa.cuts),
            "separations": oa.separations,
        },
        "clean_points": [list(p) for p in clean],
    }
    cut = CutInequality(
        as_vec(pi),
        pi0,
        Derivation.make("bounded-outer-approx", level=pi0, p=len(oa.cuts)),
        integer_face=True,
    )
    return Certificate(
        "face", (cut,), (path,), box, h, len(pts), tight_point=tight[0]
    )


def _face_boundary(blocks, pi, pi0: int, pts, box, h) -> Certificate:
    if not any(r.finite for r in support_results(blocks, pi)):
        raise InvalidInequalityError(
            "the objective is unbounded below on the intersection; no "
            "right-hand side is valid for this normal"
        )
    i0, res = find_binding_conic(blocks, pi)
    alpha = res.value.rational_value()
    block = blocks[i0]
    if block.kind == "halfspace":
        derived = math.ceil(alpha)
        if derived != pi0:
            raise NotAFaceError(
                f"the derivation yields right-hand side {derived}, not {pi0}",
                true_rhs=derived,
            )
        cut = CutInequality(
            as_vec(pi),
            derived,
            Derivation.make(
                "halfspace-rounding", block=i0, support=format_rational(alpha)
            ),
            integer_face=True,
        )
        path = {
            "kind": "HalfSpaceRounding",
            "block": i0,
            "alpha": format_rational(alpha),
            "ceil": derived,
        }
    else:
        cut, idx = _matching_asymptote_cut(block, pi)
        beta = alpha + 1 if alpha.denominator == 1 else Fraction(math.ceil(alpha))
        if cut.rhs != beta:
            raise InternalInconsistencyError(
                "asymptote cut disagrees with the support rounding rule"
            )
        if int(beta) != pi0:
            raise NotAFaceError(
                f"the derivation yields right-hand side {int(beta)}, not {pi0}",
                true_rhs=int(beta),
            )
        path = {
            "kind": "HyperbolaCut",
            "block": i0,
            "asymptote": idx,
            "alpha": format_rational(alpha),
            "beta": int(beta),
        }
    lat = _line_lattice(blocks, pi, pi0)
    if lat is None:
        true_rhs = _walk_true_rhs(blocks, pi, pi0, pts)
        raise NotAFaceError(
            f"the inequality is valid but never tight; the face at this "
            f"normal has right-hand side {true_rhs}",
            true_rhs=true_rhs,
        )
    base, d, klo, khi = lat
    if (klo is None or klo <= 0) and (khi is None or khi >= 0):
        k = 0
    elif klo is not None and klo > 0:
        k = klo
    else:
        k = khi
    pt = vec_add(base, vec_scale(k, d))
    tight_pt = (int(pt[0]), int(pt[1]))
    ray = None
    if khi is None:
        ray = d
    elif klo is None:
        ray = vec_scale(-1, d)
    return Certificate(
        "face",
        (cut,),
        (path,),
        box,
        h,
        len(pts),
        tight_point=tight_pt,
        tight_ray=ray,
    )


def derive_face(
    blocks: Sequence[ConicBlock2D], pi: Sequence, pi0, box: Box = DEFAULT_BOX
) -> Certificate:
    """Reproduce a claimed face pi.x >= pi0 of the integer hull of W by
    exactly one audited derivation.

    Dispatch: pi interior to the dual recession cone -> bounded outer
    approximation; pi on the boundary -> binding-block rounding (half-space
    or asymptote cut); pi outside -> the inequality cannot be valid.
    """
    blocks = tuple(blocks)
    if not blocks:
        raise MalformedInputError("at least one block is required")
    pi = _primitive_int(pi)
    pi0_f = Fraction(pi0)
    if pi0_f.denominator != 1:
        raise MalformedInputError("the right-hand side must be an integer")
    pi0 = int(pi0_f)
    h = blocks_hash(blocks)
    pts = enumerate_integer_points(blocks, box)
    if not any(interior_contains_point(blocks, p) for p in pts):
        raise HypothesisViolationError(
            "no integer point interior to the intersection was found in the "
            "verification box"
        )
    violated = sorted(p for p in pts if dot(pi, p) < pi0)
    if violated:
        raise InvalidInequalityError(
            f"the inequality is violated at the integer point {violated[0]} "
            "of the intersection"
        )
    dual = recession_dual(blocks)
    if not dual.contains(pi):
        raise InvalidInequalityError(
            "the objective is unbounded below over the set (the normal lies "
            "outside the dual recession cone); the inequality cannot be valid"
        )
    if dual.interior_contains(pi):
        return _face_bounded(blocks, pi, pi0, pts, box, h)
    return _face_boundary(blocks, pi, pi0, pts, box, h)
