"""Planar conic regions as second-order-cone blocks, exactly.

A *block* is the data (rows, rhs) of an affine map v = A x - b from the plane
into R^m together with the constraint that v lies in the cone
{v : v_m >= 0, v_m^2 >= v_1^2 + ... + v_{m-1}^2} (axis last).  Every block
here has integer rows and rhs (converters scale by a common positive factor,
which leaves the represented region unchanged).

Four region kinds are supported: halfspace, ellipse, parabola, hyperbola
(one branch).  Conversions from quadratic-inequality form are exact over the
rationals; rotations whose eigenstructure leaves the rationals are rejected
rather than approximated (UnsupportedRotationError), and region shapes that
are not convex or collapse to degenerate conics are rejected with their own
error types.

Support minimization (min pi.x over one block) is solved in closed form per
kind, returning exact values in Q(sqrt(rad)) plus certificates: a dual cone
multiplier for attained values, feasible witness sequences for unattained
infima, and recession descent directions for unbounded problems.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from conecuts.cgf import CutInequality, Derivation, GammaFunction, split_and_project_cut
from conecuts.errors import (
    DegenerateConicError,
    InternalInconsistencyError,
    MalformedInputError,
    NonConvexRegionError,
    UnsupportedConstructError,
    UnsupportedRotationError,
)
from conecuts.exact import (
    QuadraticSurd,
    Vec,
    as_vec,
    dot,
    format_rational,
    integerize,
    primitive_integer_vector,
    rational_sos,
    sqrt_rational,
    sqrt_surd,
    surd,
    vec_scale,
    vec_sub,
)

Number = Union[int, Fraction, QuadraticSurd]

# ----------------------------------------------------------- 2x2 helpers


def det2(m: Sequence[Sequence]) -> Fraction:
    return Fraction(m[0][0]) * Fraction(m[1][1]) - Fraction(m[0][1]) * Fraction(m[1][0])


def solve2x2(m: Sequence[Sequence], rhs: Sequence) -> Vec:
    """Solve the 2x2 system m x = rhs exactly."""
    d = det2(m)
    if d == 0:
        raise MalformedInputError("singular 2x2 system")
    r0, r1 = Fraction(rhs[0]), Fraction(rhs[1])
    x = (r0 * Fraction(m[1][1]) - Fraction(m[0][1]) * r1) / d
    y = (Fraction(m[0][0]) * r1 - r0 * Fraction(m[1][0])) / d
    return (x, y)


def rot90(v: Sequence) -> Vec:
    v = as_vec(v)
    return (-v[1], v[0])


def cross2(u: Sequence, v: Sequence) -> Fraction:
    return Fraction(u[0]) * Fraction(v[1]) - Fraction(u[1]) * Fraction(v[0])


def _sym2(q: Sequence[Sequence]) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
    if len(q) != 2 or any(len(r) != 2 for r in q):
        raise MalformedInputError("Q must be 2x2")
    a, b1 = Fraction(q[0][0]), Fraction(q[0][1])
    b2, c = Fraction(q[1][0]), Fraction(q[1][1])
    if b1 != b2:
        raise MalformedInputError("Q must be symmetric")
    return ((a, b1), (b1, c))


# --------------------------------------------------------------- objects


@dataclass(frozen=True)
class Line2D:
    """The line normal.x = offset, oriented so the region lies in
    normal.x >= offset; normal is a primitive integer vector."""

    normal: Vec
    offset: Fraction

    def __post_init__(self):
        n = as_vec(self.normal)
        ints, t = primitive_integer_vector(n)
        if as_vec(ints) != n:
            raise MalformedInputError("line normal must be primitive integer")
        object.__setattr__(self, "normal", n)
        object.__setattr__(self, "offset", Fraction(self.offset))

    def value(self, x: Sequence) -> Fraction:
        return dot(self.normal, x) - self.offset

    def __str__(self) -> str:
        n1, n2 = self.normal
        return f"{n1}*x1 + {n2}*x2 = {format_rational(self.offset)}"


@dataclass(frozen=True)
class QuadraticConic:
    """(1/2) x'Qx + d'x + s  (sense)  0, over the plane."""

    q: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]
    d: Vec
    s: Fraction
    sense: str

    def __post_init__(self):
        object.__setattr__(self, "q", _sym2(self.q))
        object.__setattr__(self, "d", as_vec(self.d))
        object.__setattr__(self, "s", Fraction(self.s))
        if len(self.d) != 2:
            raise MalformedInputError("d must have two entries")
        if self.sense not in ("<=", ">="):
            raise MalformedInputError("sense must be '<=' or '>='")

    def value(self, x: Sequence) -> Fraction:
        x = as_vec(x)
        qx = (
            self.q[0][0] * x[0] * x[0]
            + 2 * self.q[0][1] * x[0] * x[1]
            + self.q[1][1] * x[1] * x[1]
        )
        return qx / 2 + dot(self.d, x) + self.s

    def contains(self, x: Sequence) -> bool:
        v = self.value(x)
        return v <= 0 if self.sense == "<=" else v >= 0


@dataclass(frozen=True)
class ConicBlock2D:
    """One conic region encoded as integer SOC data (axis row last)."""

    kind: str  # "halfspace" | "ellipse" | "parabola" | "hyperbola"
    rows: tuple[Vec, ...]
    rhs: Vec
    branch: Optional[str] = None
    source: Optional[dict] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        rows = tuple(as_vec(r) for r in self.rows)
        rhs = as_vec(self.rhs)
        if len(rows) != len(rhs) or len(rows) < 2:
            raise MalformedInputError("block needs m >= 2 rows matching rhs")
        if any(len(r) != 2 for r in rows):
            raise MalformedInputError("block rows must have two columns")
        if any(c.denominator != 1 for r in rows for c in r) or any(
            c.denominator != 1 for c in rhs
        ):
            raise MalformedInputError("block data must be integral (use the converters)")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "rhs", rhs)

    @property
    def m(self) -> int:
        return len(self.rows)

    def evaluate(self, x: Sequence) -> Vec:
        x = as_vec(x)
        return tuple(dot(r, x) - b for r, b in zip(self.rows, self.rhs))

    def contains(self, x: Sequence) -> bool:
        v = self.evaluate(x)
        if v[-1] < 0:
            return False
        return v[-1] * v[-1] >= sum(c * c for c in v[:-1])

    def interior_contains(self, x: Sequence) -> bool:
        v = self.evaluate(x)
        if v[-1] <= 0:
            return False
        return v[-1] * v[-1] > sum(c * c for c in v[:-1])

    def kernel_data(self) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
        flat = tuple(int(c) for r in self.rows for c in r)
        return self.m, flat, tuple(int(b) for b in self.rhs)

    def to_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "soc_rows": [[str(int(c)) for c in r] for r in self.rows],
            "soc_rhs": [str(int(b)) for b in self.rhs],
        }
        if self.branch is not None:
            d["branch"] = self.branch
        if self.source is not None:
            d["source"] = self.source
        return d

    def __str__(self) -> str:
        return f"<{self.kind} block, m={self.m}>"


def blocks_hash(blocks: Sequence["ConicBlock2D"]) -> str:
    """Stable short hash of a block list's canonical integer data.

    Branch tags participate; presentation metadata (the ``source`` note)
    and dict key order do not, so two descriptions of the same normalized
    block hash identically.
    """
    dicts = []
    for b in blocks:
        d = b.to_dict()
        d.pop("source", None)
        dicts.append(d)
    payload = json.dumps(dicts, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


# ------------------------------------------- polynomial identity checking


def _poly_of_block(rows: Sequence[Vec], rhs: Vec) -> tuple[Fraction, ...]:
    """Coefficients (xx, xy, yy, x, y, 1) of v_m^2 - sum_{i<m} v_i^2."""
    cs = [Fraction(0)] * 6
    for i, (row, b) in enumerate(zip(rows, rhs)):
        sg = 1 if i == len(rows) - 1 else -1
        a1, a2 = row
        cs[0] += sg * a1 * a1
        cs[1] += sg * 2 * a1 * a2
        cs[2] += sg * a2 * a2
        cs[3] += sg * (-2) * a1 * b
        cs[4] += sg * (-2) * a2 * b
        cs[5] += sg * b * b
    return tuple(cs)


def _poly_of_quadratic(qc: QuadraticConic) -> tuple[Fraction, ...]:
    (a, b), (_, c) = qc.q
    return (a / 2, b, c / 2, qc.d[0], qc.d[1], qc.s)


def _assert_block_encodes(block: ConicBlock2D, qc: QuadraticConic) -> None:
    """v_m^2 - sum v_i^2 must equal C * (+-q(x)) with C > 0 exactly."""
    got = _poly_of_block(block.rows, block.rhs)
    sign = 1 if qc.sense == ">=" else -1
    target = tuple(sign * t for t in _poly_of_quadratic(qc))
    ratio = None
    for g, t in zip(got, target):
        if t != 0:
            ratio = g / t
            break
    if ratio is None or ratio <= 0 or any(g != ratio * t for g, t in zip(got, target)):
        raise InternalInconsistencyError("block polynomial does not match its conic")


def _integerize_block(
    rows: Sequence[Sequence], rhs: Sequence
) -> tuple[tuple[Vec, ...], Vec, Fraction]:
    """Scale all rows and rhs jointly to coprime integers (positive scale).

    Returns the integerized rows and rhs together with the scale factor
    applied to the input data.
    """
    flat = [Fraction(c) for r in rows for c in r] + [Fraction(b) for b in rhs]
    ints, den = integerize(flat)
    g = math.gcd(*ints)
    if g > 1:
        ints = tuple(c // g for c in ints)
    scale = Fraction(den, g if g > 1 else 1)
    k = len(rows)
    out_rows = tuple(tuple(map(Fraction, ints[2 * i : 2 * i + 2])) for i in range(k))
    out_rhs = tuple(map(Fraction, ints[2 * k :]))
    return out_rows, out_rhs, scale


# ------------------------------------------------------------ converters


def halfspace_block(normal: Sequence, offset) -> ConicBlock2D:
    """The halfplane normal.x >= offset, normalized to a primitive normal."""
    n = as_vec(normal)
    if len(n) != 2 or all(c == 0 for c in n):
        raise MalformedInputError("halfspace needs a nonzero 2d normal")
    prim, t = primitive_integer_vector(n)
    c = Fraction(offset) / t
    rows = ((Fraction(0), Fraction(0)), as_vec(prim))
    # keep the offset integral by scaling the (zero, n) pair jointly
    rows, rhs, _ = _integerize_block(rows, (Fraction(0), c))
    # re-primitive: the gcd step above already reduced; normal stays primitive
    return ConicBlock2D(
        "halfspace",
        rows,
        rhs,
        source={"normal": [str(x) for x in prim], "offset": format_rational(c)},
    )


def _classify_quadratic(qc: QuadraticConic) -> str:
    (a, b), (_, c) = qc.q
    if a == 0 and b == 0 and c == 0:
        return "halfspace"
    d = det2(qc.q)
    if d > 0:
        return "ellipse"
    if d < 0:
        return "hyperbola"
    return "parabola"


def classify_conic(qc: QuadraticConic) -> str:
    """Kind of the boundary conic: halfspace/ellipse/parabola/hyperbola."""
    return _classify_quadratic(qc)


def _linear_to_block(qc: QuadraticConic) -> ConicBlock2D:
    d, s = qc.d, qc.s
    if all(c == 0 for c in d):
        raise DegenerateConicError("constant inequality defines no conic region")
    if qc.sense == ">=":
        return halfspace_block(d, -s)
    return halfspace_block(tuple(-c for c in d), s)


def _ellipse_to_block(qc: QuadraticConic) -> ConicBlock2D:
    (a, b), (_, c) = _sym2(qc.q)
    d, s, sense = qc.d, qc.s, qc.sense
    if a < 0:  # negative definite: flip to positive definite form
        a, b, c = -a, -b, -c
        d = tuple(-x for x in d)
        s = -s
        sense = ">=" if sense == "<=" else "<="
    if sense == ">=":
        raise NonConvexRegionError("outside of an ellipse is not convex")
    q = ((a, b), (b, c))
    center = solve2x2(q, tuple(-x for x in d))
    s_c = s + dot(d, center) / 2
    f_cap = -s_c
    if f_cap <= 0:
        raise DegenerateConicError("ellipse region is empty or a single point")
    # Rational SOS of the form (F/2) u'Qu  =  sum (h_k . u)^2
    ma, mb, mc = f_cap * a / 2, f_cap * b / 2, f_cap * c / 2
    rows: list[Vec] = []
    for coef in rational_sos(ma):
        rows.append((coef, coef * mb / ma))
    tail = (ma * mc - mb * mb) / ma
    for coef in rational_sos(tail):
        rows.append((Fraction(0), coef))
    check = [Fraction(0)] * 3
    for r in rows:
        check[0] += r[0] * r[0]
        check[1] += r[0] * r[1]
        check[2] += r[1] * r[1]
    if check != [ma, mb, mc]:
        raise InternalInconsistencyError("ellipse SOS decomposition failed")
    rhs = [dot(r, center) for r in rows]
    rows.append((Fraction(0), Fraction(0)))
    rhs.append(-f_cap)
    irows, irhs, _ = _integerize_block(rows, rhs)
    block = ConicBlock2D(
        "ellipse",
        irows,
        irhs,
        source={
            "center": [format_rational(x) for x in center],
            "cap": format_rational(f_cap),
        },
    )
    _assert_block_encodes(block, qc)
    return block


def _parabola_to_block(qc: QuadraticConic) -> ConicBlock2D:
    (a, b), (_, c) = _sym2(qc.q)
    d, s, sense = qc.d, qc.s, qc.sense
    if a != 0:
        u_hat, _ = primitive_integer_vector((a, b))
        kappa = a / (Fraction(u_hat[0]) ** 2)
    else:  # det = 0 and a = 0 forces b = 0
        u_hat, kappa = (0, 1), c
    if kappa < 0:
        kappa = -kappa
        d = tuple(-x for x in d)
        s = -s
        sense = ">=" if sense == "<=" else "<="
    if sense == ">=":
        raise NonConvexRegionError("the concave side of a parabola is not convex")
    u_vec = as_vec(u_hat)
    g_vec = rot90(u_vec)
    # d = a_d * u + e * g  (orthogonal basis up to scale)
    uu = dot(u_vec, u_vec)
    a_d = dot(d, u_vec) / uu
    e = dot(d, g_vec) / uu
    if e != 0 and dot(vec_sub(d, vec_scale(a_d, u_vec)), g_vec) != e * uu:
        raise InternalInconsistencyError("parabola linear-term decomposition failed")
    if e == 0:
        raise DegenerateConicError("parabolic form with no transverse linear term (parallel lines)")
    u0 = -a_d / kappa
    rho = kappa / 2
    w_vec = vec_scale(-e, g_vec)
    w0 = s - a_d * a_d / (2 * kappa)
    # region:  w.x - w0 >= rho * (u.x - u0)^2
    rows = [
        u_vec,
        vec_scale(Fraction(1, 2) / rho, w_vec),
        vec_scale(Fraction(1, 2) / rho, w_vec),
    ]
    rhs = [u0, (w0 + rho) / (2 * rho), (w0 - rho) / (2 * rho)]
    irows, irhs, _ = _integerize_block(rows, rhs)
    block = ConicBlock2D(
        "parabola",
        irows,
        irhs,
        source={
            "u": [format_rational(x) for x in u_vec],
            "u0": format_rational(u0),
            "w": [format_rational(x) for x in w_vec],
            "w0": format_rational(w0),
            "rho": format_rational(rho),
        },
    )
    _assert_block_encodes(block, qc)
    return block


BranchSelector = Union[str, Sequence]


def _hyperbola_to_block(qc: QuadraticConic, branch: BranchSelector) -> ConicBlock2D:
    (a, b), (_, c) = _sym2(qc.q)
    if branch is None:
        raise MalformedInputError("hyperbolic regions need a branch selector")
    disc = (a - c) * (a - c) + 4 * b * b
    sq = sqrt_rational(disc)
    if sq is None:
        raise UnsupportedRotationError(
            "hyperbola axes are irrational: eigenvalue discriminant "
            f"{format_rational(disc)} is not a rational square"
        )
    lam1 = (a + c + sq) / 2
    lam2 = (a + c - sq) / 2
    if not (lam1 > 0 > lam2):
        raise InternalInconsistencyError("indefinite form expected for a hyperbola")
    if b != 0:
        p_dir = (b, lam1 - a)
    else:
        p_dir = (1, 0) if a > c else (0, 1)
    p_hat, _ = primitive_integer_vector(p_dir)
    p_hat = as_vec(p_hat)
    q_hat = rot90(p_hat)
    norm2 = dot(p_hat, p_hat)
    center = solve2x2(qc.q, tuple(-x for x in qc.d))
    s_c = qc.s + dot(qc.d, center) / 2
    if s_c == 0:
        raise DegenerateConicError("the conic degenerates to crossing lines")
    alpha = lam1 / (2 * norm2)
    beta = -lam2 / (2 * norm2)
    if qc.sense == ">=":
        k0, e_main, e_off, a_main, b_main = -s_c, p_hat, q_hat, alpha, beta
    else:
        k0, e_main, e_off, a_main, b_main = s_c, q_hat, p_hat, beta, alpha
    if k0 < 0:
        raise NonConvexRegionError("the region between the branches is not convex")
    ab = a_main * b_main
    sq_ab = sqrt_rational(ab)
    if sq_ab is None:
        raise UnsupportedRotationError(
            "asymptote slopes are irrational: |det Q| is not a rational square"
        )
    ak = a_main * k0
    eta = sqrt_rational(ak)
    if eta is None:
        raise UnsupportedRotationError(
            "the vertex offset is irrational: no exact integer encoding exists "
            f"(needed a rational square root of {format_rational(ak)})"
        )
    row3 = vec_scale(a_main, e_main)
    b3 = dot(row3, center)
    row2 = vec_scale(sq_ab, e_off)
    b2 = dot(row2, center)
    # branch selection: sign of the axis functional row3.x - b3
    if isinstance(branch, str):
        if branch not in ("positive", "negative"):
            raise MalformedInputError("branch must be 'positive', 'negative', or a point")
        negative = branch == "negative"
    else:
        pt = as_vec(branch)
        sgn = dot(row3, pt) - b3
        if sgn == 0:
            raise MalformedInputError("branch point sits on the center line; ambiguous")
        negative = sgn < 0
    if negative:
        row3, b3 = vec_scale(-1, row3), -b3
        row2, b2 = vec_scale(-1, row2), -b2
    # normalize the sign of the off-axis row (its square is what matters)
    nz = row2[0] if row2[0] != 0 else row2[1]
    if nz < 0:
        row2, b2 = vec_scale(-1, row2), -b2
    rows = [(Fraction(0), Fraction(0)), row2, row3]
    rhs = [-eta, b2, b3]
    irows, irhs, scale = _integerize_block(rows, rhs)
    block = ConicBlock2D(
        "hyperbola",
        irows,
        irhs,
        branch="negative" if negative else "positive",
        source={
            "center": [format_rational(x) for x in center],
            "scaling": format_rational(scale),
        },
    )
    _assert_block_encodes(block, qc)
    return block


def quadratic_to_block(qc: QuadraticConic, branch: Optional[BranchSelector] = None) -> ConicBlock2D:
    """Convert one quadratic inequality to its SOC block."""
    kind = _classify_quadratic(qc)
    if kind != "hyperbola" and branch is not None:
        raise MalformedInputError("branch selectors only apply to hyperbolas")
    if kind == "halfspace":
        return _linear_to_block(qc)
    if kind == "ellipse":
        return _ellipse_to_block(qc)
    if kind == "parabola":
        return _parabola_to_block(qc)
    return _hyperbola_to_block(qc, branch)


def hyperbola_to_soc(
    qc: QuadraticConic, branch: Optional[BranchSelector] = None
) -> ConicBlock2D:
    """Convert a hyperbolic quadratic inequality to its SOC block.

    Specialized entry point that insists on the hyperbola classification
    instead of silently converting another kind.
    """
    kind = _classify_quadratic(qc)
    if kind != "hyperbola":
        raise UnsupportedConstructError(
            f"the quadratic describes a {kind}, not a hyperbola branch"
        )
    return _hyperbola_to_block(qc, branch)


# ------------------------------------------------------ raw SOC ingestion


def soc_block(rows: Sequence[Sequence], rhs: Sequence) -> ConicBlock2D:
    """Ingest raw SOC data (axis row last), classify it, and normalize it.

    Accepted shapes: a halfspace (all rows zero except the axis row), an
    ellipse (zero axis row with negative rhs), a parabola (three rows with
    the two cone-completing rows equal), or one hyperbola branch in the
    canonical frame (zero first row with nonzero rhs).  Anything else
    is rejected as unsupported.
    """
    rows = [as_vec(r) for r in rows]
    rhs_v = as_vec(rhs)
    if len(rows) != len(rhs_v) or len(rows) < 1:
        raise MalformedInputError("rows and rhs lengths differ or are empty")
    if any(len(r) != 2 for r in rows):
        raise MalformedInputError("rows must have two columns")
    if len(rows) == 1:
        rows = [(Fraction(0), Fraction(0))] + rows
        rhs_v = (Fraction(0),) + rhs_v
    rows_i, rhs_i, _ = _integerize_block(rows, rhs_v)
    m = len(rows_i)
    axis = rows_i[-1]
    lower_zero = all(all(c == 0 for c in r) for r in rows_i[:-1])

    if lower_zero:
        if all(c == 0 for c in axis):
            raise MalformedInputError("all-zero block")
        if any(b != 0 for b in rhs_i[:-1]):
            raise UnsupportedConstructError(
                "halfspace block with nonzero constant lower entries"
            )
        return halfspace_block(axis, rhs_i[-1])

    if all(c == 0 for c in axis):
        if rhs_i[-1] >= 0:
            raise UnsupportedConstructError(
                "constant axis entry must be positive for a bounded block"
            )
        block = ConicBlock2D("ellipse", rows_i, rhs_i)
        _ellipse_center(block)  # validates the rows share a center
        if det2(_gram(block)) == 0:
            raise DegenerateConicError("ellipse block rows do not span the plane")
        return block

    if m == 3:
        r1, r2, r3 = rows_i
        if all(c == 0 for c in r1):
            if rhs_i[0] == 0:
                raise DegenerateConicError("hyperbola block with zero vertex offset")
            if det2((r2, r3)) == 0:
                raise DegenerateConicError("hyperbola block rows are dependent")
            b1 = rhs_i[0] if rhs_i[0] < 0 else -rhs_i[0]
            return ConicBlock2D("hyperbola", rows_i, (b1,) + rhs_i[1:], branch="positive")
        if r2 == r3:
            if rhs_i[1] - rhs_i[2] <= 0:
                raise DegenerateConicError("parabola block needs rhs[1] > rhs[2]")
            if det2((r1, r2)) == 0:
                raise DegenerateConicError("parabola block rows are dependent")
            return ConicBlock2D("parabola", rows_i, rhs_i)

    raise UnsupportedConstructError(
        "SOC block shape not recognized (supported: halfspace, ellipse, "
        "parabola, one hyperbola branch in the canonical frame)"
    )


# ----------------------------------------------- structure extraction


def _gram(block: ConicBlock2D) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
    """Sum of outer products of the non-axis rows (2x2, PSD)."""
    a = b = c = Fraction(0)
    for r in block.rows[:-1]:
        a += r[0] * r[0]
        b += r[0] * r[1]
        c += r[1] * r[1]
    return ((a, b), (b, c))


def _ellipse_center(block: ConicBlock2D) -> Vec:
    rows = block.rows[:-1]
    pair = None
    for i in range(len(rows)):
        for k in range(i + 1, len(rows)):
            if det2((rows[i], rows[k])) != 0:
                pair = (i, k)
                break
        if pair:
            break
    if pair is None:
        raise DegenerateConicError("ellipse block rows do not span the plane")
    i, k = pair
    center = solve2x2((rows[i], rows[k]), (block.rhs[i], block.rhs[k]))
    for r, b in zip(rows, block.rhs[:-1]):
        if dot(r, center) != b:
            raise MalformedInputError("ellipse block rows do not share a center")
    return center


def _parabola_data(block: ConicBlock2D) -> tuple[Vec, Fraction, Vec, Fraction]:
    """(u, u0, w, w0) with the region being (u.x - u0)^2 <= w.x - w0."""
    r1, r2, _ = block.rows
    b1, b2, b3 = block.rhs
    delta = b2 - b3
    if delta <= 0:
        raise InternalInconsistencyError("parabola block with nonpositive gap")
    w = vec_scale(2 * delta, r2)
    w0 = 2 * delta * b2 - delta * delta
    return r1, b1, w, w0


def _hyperbola_data(block: ConicBlock2D) -> tuple[Vec, Vec, Fraction, Fraction, Fraction]:
    """(row2, row3, b2, b3, eta) for one branch, eta > 0."""
    b1 = block.rhs[0]
    if b1 >= 0:
        raise InternalInconsistencyError("hyperbola block must store a negative rhs[0]")
    return block.rows[1], block.rows[2], block.rhs[1], block.rhs[2], -b1


def recession_normals(block: ConicBlock2D) -> tuple[Vec, ...]:
    """Primitive integer normals n with rec(block) = {d : n.d >= 0 for all n}."""
    if block.kind == "halfspace":
        n, _ = primitive_integer_vector(block.rows[-1])
        return (as_vec(n),)
    if block.kind == "ellipse":
        one = Fraction(1)
        zero = Fraction(0)
        return ((one, zero), (-one, zero), (zero, one), (zero, -one))
    if block.kind == "parabola":
        u, _, w, _ = _parabola_data(block)
        up, _ = primitive_integer_vector(u)
        wp, _ = primitive_integer_vector(w)
        return (as_vec(up), vec_scale(-1, as_vec(up)), as_vec(wp))
    r2, r3, _, _, _ = _hyperbola_data(block)
    n1, _ = primitive_integer_vector(tuple(a + b for a, b in zip(r2, r3)))
    n2, _ = primitive_integer_vector(tuple(b - a for a, b in zip(r2, r3)))
    return (as_vec(n1), as_vec(n2))


def asymptotes(block: ConicBlock2D) -> tuple[Line2D, Line2D]:
    """The two asymptote lines, oriented so the branch lies on the >= side.

    For any cone vector, (v2 + v3) and (v3 - v2) are nonnegative, so both
    halfplanes are valid relaxations of the branch.
    """
    if block.kind != "hyperbola":
        raise MalformedInputError("asymptotes are defined for hyperbola blocks")
    r2, r3, b2, b3, _ = _hyperbola_data(block)
    out = []
    for vec, off in (
        (tuple(a + b for a, b in zip(r2, r3)), b2 + b3),
        (tuple(b - a for a, b in zip(r2, r3)), b3 - b2),
    ):
        prim, t = primitive_integer_vector(vec)
        out.append(Line2D(as_vec(prim), off / t))
    return out[0], out[1]


# -------------------------------------------------------- hyperbola cuts


def hyperbola_cuts(block: ConicBlock2D) -> tuple[CutInequality, CutInequality]:
    """The two asymptote-aligned integer cuts for one hyperbola branch.

    Each cut applies an admissible step function (tracked coordinate 1, the
    constant vertex row) to the block through the sign-split projection, so
    it is valid for all integer points of the branch.  The result is checked
    against the direct closed form: coefficients (u'A)/tau and rhs obtained
    by rounding (u'b)/tau up, with the bump exactly when (u'b)/tau is an
    integer (the vertex row is a nonzero constant, so the tracked coordinate
    never vanishes at b).
    """
    if block.kind != "hyperbola":
        raise MalformedInputError("hyperbola cuts require a hyperbola block")
    r2, r3, b2, b3, _ = _hyperbola_data(block)
    cuts = []
    for u2, tag in ((Fraction(1), "sum"), (Fraction(-1), "difference")):
        w = tuple(u2 * a + b for a, b in zip(r2, r3))
        tau = math.gcd(int(w[0]), int(w[1]))
        if tau == 0:
            raise InternalInconsistencyError("asymptote functional vanished")
        gamma = (Fraction(0), u2 / tau, Fraction(1, tau))
        g = GammaFunction(gamma, 1)
        cut = split_and_project_cut(g, block.rows, block.rhs)
        expect_pi = tuple(c / tau for c in w)
        s = (u2 * b2 + b3) / tau
        expect_rhs = s + 1 if s.denominator == 1 else Fraction(math.ceil(s))
        if cut.pi != expect_pi or cut.rhs != expect_rhs:
            raise InternalInconsistencyError("projected cut disagrees with closed form")
        der = Derivation.make(
            "hyperbola-branch-cut",
            gamma=[format_rational(c) for c in gamma],
            j=1,
            tau=tau,
            asymptote=tag,
            bump=s.denominator == 1,
        )
        cuts.append(CutInequality(cut.pi, cut.rhs, der, integer_face=True))
    return cuts[0], cuts[1]


# ---------------------------------------------------- support minimization


@dataclass(frozen=True)
class SupportResult:
    """Outcome of min pi.x over one block, with exact certificates.

    status: "attained" (value reached; dual multiplier provided),
    "infimum" (finite but unreached; witness points approach it),
    "unbounded" (descent direction in the recession cone, or witness
    points marching down a parabola).
    """

    pi: Vec
    status: str
    value: Optional[QuadraticSurd]
    minimizer: Optional[Vec] = None
    dual: Optional[tuple] = None
    descent_direction: Optional[Vec] = None
    witness_points: tuple[Vec, ...] = ()

    @property
    def finite(self) -> bool:
        return self.status != "unbounded"

    @property
    def attained(self) -> bool:
        return self.status == "attained"

    def value_as_dict(self) -> Optional[dict]:
        if self.value is None:
            return None
        return {
            "p": format_rational(self.value.p),
            "q": format_rational(self.value.q),
            "radicand": self.value.r,
        }

    def verify(self, block: ConicBlock2D) -> None:
        """Re-check every certificate exactly; raises on any failure."""
        if self.status == "unbounded":
            if self.descent_direction is not None:
                d = self.descent_direction
                for n in recession_normals(block):
                    if dot(n, d) < 0:
                        raise InternalInconsistencyError("descent not in recession cone")
                if dot(self.pi, d) >= 0:
                    raise InternalInconsistencyError("descent direction does not descend")
            elif len(self.witness_points) >= 2:
                vals = [dot(self.pi, x) for x in self.witness_points]
                for x in self.witness_points:
                    if not block.contains(x):
                        raise InternalInconsistencyError("witness point infeasible")
                if any(b >= a for a, b in zip(vals, vals[1:])):
                    raise InternalInconsistencyError("witness objectives not decreasing")
            else:
                raise InternalInconsistencyError("unbounded result lacks a certificate")
            return
        if self.value is None:
            raise InternalInconsistencyError("finite result without a value")
        if self.minimizer is not None:
            if not block.contains(self.minimizer):
                raise InternalInconsistencyError("minimizer infeasible")
            if dot(self.pi, self.minimizer) != self.value:
                raise InternalInconsistencyError("minimizer objective mismatch")
        if self.status == "attained":
            if self.dual is None:
                raise InternalInconsistencyError("attained result lacks a dual")
            y = [c if isinstance(c, QuadraticSurd) else surd(c) for c in self.dual]
            if len(y) != block.m:
                raise InternalInconsistencyError("dual length mismatch")
            for col in range(2):
                acc = surd(0)
                for yi, row in zip(y, block.rows):
                    acc = acc + yi * row[col]
                if acc != self.pi[col]:
                    raise InternalInconsistencyError("dual does not reproduce pi")
            obj = surd(0)
            for yi, b in zip(y, block.rhs):
                obj = obj + yi * b
            if obj != self.value:
                raise InternalInconsistencyError("dual objective mismatch")
            axis = y[-1]
            if axis.sign() < 0:
                raise InternalInconsistencyError("dual axis entry negative")
            gap = axis * axis
            for yi in y[:-1]:
                gap = gap - yi * yi
            if gap.sign() < 0:
                raise InternalInconsistencyError("dual outside the cone")
        else:  # infimum
            if not self.witness_points:
                raise InternalInconsistencyError("infimum result lacks witnesses")
            for x in self.witness_points:
                if not block.contains(x):
                    raise InternalInconsistencyError("witness point infeasible")
            vals = [dot(self.pi, x) for x in self.witness_points]
            if any(b >= a for a, b in zip(vals, vals[1:])):
                raise InternalInconsistencyError("witness objectives not decreasing")
            if any(v <= self.value for v in vals):
                raise InternalInconsistencyError("witness dips below the infimum")


def _support_halfspace(block: ConicBlock2D, pi: Vec) -> SupportResult:
    n = block.rows[-1]
    c = block.rhs[-1]
    if cross2(pi, n) == 0:
        t = dot(pi, n) / dot(n, n)
        if t > 0:
            x_star = vec_scale(c / dot(n, n), n)
            return SupportResult(
                pi,
                "attained",
                surd(t * c),
                minimizer=x_star,
                dual=(Fraction(0), t),
            )
        d = as_vec(n)  # t <= 0, t = 0 impossible for pi != 0
        return SupportResult(pi, "unbounded", None, descent_direction=d)
    d = rot90(n)
    if dot(pi, d) > 0:
        d = vec_scale(-1, d)
    return SupportResult(pi, "unbounded", None, descent_direction=d)


def _support_ellipse(block: ConicBlock2D, pi: Vec) -> SupportResult:
    gram = _gram(block)
    z = solve2x2(gram, pi)
    rad = dot(z, pi)
    if rad <= 0:
        raise InternalInconsistencyError("ellipse Gram matrix not positive definite")
    center = _ellipse_center(block)
    f_cap = -block.rhs[-1]
    root = sqrt_surd(rad)
    value = dot(pi, center) + (-f_cap) * root
    dual = tuple(dot(r, z) for r in block.rows[:-1]) + (root,)
    minimizer = None
    sigma = sqrt_rational(rad)
    if sigma is not None:
        minimizer = vec_sub(center, vec_scale(f_cap / sigma, z))
    return SupportResult(pi, "attained", value, minimizer=minimizer, dual=dual)


def _support_parabola(block: ConicBlock2D, pi: Vec) -> SupportResult:
    u, u0, w, w0 = _parabola_data(block)
    alpha, beta = solve2x2(((u[0], w[0]), (u[1], w[1])), pi)
    b2, b3 = block.rhs[1], block.rhs[2]
    delta = b2 - b3
    if beta > 0:
        t_star = u0 - alpha / (2 * beta)
        sigma_star = w0 + (t_star - u0) * (t_star - u0)
        x_star = solve2x2((u, w), (t_star, sigma_star))
        value = alpha * t_star + beta * sigma_star
        y2 = delta * beta - alpha * alpha / (4 * delta * beta)
        y3 = delta * beta + alpha * alpha / (4 * delta * beta)
        return SupportResult(
            pi, "attained", surd(value), minimizer=x_star, dual=(alpha, y2, y3)
        )
    if beta < 0:
        d = rot90(u)
        if dot(w, d) < 0:
            d = vec_scale(-1, d)
        return SupportResult(pi, "unbounded", None, descent_direction=d)
    # beta == 0: the objective is alpha * (u.x); it slides down the parabola
    step = -1 if alpha > 0 else 1
    points = []
    for k in (1, 2, 4, 8):
        t = u0 + step * k
        sig = w0 + (t - u0) * (t - u0)
        points.append(solve2x2((u, w), (t, sig)))
    return SupportResult(pi, "unbounded", None, witness_points=tuple(points))


def _support_hyperbola(block: ConicBlock2D, pi: Vec) -> SupportResult:
    r2, r3, b2, b3, eta = _hyperbola_data(block)
    p, q = solve2x2(((r2[0], r3[0]), (r2[1], r3[1])), pi)
    r_val = p * b2 + q * b3
    if q > abs(p):
        rad = q * q - p * p
        value = r_val + eta * sqrt_surd(rad)
        dual = (-sqrt_surd(rad), p, q)
        minimizer = None
        sigma = sqrt_rational(rad)
        if sigma is not None:
            v2 = -p * eta / sigma
            v3 = q * eta / sigma
            minimizer = solve2x2((r2, r3), (v2 + b2, v3 + b3))
        return SupportResult(pi, "attained", value, minimizer=minimizer, dual=dual)
    if q == abs(p) and p != 0:
        sign = -1 if p > 0 else 1
        points = []
        t = 4 * max(eta, 1)
        for _ in range(4):
            v2 = sign * t
            v3 = t + eta * eta / (2 * t)
            points.append(solve2x2((r2, r3), (v2 + b2, v3 + b3)))
            t *= 4
        return SupportResult(
            pi, "infimum", surd(r_val), witness_points=tuple(points)
        )
    n1 = tuple(a + b for a, b in zip(r2, r3))
    n2 = tuple(b - a for a, b in zip(r2, r3))
    for n_zero, n_pos in ((n1, n2), (n2, n1)):
        d = rot90(n_zero)
        if dot(n_pos, d) < 0:
            d = vec_scale(-1, d)
        if dot(pi, d) < 0:
            return SupportResult(pi, "unbounded", None, descent_direction=d)
    raise InternalInconsistencyError("hyperbola support fell through every case")


def support_minimize(block: ConicBlock2D, pi: Sequence) -> SupportResult:
    """Exact min of pi.x over one block, with verifiable certificates."""
    pi = as_vec(pi)
    if len(pi) != 2 or all(c == 0 for c in pi):
        raise MalformedInputError("objective must be a nonzero 2d vector")
    if block.kind == "halfspace":
        return _support_halfspace(block, pi)
    if block.kind == "ellipse":
        return _support_ellipse(block, pi)
    if block.kind == "parabola":
        return _support_parabola(block, pi)
    return _support_hyperbola(block, pi)
