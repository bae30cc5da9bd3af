"""Cut-generating step functions and aggregation cuts.

The central object is the family of integer-valued functions built from a
weight vector gamma and a tracked coordinate j (1-based): the value at v is
ceil(gamma.v), except that it bumps to gamma.v + 1 when the tracked coordinate
of v is nonzero and gamma.v is an integer.  Admissible gamma (see
`gamma_domain`) make this subadditive, nondecreasing in the cone order, and
zero at zero, so applying it columnwise to a conic constraint A x >= b (cone
order, x a nonnegative integer vector) yields a valid cut
sum_j f(A^j) x_j >= f(b).

The module emits whatever cuts the caller requests; it does not filter
dominated ones (callers compare cuts if they care).

For free integer variables, `split_and_project_cut` applies the sign-split
x = x+ - x- and projects back, which is sound exactly when every column
satisfies f(A^j) = -f(-A^j); the antisymmetry is checked, not assumed.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from conecuts import kernels
from conecuts.errors import (
    DegenerateAggregationError,
    InadmissibleGammaError,
    MalformedInputError,
    ProjectionInvalidError,
)
from conecuts.exact import (
    Vec,
    as_vec,
    dot,
    format_rational,
    integerize,
    mat_vec,
    primitive_integer_vector,
    soc_contains,
    vec_add,
)


class GammaDomain(enum.Enum):
    INTERIOR_SOC = "interior-soc"
    GAMMA_J = "gamma-j"
    INADMISSIBLE = "inadmissible"


def gamma_domain(gamma: Sequence, j: int) -> GammaDomain:
    """Classify a weight vector for tracked coordinate j (1-based).

    Interior of the cone wins when both conditions hold; the gamma-j region
    requires the axis weight to dominate the absolute off-axis weights and to
    strictly exceed |gamma_j|.
    """
    g = as_vec(gamma)
    m = len(g)
    if m < 2:
        raise MalformedInputError("gamma needs dimension >= 2")
    if not 1 <= j <= m - 1:
        raise MalformedInputError(f"j must be in 1..{m - 1}, got {j}")
    axis = g[-1]
    if axis > 0 and axis * axis > sum(c * c for c in g[:-1]):
        return GammaDomain.INTERIOR_SOC
    if axis >= sum(abs(c) for c in g[:-1]) and axis > abs(g[j - 1]):
        return GammaDomain.GAMMA_J
    return GammaDomain.INADMISSIBLE


def gamma_domain_report(gamma: Sequence, j: int) -> tuple[GammaDomain, str]:
    """Classification plus a human-readable reason for inadmissibility."""
    g = as_vec(gamma)
    d = gamma_domain(g, j)
    if d is not GammaDomain.INADMISSIBLE:
        return d, ""
    axis = g[-1]
    reasons = []
    if not (axis >= sum(abs(c) for c in g[:-1])):
        reasons.append("axis weight below the sum of absolute off-axis weights")
    if not (axis > abs(g[j - 1])):
        reasons.append(f"axis weight not strictly above |gamma_{j}|")
    reasons.append("and the vector is not interior to the cone")
    return d, "; ".join(reasons)


@dataclass(frozen=True)
class GammaFunction:
    """Admissible step function; raises InadmissibleGammaError otherwise."""

    gamma: Vec
    j: int
    domain: GammaDomain = field(init=False)

    def __post_init__(self):
        g = as_vec(self.gamma)
        object.__setattr__(self, "gamma", g)
        d, why = gamma_domain_report(g, self.j)
        if d is GammaDomain.INADMISSIBLE:
            raise InadmissibleGammaError(
                f"gamma={tuple(map(format_rational, g))}, j={self.j}: {why}"
            )
        object.__setattr__(self, "domain", d)

    def value(self, v: Sequence) -> int:
        v = as_vec(v)
        if len(v) != len(self.gamma):
            raise MalformedInputError("dimension mismatch")
        s = dot(self.gamma, v)
        if v[self.j - 1] != 0 and s.denominator == 1:
            return int(s) + 1
        return math.ceil(s)

    __call__ = value

    def describe(self) -> dict:
        return {
            "kind": "gamma-step",
            "gamma": [format_rational(c) for c in self.gamma],
            "j": self.j,
            "domain": self.domain.value,
        }


def eval_f_gamma(gamma: Sequence, j: int, v: Sequence) -> int:
    """One-shot evaluation; validates admissibility on every call."""
    return GammaFunction(as_vec(gamma), j).value(v)


@dataclass(frozen=True)
class LinearFunctional:
    """v -> y.v for a cone member y; the trivial (unrounded) aggregation."""

    y: Vec

    def __post_init__(self):
        object.__setattr__(self, "y", as_vec(self.y))
        if not soc_contains(self.y):
            raise MalformedInputError("aggregation weight must lie in the cone")

    def value(self, v: Sequence) -> Fraction:
        return dot(self.y, v)

    __call__ = value

    def describe(self) -> dict:
        return {"kind": "linear", "y": [format_rational(c) for c in self.y]}


# ------------------------------------------------------------------- cuts


@dataclass(frozen=True)
class Derivation:
    kind: str
    params: tuple[tuple[str, object], ...]

    @staticmethod
    def make(kind: str, **params) -> "Derivation":
        return Derivation(kind, tuple(sorted(params.items())))

    def as_dict(self) -> dict:
        return {"kind": self.kind, **dict(self.params)}


@dataclass(frozen=True)
class CutInequality:
    """A valid inequality pi.x >= rhs with its derivation record.

    `integer_face` tags cuts asserted valid for integer points only; those
    carry a primitive integer pi and an integer rhs.
    """

    pi: Vec
    rhs: Fraction
    derivation: Derivation
    integer_face: bool = False

    def __post_init__(self):
        pi = as_vec(self.pi)
        object.__setattr__(self, "pi", pi)
        object.__setattr__(self, "rhs", Fraction(self.rhs))
        if all(c == 0 for c in pi):
            raise MalformedInputError("cut has zero normal")
        if self.integer_face:
            ints, scale = primitive_integer_vector(pi)
            if scale != 1 or self.rhs.denominator != 1:
                raise MalformedInputError("integer-face cut must be primitive integral")

    def evaluate(self, x: Sequence) -> Fraction:
        return dot(self.pi, x)

    def satisfied_by(self, x: Sequence) -> bool:
        return self.evaluate(x) >= self.rhs

    def tight_at(self, x: Sequence) -> bool:
        return self.evaluate(x) == self.rhs

    def primitive(self) -> "CutInequality":
        """Rescale to a primitive integer normal; rounds the rhs up when the
        cut is integer-face (sound: the lhs is then integral on integers)."""
        ints, scale = primitive_integer_vector(self.pi)
        rhs = Fraction(self.rhs, 1) / scale
        if self.integer_face:
            rhs = Fraction(math.ceil(rhs))
        return CutInequality(as_vec(ints), rhs, self.derivation, self.integer_face)

    def as_dict(self) -> dict:
        return {
            "pi": [format_rational(c) for c in self.pi],
            "rhs": format_rational(self.rhs),
            "sense": ">=",
            "integer_face": self.integer_face,
            "derivation": self.derivation.as_dict(),
        }

    def __str__(self) -> str:
        terms = " + ".join(f"{format_rational(c)}*x{i + 1}" for i, c in enumerate(self.pi))
        return f"{terms} >= {format_rational(self.rhs)}"


CutFunction = Callable[[Sequence], object]


def _columns(rows: Sequence[Sequence]) -> list[Vec]:
    rows = [as_vec(r) for r in rows]
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise MalformedInputError("ragged matrix")
    return [tuple(r[k] for r in rows) for k in range(n)]


def make_cut(f, rows: Sequence[Sequence], rhs_vec: Sequence) -> CutInequality:
    """Columnwise application of a cut function to A x >= b (cone order).

    Valid when every variable is a nonnegative integer.  `f` is a
    GammaFunction, a LinearFunctional, or anything with value()/describe().
    """
    b = as_vec(rhs_vec)
    cols = _columns(rows)
    if any(len(c) != len(b) for c in cols):
        raise MalformedInputError("matrix and rhs dimensions differ")
    pi = tuple(Fraction(f.value(c)) for c in cols)
    rhs = Fraction(f.value(b))
    der = Derivation.make(
        "columnwise",
        function=f.describe(),
        nonnegative_variables=True,
    )
    return CutInequality(pi, rhs, der)


def split_and_project_cut(f, rows: Sequence[Sequence], rhs_vec: Sequence) -> CutInequality:
    """Cut valid for free integer variables via the sign-split projection.

    Requires f(A^j) = -f(-A^j) on every column; raises ProjectionInvalidError
    naming the first offending column otherwise.
    """
    b = as_vec(rhs_vec)
    cols = _columns(rows)
    coeffs = []
    for k, c in enumerate(cols):
        plus = Fraction(f.value(c))
        minus = Fraction(f.value(tuple(-x for x in c)))
        if plus != -minus:
            raise ProjectionInvalidError(
                f"column {k + 1}: f(A_j)={format_rational(plus)} but "
                f"-f(-A_j)={format_rational(-minus)}; projection needs antisymmetry"
            )
        coeffs.append(plus)
    rhs = Fraction(f.value(b))
    der = Derivation.make(
        "sign-split-projection",
        function=f.describe(),
        nonnegative_variables=False,
    )
    return CutInequality(tuple(coeffs), rhs, der)


def aggregation_round_cut(
    weights: Sequence[Sequence],
    blocks: Sequence[tuple[Sequence[Sequence], Sequence]],
    round_to_integer_normal: bool = False,
) -> CutInequality:
    """Aggregate blocks A_i x >= b_i with cone weights y_i into w.x >= w0.

    Unrounded, the cut is valid for the continuous intersection.  With
    rounding, w must be a positive multiple of a primitive integer normal pi;
    the emitted cut pi.x >= ceil(w0 / tau) is valid for the integer points.
    """
    if len(weights) != len(blocks):
        raise MalformedInputError("one weight vector per block required")
    if not blocks:
        raise MalformedInputError("no blocks to aggregate")
    n = len(blocks[0][0][0])
    w = tuple(Fraction(0) for _ in range(n))
    w0 = Fraction(0)
    for y, (rows, b) in zip(weights, blocks):
        y = as_vec(y)
        if len(y) != len(rows):
            raise MalformedInputError("weight dimension does not match block rows")
        if not soc_contains(y):
            raise MalformedInputError("aggregation weight must lie in the cone")
        w = vec_add(w, mat_vec(_columns(rows), y))  # y^T A, columnwise
        w0 += dot(y, as_vec(b))
    if all(c == 0 for c in w):
        raise DegenerateAggregationError("weights aggregate to the zero functional")
    der_params = {
        "weights": [[format_rational(c) for c in as_vec(y)] for y in weights],
        "aggregated_rhs": format_rational(w0),
    }
    if not round_to_integer_normal:
        return CutInequality(w, w0, Derivation.make("aggregation", **der_params))
    ints, tau = primitive_integer_vector(w)
    rhs = Fraction(math.ceil(w0 / tau))
    der = Derivation.make("aggregation-round", tau=format_rational(tau), **der_params)
    return CutInequality(as_vec(ints), rhs, der, integer_face=True)


# ---------------------------------------------------- property sampling


@dataclass(frozen=True)
class PropertyReport:
    name: str
    checked: int
    violations: int
    seed: int
    first_example: Optional[tuple[Vec, Vec]] = None

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def as_dict(self) -> dict:
        d = {
            "property": self.name,
            "checked": self.checked,
            "violations": self.violations,
            "seed": self.seed,
            "passed": self.passed,
        }
        if self.first_example is not None:
            u, v = self.first_example
            d["first_example"] = {
                "u": [format_rational(c) for c in u],
                "v": [format_rational(c) for c in v],
            }
        return d


_NUM_RANGE = 12
_DEN_CHOICES = (1, 1, 1, 2, 2, 3, 4, 5, 6, 8)  # bias toward integers


def _random_vector(rng: random.Random, m: int) -> tuple[tuple[int, ...], int]:
    den = rng.choice(_DEN_CHOICES)
    nums = tuple(rng.randint(-_NUM_RANGE, _NUM_RANGE) for _ in range(m))
    return nums, den


def _random_cone_vector(rng: random.Random, m: int) -> tuple[tuple[int, ...], int]:
    """Cone member: axis entry >= l1-norm of the rest, hence >= l2-norm."""
    den = rng.choice(_DEN_CHOICES)
    lower = tuple(rng.randint(-_NUM_RANGE, _NUM_RANGE) for _ in range(m - 1))
    axis = sum(abs(c) for c in lower) + rng.randint(0, _NUM_RANGE)
    return lower + (axis,), den


def _to_vec(nums: tuple[int, ...], den: int) -> Vec:
    return tuple(Fraction(n, den) for n in nums)


def check_subadditive(f: GammaFunction, pairs: int = 10000, seed: int = 0) -> PropertyReport:
    """Sample pairs and count f(u) + f(v) < f(u+v) failures (expect none)."""
    rng = random.Random(seed)
    m = len(f.gamma)
    gnum, gden = integerize(f.gamma)
    us, uds, vs, vds = [], [], [], []
    for _ in range(pairs):
        un, ud = _random_vector(rng, m)
        vn, vd = _random_vector(rng, m)
        us.extend(un)
        uds.append(ud)
        vs.extend(vn)
        vds.append(vd)
    count, first = kernels.subadditive_violations(
        gnum, gden, f.j, tuple(us), tuple(uds), tuple(vs), tuple(vds)
    )
    example = None
    if first >= 0:
        u = _to_vec(tuple(us[first * m : (first + 1) * m]), uds[first])
        v = _to_vec(tuple(vs[first * m : (first + 1) * m]), vds[first])
        example = (u, v)
    return PropertyReport("subadditive", pairs, count, seed, example)


def check_cone_monotone(f: GammaFunction, pairs: int = 10000, seed: int = 0) -> PropertyReport:
    """Sample v and cone members w; count f(v + w) < f(v) failures."""
    rng = random.Random(seed)
    m = len(f.gamma)
    gnum, gden = integerize(f.gamma)
    us, uds, vs, vds = [], [], [], []
    for _ in range(pairs):
        vn, vd = _random_vector(rng, m)
        wn, wd = _random_cone_vector(rng, m)
        # u = v + w on the common denominator vd*wd
        un = tuple(a * wd + b * vd for a, b in zip(vn, wn))
        us.extend(un)
        uds.append(vd * wd)
        vs.extend(tuple(a * wd for a in vn))
        vds.append(vd * wd)
    count, first = kernels.monotone_violations(
        gnum, gden, f.j, tuple(us), tuple(uds), tuple(vs), tuple(vds)
    )
    example = None
    if first >= 0:
        u = _to_vec(tuple(us[first * m : (first + 1) * m]), uds[first])
        v = _to_vec(tuple(vs[first * m : (first + 1) * m]), vds[first])
        example = (u, v)
    return PropertyReport("cone-monotone", pairs, count, seed, example)


def check_positive_on_cone(f: GammaFunction, samples: int = 10000, seed: int = 0) -> PropertyReport:
    """gamma.w > 0 for cone members with nonzero tracked coordinate."""
    rng = random.Random(seed)
    m = len(f.gamma)
    checked = violations = 0
    example = None
    while checked < samples:
        wn, wd = _random_cone_vector(rng, m)
        if wn[f.j - 1] == 0:
            continue
        checked += 1
        w = _to_vec(wn, wd)
        if dot(f.gamma, w) <= 0:
            violations += 1
            if example is None:
                example = (w, w)
    return PropertyReport("positive-on-cone", checked, violations, seed, example)


def orthant_monotone_counterexample(
    f: GammaFunction, samples: int = 20000, seed: int = 0
) -> Optional[tuple[Vec, Vec]]:
    """Search for u >= v componentwise with f(u) < f(v).

    Such pairs exist for admissible gamma on the gamma-j boundary: the
    function is monotone in the cone order, not the orthant order.  Returns
    the first pair found, or None.
    """
    rng = random.Random(seed)
    m = len(f.gamma)
    for _ in range(samples):
        vn, vd = _random_vector(rng, m)
        wn = tuple(rng.randint(0, 2) for _ in range(m))
        un = tuple(a + b * vd for a, b in zip(vn, wn))
        u, v = _to_vec(un, vd), _to_vec(vn, vd)
        if f.value(u) < f.value(v):
            return u, v
    return None
