"""Exact scalars and second-order cone membership.

Everything downstream computes over `fractions.Fraction` or over quadratic
surds p + q*sqrt(r).  No decision anywhere in the package is made in floating
point; comparisons against irrational values are resolved by sign analysis
and squaring, ceilings by integer bracketing.

Conventions.  A "vector" is a tuple of Fractions.  The second-order cone of
dimension m >= 2 is the set of v with v[m-1] >= 0 and
v[m-1]^2 >= v[0]^2 + ... + v[m-2]^2; the last coordinate is the axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

from conecuts.errors import MalformedInputError, MixedRadicandError

Rat = Union[int, Fraction]


# ---------------------------------------------------------------- rationals


def parse_rational(text: str) -> Fraction:
    """Parse "p/q", "p", or a finite decimal string into an exact Fraction."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInputError(f"not a rational number: {text!r}") from exc


def format_rational(q: Rat) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def sqrt_rational(q: Rat):
    """Exact square root of a nonnegative rational, or None if irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    if is_square(q.numerator) and is_square(q.denominator):
        return Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))
    return None


def squarefree_decompose(n: int) -> tuple[int, int]:
    """n = root^2 * free with free squarefree; n must be positive."""
    if n <= 0:
        raise ValueError("positive integer required")
    root, free = 1, 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            root *= d ** (e // 2)
            if e % 2:
                free *= d
        d += 1 if d == 2 else 2
    return root, free * n


def sum_of_squares(n: int) -> tuple[int, ...]:
    """Write n >= 0 as a sum of at most four integer squares (values returned).

    Bounded search; intended for the modest constants that appear in block
    data, not for cryptographic sizes.
    """
    if n < 0:
        raise ValueError("nonnegative integer required")
    if n == 0:
        return ()
    if is_square(n):
        return (math.isqrt(n),)
    for a in range(math.isqrt(n), 0, -1):
        if is_square(n - a * a):
            return (a, math.isqrt(n - a * a))
    for a in range(math.isqrt(n), 0, -1):
        rest = n - a * a
        for b in range(math.isqrt(rest), 0, -1):
            if is_square(rest - b * b):
                return (a, b, math.isqrt(rest - b * b))
    for a in range(math.isqrt(n), 0, -1):
        rest = n - a * a
        for b in range(math.isqrt(rest), 0, -1):
            rest2 = rest - b * b
            for c in range(math.isqrt(rest2), 0, -1):
                if is_square(rest2 - c * c):
                    return (a, b, c, math.isqrt(rest2 - c * c))
    raise AssertionError(f"four-square decomposition not found for {n}")


def rational_sos(q: Fraction) -> tuple[Fraction, ...]:
    """Write a positive rational as a sum of at most four rational squares."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("positive rational required")
    parts = sum_of_squares(q.numerator * q.denominator)
    return tuple(Fraction(p, q.denominator) for p in parts)


# ------------------------------------------------------------------ surds


def _sign_of_a_plus_b_sqrt_r(a: Fraction, b: Fraction, r: int) -> int:
    """Exact sign of a + b*sqrt(r) for canonical r (0 or squarefree >= 2)."""
    if b == 0 or r == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return (b > 0) - (b < 0)
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    # opposite signs: compare a^2 with b^2 r; sign follows the larger magnitude
    lhs, rhs = a * a, b * b * r
    if lhs == rhs:
        return 0
    return (1 if a > 0 else -1) if lhs > rhs else (1 if b > 0 else -1)


@dataclass(frozen=True)
class QuadraticSurd:
    """Canonical p + q*sqrt(r): r squarefree or 0, r == 0 iff q == 0.

    Construct via `surd`; the raw constructor trusts its inputs.  Closed under
    addition, subtraction, rational scaling, and products sharing a radicand.
    Mixing distinct nonzero radicands raises MixedRadicandError.
    """

    p: Fraction
    q: Fraction
    r: int

    # -- queries

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise MixedRadicandError(f"{self} is irrational")
        return self.p

    def sign(self) -> int:
        return _sign_of_a_plus_b_sqrt_r(self.p, self.q, self.r)

    # -- arithmetic

    def _coerce(self, other) -> "QuadraticSurd":
        if isinstance(other, QuadraticSurd):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticSurd(Fraction(other), Fraction(0), 0)
        return NotImplemented

    def _join_radicand(self, other: "QuadraticSurd") -> int:
        if self.r == 0 or self.q == 0:
            return other.r
        if other.r == 0 or other.q == 0:
            return self.r
        if self.r != other.r:
            raise MixedRadicandError(f"cannot combine sqrt({self.r}) with sqrt({other.r})")
        return self.r

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        r = self._join_radicand(o)
        return surd(self.p + o.p, self.q + o.q, r)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.p, -self.q, self.r)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.__add__(-o)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        r = self._join_radicand(o)
        return surd(self.p * o.p + self.q * o.q * r, self.p * o.q + self.q * o.p, r)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError
            inv = Fraction(1, 1) / Fraction(other)
            return QuadraticSurd(self.p * inv, self.q * inv, self.r)
        return NotImplemented

    # -- comparisons (total order; mixing radicands raises)

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        d = self - o
        return d.sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QuadraticSurd)):
            return self._cmp(other) == 0
        return NotImplemented

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q, self.r))

    # -- rounding

    def __floor__(self) -> int:
        if self.q == 0:
            return math.floor(self.p)
        # floor(q*sqrt(r)) by integer bracketing, then correct the rational shift
        num, den = self.q.numerator, self.q.denominator
        s = math.isqrt(num * num * self.r)
        t = s // den if num > 0 else -(s // den) - 1
        # self in (floor(p)+t, floor(p)+t+2); the value is irrational
        g = math.floor(self.p) + t
        while self._cmp(g + 1) > 0:
            g += 1
        return g

    def __ceil__(self) -> int:
        if self.q == 0:
            return math.ceil(self.p)
        return math.floor(self) + 1  # irrational: never an integer

    # -- presentation

    def __float__(self) -> float:
        return float(self.p) + float(self.q) * math.sqrt(self.r)

    def __str__(self) -> str:
        if self.q == 0:
            return format_rational(self.p)
        return f"{format_rational(self.p)} + {format_rational(self.q)}*sqrt({self.r})"

    __repr__ = __str__


def surd(p: Rat, q: Rat = 0, r: int = 0) -> QuadraticSurd:
    """Canonicalizing constructor for p + q*sqrt(r)."""
    p, q = Fraction(p), Fraction(q)
    if r < 0:
        raise MalformedInputError("negative radicand")
    if q == 0 or r == 0:
        return QuadraticSurd(p, Fraction(0), 0)
    root, free = squarefree_decompose(r)
    q = q * root
    if free == 1:
        return QuadraticSurd(p + q, Fraction(0), 0)
    return QuadraticSurd(p, q, free)


def sqrt_surd(q: Rat) -> QuadraticSurd:
    """sqrt of a nonnegative rational as a canonical surd."""
    q = Fraction(q)
    if q < 0:
        raise MalformedInputError("square root of a negative rational")
    if q == 0:
        return surd(0)
    # sqrt(a/b) = sqrt(a*b)/b
    return surd(0, Fraction(1, q.denominator), q.numerator * q.denominator)


def ceil_surd(x) -> int:
    """Exact ceiling of a Fraction or QuadraticSurd."""
    if isinstance(x, QuadraticSurd):
        return math.ceil(x)
    return math.ceil(Fraction(x))


def parse_surd(text: str) -> QuadraticSurd:
    """Parse "p/q" or "p/q + r/s*sqrt(n)" (minus signs allowed)."""
    s = str(text).strip()
    if "sqrt" not in s:
        return surd(parse_rational(s))
    head, _, tail = s.partition("sqrt")
    tail = tail.strip()
    if not (tail.startswith("(") and tail.endswith(")")):
        raise MalformedInputError(f"malformed surd: {text!r}")
    radicand = int(tail[1:-1])
    head = head.replace(" ", "")
    if head.endswith("*"):
        head = head[:-1]
    # split "p+q" / "p-q" on the last +/- that starts the coefficient term
    p_txt, q_txt = "0", head
    for i in range(len(head) - 1, 0, -1):
        if head[i] in "+-" and head[i - 1] not in "e/*+-":
            p_txt, q_txt = head[:i], head[i:]
            break
    q_txt = q_txt.lstrip("+") or "1"
    if q_txt == "-":
        q_txt = "-1"
    return surd(parse_rational(p_txt), parse_rational(q_txt), radicand)


def format_surd(x) -> str:
    if isinstance(x, QuadraticSurd):
        return str(x)
    return format_rational(x)


# ------------------------------------------------------------ vector utils

Vec = tuple[Fraction, ...]


def as_vec(seq: Iterable) -> Vec:
    return tuple(Fraction(c) if not isinstance(c, Fraction) else c for c in seq)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))


def vec_add(u: Sequence, v: Sequence) -> Vec:
    return tuple(Fraction(a) + Fraction(b) for a, b in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> Vec:
    return tuple(Fraction(a) - Fraction(b) for a, b in zip(u, v))


def vec_scale(t: Rat, v: Sequence) -> Vec:
    t = Fraction(t)
    return tuple(t * Fraction(c) for c in v)


def mat_vec(rows: Sequence[Sequence], x: Sequence) -> Vec:
    return tuple(dot(row, x) for row in rows)


def lcm(a: int, b: int) -> int:
    return abs(a * b) // math.gcd(a, b) if a and b else abs(a or b)


def common_denominator(fracs: Iterable[Fraction]) -> int:
    return reduce(lcm, (Fraction(f).denominator for f in fracs), 1)


def integerize(fracs: Sequence) -> tuple[tuple[int, ...], int]:
    """Scale a rational vector by the lcm of denominators; returns (ints, scale)."""
    fracs = as_vec(fracs)
    m = common_denominator(fracs)
    return tuple(int(f * m) for f in fracs), m


def primitive_integer_vector(v: Sequence) -> tuple[tuple[int, ...], Fraction]:
    """Positive rational multiple of v with coprime integer entries.

    Returns (w, t) with v = t*w, t > 0.  v must be nonzero.
    """
    ints, m = integerize(v)
    g = math.gcd(*ints) if len(ints) > 1 else abs(ints[0])
    if g == 0:
        raise MalformedInputError("zero vector has no primitive form")
    return tuple(c // g for c in ints), Fraction(g, m)


# ------------------------------------------------------- cone membership


def _check_dim(v: Sequence) -> Vec:
    v = as_vec(v)
    if len(v) < 2:
        raise MalformedInputError(f"cone vectors need dimension >= 2, got {len(v)}")
    return v


def soc_contains(v: Sequence) -> bool:
    """Membership in the second-order cone (axis = last coordinate)."""
    v = _check_dim(v)
    axis = v[-1]
    return axis >= 0 and axis * axis >= sum(c * c for c in v[:-1])


def soc_interior(v: Sequence) -> bool:
    """Strict membership: axis > 0 and strict norm inequality."""
    v = _check_dim(v)
    axis = v[-1]
    return axis > 0 and axis * axis > sum(c * c for c in v[:-1])
