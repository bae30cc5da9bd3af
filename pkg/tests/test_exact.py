"""Exact arithmetic layer: rationals, quadratic surds, cone membership."""

import math
import random
from fractions import Fraction as F

import pytest

from conecuts.errors import MalformedInputError, MixedRadicandError
from conecuts.exact import (
    QuadraticSurd,
    ceil_surd,
    format_rational,
    format_surd,
    integerize,
    is_square,
    parse_rational,
    primitive_integer_vector,
    rational_sos,
    soc_contains,
    soc_interior,
    sqrt_rational,
    sqrt_surd,
    squarefree_decompose,
    sum_of_squares,
    surd,
)


class TestRationalIO:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("3/4", F(3, 4)),
            ("-3/9", F(-1, 3)),
            ("7", F(7)),
            (" 0.25 ", F(1, 4)),
            ("-1.5", F(-3, 2)),
            ("0", F(0)),
        ],
    )
    def test_parse(self, text, expected):
        assert parse_rational(text) == expected

    @pytest.mark.parametrize("text", ["1/0", "abc", "1.2.3", "", "3 / 4 / 5"])
    def test_parse_rejects(self, text):
        with pytest.raises(MalformedInputError):
            parse_rational(text)

    def test_format_round_trip(self):
        for q in (F(3, 4), F(-1, 2), F(5), F(0), F(-22, 7)):
            assert parse_rational(format_rational(q)) == q

    def test_format_shape(self):
        assert format_rational(F(3, 4)) == "3/4"
        assert format_rational(F(5)) == "5"
        assert format_rational(F(-1, 2)) == "-1/2"


class TestSquares:
    def test_is_square(self):
        squares = {n * n for n in range(50)}
        for n in range(2500):
            assert is_square(n) == (n in squares)

    def test_sqrt_rational_exact(self):
        assert sqrt_rational(F(9, 4)) == F(3, 2)
        assert sqrt_rational(F(0)) == 0
        assert sqrt_rational(F(2)) is None

    def test_squarefree_decompose(self):
        for n in (1, 2, 8, 12, 49, 50, 360):
            s, r = squarefree_decompose(n)
            assert s * s * r == n
            # r squarefree: no square divisor > 1
            for d in range(2, int(math.isqrt(r)) + 1):
                assert r % (d * d) != 0

    def test_sum_of_squares(self):
        for n in list(range(60)) + [999, 2026, 10**6 + 3]:
            parts = sum_of_squares(n)
            assert len(parts) <= 4
            assert sum(p * p for p in parts) == n

    def test_rational_sos(self):
        for q in (F(3), F(7, 2), F(1, 3)):
            parts = rational_sos(q)
            assert sum(p * p for p in parts) == q
        with pytest.raises(ValueError):
            rational_sos(F(0))


class TestQuadraticSurd:
    def test_sqrt_surd_squares_back(self):
        s = sqrt_surd(2)
        assert s * s == F(2)
        assert not s.is_rational

    def test_perfect_square_collapses(self):
        s = sqrt_surd(F(9, 4))
        assert s.is_rational and s.rational_value() == F(3, 2)

    def test_algebra(self):
        s = surd(1, 1, 2)  # 1 + sqrt(2)
        assert s * s == surd(3, 2, 2)
        assert s + s == surd(2, 2, 2)
        assert s - surd(0, 1, 2) == F(1)
        assert -s == surd(-1, -1, 2)

    def test_comparisons_both_directions(self):
        r2 = sqrt_surd(2)
        assert F(7, 5) < r2 < F(3, 2)
        assert r2 > F(7, 5)
        assert not (r2 < F(7, 5))
        assert F(3, 2) > r2
        assert sqrt_surd(2) == sqrt_surd(2)
        assert surd(1, -1, 2) < 0  # 1 - sqrt(2)

    def test_floor_ceil(self):
        r2 = sqrt_surd(2)
        assert math.floor(r2) == 1 and math.ceil(r2) == 2
        assert math.floor(-r2) == -2 and math.ceil(-r2) == -1
        assert math.floor(surd(F(7, 2))) == 3
        assert math.ceil(surd(F(7, 2))) == 4
        assert math.ceil(surd(3)) == 3

    def test_ceil_surd_matches_rational(self):
        for q in (F(7, 2), F(-7, 2), F(4), F(0), F(-5)):
            assert ceil_surd(q) == math.ceil(q)
            assert ceil_surd(surd(q)) == math.ceil(q)

    def test_ceil_bracket_random(self):
        rng = random.Random(7)
        for _ in range(300):
            p = F(rng.randint(-50, 50), rng.randint(1, 20))
            q = F(rng.randint(-50, 50), rng.randint(1, 20))
            r = rng.choice([2, 3, 5, 6, 7, 10])
            x = surd(p, q, r)
            c = ceil_surd(x)
            assert x <= c
            assert c - 1 < x

    def test_mixed_radicand_rejected(self):
        with pytest.raises(MixedRadicandError):
            _ = sqrt_surd(2) + sqrt_surd(3)
        with pytest.raises(MixedRadicandError):
            _ = sqrt_surd(2) * sqrt_surd(3)

    def test_same_radicand_product_stays_closed(self):
        a = surd(1, 2, 3)  # 1 + 2 sqrt(3)
        b = surd(-2, 1, 3)  # -2 + sqrt(3)
        assert a * b == surd(-2 + 2 * 3, 1 - 4, 3)  # 4 - 3 sqrt(3)

    def test_format_parse(self):
        from conecuts.exact import parse_surd

        for x in (surd(1, 1, 2), sqrt_surd(5), surd(F(-3, 2)), surd(0, F(1, 3), 7)):
            assert parse_surd(format_surd(x)) == x


class TestVecHelpers:
    def test_primitive_integer_vector(self):
        prim, t = primitive_integer_vector((F(2), F(4)))
        assert tuple(prim) == (1, 2) and t == 2
        prim, t = primitive_integer_vector((F(2, 3), F(1, 2)))
        assert tuple(prim) == (4, 3)
        assert tuple(c * t for c in prim) == (F(2, 3), F(1, 2))
        prim, t = primitive_integer_vector((F(0), F(-3)))
        assert tuple(prim) == (0, -1) and t == 3

    def test_integerize(self):
        nums, den = integerize((F(1, 2), F(2, 3)))
        assert den == 6 and nums == (3, 4)


class TestCone:
    def test_membership_basics(self):
        assert soc_contains((0, 1, 1))
        assert not soc_interior((0, 1, 1))
        assert soc_interior((0, 0, 1))
        assert not soc_contains((0, 2, 1))
        assert soc_contains((1, 1)) and not soc_interior((1, 1))
        assert soc_contains((0, 0, 0)) and not soc_interior((0, 0, 0))

    def test_closure_sample(self):
        rng = random.Random(11)
        for _ in range(2000):
            m = rng.choice([2, 3, 4])
            v = tuple(F(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(m))
            if soc_interior(v):
                assert soc_contains(v)
            w = tuple(F(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(m))
            if soc_contains(v) and soc_contains(w):
                assert soc_contains(tuple(a + b for a, b in zip(v, w)))
