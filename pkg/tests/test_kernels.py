"""Pure vs. compiled kernel equivalence, plus brute-force cross-checks."""

import random
from fractions import Fraction as F

import pytest

from conecuts import kernels
from conecuts.conic2d import halfspace_block, quadratic_to_block, soc_block
from conecuts.exact import soc_contains
from conecuts.kernels import pure

from conftest import brute_points, pred_t_prime

try:
    from conecuts.kernels import _speedups
except ImportError:  # pragma: no cover - environment without a compiler
    _speedups = None

needs_compiled = pytest.mark.skipif(
    _speedups is None, reason="compiled kernels unavailable"
)

T_PRIME = (3, (0, 0, 1, -1, 1, 1), (-2, 0, 0))
HALFPLANE = (2, (0, 0, 1, 1), (0, 3))  # x1 + x2 >= 3
DISC34 = (3, (8, 0, 0, 8, 0, 0), (4, 4, -6))  # (8x-4)^2+(8y-4)^2 <= 36


def _random_block(rng):
    m = rng.choice([2, 3])
    rows = tuple(rng.randint(-4, 4) for _ in range(2 * m))
    rhs = tuple(rng.randint(-4, 4) for _ in range(m))
    return (m, rows, rhs)


class TestLatticePoints:
    def test_matches_brute_force_oracle(self):
        box = (-6, 6, -6, 6)
        got = set(kernels.lattice_points([T_PRIME], box))
        assert got == brute_points(pred_t_prime, box)

    def test_disc_encoding(self):
        box = (-2, 3, -2, 3)
        got = set(kernels.lattice_points([DISC34], box))
        assert got == {(0, 0), (0, 1), (1, 0), (1, 1)}

    def test_intersection(self):
        box = (-5, 5, -5, 5)
        got = set(kernels.lattice_points([T_PRIME, HALFPLANE], box))
        assert got == {
            p for p in brute_points(pred_t_prime, box) if p[0] + p[1] >= 3
        }

    @needs_compiled
    def test_pure_compiled_equal_random(self):
        rng = random.Random(5)
        for _ in range(60):
            blocks = [_random_block(rng) for _ in range(rng.randint(1, 3))]
            box = (rng.randint(-8, 0), rng.randint(0, 8), -4, 4)
            assert pure.lattice_points(blocks, box) == _speedups.lattice_points(
                blocks, box
            )

    def test_overflow_routes_to_pure(self):
        huge = (2, (0, 0, 2**40, 2**40), (0, -(2**60)))
        box = (-3, 3, -3, 3)
        assert not kernels._blocks_safe([huge], box)
        assert kernels.lattice_points([huge], box) == pure.lattice_points(
            [huge], box
        )
        assert len(pure.lattice_points([huge], box)) == 49  # always satisfied

    def test_dispatch_equals_pure(self):
        box = (-6, 6, -6, 6)
        assert kernels.lattice_points([T_PRIME], box) == pure.lattice_points(
            [T_PRIME], box
        )


def _random_samples(rng, m, n):
    us, uds, vs, vds = [], [], [], []
    for _ in range(n):
        us.extend(rng.randint(-9, 9) for _ in range(m))
        uds.append(rng.randint(1, 6))
        vs.extend(rng.randint(-9, 9) for _ in range(m))
        vds.append(rng.randint(1, 6))
    return tuple(us), tuple(uds), tuple(vs), tuple(vds)


class TestPropertyKernels:
    @needs_compiled
    @pytest.mark.parametrize("gnum,gden,j", [((0, 1, 2), 2, 1), ((1, 1, 3), 3, 2)])
    def test_subadditive_equal(self, gnum, gden, j):
        rng = random.Random(13)
        us, uds, vs, vds = _random_samples(rng, len(gnum), 400)
        assert pure.subadditive_violations(
            gnum, gden, j, us, uds, vs, vds
        ) == _speedups.subadditive_violations(gnum, gden, j, us, uds, vs, vds)

    @needs_compiled
    @pytest.mark.parametrize("gnum,gden,j", [((0, 1, 2), 2, 1), ((1, 1, 3), 3, 2)])
    def test_monotone_equal(self, gnum, gden, j):
        rng = random.Random(17)
        us, uds, vs, vds = _random_samples(rng, len(gnum), 400)
        assert pure.monotone_violations(
            gnum, gden, j, us, uds, vs, vds
        ) == _speedups.monotone_violations(gnum, gden, j, us, uds, vs, vds)

    def test_f_value_matches_definition(self):
        # f(v) = gamma.v + 1 when v_j != 0 and gamma.v integral, else ceil
        rng = random.Random(23)
        gnum, gden, j = (0, 1, 1), 2, 1  # gamma = (0, 1/2, 1/2)
        for _ in range(500):
            nums = tuple(rng.randint(-8, 8) for _ in range(3))
            den = rng.randint(1, 5)
            s = F(sum(g * n for g, n in zip(gnum, nums)), gden * den)
            expect = int(s) + 1 if (nums[j - 1] != 0 and s.denominator == 1) else -((-s.numerator) // s.denominator)
            assert pure._f_value(gnum, gden, j, nums, den) == expect


class TestConeBatch:
    def test_matches_scalar(self):
        rng = random.Random(29)
        m = 3
        vecs = tuple(rng.randint(-7, 7) for _ in range(m * 300))
        got = kernels.soc_contains_batch(vecs, m)
        for k in range(300):
            v = vecs[k * m : (k + 1) * m]
            assert got[k] == soc_contains(v)

    @needs_compiled
    def test_pure_compiled_equal(self):
        rng = random.Random(31)
        vecs = tuple(rng.randint(-7, 7) for _ in range(2 * 200))
        assert pure.soc_contains_batch(vecs, 2) == list(
            _speedups.soc_contains_batch(vecs, 2)
        )


class TestBlockKernelData:
    def test_block_kernel_data_round_trip(self):
        b = soc_block(((0, 0), (1, -1), (1, 1)), (-2, 0, 0))
        m, rows, rhs = b.kernel_data()
        assert (m, tuple(rows), tuple(rhs)) == T_PRIME

    def test_halfspace_kernel_data(self):
        b = halfspace_block((1, 1), 3)
        m, rows, rhs = b.kernel_data()
        box = (-5, 5, -5, 5)
        got = set(kernels.lattice_points([(m, rows, rhs)], box))
        assert got == {
            (x, y) for x in range(-5, 6) for y in range(-5, 6) if x + y >= 3
        }
