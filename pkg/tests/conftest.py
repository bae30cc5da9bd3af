"""Shared fixtures and independent oracles.

The brute-force predicates below evaluate the defining inequalities with
plain Fraction arithmetic.  They deliberately avoid the package's block
normalization, kernels, and enumeration so that test comparisons are
independent of the code under test.
"""

from __future__ import annotations

import io
import json
from contextlib import redirect_stdout
from fractions import Fraction
from pathlib import Path

import pytest

INSTANCE_DIR = Path(__file__).resolve().parent.parent / "instances"


@pytest.fixture(scope="session")
def instance_dir() -> Path:
    return INSTANCE_DIR


def instance_path(name: str) -> str:
    return str(INSTANCE_DIR / f"{name}.json")


# --------------------------------------------------- brute-force oracles


def pred_t_prime(x: Fraction, y: Fraction) -> bool:
    return x * y >= 1 and x > 0


def pred_t_prime_negative(x: Fraction, y: Fraction) -> bool:
    return x * y >= 1 and x < 0


def pred_translated(x: Fraction, y: Fraction) -> bool:
    return (x - 3) * (y - 2) >= 1 and x > 3


def pred_quarter(x: Fraction, y: Fraction) -> bool:
    return x * y >= Fraction(1, 4) and x + y > 0


def pred_pythagorean(x: Fraction, y: Fraction) -> bool:
    return (3 * x + 4 * y) * (4 * x - 3 * y) >= 25 and 7 * x + y > 0


def pred_skew(x: Fraction, y: Fraction) -> bool:
    v2, v3 = 3 * x - 2 * y, 4 * x + y
    return v3 * v3 - v2 * v2 - 1 >= 0 and v3 >= 0


def make_disc_pred(cx, cy, r):
    cx, cy, r = Fraction(cx), Fraction(cy), Fraction(r)

    def pred(x: Fraction, y: Fraction) -> bool:
        return (x - cx) ** 2 + (y - cy) ** 2 <= r * r

    return pred


def pred_parabola(x: Fraction, y: Fraction) -> bool:
    return y >= x * x


def pred_parabola_halfplane(x: Fraction, y: Fraction) -> bool:
    return x >= Fraction(7, 3) and y >= x * x


def pred_mixed(x: Fraction, y: Fraction) -> bool:
    return pred_t_prime(x, y) and x + y >= 3


def pred_band_strip(x: Fraction, y: Fraction) -> bool:
    return Fraction(1, 5) <= x <= Fraction(4, 5)


def pred_ellipse_skew(x: Fraction, y: Fraction) -> bool:
    return x * x + x * y + y * y <= 3


PREDICATES = {
    "t_prime": pred_t_prime,
    "t_prime_soc": pred_t_prime,
    "hyperbola_negative": pred_t_prime_negative,
    "hyperbola_translated": pred_translated,
    "hyperbola_quarter": pred_quarter,
    "hyperbola_pythagorean": pred_pythagorean,
    "hyperbola_skew": pred_skew,
    "band_strip": pred_band_strip,
    "disc_tiny": make_disc_pred("1/2", "1/2", "2/5"),
    "disc_mid": make_disc_pred("1/2", "1/2", "3/4"),
    "disc_support": make_disc_pred("1/2", "1/2", "3/5"),
    "ellipse_skew": pred_ellipse_skew,
    "parabola": pred_parabola,
    "parabola_rotated": lambda x, y: x + y >= (x - y) ** 2,
    "parabola_halfplane": pred_parabola_halfplane,
    "mixed_hyperbola_halfplane": pred_mixed,
}


def brute_points(pred, box) -> set[tuple[int, int]]:
    """All integer points of the predicate region inside the box."""
    x0, x1, y0, y1 = box
    return {
        (x, y)
        for x in range(x0, x1 + 1)
        for y in range(y0, y1 + 1)
        if pred(Fraction(x), Fraction(y))
    }


def cut_holds_on(points, pi, rhs) -> bool:
    return all(pi[0] * x + pi[1] * y >= rhs for x, y in points)


# ------------------------------------------------------------ CLI driver


def run_cli(argv: list[str]) -> tuple[int, str]:
    """Run the CLI in-process, capturing stdout."""
    from conecuts.cli import main

    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def run_cli_json(argv: list[str]) -> tuple[int, dict]:
    code, out = run_cli(argv + ["--format", "json"])
    return code, json.loads(out)
