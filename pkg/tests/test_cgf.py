"""Cut-generating function family: domains, values, cuts, properties."""

from fractions import Fraction as F

import pytest

from conecuts.cgf import (
    CutInequality,
    Derivation,
    GammaDomain,
    GammaFunction,
    LinearFunctional,
    aggregation_round_cut,
    check_cone_monotone,
    check_positive_on_cone,
    check_subadditive,
    eval_f_gamma,
    gamma_domain,
    gamma_domain_report,
    make_cut,
    orthant_monotone_counterexample,
    split_and_project_cut,
)
from conecuts.errors import (
    DegenerateAggregationError,
    InadmissibleGammaError,
    MalformedInputError,
    ProjectionInvalidError,
)

T_ROWS = ((0, 0), (1, -1), (1, 1))
T_RHS = (-2, 0, 0)
HALF_ROWS = ((0, 0), (1, 1))
HALF_RHS = (0, 3)


class TestGammaDomain:
    @pytest.mark.parametrize(
        "gamma,j,expect",
        [
            ((0, F(1, 2), F(1, 2)), 1, GammaDomain.GAMMA_J),
            ((0, 1, 1), 1, GammaDomain.GAMMA_J),
            ((0, 1, 1), 2, GammaDomain.INADMISSIBLE),
            ((0, 0, 1), 1, GammaDomain.INTERIOR_SOC),
            ((F(1, 2), 0, 1), 1, GammaDomain.INTERIOR_SOC),
            ((1, 0, 1), 1, GammaDomain.INADMISSIBLE),
            ((1, 0, 1), 2, GammaDomain.GAMMA_J),
            ((F(1, 2), 1), 1, GammaDomain.INTERIOR_SOC),
            ((1, 1), 1, GammaDomain.INADMISSIBLE),
            ((0, 1, -1), 1, GammaDomain.INADMISSIBLE),
            ((0, 0, 0), 1, GammaDomain.INADMISSIBLE),
        ],
    )
    def test_classification(self, gamma, j, expect):
        assert gamma_domain(gamma, j) is expect

    def test_report_reasons(self):
        d, why = gamma_domain_report((0, 1, 1), 2)
        assert d is GammaDomain.INADMISSIBLE
        assert "axis weight not strictly above" in why
        d, why = gamma_domain_report((0, 1, 1), 1)
        assert d is GammaDomain.GAMMA_J and why == ""

    def test_bad_j(self):
        with pytest.raises(MalformedInputError):
            gamma_domain((0, 1, 1), 3)  # j must index an off-axis coordinate
        with pytest.raises(MalformedInputError):
            gamma_domain((0, 1, 1), 0)

    def test_inadmissible_raises_on_construction(self):
        with pytest.raises(InadmissibleGammaError) as exc:
            GammaFunction((0, 1, 1), 2)
        assert "j=2" in str(exc.value)


class TestValues:
    def test_acceptance_pair_values(self):
        # columns of the canonical hyperbola block and its rhs
        g = (0, F(1, 2), F(1, 2))
        assert eval_f_gamma(g, 1, (0, 1, 1)) == 1
        assert eval_f_gamma(g, 1, (0, -1, 1)) == 0
        assert eval_f_gamma(g, 1, (-2, 0, 0)) == 1  # tracked coord nonzero bump

    def test_zero_at_origin(self):
        for g, j in [((0, F(1, 2), F(1, 2)), 1), ((0, 0, 1), 2), ((0, 1, 1), 1)]:
            assert eval_f_gamma(g, j, (0,) * len(g)) == 0

    def test_bump_requires_integral_and_tracked_nonzero(self):
        g = (0, F(1, 2), F(1, 2))
        # integral product, tracked coordinate zero: plain ceiling
        assert eval_f_gamma(g, 1, (0, 1, 1)) == 1
        # integral product, tracked nonzero: +1
        assert eval_f_gamma(g, 1, (5, 1, 1)) == 2
        # non-integral product: ceiling regardless
        assert eval_f_gamma(g, 1, (5, 0, 1)) == 1
        assert eval_f_gamma(g, 1, (5, 0, -1)) == 0

    def test_not_orthant_monotone_witness(self):
        f = GammaFunction((0, 1, 1), 1)
        u, v = (0, 0, 1), (-1, 0, 1)
        assert all(a >= b for a, b in zip(u, v))
        assert f(u) == 1
        assert f(v) == 2
        assert f(u) < f(v)

    def test_search_finds_orthant_counterexample(self):
        f = GammaFunction((0, 1, 1), 1)
        pair = orthant_monotone_counterexample(f, samples=20000, seed=0)
        assert pair is not None
        u, v = pair
        assert all(a >= b for a, b in zip(u, v))
        assert f(u) < f(v)

    def test_interior_gamma_is_orthant_clean_on_search(self):
        # strictly interior weights have no nonzero-integral plateau to trip
        f = GammaFunction((0, 0, 1), 1)
        for v in [(1, 2, 3), (-1, 0, 0), (0, 0, 0), (2, -2, 5)]:
            w = tuple(a + 1 for a in v)
            assert f(w) >= f(v)

    def test_describe(self):
        f = GammaFunction((0, F(1, 2), F(1, 2)), 1)
        d = f.describe()
        assert d == {
            "kind": "gamma-step",
            "gamma": ["0", "1/2", "1/2"],
            "j": 1,
            "domain": "gamma-j",
        }


class TestCutInequality:
    def test_algebra(self):
        cut = CutInequality((1, 0), F(1), Derivation.make("test"))
        assert cut.satisfied_by((1, 5))
        assert not cut.satisfied_by((0, 5))
        assert cut.tight_at((1, -3))
        assert cut.evaluate((F(7, 2), 9)) == F(7, 2)
        assert str(cut) == "1*x1 + 0*x2 >= 1"

    def test_primitive_scaling(self):
        cut = CutInequality((F(2, 3), F(4, 3)), F(2), Derivation.make("test"))
        prim = cut.primitive()
        assert prim.pi == (1, 2)
        assert prim.rhs == 3
        # same halfplane
        for x in [(3, 0), (0, F(3, 2)), (1, 1), (-1, 2)]:
            assert cut.satisfied_by(x) == prim.satisfied_by(x)

    def test_integer_face_primitive_rounds_up(self):
        cut = CutInequality(
            (2, 0), F(3), Derivation.make("test"), integer_face=False
        )
        prim = CutInequality(
            cut.primitive().pi, cut.primitive().rhs, cut.derivation
        )
        assert prim.pi == (1, 0) and prim.rhs == F(3, 2)

    def test_zero_normal_rejected(self):
        with pytest.raises(MalformedInputError):
            CutInequality((0, 0), F(1), Derivation.make("test"))

    def test_as_dict_shape(self):
        cut = CutInequality((1, -1), F(0), Derivation.make("test", note="n"))
        d = cut.as_dict()
        assert d["pi"] == ["1", "-1"]
        assert d["rhs"] == "0"
        assert d["sense"] == ">="
        assert d["derivation"] == {"kind": "test", "note": "n"}


class TestCutConstruction:
    def test_split_and_project_canonical(self):
        f = GammaFunction((0, F(1, 2), F(1, 2)), 1)
        cut = split_and_project_cut(f, T_ROWS, T_RHS)
        assert cut.pi == (1, 0)
        assert cut.rhs == 1
        assert cut.derivation.kind == "sign-split-projection"

    def test_split_and_project_second_coordinate(self):
        # tracking a coordinate that is nonzero in a column breaks antisymmetry
        f = GammaFunction((F(1, 2), F(-1, 2), 1), 2)
        with pytest.raises(ProjectionInvalidError) as exc:
            split_and_project_cut(f, T_ROWS, T_RHS)
        assert "column 1" in str(exc.value)

    def test_projection_invalid_column(self):
        f = GammaFunction((0, F(1, 2), F(1, 2)), 1)
        rows = ((1, 0), (1, -1), (1, 1))  # first column is (1, 1, 1)
        with pytest.raises(ProjectionInvalidError) as exc:
            split_and_project_cut(f, rows, T_RHS)
        assert "column 1" in str(exc.value)

    def test_make_cut_nonneg_variables(self):
        f = GammaFunction((0, F(1, 2), F(1, 2)), 1)
        rows = ((1, 0), (1, -1), (1, 1))
        cut = make_cut(f, rows, T_RHS)
        assert cut.pi == (2, 0) and cut.rhs == 1
        assert cut.derivation.as_dict()["nonnegative_variables"] is True

    def test_linear_functional_route(self):
        ell = LinearFunctional((0, F(1, 2), F(1, 2)))
        cut = split_and_project_cut(ell, T_ROWS, T_RHS)
        assert cut.pi == (1, 0) and cut.rhs == 0

    def test_aggregation_unrounded(self):
        cut = aggregation_round_cut([(0, 1, 1)], [(T_ROWS, T_RHS)], False)
        assert cut.pi == (2, 0) and cut.rhs == 0
        assert not cut.integer_face

    def test_aggregation_rounded(self):
        cut = aggregation_round_cut([(0, 1, 1)], [(T_ROWS, T_RHS)], True)
        assert cut.pi == (1, 0) and cut.rhs == 0
        assert cut.integer_face
        assert cut.derivation.as_dict()["tau"] == "2"

    def test_aggregation_rounding_strengthens(self):
        # weights give 5x1 >= 2 continuous; rounding yields x1 >= 1
        rows = ((0, 0), (5, 0))
        rhs = (0, 2)
        cut = aggregation_round_cut([(0, 1)], [(rows, rhs)], True)
        assert cut.pi == (1, 0) and cut.rhs == 1

    def test_aggregation_two_blocks(self):
        cut = aggregation_round_cut(
            [(0, 1, 1), (0, 1)], [(T_ROWS, T_RHS), (HALF_ROWS, HALF_RHS)], True
        )
        assert cut.pi == (3, 1) and cut.rhs == 3

    def test_aggregation_weight_outside_cone(self):
        with pytest.raises(MalformedInputError):
            aggregation_round_cut([(1, 0)], [(HALF_ROWS, HALF_RHS)], True)

    def test_aggregation_degenerate(self):
        with pytest.raises(DegenerateAggregationError):
            aggregation_round_cut([(0, 0, 0)], [(T_ROWS, T_RHS)], False)

    def test_aggregation_shape_errors(self):
        with pytest.raises(MalformedInputError):
            aggregation_round_cut([], [], True)
        with pytest.raises(MalformedInputError):
            aggregation_round_cut([(0, 1)], [(T_ROWS, T_RHS)], True)


ADMISSIBLE = [
    ((0, F(1, 2), F(1, 2)), 1),
    ((0, 1, 1), 1),
    ((0, -1, 1), 1),
    ((F(1, 2), F(-1, 2), 1), 1),
    ((F(1, 2), F(-1, 2), 1), 2),
    ((0, 0, 1), 1),
    ((0, 0, 1), 2),
    ((F(1, 3), F(1, 3), F(2, 3)), 2),
    ((F(1, 2), 1), 1),
    ((0, 1), 1),
]


class TestSampledProperties:
    @pytest.mark.parametrize("gamma,j", ADMISSIBLE)
    def test_subadditive(self, gamma, j):
        rep = check_subadditive(GammaFunction(gamma, j), pairs=2000, seed=7)
        assert rep.passed, rep.as_dict()

    @pytest.mark.parametrize("gamma,j", ADMISSIBLE)
    def test_cone_monotone(self, gamma, j):
        rep = check_cone_monotone(GammaFunction(gamma, j), pairs=2000, seed=7)
        assert rep.passed, rep.as_dict()

    @pytest.mark.parametrize("gamma,j", ADMISSIBLE)
    def test_positive_on_tracked_cone(self, gamma, j):
        rep = check_positive_on_cone(GammaFunction(gamma, j), samples=2000, seed=7)
        assert rep.passed, rep.as_dict()

    def test_report_dict(self):
        rep = check_subadditive(GammaFunction((0, 1, 1), 1), pairs=100, seed=1)
        d = rep.as_dict()
        assert d["property"] == "subadditive"
        assert d["checked"] == 100
        assert d["violations"] == 0
        assert d["seed"] == 1
        assert d["passed"] is True
