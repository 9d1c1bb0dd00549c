import random
from fractions import Fraction

import pytest

from curvelab import (BivarPoly, DegenerateTransform, DegreeOfZero, NotOnCurve,
                      TransformStep, VariableMismatch, apply_step, blow_down,
                      blow_up, is_singular, partial_derivative, poly_from_text,
                      step_from_dict, step_to_dict, tangent_cone, translate)

from oracle import from_poly, o_blow_down, o_diff, o_normalize, random_poly, to_poly

CIRCLE = poly_from_text("x^2+y^2-1", "x", "y")
SHIFTED = poly_from_text("x^2-4x+y^2", "x", "y")
LEMNISCATE = poly_from_text("x^4+z^2-x^2", "x", "z")
PIRIFORME = poly_from_text("x^4-4x^3+z^2", "x", "z")
LABIOS = poly_from_text("x^6-12x^5+48x^4-64x^3+t^2", "x", "t")
CARDIOID = poly_from_text("(x^2+y^2+x)^2-x^2-y^2", "x", "y")
HEART = poly_from_text(
    "x^8+10x^7+40x^6+80x^5+2x^4z^2+80x^4+32x^3+10x^3z^2+15x^2z^2"
    "+4x z^2+z^4-4z^2", "x", "z")
DELTOID = poly_from_text("3(x^2+y^2)^2+8x(3y^2-x^2)+6x^2+6y^2-1", "x", "y")
ARROWHEAD = poly_from_text(
    "3x^2z^4+6x^2z^2+3x^2-6x z^4+24x z^2-2x+3z^4+6z^2-1", "x", "z")
FISH = poly_from_text(
    "3x^6-2x^5+6x^4t^2-x^4+24x^3t^2+3x^2t^4+6x^2t^2-6x t^4+3t^4", "x", "t")


def down(pivot, replaced, new, center, strict=False):
    return TransformStep("blow_down", pivot, replaced, new,
                         Fraction(center), strict=strict)


def up(pivot, replaced, new, center):
    return TransformStep("blow_up", pivot, replaced, new, Fraction(center))


class TestBlowDownKnownCurves:
    def test_circle_to_lemniscate(self):
        assert blow_down(CIRCLE, down("x", "y", "z", 0)) == LEMNISCATE

    def test_shifted_circle_to_piriforme(self):
        assert blow_down(SHIFTED, down("x", "y", "z", 0)) == PIRIFORME

    def test_piriforme_to_labios_center_four(self):
        assert blow_down(PIRIFORME, down("x", "z", "t", 4)) == LABIOS

    def test_cardioid_to_heart_center_minus_two(self):
        assert blow_down(CARDIOID, down("x", "y", "z", -2)) == HEART

    def test_arrowhead_to_fish(self):
        assert blow_down(ARROWHEAD, down("x", "z", "t", 0)) == FISH

    def test_replaced_variable_absent_is_a_rename(self):
        p = poly_from_text("x^2-1", "x", "y")
        got = blow_down(p, down("x", "y", "w", 5))
        assert got.vars == ("x", "w")
        assert got.terms == p.terms

    def test_output_keeps_pivot_slot(self):
        swapped = poly_from_text("y^2+x^2-1", "y", "x")
        got = blow_down(swapped, down("y", "x", "w", 0))
        assert got.vars == ("y", "w")
        assert got == poly_from_text("y^4+w^2-y^2", "y", "w")

    def test_zero_input_rejected(self):
        with pytest.raises(DegreeOfZero):
            blow_down(BivarPoly.zero("x", "y"), down("x", "y", "z", 0))

    def test_wrong_variables_rejected(self):
        with pytest.raises(VariableMismatch):
            blow_down(CIRCLE, down("x", "q", "z", 0))

    def test_wrong_kind_rejected(self):
        with pytest.raises(ValueError):
            blow_down(CIRCLE, up("x", "y", "z", 0))

    def test_matches_independent_term_rule(self):
        rng = random.Random(31)
        for _ in range(120):
            d = random_poly(rng, max_deg=7, max_coeff=40)
            center = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
            f = to_poly(d)
            got = blow_down(f, down("x", "y", "z", center))
            deg = max(j for _, j in d) if any(j for _, j in d) else 0
            assert from_poly(got) == o_blow_down(d, center, deg)


class TestStrictBlowDown:
    def test_strict_removes_leftover_exceptional_factor(self):
        reducible = CIRCLE * poly_from_text("x", "x", "y")
        raw = blow_down(reducible, down("x", "y", "z", 0))
        strict = blow_down(reducible, down("x", "y", "z", 0, strict=True))
        assert raw == poly_from_text("x", "x", "z") * LEMNISCATE
        assert strict == LEMNISCATE

    def test_strict_noop_when_no_factor(self):
        assert blow_down(CIRCLE, down("x", "y", "z", 0, strict=True)) \
            == LEMNISCATE

    def test_strict_with_rational_center(self):
        f = poly_from_text("(2x-1)^3", "x", "y")
        with pytest.raises(DegenerateTransform):
            blow_down(f, down("x", "y", "z", Fraction(1, 2), strict=True))


class TestBlowUpKnownCurves:
    def test_lemniscate_back_to_circle(self):
        result = blow_up(LEMNISCATE, up("x", "z", "y", 0))
        assert result.proper == CIRCLE
        assert result.exceptional_multiplicity == 2

    def test_deltoid_to_arrowhead_at_one(self):
        result = blow_up(DELTOID, up("x", "y", "z", 1))
        assert result.proper == ARROWHEAD
        assert result.exceptional_multiplicity == 2

    def test_pure_exceptional_input_degenerates(self):
        with pytest.raises(DegenerateTransform):
            blow_up(poly_from_text("x^2", "x", "y"), up("x", "y", "z", 0))

    def test_zero_input_rejected(self):
        with pytest.raises(DegreeOfZero):
            blow_up(BivarPoly.zero("x", "y"), up("x", "y", "z", 0))

    def test_proper_transform_never_divisible(self):
        # check by exact substitution: g(a, w) must not vanish identically
        rng = random.Random(32)
        checked = 0
        while checked < 120:
            f = to_poly(random_poly(rng, max_deg=6, max_coeff=25))
            center = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            try:
                result = blow_up(f, up("x", "y", "z", center))
            except DegenerateTransform:
                continue
            g = result.proper
            residue = {}
            for (i, j), c in g.terms.items():
                residue[j] = residue.get(j, 0) + Fraction(c) * center ** i
            assert any(v != 0 for v in residue.values())
            checked += 1

    def test_substitution_reconstruction_identity(self):
        # f(x, (x-a) w) == lambda * (x-a)^k * proper(x, w) for a fixed scalar
        rng = random.Random(33)
        checked = 0
        while checked < 60:
            f = to_poly(random_poly(rng, max_deg=6, max_coeff=25))
            center = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            try:
                result = blow_up(f, up("x", "y", "z", center))
            except DegenerateTransform:
                continue
            scalar = None
            for _ in range(50):
                px = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                pw = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                if px == center:
                    continue
                lhs = f.evaluate((px, (px - center) * pw))
                rhs = ((px - center) ** result.exceptional_multiplicity
                       * result.proper.evaluate((px, pw)))
                if rhs == 0:
                    assert lhs == 0
                    continue
                if scalar is None:
                    scalar = lhs / rhs
                    assert scalar != 0
                else:
                    assert lhs == scalar * rhs
            checked += 1


class TestRoundTrip:
    def test_blow_up_inverts_blow_down(self):
        rng = random.Random(34)
        done = 0
        while done < 220:
            f = to_poly(random_poly(rng, max_deg=10, max_coeff=10 ** 4,
                                    max_terms=12)).normalize()
            center = Fraction(rng.randint(-8, 8), rng.randint(1, 5))
            # require (x - a) not dividing f: f(a, y) must not vanish
            residue = {}
            for (i, j), c in f.terms.items():
                residue[j] = residue.get(j, 0) + Fraction(c) * center ** i
            if all(v == 0 for v in residue.values()):
                continue
            d = f.degree_in("y")
            h = blow_down(f, down("x", "y", "z", center))
            result = blow_up(h, up("x", "z", "y", center))
            assert result.proper == f
            assert result.exceptional_multiplicity == d
            done += 1

    def test_round_trip_on_catalog_pairs(self):
        for f, d in ((CIRCLE, 2), (SHIFTED, 2), (CARDIOID, 4)):
            h = blow_down(f, down("x", "y", "z", 0 if f is not CARDIOID else -2))
            result = blow_up(h, up("x", "z", "y", 0 if f is not CARDIOID else -2))
            assert result.proper == f
            assert result.exceptional_multiplicity == d


class TestSubstitutionIdentity:
    CASES = (
        (CIRCLE, Fraction(0)),
        (SHIFTED, Fraction(0)),
        (PIRIFORME.rename_var("z", "y"), Fraction(4)),
        (CARDIOID, Fraction(-2)),
        (ARROWHEAD.rename_var("z", "y"), Fraction(0)),
    )

    def test_catalog_construction_cases_have_positive_scale(self):
        rng = random.Random(35)
        for f, center in self.CASES:
            d = f.degree_in("y")
            h = blow_down(f, down("x", "y", "z", center))
            scalar = None
            samples = 0
            while samples < 50:
                px = Fraction(rng.randint(-9, 9), rng.randint(1, 6))
                py = Fraction(rng.randint(-9, 9), rng.randint(1, 6))
                if px == center:
                    continue
                lhs = h.evaluate((px, (px - center) * py))
                rhs = (px - center) ** d * f.evaluate((px, py))
                if rhs == 0:
                    assert lhs == 0
                else:
                    ratio = lhs / rhs
                    if scalar is None:
                        scalar = ratio
                        assert scalar > 0
                    else:
                        assert ratio == scalar
                samples += 1

    def test_random_cases_scale_is_constant(self):
        rng = random.Random(36)
        for _ in range(40):
            f = to_poly(random_poly(rng, max_deg=6, max_coeff=30))
            center = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            d = f.degree_in("y")
            h = blow_down(f, down("x", "y", "z", center))
            scalar = None
            samples = 0
            while samples < 50:
                px = Fraction(rng.randint(-9, 9), rng.randint(1, 6))
                py = Fraction(rng.randint(-9, 9), rng.randint(1, 6))
                if px == center:
                    continue
                lhs = h.evaluate((px, (px - center) * py))
                rhs = (px - center) ** d * f.evaluate((px, py))
                if rhs == 0:
                    assert lhs == 0
                elif scalar is None:
                    scalar = lhs / rhs
                    assert scalar != 0
                else:
                    assert lhs == scalar * rhs
                samples += 1


class TestPointTracking:
    def test_circle_poles_collapse_to_lemniscate_origin(self):
        for point in ((0, 1), (0, -1)):
            assert CIRCLE.evaluate(point) == 0
            image = (Fraction(point[0]),
                     Fraction(point[0]) * Fraction(point[1]))
            assert image == (0, 0)
            assert LEMNISCATE.evaluate(image) == 0

    def test_generic_curve_points_stay_on_image(self):
        rng = random.Random(37)
        h = blow_down(CIRCLE, down("x", "y", "z", 0))
        count = 0
        while count < 25:
            # rational circle points from Pythagorean parametrization
            t = Fraction(rng.randint(-20, 20), rng.randint(1, 20))
            px = (1 - t * t) / (1 + t * t)
            py = 2 * t / (1 + t * t)
            assert CIRCLE.evaluate((px, py)) == 0
            assert h.evaluate((px, px * py)) == 0
            count += 1


class TestPartialDerivative:
    def test_circle_derivative_normalized(self):
        assert partial_derivative(CIRCLE, "x") == poly_from_text("x", "x", "y")

    def test_piriforme_derivative_in_z(self):
        assert partial_derivative(PIRIFORME, "z") \
            == poly_from_text("z", "x", "z")

    def test_lemniscate_derivative(self):
        assert partial_derivative(LEMNISCATE, "x") \
            == poly_from_text("2x^3-x", "x", "z")

    def test_unknown_variable(self):
        with pytest.raises(VariableMismatch):
            partial_derivative(CIRCLE, "q")

    def test_matches_termwise_oracle(self):
        rng = random.Random(38)
        for _ in range(120):
            d = random_poly(rng, max_deg=7, max_coeff=60)
            got = partial_derivative(to_poly(d), "x")
            assert from_poly(got) == o_normalize(o_diff(d, 0))
            got = partial_derivative(to_poly(d), "y")
            assert from_poly(got) == o_normalize(o_diff(d, 1))


class TestIsSingular:
    def test_lemniscate_node(self):
        report = is_singular(LEMNISCATE, (0, 0))
        assert report.status == "singular"
        assert report.multiplicity == 2

    def test_circle_smooth_point(self):
        report = is_singular(CIRCLE, (0, 1))
        assert report.status == "smooth"
        assert report.multiplicity == 1

    def test_point_off_curve(self):
        assert is_singular(CIRCLE, (5, 5)).status == "not_on_curve"

    def test_zero_polynomial_rejected(self):
        with pytest.raises(DegreeOfZero):
            is_singular(BivarPoly.zero("x", "y"), (0, 0))

    def test_rational_point_input(self):
        assert is_singular(CIRCLE, ("3/5", "4/5")).status == "smooth"


class TestTangentCone:
    def test_lemniscate_node_lines(self):
        cone = tangent_cone(LEMNISCATE, (0, 0))
        assert cone.multiplicity == 2
        expected = {poly_from_text("z-x", "x", "z"): 1,
                    poly_from_text("z+x", "x", "z"): 1}
        assert {line: m for line, m in cone.lines} == expected
        assert cone.residual == BivarPoly.constant(1, "x", "z")

    def test_piriforme_cusp_double_line(self):
        cone = tangent_cone(PIRIFORME, (0, 0))
        assert cone.multiplicity == 2
        assert [(line, m) for line, m in cone.lines] \
            == [(poly_from_text("z", "x", "z"), 2)]
        assert cone.residual == BivarPoly.constant(1, "x", "z")

    def test_cardioid_cusp(self):
        cone = tangent_cone(CARDIOID, (0, 0))
        assert cone.multiplicity == 2
        assert [(line, m) for line, m in cone.lines] \
            == [(poly_from_text("y", "x", "y"), 2)]
        assert cone.residual == BivarPoly.constant(1, "x", "y")
        assert cone.scale == -1          # lowest part is -y^2

    def test_circle_tangent_at_north_pole(self):
        cone = tangent_cone(CIRCLE, (0, 1))
        assert cone.multiplicity == 1
        assert [(line, m) for line, m in cone.lines] \
            == [(poly_from_text("y", "x", "y"), 1)]

    def test_point_off_curve_raises(self):
        with pytest.raises(NotOnCurve):
            tangent_cone(CIRCLE, (5, 5))

    def test_reconstruction_is_exact(self):
        for f, at in ((LEMNISCATE, (0, 0)), (PIRIFORME, (0, 0)),
                      (CARDIOID, (0, 0)), (CIRCLE, (0, 1)),
                      (HEART, (0, 0)), (FISH, (0, 0))):
            cone = tangent_cone(f, at)
            lowest = translate(f, at).homogeneous_part(cone.multiplicity)
            assert cone.reconstruction() == lowest
            assert cone.scale != 0

    def test_constructed_cones_recovered_exactly(self):
        rng = random.Random(39)
        u = poly_from_text("x", "x", "y")
        v = poly_from_text("y", "x", "y")
        for _ in range(60):
            # assemble a homogeneous lowest part from known factors
            p_axis = rng.randint(0, 2)
            q_axis = rng.randint(0, 2)
            expected = {}
            if p_axis:
                expected[u] = p_axis
            if q_axis:
                expected[v] = q_axis
            lowest = u ** p_axis * v ** q_axis
            roots = set()
            for _ in range(rng.randint(0, 3)):
                s = rng.randint(-5, 5)
                t = rng.randint(1, 4)
                if s == 0:
                    continue          # would collide with the axis factor
                from math import gcd
                g = gcd(abs(s), t)
                s, t = s // g, t // g
                if Fraction(s, t) in roots:
                    continue
                roots.add(Fraction(s, t))
                mult = rng.randint(1, 2)
                line = BivarPoly("x", "y", {(1, 0): -s, (0, 1): t})
                expected[line] = mult
                lowest = lowest * line ** mult
            if rng.random() < 0.5:
                residual = poly_from_text("x^2+y^2", "x", "y")
                lowest = lowest * residual
            else:
                residual = BivarPoly.constant(1, "x", "y")
            m = lowest.total_degree()
            if m == 0:
                continue
            # bury it under higher-degree noise
            noise = {}
            for _ in range(rng.randint(1, 6)):
                i = rng.randint(0, 10)
                j = rng.randint(0, 10 - i)
                if i + j <= m:
                    continue
                noise[(i, j)] = rng.randint(-30, 30)
            f = lowest * rng.choice([1, 2, -3]) + BivarPoly("x", "y", noise)
            cone = tangent_cone(f, (0, 0))
            assert cone.multiplicity == m
            assert {line: mult for line, mult in cone.lines} == expected
            assert cone.residual == residual

    def test_cone_at_shifted_point_matches_origin_cone(self):
        rng = random.Random(40)
        base = LEMNISCATE
        for shift in ((1, 2), ("-1/2", "3"), (0, -4)):
            du, dv = Fraction(str(shift[0])), Fraction(str(shift[1]))
            moved = translate(base, (-du, -dv))
            assert moved.evaluate((du, dv)) == 0
            cone_here = tangent_cone(moved, (du, dv))
            cone_origin = tangent_cone(base, (0, 0))
            assert cone_here.multiplicity == cone_origin.multiplicity
            assert dict(cone_here.lines) == dict(cone_origin.lines)
            assert cone_here.residual == cone_origin.residual


class TestStepSerialization:
    def test_round_trip(self):
        step = down("x", "y", "z", Fraction(-3, 7), strict=True)
        assert step_from_dict(step_to_dict(step)) == step
        step = up("x", "z", "y", 2)
        assert step_from_dict(step_to_dict(step)) == step

    def test_center_spellings(self):
        assert step_from_dict({"kind": "blow_up", "pivot": "x",
                               "replaced": "y", "new": "z",
                               "center": 3}).center == 3
        assert step_from_dict({"kind": "blow_up", "pivot": "x",
                               "replaced": "y", "new": "z",
                               "center": "-5/10"}).center == Fraction(-1, 2)

    def test_center_defaults_to_zero(self):
        step = step_from_dict({"kind": "blow_up", "pivot": "x",
                               "replaced": "y", "new": "z"})
        assert step.center == 0

    @pytest.mark.parametrize("mangle", [
        lambda d: d.update(center=0.5),
        lambda d: d.update(kind="implode"),
        lambda d: d.update(strict="yes"),
        lambda d: d.update(extra=1),
        lambda d: d.pop("pivot"),
        lambda d: d.update(pivot=7),
        lambda d: d.update(new="x"),
        lambda d: d.update(replaced="x"),
    ])
    def test_malformed_dicts_rejected(self, mangle):
        data = {"kind": "blow_down", "pivot": "x", "replaced": "y",
                "new": "z", "center": "0"}
        mangle(data)
        with pytest.raises(ValueError):
            step_from_dict(data)

    def test_constructor_validation(self):
        with pytest.raises(VariableMismatch):
            TransformStep("blow_up", "x", "y", "x", Fraction(0))
        with pytest.raises(VariableMismatch):
            TransformStep("blow_up", "x", "x", "z", Fraction(0))
        with pytest.raises(VariableMismatch):
            TransformStep("blow_up", "x", "y", "new var", Fraction(0))
        with pytest.raises(ValueError):
            TransformStep("sideways", "x", "y", "z", Fraction(0))


class TestApplyStep:
    def test_blow_down_returns_no_multiplicity(self):
        result, k = apply_step(CIRCLE, down("x", "y", "z", 0))
        assert result == LEMNISCATE and k is None

    def test_blow_up_reports_multiplicity(self):
        result, k = apply_step(LEMNISCATE, up("x", "z", "y", 0))
        assert result == CIRCLE and k == 2

    def test_pre_translate_explodes_an_off_axis_point(self):
        # move (0, 1) of the circle to the origin, then explode there
        result, k = apply_step(CIRCLE, up("x", "y", "w", 0),
                               pre_translate=(0, 1))
        assert k == 1
        assert result == poly_from_text("x w^2+x+2w", "x", "w")
