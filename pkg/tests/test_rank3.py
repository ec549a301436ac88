from fractions import Fraction as F

import pytest

from ectorsion.curves import Point, ab_isomorphism
from ectorsion.exact_math import rational_sqrt
from ectorsion.rank3 import (DegenerateQuartic, IndependenceFailure, QuarticCurve, SPECS, aux_points,
                             build_rank3, cubic_map, generate_parameters, get_spec, iter_candidates,
                             quartic_to_cubic, solve_match)

Z8, Z26 = get_spec("z8"), get_spec("z2x6")


def test_solve_match_examples():
    assert solve_match(Z8, 1) == [F(29, 6)]
    assert solve_match(Z26, 1) == [F(-1), F(5, 3)]
    assert solve_match(Z8, 2) == []


def test_matching_equation_is_w1_equals_w2():
    # sympy: numerator of w1(r) - w2(s), up to sign
    for spec, want in (
        (Z8, "-r^2 s^2 + 29 r^2 - 10 r s^2 + 120 r s - 290 r + 11 s^2 - 319"),
        (Z26, "r^2 s^2 + 2 r^2 s - 15 r^2 + 2 r s^2 - 4 r s + 10 r + 21 s^2 - 14 s - 35"),
    ):
        for r in (F(2), F(-3, 7), F(5)):
            for s in (F(1, 3), F(4), F(-2, 5)):
                a, b, c = spec.at(r)
                m = a * s * s + b * s + c
                try:
                    diff = spec.w1(r) - spec.w2(s)
                except ZeroDivisionError:
                    continue
                assert (m == 0) == (diff == 0)


def test_discriminant_is_the_quartic_times_a_square():
    assert Z8.s_discriminant() == 4 * Z8.quartic.poly
    assert Z26.s_discriminant() == 64 * Z26.quartic.poly


def test_seeds_on_quartics():
    assert Z8.quartic(1) == 60 ** 2
    assert Z26.quartic(1) == 8 ** 2
    with pytest.raises(ValueError):
        QuarticCurve((1, 0, 0, 0, 1), (1, 1))


@pytest.mark.parametrize("spec", list(SPECS.values()), ids=list(SPECS))
def test_quartic_image_is_the_stated_cubic(spec):
    M, iso = cubic_map(spec)
    assert ab_isomorphism(M.curve, spec.cubic) is not None
    assert M.curve.j_invariant() == spec.cubic.j_invariant()
    for r, t in [spec.quartic.seed, (spec.quartic.seed[0], -spec.quartic.seed[1])]:
        P = M.forward(r, t)
        assert M.curve.on_curve(P)
        assert M.inverse(P) == (r, t)


def test_degenerate_quartics():
    with pytest.raises(DegenerateQuartic):
        quartic_to_cubic(QuarticCurve((1, 2, 1, 0, 0), (1, 2)))  # (r^2 + r)^2
    with pytest.raises(DegenerateQuartic):
        quartic_to_cubic(QuarticCurve((1, 0, -2, 0, 1), (0, 1)))  # (r^2 - 1)^2
    with pytest.raises(DegenerateQuartic):
        quartic_to_cubic(QuarticCurve((1, -2, 4, -6, 3), (-1, 4)))  # (r - 1)^2 (r^2 + 3)


def test_aux_points():
    pts = {P.point: P for P in aux_points(Z8, 200)}
    assert not pts[Point(99, 990)].torsion and pts[Point(99, 990)].height > 0
    assert pts[Point(0, 0)].torsion and pts[Point(144, 0)].torsion
    pts = {P.point: P for P in aux_points(Z26, 200)}
    assert not pts[Point(7, 14)].torsion
    assert {Point(0, 0), Point(8, 0), Point(35, 0)} <= {p for p, a in pts.items() if a.torsion}


def test_candidate_streams():
    z26 = list(_take(iter_candidates(Z26), 4))
    first = z26[0]
    assert first.r == 1 and F(-1) in first.s and first.w == -2
    z8 = next(iter_candidates(Z8))
    assert (z8.r, z8.s, z8.w) == (1, [F(29, 6)], 1)
    assert z8.status.startswith("filtered")


def _take(it, n):
    for _, x in zip(range(n), it):
        yield x


def test_generate_parameters_logs_filtered():
    filtered = []
    out = generate_parameters(Z8, 2, filtered=filtered)
    assert len(out) == 2 and all(c.status == "ok" for c in out)
    assert any(f.r == 1 and f.s == [F(29, 6)] for f in filtered)
    for c in out:
        assert rational_sqrt(Z8.quartic(c.r)) is not None
        assert c.w == Z8.w1(c.r) and all(Z8.w2(s) == c.w for s in c.s)


@pytest.mark.parametrize("kind,tag", [("z8", "Z/8"), ("z2x6", "Z/2xZ/6")])
def test_build_rank3(kind, tag):
    spec = get_spec(kind)
    curves = build_rank3(spec, 3)
    assert len(curves) == 3
    assert len({c.candidate.curve.j_invariant() for c in curves}) == 3
    for c in curves:
        assert c.torsion == tag
        assert c.regulator > 1e-6 and c.regulator - c.error_bound > 1e-6
        assert len(c.candidate.points) == 3
        E = c.candidate.curve
        assert all(E.on_curve(P) for P in c.candidate.points)
        assert c.partner_j_equal is not False


def test_impossible_regulator_threshold():
    with pytest.raises(IndependenceFailure) as info:
        build_rank3(Z26, 1, eps=1e10, max_candidates=8)
    assert info.value.failures
