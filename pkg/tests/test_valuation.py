import random
from fractions import Fraction as F

import pytest

from char1.errors import PreconditionError
from char1.laws import random_circle_section, random_convex_paf
from char1.paf import PAF, random_paf
from char1.valuation import (
    circle_global_sections_are_constant,
    SQRT2,
    ArcSection,
    CirclePAF,
    Quad,
    circle_kink_sum,
    circle_section_valid,
    convexity_criterion,
    extend_valuation,
    germ,
    glue,
    is_local_unit,
    k_defined_check,
    kink,
    local_morphism_check,
    localization_member,
    rational_between,
    restrict_to_arc,
    smooth_neighborhood,
    try_nonconstant_valid_section,
    valuation_at,
)

HAT = PAF.affine(1, F(-1, 2)).oplus(PAF.affine(-1, F(1, 2)))


# -- Q(sqrt 2) -------------------------------------------------------------------


def test_quad_arithmetic():
    x = Quad(F(1), F(1))  # 1 + sqrt2
    y = Quad(F(-1), F(1))
    assert x * y == Quad(F(1))  # (1+s)(−1+s) = s^2 − 1 = 1
    assert x + y == 2 * SQRT2
    assert (x / y) * y == x
    assert SQRT2 * SQRT2 == Quad(F(2))


def test_quad_ordering():
    assert Quad(F(0)) < SQRT2 < Quad(F(3, 2))
    assert Quad(F(7, 5)) < SQRT2 < Quad(F(3, 2))  # 7/5 < sqrt2 < 3/2
    assert Quad(F(-3, 2)) < -SQRT2 < Quad(F(-7, 5))
    assert abs(Quad(F(1)) - SQRT2) == SQRT2 - 1
    assert sorted([SQRT2, Quad(F(1)), Quad(F(17, 12))]) == \
        [Quad(F(1)), SQRT2, Quad(F(17, 12))]


def test_quad_floor_and_between():
    assert SQRT2.floor() == 1
    assert (-SQRT2).floor() == -2
    assert (SQRT2 * 100).floor() == 141
    q = rational_between(SQRT2 - 1, Quad(F(1, 2)))
    assert SQRT2 - 1 < Quad(q) < Quad(F(1, 2))


def test_quad_rationality():
    assert Quad(F(3, 4)).is_rational and not SQRT2.is_rational
    assert Quad(F(3, 4)).to_fraction() == F(3, 4)
    with pytest.raises(PreconditionError):
        SQRT2.to_fraction()


# -- kinks and valuations --------------------------------------------------------


def test_kink_examples():
    assert kink(HAT, F(1, 2)) == 2
    assert kink(HAT, F(1, 4)) == 0
    assert kink(PAF.affine(3, -1), F(1, 2)) == 0
    with pytest.raises(PreconditionError):
        kink(HAT, F(0))


def test_kink_difference_quotient_oracle():
    h = F(1, 8)
    assert (HAT.eval(F(1, 2) - h) + HAT.eval(F(1, 2) + h)) / h == kink(HAT, F(1, 2))


def test_valuation_at_examples():
    f = HAT - PAF.constant(HAT.eval(F(0)))
    assert valuation_at(F(0), f) == 0
    assert valuation_at(F(1, 2), HAT) == 2
    assert valuation_at(F(3, 7), PAF.constant(0)) == 0
    with pytest.raises(PreconditionError):
        valuation_at(F(1, 4), HAT)  # HAT(1/4) != 0


def test_extend_valuation_homogeneity_and_splits():
    assert extend_valuation(F(1, 2), HAT) == 2
    assert extend_valuation(F(1, 2), HAT.scale(3)) == 6
    rng = random.Random(3)
    for _ in range(40):
        f = random_paf(rng)
        x = F(rng.randint(1, 7), 8)
        f0 = f - PAF.constant(f.eval(x))
        from char1.paf import convex_split

        a, b = convex_split(f0)
        c = random_convex_paf(rng)
        assert kink(a + c, x) - kink(b + c, x) == extend_valuation(x, f0)


def test_convexity_criterion_examples():
    assert convexity_criterion(HAT)
    assert not convexity_criterion(-HAT)
    assert convexity_criterion(PAF.affine(-2, 1))


def test_convexity_criterion_oracle_equivalence():
    rng = random.Random(5)
    for _ in range(150):
        f = random_paf(rng)
        assert convexity_criterion(f) == f.is_convex()


def test_localization_member_examples():
    assert localization_member(HAT, PAF.identity(), F(1, 3))
    assert not localization_member(HAT, HAT, F(1, 2))
    assert localization_member(HAT, HAT, F(1, 4))
    assert localization_member(HAT, HAT, F(0))  # endpoint valuations vanish


def test_is_local_unit():
    assert is_local_unit(PAF.identity(), F(1, 2))
    assert not is_local_unit(HAT, F(1, 2))


def test_smooth_neighborhood():
    lo, hi = smooth_neighborhood(HAT, F(1, 4))
    assert (lo, hi) == (F(0), F(1, 2))
    with pytest.raises(PreconditionError):
        smooth_neighborhood(HAT, F(1, 2))
    f = HAT.oplus(PAF.constant(F(1, 4)))  # kinks at 1/4 and 3/4
    lo, hi = smooth_neighborhood(f, F(1, 2))
    assert (lo, hi) == (F(1, 4), F(3, 4))


def test_local_morphism_examples():
    assert local_morphism_check(1, 0, F(1, 2), F(1, 2))
    assert local_morphism_check(F(1, 2), 0, F(1, 4), F(1, 2))
    assert not local_morphism_check(F(1, 2), 0, F(3, 8), F(1, 2))  # points mismatch
    with pytest.raises(PreconditionError):
        local_morphism_check(3, 0, F(3, 4), F(1, 4))  # image leaves the domain


# -- circle sections -------------------------------------------------------------


def test_circle_constant_sections():
    s = CirclePAF.constant(F(5, 3))
    assert circle_section_valid(s) and s.is_constant()
    assert s.eval(F(9, 10)) == Quad(F(5, 3))
    assert s.kink_at(F(0)) == Quad(F(0))


def test_circle_continuity_enforced():
    with pytest.raises(PreconditionError):
        CirclePAF((Quad(F(0)), Quad(F(1, 2))),
                  ((Quad(F(1)), Quad(F(0))), (Quad(F(1)), Quad(F(1)))))


def test_circle_single_arc_must_be_flat():
    with pytest.raises(PreconditionError):
        CirclePAF((Quad(F(0)),), ((Quad(F(1)), Quad(F(0))),))


def test_circle_pm_kink_pair_is_invalid():
    s = CirclePAF.from_kinks(F(0), F(-1, 2), [(F(0), F(0)), (F(1, 2), F(1))])
    assert not circle_section_valid(s)
    assert circle_kink_sum(s) == Quad(F(0))
    kinks = dict((bp.a, k) for bp, k in s.kinks())
    assert kinks[F(1, 2)] == Quad(F(1)) and kinks[F(0)] == Quad(F(-1))


def test_circle_eval_wraps():
    s = CirclePAF.from_kinks(F(0), F(-1, 2), [(F(1, 4), F(0)), (F(3, 4), F(1))])
    assert s.eval(F(1, 4)) == s.eval(F(5, 4))
    assert circle_kink_sum(s) == Quad(F(0))


def test_no_nonconstant_valid_sections():
    rng = random.Random(9)
    for _ in range(80):
        spots = sorted(rng.sample(range(0, 10), rng.randint(1, 3)))
        kinks = [(F(s, 10), F(rng.randint(0, 3))) for s in spots]
        built = try_nonconstant_valid_section(kinks)
        assert built is None or built.is_constant()
    for _ in range(80):
        cand = random_circle_section(rng)
        if cand is not None and circle_section_valid(cand):
            assert cand.is_constant()


def test_global_section_property():
    assert circle_global_sections_are_constant(random.Random(15), trials=100)


def test_circle_restrict_and_glue_roundtrip():
    s = CirclePAF.from_kinks(F(0), F(-1), [(F(0), F(0)), (F(1, 3), F(1)), (F(2, 3), F(1))])
    assert circle_kink_sum(s) == Quad(F(0))
    left = restrict_to_arc(s, F(0), F(3, 5))
    right = restrict_to_arc(s, F(1, 2), F(11, 10))  # wraps past 1
    glued = glue([left, right])
    assert glued == s
    for t in (F(0), F(1, 4), F(1, 2), F(7, 10), F(99, 100)):
        assert glued.eval(t) == s.eval(t)


def test_glue_requires_cover_and_agreement():
    s = CirclePAF.from_kinks(F(0), F(-1), [(F(0), F(0)), (F(1, 3), F(1)), (F(2, 3), F(1))])
    left = restrict_to_arc(s, F(0), F(1, 2))
    with pytest.raises(PreconditionError):
        glue([left])  # gap over (1/2, 1)
    other = restrict_to_arc(CirclePAF.constant(F(7)), F(1, 4), F(11, 10))
    with pytest.raises(PreconditionError):
        glue([left, other])  # disagree on the overlap


def test_germ_reads_both_sides():
    s = CirclePAF.from_kinks(F(0), F(-1), [(F(0), F(0)), (F(1, 3), F(1)), (F(2, 3), F(1))])
    left, right = germ(s, F(1, 3))
    assert right[0] - left[0] == s.kink_at(F(1, 3))
    mid_l, mid_r = germ(s, F(1, 6))
    assert mid_l == mid_r


def test_germ_at_wrap_breakpoint():
    s = CirclePAF.from_kinks(F(0), F(-1, 2), [(F(1, 4), F(0)), (F(3, 4), F(1))])
    x = s.breakpoints[0]
    left, right = germ(s, x)
    assert right[0] - left[0] == s.kink_at(x)


def test_irrational_breakpoints_stay_exact():
    s0 = SQRT2 - 1  # in (0, 1)
    a0 = (Quad(F(1)) - s0) / s0
    s = CirclePAF((Quad(F(0)), s0),
                  ((a0, Quad(F(0))), (Quad(F(-1)), Quad(F(1)))))
    assert not s.is_constant()
    assert s.eval(s0) == Quad(F(2)) - SQRT2
    assert s.kink_at(s0) == Quad(F(-1)) - a0


def test_k_defined_check_examples():
    s0 = SQRT2 - 1
    assert k_defined_check(s0, (F(2), F(3)), (F(2), F(3)))
    assert k_defined_check(F(1, 2), (F(1), F(0)), (F(2), F(-1, 2)))
    assert not k_defined_check(F(1, 2), (F(2), F(-1, 2)), (F(1), F(0)))  # kink -1
    with pytest.raises(PreconditionError):
        k_defined_check(s0, (F(1), F(0)), (F(2), F(0)))


def test_k_defined_rational_junction_forced_at_irrational_points():
    # continuity with rational coefficients at an irrational point pins
    # both pieces: unequal rational pieces can never meet there
    rng = random.Random(11)
    for _ in range(60):
        a, b = F(rng.randint(-5, 5)), F(rng.randint(-5, 5), rng.randint(1, 3))
        a2 = a + F(rng.randint(1, 4))
        s0 = Quad(F(rng.randint(0, 1)), F(1, rng.randint(2, 5)))
        lhs = s0 * a + b
        b2_exact = lhs - s0 * a2  # irrational: not a legal rational intercept
        assert not b2_exact.is_rational


def test_rational_points_dense_between_breakpoints():
    s0, s1 = SQRT2 - 1, Quad(F(9, 10))
    q = rational_between(s0, s1)
    assert s0 < Quad(q) < s1


def test_restrict_glue_roundtrip_fuzz():
    rng = random.Random(71)
    done = 0
    while done < 60:
        spots = sorted(rng.sample(range(1, 12), rng.randint(1, 3)))
        kinks = [(F(s, 12), F(rng.randint(-3, 3), rng.randint(1, 2))) for s in spots]
        try:
            s = CirclePAF.from_kinks(F(rng.randint(-2, 2)), F(rng.randint(-2, 2)), kinks)
        except PreconditionError:
            continue
        done += 1
        start = F(rng.randint(0, 5), 7)
        width = F(rng.randint(4, 6), 7)
        first = restrict_to_arc(s, start, start + width)
        second_start = start + width - F(1, 14)
        second_start -= second_start.floor() if isinstance(second_start, Quad) else 0
        if second_start >= 1:
            second_start -= 1
        second = restrict_to_arc(s, second_start,
                                 second_start + (F(1) - width) + F(1, 7))
        assert glue([first, second]) == s


def test_germ_kinks_everywhere():
    rng = random.Random(73)
    done = 0
    while done < 40:
        spots = sorted(rng.sample(range(1, 10), rng.randint(1, 3)))
        kinks = [(F(s, 10), F(rng.randint(-3, 3))) for s in spots]
        try:
            s = CirclePAF.from_kinks(F(1), F(-1, 2), kinks)
        except PreconditionError:
            continue
        done += 1
        for bp, k in s.kinks():
            left, right = germ(s, bp)
            assert right[0] - left[0] == k
