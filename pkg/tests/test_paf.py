import random
from fractions import Fraction as F

import pytest

from char1.errors import PreconditionError
from char1.paf import PAF, PAFSemifield, convex_split, random_paf

HAT = PAF.affine(1, F(-1, 2)).oplus(PAF.affine(-1, F(1, 2)))  # max(t-1/2, 1/2-t)


def grid(n=200):
    return [F(i, n) for i in range(n + 1)]


def test_eval_examples():
    f = PAF.affine(2, -1)
    assert f.eval(F(1, 2)) == 0
    assert HAT.eval(F(1, 4)) == F(1, 4)
    assert PAF.constant(1).eval(F(7, 13)) == 1


def test_eval_outside_domain():
    with pytest.raises(PreconditionError):
        PAF.affine(1, 0).eval(F(3, 2))


def test_oplus_example_upper_envelope():
    out = PAF.identity().oplus(PAF.affine(-1, 1))
    assert out.breakpoints == (F(0), F(1, 2), F(1))
    assert out.pieces == ((F(-1), F(1)), (F(1), F(0)))
    for t in grid():
        assert out.eval(t) == max(t, 1 - t)


def test_oplus_idempotent_and_crossing():
    f = random_paf(random.Random(5))
    assert f.oplus(f) == f
    g = PAF.constant(0).oplus(PAF.affine(2, -1))
    assert g.breakpoints == (F(0), F(1, 2), F(1))
    for t in grid():
        assert g.eval(t) == max(0, 2 * t - 1)


def test_oplus_domain_mismatch():
    with pytest.raises(PreconditionError):
        PAF.identity(0, 1).oplus(PAF.identity(0, 2))


def test_plus_neg_scale_examples():
    assert PAF.identity() + PAF.affine(-1, 1) == PAF.constant(1)
    m = -HAT
    for t in grid(50):
        assert m.eval(t) == -HAT.eval(t)
    assert PAF.affine(2, 0).scale(F(1, 2)) == PAF.identity()


def test_r_norm_examples():
    assert PAF.affine(2, -1).r_norm() == 1
    assert PAF.constant(1).r_norm() == 1
    assert PAF.constant(0).r_norm() == 0


def test_r_norm_is_pointwise_sup():
    rng = random.Random(11)
    for _ in range(50):
        f = random_paf(rng)
        sample = sorted(set(grid(60)) | set(f.breakpoints))
        assert f.r_norm() == max(abs(f.eval(t)) for t in sample)


def test_weighted_norms_examples():
    assert PAF.identity().weighted_norms() == (F(1), F(1))
    f = PAF.constant(0).oplus(PAF.affine(2, -1))
    assert f.weighted_norms() == (F(1), F(2))
    assert PAF.constant(0).weighted_norms() == (F(0), F(0))


def test_weighted_norms_gauge_by_grid():
    rng = random.Random(3)
    for _ in range(40):
        f = random_paf(rng)
        f = f - PAF.constant(f.eval(0))  # anchor
        gauge, lip = f.weighted_norms()
        sample = sorted(set(grid(48)) | set(f.breakpoints))
        assert gauge == max(abs(f.eval(t)) / t for t in sample if t > 0)
        assert gauge <= lip


def test_weighted_norms_preconditions():
    with pytest.raises(PreconditionError):
        PAF.constant(1).weighted_norms()
    with pytest.raises(PreconditionError):
        PAF.identity(0, 2).weighted_norms()


def test_anchored_gauge_dominated_by_lipschitz():
    rng = random.Random(53)
    for _ in range(500):
        f = random_paf(rng)
        gauge, lip = (f - PAF.constant(f.eval(0))).weighted_norms()
        assert gauge <= lip


def test_anchored_gauge_contracts_under_max_differences():
    rng = random.Random(29)
    for _ in range(120):
        fs = [random_paf(rng) for _ in range(4)]
        f, g, f2, g2 = [h - PAF.constant(h.eval(0)) for h in fs]
        lhs, _ = (f.oplus(g) - f2.oplus(g2)).weighted_norms()
        r1, _ = (f - f2).weighted_norms()
        r2, _ = (g - g2).weighted_norms()
        assert lhs <= max(r1, r2)


def test_lipschitz_seminorm_is_not_max_contractive():
    # the steep ramp saturates against the shallow one: the difference of
    # envelopes can out-slope both input differences
    ramp = PAF.from_samples([(0, 0), (F(1, 4), 0), (F(1, 2), F(5, 2)), (1, F(5, 2))])
    shallow = PAF.from_samples([(0, 0), (F(1, 2), F(1, 2)), (1, F(1, 2))])
    zero = PAF.constant(0)
    _, lip_delta = (ramp.oplus(shallow) - ramp.oplus(zero)).weighted_norms()
    _, lip_rhs = shallow.weighted_norms()
    assert lip_delta == 9 and lip_rhs == 1  # contraction would force <= 1


def test_is_convex_examples():
    assert HAT.is_convex()
    assert not (-HAT).is_convex()
    assert PAF.affine(-3, 7).is_convex()


def test_clamp_examples():
    f = PAF.affine(2, -1)
    out = f.clamp(F(1, 2))
    assert out.breakpoints == (F(0), F(1, 4), F(3, 4), F(1))
    assert out.pieces == ((F(0), F(-1, 2)), (F(2), F(-1)), (F(0), F(1, 2)))
    assert f.clamp(5) == f
    assert f.clamp(0) == PAF.constant(0)
    with pytest.raises(PreconditionError):
        f.clamp(-1)


def test_clamp_agrees_inside_band():
    rng = random.Random(17)
    for _ in range(40):
        f = random_paf(rng)
        c = F(rng.randint(0, 4), rng.randint(1, 3))
        out = f.clamp(c)
        assert out.r_norm() == min(c, f.r_norm())
        for t in grid(40):
            v = f.eval(t)
            if abs(v) <= c:
                assert out.eval(t) == v
            else:
                assert abs(out.eval(t)) == c


def test_leq_matches_pointwise_on_breakpoints():
    rng = random.Random(23)
    ops = PAFSemifield()
    for _ in range(60):
        f, g = random_paf(rng), random_paf(rng)
        pointwise = all(f.eval(t) <= g.eval(t)
                        for t in sorted(set(f.breakpoints) | set(g.breakpoints)))
        assert ops.leq(f, g) == pointwise


def test_restrict_and_compose_affine():
    f = HAT.restrict(F(1, 4), F(3, 4))
    assert f.domain == (F(1, 4), F(3, 4))
    assert f.eval(F(1, 2)) == 0 and f.eval(F(1, 4)) == F(1, 4)
    g = HAT.compose_affine(F(1, 2), 0, 0, 1)  # t -> HAT(t/2)
    assert g.eval(1) == HAT.eval(F(1, 2))
    assert g.eval(0) == HAT.eval(0)
    flipped = HAT.compose_affine(-1, 1, 0, 1)  # t -> HAT(1-t), symmetric
    assert flipped == HAT
    with pytest.raises(PreconditionError):
        HAT.compose_affine(2, 0, 0, 1)


def test_convex_split():
    rng = random.Random(31)
    for _ in range(60):
        f = random_paf(rng)
        g, h = convex_split(f)
        assert g.is_convex() and h.is_convex()
        assert g - h == f


def test_decomposition_reassembles():
    ops = PAFSemifield()
    rng = random.Random(41)
    for _ in range(60):
        f = ops.random(rng)
        pos, neg = ops.decompose(f)
        assert pos - neg == f
        assert ops.leq(ops.zero, pos) and ops.leq(ops.zero, neg)
        for t in grid(24):
            assert pos.eval(t) == max(f.eval(t), 0)


def test_json_roundtrip():
    rng = random.Random(47)
    for _ in range(30):
        f = random_paf(rng)
        assert PAF.from_json(f.to_json()) == f


def test_envelope_ops_dense_grid_oracle():
    rng = random.Random(59)
    pts = grid(120)
    for _ in range(60):
        f, g = random_paf(rng), random_paf(rng)
        s, p, m = f.oplus(g), f + g, f.tropical_min(g)
        sample = sorted(set(pts) | set(s.breakpoints))
        for t in sample:
            fv, gv = f.eval(t), g.eval(t)
            assert s.eval(t) == max(fv, gv)
            assert p.eval(t) == fv + gv
            assert m.eval(t) == min(fv, gv)


def test_compose_affine_fuzz():
    rng = random.Random(61)
    for _ in range(120):
        f = random_paf(rng)
        alpha = F(rng.choice([-1, 1]) * rng.randint(1, 3), rng.randint(1, 3))
        hi2 = min(F(1), F(1) / abs(alpha))
        beta = F(0) if alpha > 0 else -alpha * hi2
        g = f.compose_affine(alpha, beta, 0, hi2)
        for i in range(13):
            t = hi2 * F(i, 12)
            assert g.eval(t) == f.eval(alpha * t + beta)
