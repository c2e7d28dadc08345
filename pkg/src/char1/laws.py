"""Seeded property suites with brute-force oracles.

Each suite draws random elements from small exact grids, checks the
algebraic laws and norm identities with exact equality (tolerance zero),
and reports pass/fail counts plus the first counterexample verbatim.
The CLI's laws-run verb and the acceptance tests both run these.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import congruence as cg
from . import convex as cx
from . import spectrum as sp
from . import valuation as vl
from .paf import PAF, PAFSemifield, convex_split, random_paf
from .semifield import SCALAR
from .errors import PreconditionError


@dataclass
class SuiteReport:
    suite: str
    cases: int
    failed: int
    first_counterexample: str | None

    @property
    def passed(self) -> int:
        return self.cases - self.failed

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.cases > 0

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "cases": self.cases,
            "passed": self.passed,
            "failed": self.failed,
            "first_counterexample": self.first_counterexample,
        }


class _Tally:
    def __init__(self, name):
        self.name = name
        self.cases = 0
        self.failed = 0
        self.first = None

    def check(self, ok: bool, label: str, *args):
        self.cases += 1
        if not ok:
            self.failed += 1
            if self.first is None:
                shown = ", ".join(repr(a) for a in args)
                self.first = f"{label}: {shown}" if shown else label

    def report(self) -> SuiteReport:
        return SuiteReport(self.name, self.cases, self.failed, self.first)


# -- extra generators -----------------------------------------------------------


def random_convex_paf(rng, lo=0, hi=1, max_cuts=3) -> PAF:
    lo, hi = Fraction(lo), Fraction(hi)
    k = rng.randint(0, max_cuts)
    den = rng.randint(2, 6)
    cuts = sorted(rng.sample(range(1, 2 * den), min(k, 2 * den - 1)))
    ts = [lo] + [lo + (hi - lo) * Fraction(c, 2 * den) for c in cuts] + [hi]
    slopes = sorted(Fraction(rng.randint(-6, 6), rng.randint(1, 3))
                    for _ in range(len(ts) - 1))
    samples = [(ts[0], Fraction(rng.randint(-4, 4), rng.randint(1, 3)))]
    for (u, v), a in zip(zip(ts, ts[1:]), slopes):
        samples.append((v, samples[-1][1] + a * (v - u)))
    return PAF.from_samples(samples)


def random_closed_set(rng, lo=0, hi=1, max_parts=3) -> cg.ClosedSet:
    lo, hi = Fraction(lo), Fraction(hi)
    den = rng.randint(4, 8)
    k = rng.randint(1, max_parts)
    cuts = sorted(rng.sample(range(0, den + 1), min(2 * k, den + 1)))
    ivs = []
    for i in range(0, len(cuts) - 1, 2):
        a = lo + (hi - lo) * Fraction(cuts[i], den)
        b = lo + (hi - lo) * Fraction(cuts[i + 1], den)
        if rng.random() < 0.25:
            b = a  # squeeze to a point now and then
        ivs.append((a, b))
    return cg.ClosedSet.of(*ivs) if ivs else cg.ClosedSet.point(lo)


def random_interior_point(rng, den_max=8) -> Fraction:
    den = rng.randint(2, den_max)
    return Fraction(rng.randint(1, den - 1), den)


def random_circle_section(rng) -> vl.CirclePAF | None:
    """A random continuous circle section, or None when the random data
    does not close up around the wrap."""
    den = rng.randint(3, 8)
    spots = sorted(rng.sample(range(0, den), rng.randint(1, 3)))
    kinks = [(Fraction(s, den), Fraction(rng.randint(-4, 4), rng.randint(1, 2)))
             for s in spots]
    try:
        return vl.CirclePAF.from_kinks(
            Fraction(rng.randint(-3, 3), rng.randint(1, 2)),
            Fraction(rng.randint(-3, 3), rng.randint(1, 2)),
            kinks,
        )
    except PreconditionError:
        return None


_INSTANCES = {
    "scalar": lambda: SCALAR,
    "paf": lambda: PAFSemifield(0, 1),
    "convex-fraction": lambda: cx.PolygonFractionSemifield(),
}


# -- suites ----------------------------------------------------------------------


def run_semifield_suite(seed=0, cases=1000) -> SuiteReport:
    """Idempotent-sum laws, distributivity, perfectness and the n-th power
    identity, on the scalar, piecewise-affine and convex-fraction models."""
    tally = _Tally("semifield")
    for label, make in _INSTANCES.items():
        ops = make()
        rng = random.Random(f"{seed}:{label}")
        for _ in range(cases):
            x, y, z = ops.random(rng), ops.random(rng), ops.random(rng)
            ok = (
                ops.eq(ops.oplus(x, y), ops.oplus(y, x))
                and ops.eq(ops.oplus(ops.oplus(x, y), z), ops.oplus(x, ops.oplus(y, z)))
                and ops.eq(ops.oplus(x, x), x)
                and ops.eq(ops.plus(x, y), ops.plus(y, x))
                and ops.eq(ops.plus(ops.plus(x, y), z), ops.plus(x, ops.plus(y, z)))
                and ops.eq(ops.plus(x, ops.zero), x)
                and ops.eq(ops.plus(x, ops.neg(x)), ops.zero)
                and ops.eq(ops.plus(x, ops.oplus(y, z)),
                           ops.oplus(ops.plus(x, y), ops.plus(x, z)))
            )
            tally.check(ok, f"{label}: semifield law", x, y, z)
            n = rng.randint(1, 5)
            tally.check(ops.power_identity_check(n, x, y),
                        f"{label}: power identity n={n}", x, y)
            m = rng.randint(1, 4)
            tally.check(ops.eq(ops.div_by_nat(m, ops.nat_mul(m, x)), x)
                        and ops.eq(ops.nat_mul(m, ops.div_by_nat(m, x)), x),
                        f"{label}: perfectness n={m}", x)
    return tally.report()


def run_decomposition_suite(seed=0, cases=1000) -> SuiteReport:
    """Positive/negative part reassembly and the max-plus-min identity."""
    tally = _Tally("decomposition")
    for label in ("scalar", "paf", "convex-fraction"):
        ops = _INSTANCES[label]()
        rng = random.Random(f"{seed}:{label}")
        rounds = cases if label != "convex-fraction" else max(1, cases // 5)
        for _ in range(rounds):
            x, y = ops.random(rng), ops.random(rng)
            pos, neg = ops.decompose(x)
            tally.check(
                ops.eq(ops.minus(pos, neg), x)
                and ops.leq(ops.zero, pos) and ops.leq(ops.zero, neg),
                f"{label}: decomposition", x)
            tally.check(
                ops.eq(ops.plus(x, y),
                       ops.plus(ops.oplus(x, y), ops.tropical_min(x, y))),
                f"{label}: sum = max + min", x, y)
    return tally.report()


def run_norm_suite(seed=0, cases=1000) -> SuiteReport:
    """Unit norm, subadditivity, homogeneity, the ultrametric inequality,
    the spectral split, and order monotonicity, all exact."""
    tally = _Tally("norm")
    for label in ("scalar", "paf", "convex-fraction"):
        ops = _INSTANCES[label]()
        rng = random.Random(f"{seed}:{label}")
        tally.check(ops.r_norm(ops.unit) == 1, f"{label}: r(E) = 1")
        tally.check(ops.r_norm(ops.zero) == 0, f"{label}: r(0) = 0")
        rounds = cases if label != "convex-fraction" else max(1, cases // 5)
        for _ in range(rounds):
            x, y = ops.random(rng), ops.random(rng)
            x2, y2 = ops.random(rng), ops.random(rng)
            q = Fraction(rng.randint(-12, 12), rng.randint(1, 6))
            tally.check(ops.r_norm(ops.plus(x, y)) <= ops.r_norm(x) + ops.r_norm(y),
                        f"{label}: subadditivity", x, y)
            tally.check(ops.r_norm(ops.scale(q, x)) == abs(q) * ops.r_norm(x),
                        f"{label}: homogeneity", q, x)
            lhs = ops.r_norm(ops.minus(ops.oplus(x, y), ops.oplus(x2, y2)))
            rhs = max(ops.r_norm(ops.minus(x, x2)), ops.r_norm(ops.minus(y, y2)))
            tally.check(lhs <= rhs, f"{label}: ultrametric", x, y, x2, y2)
            tally.check(
                ops.r_norm(x) == max(ops.r_norm(ops.pos_part(x)),
                                     ops.r_norm(ops.neg_part(x))),
                f"{label}: spectral split", x)
            # order monotonicity on the constructed pair x <= x oplus y
            big = ops.oplus(x, y)
            t = Fraction(rng.randint(1, 6), rng.randint(1, 4))
            tally.check(
                ops.leq(ops.plus(x, y2), ops.plus(big, y2))
                and ops.leq(ops.oplus(x, y2), ops.oplus(big, y2))
                and ops.leq(ops.scale(t, x), ops.scale(t, big)),
                f"{label}: order monotonicity", x, y)
            pos = ops.pos_part(x)
            t2 = t + Fraction(rng.randint(0, 4), 2)
            tally.check(ops.leq(ops.scale(t, pos), ops.scale(t2, pos)),
                        f"{label}: scaling monotonicity", t, t2, x)
    return tally.report()


def run_convex_suite(seed=0, cases=200) -> SuiteReport:
    """Support-function isomorphism, dual-norm identity, cancellativity,
    symmetry closure, and the flagged euclidean float mode."""
    tally = _Tally("convex")
    rng = random.Random(seed)
    unit = cx.Polygon.square()
    pole = cx.polar(unit)
    for _ in range(cases):
        a, b = cx.random_polygon(rng), cx.random_polygon(rng)
        union, total = cx.hull_union(a, b), cx.minkowski(a, b)
        for _ in range(200):
            psi = cx.random_direction(rng).as_pair()
            if union.support(psi) != max(a.support(psi), b.support(psi)):
                tally.check(False, "support of hull-union", a, b, psi)
                break
            if total.support(psi) != a.support(psi) + b.support(psi):
                tally.check(False, "support of minkowski sum", a, b, psi)
                break
        else:
            tally.check(True, "support isomorphism")
        c = cx.random_polygon(rng)
        tally.check(cx.hull_union(a, a) == a, "idempotent hull-union", a)
        tally.check(cx.minkowski(a, cx.hull_union(b, c))
                    == cx.hull_union(cx.minkowski(a, b), cx.minkowski(a, c)),
                    "distributivity", a, b, c)
        if cx.minkowski(a, c) == cx.minkowski(b, c):
            tally.check(a == b, "cancellativity", a, b, c)
        sym = cx.i_symmetrize(a)
        tally.check(cx.i_invariant(sym), "symmetrized body is i-invariant", a)
        if cx.i_invariant(a):
            tally.check(cx.i_symmetrize(a) == a, "i-invariant fixpoint", a)
    for _ in range(500):
        a = cx.random_polygon(rng)
        dual = max(a.support(v) for v in pole.vertices)
        tally.check(cx.r_norm_body(a, unit) == dual, "dual norm identity", a)
        approx = cx.r_norm_euclidean(a)
        brute = max(math.hypot(float(x), float(y)) for x, y in a.vertices)
        tally.check(abs(approx - brute) <= 1e-9, "euclidean mode", a)
    return tally.report()


def run_character_suite(seed=0, cases=1000, attain_cases=None) -> SuiteReport:
    """Character axioms, the norm bound, exact norm attainment, and
    separation of distinct characters."""
    if attain_cases is None:
        attain_cases = max(1, cases // 2)
    tally = _Tally("character")
    rng = random.Random(seed)
    paf_ops = PAFSemifield(0, 1)
    unit = cx.Polygon.square()
    for _ in range(cases):
        f, g = paf_ops.random(rng), paf_ops.random(rng)
        phi = sp.PointEval(Fraction(rng.randint(0, 8), 8))
        ok = (
            sp.apply_char(phi, f.oplus(g)) == max(sp.apply_char(phi, f),
                                                  sp.apply_char(phi, g))
            and sp.apply_char(phi, f + g) == sp.apply_char(phi, f) + sp.apply_char(phi, g)
            and sp.apply_char(phi, paf_ops.unit) == 1
            and abs(sp.apply_char(phi, f)) <= f.r_norm()
        )
        tally.check(ok, "point-character axioms", phi, f, g)
        q = Fraction(rng.randint(-8, 8), rng.randint(1, 4))
        tally.check(sp.apply_char(phi, f.scale(q)) == q * sp.apply_char(phi, f),
                    "character homogeneity", phi, q, f)
        tally.check(sp.apply_char(phi, f) <= sp.apply_char(phi, f.oplus(g)),
                    "character monotonicity", phi, f, g)

        a, b = cx.random_polygon(rng), cx.random_polygon(rng)
        psi = sp.SupportDir(cx.random_direction(rng), unit)
        ok = (
            sp.apply_char(psi, cx.hull_union(a, b))
            == max(sp.apply_char(psi, a), sp.apply_char(psi, b))
            and sp.apply_char(psi, cx.minkowski(a, b))
            == sp.apply_char(psi, a) + sp.apply_char(psi, b)
            and sp.apply_char(psi, unit) == 1
        )
        tally.check(ok, "direction-character axioms", psi, a, b)

    for _ in range(attain_cases):
        f = paf_ops.random(rng)
        if f.r_norm() == 0:
            f = f + PAF.constant(Fraction(rng.randint(1, 3)), 0, 1)
        phi = sp.attain_norm(f)
        tally.check(abs(sp.apply_char(phi, f)) == f.r_norm(), "norm attainment", f)
        peak = f.r_norm()
        samples_ok = all(
            abs(sp.apply_char(sp.PointEval(Fraction(rng.randint(0, 24), 24)), f)) <= peak
            for _ in range(200))
        tally.check(samples_ok, "no character exceeds the norm", f)

        a = cx.random_polygon(rng)
        if a.dim == 0:
            a = cx.Polygon.hull([(0, 0), (1, rng.randint(0, 2))])
        psi = sp.attain_norm(a, unit)
        tally.check(abs(sp.apply_char(psi, a)) == cx.r_norm_body(a, unit),
                    "convex norm attainment", a)

    for _ in range(200):
        t1 = Fraction(rng.randint(0, 12), 12)
        t2 = Fraction(rng.randint(0, 12), 12)
        if t1 != t2:
            z = sp.separate(sp.PointEval(t1), sp.PointEval(t2))
            tally.check(z.eval(t1) != z.eval(t2), "separation of points", t1, t2)
        d1, d2 = cx.random_direction(rng), cx.random_direction(rng)
        if d1 != d2:
            p1, p2 = sp.SupportDir(d1, unit), sp.SupportDir(d2, unit)
            z = sp.separate(p1, p2)
            tally.check(sp.apply_char(p1, z) != sp.apply_char(p2, z),
                        "separation of directions", d1, d2)
    return tally.report()


def run_congruence_suite(seed=0, cases=500) -> SuiteReport:
    """Congruence compatibility, the sandwich rule, quotient-norm equality
    with its constructive representative, lattice/Zariski laws, and the
    extension to fraction pairs."""
    tally = _Tally("congruence")
    rng = random.Random(seed)
    paf_ops = PAFSemifield(0, 1)
    zero = PAF.constant(0, 0, 1)
    for _ in range(cases):
        k = random_closed_set(rng)
        r = cg.RestrictionCongruence(k)
        f, h = paf_ops.random(rng), paf_ops.random(rng)
        g = f + cg.cutoff(paf_ops.random(rng), k)
        tally.check(cg.related(r, f, g), "constructed pair is congruent", k, f, g)
        tally.check(cg.related(r, f + h, g + h) and cg.related(r, f.oplus(h), g.oplus(h))
                    and cg.related(r, -f, -g),
                    "congruence compatibility", k, f, g, h)
        tally.check(cg.related(r, f, g) == cg.class_of_zero_contains(r, f - g),
                    "difference lies in the zero class", k, f, g)

        # sandwich: a <= b <= c with a, c in the zero class
        a = -(cg.cutoff(paf_ops.random(rng), k).abs())
        c = cg.cutoff(paf_ops.random(rng), k).abs()
        b = c.tropical_min(a.oplus(paf_ops.random(rng)))
        tally.check(cg.sandwich(cg.RestrictionCongruence(k), a, b, c),
                    "sandwich absorption", k, a, b, c)

        # quotient norm and the clamped representative
        qn = cg.quotient_norm(f, k)
        rep = cg.min_representative(f, k)
        tally.check(cg.related(r, rep, f) and rep.r_norm() == qn,
                    "minimal representative", k, f)
        rival = f + cg.cutoff(paf_ops.random(rng), k)
        tally.check(rival.r_norm() >= qn, "no representative beats the quotient norm",
                    k, f, rival)

        # quotient order witness, both directions: high >= f on k but not
        # necessarily off it, so the witness is genuinely needed
        high = f.oplus(g) + cg.cutoff(paf_ops.random(rng), k)
        w = cg.order_witness(f, high, k)
        tally.check(w is not None and cg.class_of_zero_contains(r, w)
                    and f.oplus(high + w) == high + w,
                    "order witness exists", k, f, g)
        if w is not None:
            tally.check(cg.related(r, f.oplus(high), high),
                        "witness implies quotient order", k, f, g)

        # lattice and Zariski laws
        k2 = random_closed_set(rng)
        r2 = cg.RestrictionCongruence(k2)
        tally.check(cg.zariski_laws(r, r2), "Zariski laws", k, k2)
        tally.check(cg.join(r, r).k == k and cg.meet(r, r).k == k, "lattice idempotency", k)

        # constructive splitting along the join
        f0 = cg.cutoff(paf_ops.random(rng), cg.join(r, r2).k)
        f1, f2 = cg.split_vanishing(f0, r, r2)
        tally.check(cg.related(r, f1, zero) and cg.related(r2, f2, zero)
                    and f1 + f2 == f0,
                    "join splitting", k, k2, f0)

        # extension to fraction pairs over convex functions
        A, B = random_convex_paf(rng), random_convex_paf(rng)
        C = random_convex_paf(rng)
        fr = cg.extend_to_fractions(r)
        tally.check(fr.related((A, B), (A + C, B + C)),
                    "fraction re-representation", k, A, B, C)
        tally.check(fr.related((A, zero), (B, zero)) == cg.related(r, A, B),
                    "fraction extension restricts back", k, A, B)
    return tally.report()


def run_valuation_suite(seed=0, cases=500, paf_cases=None, circle_cases=None) -> SuiteReport:
    """Valuation laws, the convexity criterion against slope monotonicity,
    locality, circle sections, and the quadratic-point junction check."""
    if paf_cases is None:
        paf_cases = 2 * cases
    if circle_cases is None:
        circle_cases = cases
    tally = _Tally("valuation")
    rng = random.Random(seed)
    paf_ops = PAFSemifield(0, 1)
    for _ in range(cases):
        x0 = random_interior_point(rng)
        p, q = paf_ops.random(rng), paf_ops.random(rng)
        f = p - PAF.constant(p.eval(x0), 0, 1)
        g = q - PAF.constant(q.eval(x0), 0, 1)
        vf, vg = vl.extend_valuation(x0, f), vl.extend_valuation(x0, g)
        tally.check(vl.extend_valuation(x0, f + g) == vf + vg,
                    "valuation additivity", x0, p, q)
        tally.check(max(vf, vg) <= vl.extend_valuation(x0, f.oplus(g)),
                    "valuation superadditivity", x0, p, q)
        t = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
        tally.check(vl.extend_valuation(x0, f.scale(t)) == t * vf,
                    "valuation homogeneity", x0, t, p)

        # independence of the convex decomposition
        pos, negp = convex_split(f)
        extra = random_convex_paf(rng)
        lhs = vl.kink(pos + extra, x0) - vl.kink(negp + extra, x0)
        tally.check(lhs == vl.kink(f, x0), "split independence", x0, p)

        # difference-quotient oracle for the kink
        gaps = [abs(t - x0) for t in f.breakpoints if t != x0]
        h = min(gaps + [x0, 1 - x0]) / 2
        if h > 0:
            quotient = (f.eval(x0 - h) + f.eval(x0 + h)) / h
            tally.check(quotient == vl.kink(f, x0), "difference quotient", x0, p, h)

        # locality of the kink-free condition
        free = vl.smooth_neighborhood(p, x0) if vl.kink(p, x0) == 0 else None
        if free is not None:
            lo, hi = free
            for _ in range(5):
                span = hi - lo
                xs = lo + span * Fraction(rng.randint(1, 7), 8)
                tally.check(vl.is_local_unit(p, xs), "kink-free neighborhood", x0, p, xs)

        # local morphisms from affine pullbacks
        alpha = Fraction(rng.randint(1, 4), 4)
        beta = Fraction(rng.randint(0, 4), 8)
        if alpha + beta <= 1:
            x_dst = random_interior_point(rng)
            x_src = alpha * x_dst + beta
            tally.check(vl.local_morphism_check(alpha, beta, x_src, x_dst),
                        "affine pullbacks are local morphisms", alpha, beta, x_dst)

    for _ in range(paf_cases):
        f = paf_ops.random(rng)
        tally.check(vl.convexity_criterion(f) == f.is_convex(),
                    "convexity criterion equals slope monotonicity", f)

    valid_seen = 0
    while valid_seen < circle_cases:
        s = vl.CirclePAF.constant(Fraction(rng.randint(-6, 6), rng.randint(1, 3)))
        tally.check(vl.circle_section_valid(s) and s.is_constant(),
                    "constants are valid sections", s)
        valid_seen += 1
        cand = random_circle_section(rng)
        if cand is not None:
            tally.check(vl.circle_kink_sum(cand) == 0, "kinks telescope", cand)
            if vl.circle_section_valid(cand):
                tally.check(cand.is_constant(), "valid sections are constant", cand)
        spots = sorted(rng.sample(range(1, 12), rng.randint(1, 3)))
        kinks = [(Fraction(s_, 12), Fraction(rng.randint(0, 3))) for s_ in spots]
        if any(k > 0 for _, k in kinks):
            built = vl.try_nonconstant_valid_section(kinks)
            tally.check(built is None or built.is_constant(),
                        "no nonconstant valid section", kinks)
    tally.check(vl.circle_global_sections_are_constant(rng, trials=50),
                "global-section property")

    for _ in range(100):
        while True:
            p0 = Fraction(rng.randint(-2, 2), rng.randint(1, 3))
            q0 = Fraction(rng.randint(1, 2), rng.randint(1, 4))
            s0 = vl.Quad(p0, q0)
            if vl.Quad(Fraction(0)) < s0 < vl.Quad(Fraction(1)):
                break
        aa = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        bb = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        tally.check(vl.k_defined_check(s0, (aa, bb), (aa, bb)),
                    "rational junctions cannot kink at irrational points", s0, aa, bb)
        aa2 = aa + Fraction(rng.randint(1, 3))
        try:
            vl.k_defined_check(s0, (aa, bb), (aa2, bb))
            tally.check(False, "discontinuous junction accepted", s0, aa, aa2)
        except PreconditionError:
            tally.check(True, "discontinuous junction rejected")
    return tally.report()


SUITES = {
    "semifield": run_semifield_suite,
    "decomposition": run_decomposition_suite,
    "norm": run_norm_suite,
    "convex": run_convex_suite,
    "character": run_character_suite,
    "congruence": run_congruence_suite,
    "valuation": run_valuation_suite,
}


def run_suite(name: str, seed=0, cases=None) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    kwargs = {"seed": seed}
    if cases is not None:
        kwargs["cases"] = cases
    return SUITES[name](**kwargs)
