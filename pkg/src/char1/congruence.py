"""Restriction congruences on the piecewise-affine semifield.

Two functions are congruent when they agree on a fixed closed subset K1
of the domain; the class of zero is exactly the functions vanishing on
K1.  Restriction to a closed set is the only first-class congruence here:
single-point restrictions stand in for the maximal congruences, and the
quotient through one of them is evaluation at the point.

The quotient norm has a constructive minimal representative: clamping a
function to its maximum modulus over K1 keeps it congruent and realizes
the infimum of the norm over the class exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError, SchemaError
from .paf import PAF
from .scalars import fmt_rat, parse_rat

Interval = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class ClosedSet:
    """A finite union of disjoint closed intervals (points allowed)."""

    intervals: tuple[Interval, ...]

    def __post_init__(self):
        ivs = sorted((Fraction(a), Fraction(b)) for a, b in self.intervals)
        if any(a > b for a, b in ivs):
            raise PreconditionError("intervals must satisfy a <= b")
        merged: list[list[Fraction]] = []
        for a, b in ivs:
            if merged and a <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], b)
            else:
                merged.append([a, b])
        object.__setattr__(self, "intervals", tuple((a, b) for a, b in merged))

    @classmethod
    def of(cls, *intervals) -> "ClosedSet":
        return cls(tuple((Fraction(a), Fraction(b)) for a, b in intervals))

    @classmethod
    def point(cls, t) -> "ClosedSet":
        return cls.of((t, t))

    @classmethod
    def empty(cls) -> "ClosedSet":
        return cls(())

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    def contains(self, t) -> bool:
        t = Fraction(t)
        return any(a <= t <= b for a, b in self.intervals)

    def union(self, other: "ClosedSet") -> "ClosedSet":
        return ClosedSet(self.intervals + other.intervals)

    def intersect(self, other: "ClosedSet") -> "ClosedSet":
        out = []
        for a, b in self.intervals:
            for c, d in other.intervals:
                lo, hi = max(a, c), min(b, d)
                if lo <= hi:
                    out.append((lo, hi))
        return ClosedSet(tuple(out))

    def within(self, lo, hi) -> bool:
        return all(Fraction(lo) <= a and b <= Fraction(hi) for a, b in self.intervals)

    def to_json(self) -> dict:
        return {"intervals": [[fmt_rat(a), fmt_rat(b)] for a, b in self.intervals]}

    @classmethod
    def from_json(cls, data) -> "ClosedSet":
        try:
            ivs = tuple((parse_rat(a), parse_rat(b)) for a, b in data["intervals"])
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad closed set: {exc}") from None
        try:
            return cls(ivs)
        except PreconditionError as exc:
            raise SchemaError(str(exc)) from None


@dataclass(frozen=True)
class RestrictionCongruence:
    """Agreement on a closed subset of the domain.

    The empty set is allowed and flagged: it is the trivial congruence
    relating everything.
    """

    k: ClosedSet

    @property
    def is_trivial(self) -> bool:
        return self.k.is_empty


def _check_ambient(r: RestrictionCongruence, f: PAF):
    if not r.k.within(f.lo, f.hi):
        raise PreconditionError("congruence set leaves the function's domain")


def related(r: RestrictionCongruence, f: PAF, g: PAF) -> bool:
    """Does f agree with g on the restriction set?

    The difference is affine between its breakpoints, so vanishing at the
    interval endpoints and at every interior breakpoint is equivalent to
    vanishing identically on the interval.
    """
    if r.is_trivial:
        return True
    _check_ambient(r, f)
    h = f - g
    for a, b in r.k.intervals:
        if h.eval(a) != 0 or h.eval(b) != 0:
            return False
        if any(h.eval(t) != 0 for t in h.breakpoints if a < t < b):
            return False
    return True


def class_of_zero_contains(r: RestrictionCongruence, f: PAF) -> bool:
    return related(r, f, PAF.constant(0, f.lo, f.hi))


def sandwich(r: RestrictionCongruence, a: PAF, b: PAF, c: PAF) -> bool:
    """Membership of the middle term in the class of zero, given a <= b <= c.

    When a and c lie in the class of zero, the order absorbs b into it as
    well, so the result is then always True.
    """
    if not a.oplus(b) == b or not b.oplus(c) == c:
        raise PreconditionError("sandwich requires a <= b <= c")
    return class_of_zero_contains(r, b)


def quotient_norm(f: PAF, k: ClosedSet) -> Fraction:
    """Largest |f| over the closed set: the norm of the class of f."""
    if k.is_empty:
        raise PreconditionError("quotient norm needs a nonempty restriction set")
    if not k.within(f.lo, f.hi):
        raise PreconditionError("restriction set leaves the function's domain")
    best = Fraction(0)
    for a, b in k.intervals:
        pts = [a, b] + [t for t in f.breakpoints if a < t < b]
        best = max(best, max(abs(f.eval(t)) for t in pts))
    return best


def min_representative(f: PAF, k: ClosedSet) -> PAF:
    """The congruent function of least norm: clamp at the quotient norm."""
    return f.clamp(quotient_norm(f, k))


def join(r1: RestrictionCongruence, r2: RestrictionCongruence) -> RestrictionCongruence:
    """Smallest congruence above both: agreement on the intersection."""
    return RestrictionCongruence(r1.k.intersect(r2.k))


def meet(r1: RestrictionCongruence, r2: RestrictionCongruence) -> RestrictionCongruence:
    """Largest congruence below both: agreement on the union."""
    return RestrictionCongruence(r1.k.union(r2.k))


def zariski_V(r: RestrictionCongruence) -> ClosedSet:
    """Point characters factoring through the quotient: exactly K1."""
    return r.k


def zariski_laws(r1: RestrictionCongruence, r2: RestrictionCongruence) -> bool:
    """V turns meet into union and join into intersection, exactly."""
    return (zariski_V(meet(r1, r2)) == zariski_V(r1).union(zariski_V(r2))
            and zariski_V(join(r1, r2)) == zariski_V(r1).intersect(zariski_V(r2)))


# -- quotient order and decomposition witnesses ---------------------------------


def order_witness(f: PAF, g: PAF, k: ClosedSet) -> PAF | None:
    """If pi(f) <= pi(g), an H in the class of zero with f <= g + H.

    H = pos_part(f - g) works: it vanishes on K1 exactly when f <= g
    there, and dominates f - g everywhere.  Returns None when the classes
    are not ordered.
    """
    h = (f - g).oplus(PAF.constant(0, f.lo, f.hi))
    r = RestrictionCongruence(k)
    if not class_of_zero_contains(r, h):
        return None
    return h


def dist_paf(k: ClosedSet, lo, hi) -> PAF:
    """Distance to the closed set as a PAF (slopes in {-1, 0, 1})."""
    if k.is_empty:
        raise PreconditionError("distance to the empty set")
    lo, hi = Fraction(lo), Fraction(hi)
    out = None
    for a, b in k.intervals:
        # max(a - t, t - b, 0)
        part = (PAF.affine(-1, a, lo, hi)
                .oplus(PAF.affine(1, -b, lo, hi))
                .oplus(PAF.constant(0, lo, hi)))
        out = part if out is None else out.tropical_min(part)
    return out


def cutoff(f: PAF, k: ClosedSet, slope=None) -> PAF:
    """A congruent-to-zero surrogate for f: agrees with f away from K1,
    vanishes on K1.

    Built from clamps: min against a steep bump 0 on K1, applied to the
    positive and negative parts separately.
    """
    if k.is_empty:
        return f
    big = max(Fraction(1), f.r_norm())
    steep = slope if slope is not None else _default_slope(f, k)
    bump = PAF.constant(1, f.lo, f.hi).tropical_min(
        dist_paf(k, f.lo, f.hi).scale(steep)).scale(big)
    zero = PAF.constant(0, f.lo, f.hi)
    pos, neg = f.oplus(zero), (-f).oplus(zero)
    return pos.tropical_min(bump) - neg.tropical_min(bump)


def _default_slope(f: PAF, k: ClosedSet) -> Fraction:
    lip = max(abs(a) for a, _ in f.pieces)
    big = max(Fraction(1), f.r_norm())
    return max(Fraction(1), lip / big)


def split_vanishing(f: PAF, r1: RestrictionCongruence,
                    r2: RestrictionCongruence) -> tuple[PAF, PAF]:
    """Split f (vanishing on K1 n K2) as f1 + f2 with fi vanishing on Ki.

    f1 is the cutoff of f along K1 with a slope steep enough that the bump
    saturates before reaching K2: components of K1 and K2 either overlap
    (where f vanishes, so a Lipschitz bound controls the ramp) or sit at a
    positive gap.
    """
    if not related(join(r1, r2), f, PAF.constant(0, f.lo, f.hi)):
        raise PreconditionError("function must vanish on the intersection")
    if r1.is_trivial:
        return f, PAF.constant(0, f.lo, f.hi)
    steep = _default_slope(f, r1.k)
    gap = _min_gap(r1.k, r2.k)
    if gap is not None and gap > 0:
        steep = max(steep, Fraction(1) / gap)
    f1 = cutoff(f, r1.k, slope=steep)
    return f1, f - f1


def _min_gap(k1: ClosedSet, k2: ClosedSet) -> Fraction | None:
    gaps = []
    for a, b in k1.intervals:
        for c, d in k2.intervals:
            if c > b:
                gaps.append(c - b)
            elif a > d:
                gaps.append(a - d)
    return min(gaps) if gaps else None


# -- extension to fraction pairs over the convex sub-semiring --------------------


@dataclass(frozen=True)
class FractionRestriction:
    """The unique congruence on difference pairs restricting to a
    cancellative congruence on the convex functions."""

    base: RestrictionCongruence

    def related(self, x: tuple[PAF, PAF], y: tuple[PAF, PAF]) -> bool:
        a, b = x
        a2, b2 = y
        for g in (a, b, a2, b2):
            if not g.is_convex():
                raise PreconditionError("fraction pairs live over convex functions")
        return related(self.base, a + b2, a2 + b)


def extend_to_fractions(r: RestrictionCongruence) -> FractionRestriction:
    return FractionRestriction(r)
