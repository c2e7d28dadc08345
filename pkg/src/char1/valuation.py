"""Kink valuations on piecewise-affine functions and the circle scheme.

The valuation of a function vanishing at an interior point is its kink
there: right slope minus left slope.  It is additive, superadditive under
the tropical sum, and nonnegative exactly on convex functions, which
turns convexity into a pointwise criterion.  Valuations at the two
domain endpoints are set to zero.

The circle model glues piecewise-affine data on R/Z with every kink
nonnegative; kinks telescope to zero around the circle, so a globally
valid section is constant.  Breakpoints may be quadratic irrationals from
Q(sqrt 2): a section with rational coefficients that is continuous across
an irrational breakpoint cannot kink there at all, which is the exactness
device behind the rationally-defined subsheaf.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError, SchemaError
from .paf import PAF
from .scalars import fmt_rat, parse_rat


# -- the quadratic field Q(sqrt 2) ----------------------------------------------


@dataclass(frozen=True)
class Quad:
    """An exact element a + b*sqrt(2); ordering is decidable by sign tests."""

    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @staticmethod
    def _coerce(v) -> "Quad":
        return v if isinstance(v, Quad) else Quad(Fraction(v))

    def __add__(self, other):
        o = Quad._coerce(other)
        return Quad(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Quad(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-Quad._coerce(other))

    def __rsub__(self, other):
        return Quad._coerce(other) - self

    def __mul__(self, other):
        o = Quad._coerce(other)
        return Quad(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Quad._coerce(other)
        n = o.a * o.a - 2 * o.b * o.b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 2)")
        return self * Quad(o.a / n, -o.b / n)

    def sign(self) -> int:
        a, b = self.a, self.b
        if a == 0 and b == 0:
            return 0
        if a >= 0 and b >= 0:
            return 1
        if a <= 0 and b <= 0:
            return -1
        norm = a * a - 2 * b * b  # mixed signs: compare a^2 against 2 b^2
        if norm == 0:
            raise AssertionError("sqrt 2 is irrational")
        return (1 if norm > 0 else -1) * (1 if a > 0 else -1)

    def _cmp(self, other) -> int:
        return (self - Quad._coerce(other)).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (Quad, Fraction, int)):
            return self._cmp(other) == 0
        return NotImplemented

    def __hash__(self):
        return hash(self.a) if self.b == 0 else hash((self.a, self.b))

    def __abs__(self):
        return -self if self.sign() < 0 else self

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise PreconditionError(f"{self} is irrational")
        return self.a

    def floor(self) -> int:
        m = math.floor(float(self.a) + float(self.b) * math.sqrt(2))
        while self._cmp(m) < 0:  # the float only proposes; exact tests decide
            m -= 1
        while self._cmp(m + 1) >= 0:
            m += 1
        return m

    def __repr__(self):
        return f"Quad({self.a}, {self.b})"

    def to_json(self):
        if self.is_rational:
            return fmt_rat(self.a)
        return {"a": fmt_rat(self.a), "b": fmt_rat(self.b)}

    @classmethod
    def from_json(cls, data) -> "Quad":
        if isinstance(data, str):
            return cls(parse_rat(data))
        try:
            return cls(parse_rat(data["a"]), parse_rat(data["b"]))
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"bad quadratic scalar: {exc}") from None


SQRT2 = Quad(Fraction(0), Fraction(1))
_Q0 = Quad(Fraction(0))
_Q1 = Quad(Fraction(1))


def _as_quad(v) -> Quad:
    return Quad._coerce(v)


def _quad_sorted(values) -> list[Quad]:
    out = sorted(values, key=functools.cmp_to_key(lambda x, y: x._cmp(y)))
    dedup: list[Quad] = []
    for v in out:
        if not dedup or dedup[-1] != v:
            dedup.append(v)
    return dedup


def rational_between(u: Quad, v: Quad) -> Fraction:
    """Some rational strictly between u < v (exact; floats only bootstrap)."""
    if not u < v:
        raise PreconditionError("need u < v")
    n = 1
    while True:
        cand = Fraction((u * n).floor() + 1, n)
        if u < cand < v:
            return cand
        n *= 2


# -- kinks and valuations on the interval ------------------------------------------


def kink(f: PAF, x) -> Fraction:
    """Right slope minus left slope at an interior point (0 off breakpoints)."""
    x = Fraction(x)
    if not f.lo < x < f.hi:
        raise PreconditionError("kinks are defined at interior points")
    return f.right_slope(x) - f.left_slope(x)


def valuation_at(x, f: PAF) -> Fraction:
    """The kink valuation of f at x; requires f(x) = 0.

    Zero at the domain endpoints by convention; nonnegative whenever f is
    convex.
    """
    x = Fraction(x)
    if f.eval(x) != 0:
        raise PreconditionError("valuations apply to functions vanishing at the point")
    if x == f.lo or x == f.hi:
        return Fraction(0)
    return kink(f, x)


def extend_valuation(x, f: PAF) -> Fraction:
    """The valuation extended to arbitrary differences of convex functions.

    For f = g - h with g, h convex it equals kink(g, x) - kink(h, x), i.e.
    the kink of f itself; independence of the decomposition and rational
    homogeneity are exercised by the suites.
    """
    return valuation_at(x, f)


def convexity_criterion(f: PAF) -> bool:
    """Membership test for the convex sub-semiring via valuations: f is
    convex iff the extended valuation of f - f(x)*E is nonnegative at
    every interior breakpoint x."""
    for x in f.breakpoints[1:-1]:
        shifted = f - PAF.constant(f.eval(x), f.lo, f.hi)
        if extend_valuation(x, shifted) < 0:
            return False
    return True


def localization_member(a: PAF, b: PAF, x) -> bool:
    """Is the formal difference a - b in the localization at the point?

    Membership only constrains the denominator: b - b(x)*E may not kink
    at x.  Endpoints carry the zero valuation, so everything is local
    there.
    """
    return is_local_unit(b, x)


def is_local_unit(f: PAF, x) -> bool:
    """Additively invertible in the localized semiring: no kink at x."""
    x = Fraction(x)
    if x == f.lo or x == f.hi:
        return True
    return kink(f, x) == 0


def smooth_neighborhood(f: PAF, x0) -> tuple[Fraction, Fraction]:
    """The explicit open interval around x0 on which f has no kink.

    Requires kink(f, x0) = 0 (endpoints count as kink-free); the interval
    runs between the nearest genuinely kinked breakpoints.
    """
    x0 = Fraction(x0)
    if f.lo < x0 < f.hi and kink(f, x0) != 0:
        raise PreconditionError("the function kinks at the point itself")
    lo, hi = f.lo, f.hi
    for t in f.breakpoints[1:-1]:
        if kink(f, t) == 0:
            continue
        if t <= x0:
            lo = max(lo, t)
        if t >= x0:
            hi = min(hi, t)
    return lo, hi


def local_morphism_check(alpha, beta, x_src, x_dst, elements=None,
                         domain=(0, 1)) -> bool:
    """Is the pullback by t -> alpha*t + beta, sending the point character
    at x_dst to the one at x_src, a local morphism?

    Checks the two defining conditions on a finite test set: the point
    characters must correspond (alpha*x_dst + beta = x_src), and strictly
    positive valuations must transport to strictly positive valuations in
    both directions.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    x_src, x_dst = Fraction(x_src), Fraction(x_dst)
    lo, hi = Fraction(domain[0]), Fraction(domain[1])
    if alpha * x_dst + beta != x_src:
        return False
    if elements is None:
        elements = _default_probe_elements(x_src, lo, hi)
    for f in elements:
        pulled = f.compose_affine(alpha, beta, lo, hi)
        v_src = extend_valuation(x_src, f - PAF.constant(f.eval(x_src), lo, hi))
        v_dst = extend_valuation(x_dst, pulled - PAF.constant(pulled.eval(x_dst), lo, hi))
        if (v_src > 0) != (v_dst > 0):
            return False
    return True


def _default_probe_elements(x, lo, hi):
    out = [PAF.identity(lo, hi), PAF.constant(1, lo, hi)]
    if lo < x < hi:
        out.append(PAF.affine(1, -x, lo, hi).oplus(PAF.affine(-1, x, lo, hi)))
    return out


# -- circle sections -------------------------------------------------------------


def _piece_value(piece: tuple[Quad, Quad], t: Quad) -> Quad:
    return piece[0] * t + piece[1]


def _shift_piece(piece: tuple[Quad, Quad], k: int) -> tuple[Quad, Quad]:
    """Re-anchor a piece from lifted coordinates t+k to t."""
    a, b = piece
    return (a, a * k + b)


@dataclass(frozen=True)
class CirclePAF:
    """A continuous piecewise-affine function on R/Z.

    Breakpoints are ascending in [0, 1); arc i carries (slope, intercept)
    on [bp[i], bp[i+1]], the last arc wrapping to bp[0] + 1 (its piece is
    anchored at its own left endpoint, so points below bp[0] evaluate
    through the t+1 lift).
    """

    breakpoints: tuple[Quad, ...]
    pieces: tuple[tuple[Quad, Quad], ...]

    def __post_init__(self):
        bps = [_as_quad(t) for t in self.breakpoints]
        pcs = [(_as_quad(a), _as_quad(b)) for a, b in self.pieces]
        if not bps:
            raise PreconditionError("a circle section needs a breakpoint")
        if len(pcs) != len(bps):
            raise PreconditionError("need exactly one arc per breakpoint")
        if not (_Q0 <= bps[0] and bps[-1] < _Q1):
            raise PreconditionError("breakpoints must lie in [0, 1)")
        if any(not u < v for u, v in zip(bps, bps[1:])):
            raise PreconditionError("breakpoints must be strictly increasing")
        for i in range(1, len(bps)):
            if _piece_value(pcs[i - 1], bps[i]) != _piece_value(pcs[i], bps[i]):
                raise PreconditionError(f"discontinuity at {bps[i]}")
        if _piece_value(pcs[-1], bps[0] + 1) != _piece_value(pcs[0], bps[0]):
            raise PreconditionError("discontinuity across the wrap")
        # canonical form: merge kink-free junctions, the wrap one included
        i = 1
        while i < len(pcs):
            if pcs[i] == pcs[i - 1]:
                del bps[i], pcs[i]
            else:
                i += 1
        while len(pcs) > 1 and pcs[0] == _shift_piece(pcs[-1], 1):
            del bps[0], pcs[0]
        if len(pcs) == 1:
            if pcs[0][0] != _Q0:
                raise AssertionError("an affine circle function must be flat")
            bps, pcs = [_Q0], [(_Q0, pcs[0][1])]
        object.__setattr__(self, "breakpoints", tuple(bps))
        object.__setattr__(self, "pieces", tuple(pcs))

    @classmethod
    def constant(cls, c) -> "CirclePAF":
        return cls((_Q0,), ((_Q0, _as_quad(c)),))

    @classmethod
    def from_kinks(cls, start_value, first_slope, kinks) -> "CirclePAF":
        """Integrate prescribed kinks into a section.

        ``kinks`` maps breakpoints to slope jumps; the jump listed at the
        smallest breakpoint is ignored (the wrap determines it), and the
        constructor raises unless the data closes up around the circle.
        """
        pts = sorted(((_as_quad(t), _as_quad(k)) for t, k in kinks),
                     key=functools.cmp_to_key(lambda x, y: x[0]._cmp(y[0])))
        if not pts:
            return cls.constant(start_value)
        bps = [t for t, _ in pts]
        slope = _as_quad(first_slope)
        value = _as_quad(start_value)
        pieces = []
        for i, (t, k) in enumerate(pts):
            if i > 0:
                slope = slope + k
                value = _piece_value(pieces[-1], t)
            pieces.append((slope, value - slope * t))
        return cls(tuple(bps), tuple(pieces))

    def _arc_index(self, t: Quad) -> int:
        idx = len(self.breakpoints) - 1
        for i, bp in enumerate(self.breakpoints):
            if bp <= t:
                idx = i
        return idx

    def piece_at(self, t) -> tuple[Quad, Quad]:
        """The governing (slope, intercept) at canonical t, re-anchored so
        that evaluation at t itself is a*t + b."""
        t = _as_quad(t)
        t = t - t.floor()
        if t < self.breakpoints[0]:
            return _shift_piece(self.pieces[-1], 1)
        return self.pieces[self._arc_index(t)]

    def eval(self, t) -> Quad:
        t = _as_quad(t)
        t = t - t.floor()
        return _piece_value(self.piece_at(t), t)

    def kinks(self) -> list[tuple[Quad, Quad]]:
        """All (breakpoint, right slope - left slope) pairs, wrap included."""
        return [(bp, self.pieces[i][0] - self.pieces[i - 1][0])
                for i, bp in enumerate(self.breakpoints)]

    def kink_at(self, x) -> Quad:
        x = _as_quad(x)
        x = x - x.floor()
        for bp, k in self.kinks():
            if bp == x:
                return k
        return _Q0

    def is_constant(self) -> bool:
        return len(self.pieces) == 1 and self.pieces[0][0] == _Q0

    def to_json(self) -> dict:
        return {
            "cyclic": True,
            "breakpoints": [t.to_json() for t in self.breakpoints],
            "pieces": [{"a": a.to_json(), "b": b.to_json()} for a, b in self.pieces],
        }

    @classmethod
    def from_json(cls, data) -> "CirclePAF":
        if not data.get("cyclic"):
            raise SchemaError('circle sections carry "cyclic": true')
        try:
            bps = tuple(Quad.from_json(t) for t in data["breakpoints"])
            pcs = tuple((Quad.from_json(p["a"]), Quad.from_json(p["b"]))
                        for p in data["pieces"])
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"bad circle section: {exc}") from None
        try:
            return cls(bps, pcs)
        except PreconditionError as exc:
            raise SchemaError(str(exc)) from None


def circle_section_valid(s: CirclePAF) -> bool:
    """Globally valid: continuous (by construction) with every kink >= 0."""
    return all(k >= _Q0 for _, k in s.kinks())


def circle_kink_sum(s: CirclePAF) -> Quad:
    """Sum of kinks around the circle; telescopes to zero always."""
    total = _Q0
    for _, k in s.kinks():
        total = total + k
    return total


def try_nonconstant_valid_section(breaks_and_kinks) -> CirclePAF | None:
    """Attempt to realize prescribed nonnegative kinks as a valid section.

    Returns the section when the integrated data closes up around the
    wrap and every realized kink is nonnegative, else None.  Kinks
    telescope to zero, so any strictly positive jump forces a negative
    one elsewhere: only the all-zero data survive.
    """
    try:
        s = CirclePAF.from_kinks(Fraction(0), Fraction(0), breaks_and_kinks)
    except PreconditionError:
        return None
    return s if circle_section_valid(s) else None


def circle_global_sections_are_constant(rng, trials=200) -> bool:
    """Property check: no generator run produces a nonconstant valid section.

    Tries random nonnegative kink prescriptions (closure kills them all)
    and random continuous sections (validity forces constancy); returns
    False the moment a nonconstant valid section shows up, which the
    telescoping-kink argument rules out.
    """
    for _ in range(trials):
        spots = sorted(rng.sample(range(1, 12), rng.randint(1, 3)))
        kinks = [(Fraction(s, 12), Fraction(rng.randint(0, 3))) for s in spots]
        built = try_nonconstant_valid_section(kinks)
        if built is not None and not built.is_constant():
            return False
        try:
            free = CirclePAF.from_kinks(
                Fraction(rng.randint(-3, 3), rng.randint(1, 2)),
                Fraction(rng.randint(-3, 3), rng.randint(1, 2)),
                [(Fraction(s, 12), Fraction(rng.randint(-3, 3))) for s in spots],
            )
        except PreconditionError:
            continue
        if circle_section_valid(free) and not free.is_constant():
            return False
    return True


# -- arc sections: restriction, gluing, germs -------------------------------------


@dataclass(frozen=True)
class ArcSection:
    """Piecewise-affine data over one circular arc [lo, hi] in lifted
    coordinates (hi may pass 1; the arc is shorter than the full circle)."""

    breakpoints: tuple[Quad, ...]
    pieces: tuple[tuple[Quad, Quad], ...]

    def __post_init__(self):
        bps = tuple(_as_quad(t) for t in self.breakpoints)
        pcs = tuple((_as_quad(a), _as_quad(b)) for a, b in self.pieces)
        if len(bps) < 2 or len(pcs) != len(bps) - 1:
            raise PreconditionError("arc data must span an interval")
        if any(not u < v for u, v in zip(bps, bps[1:])):
            raise PreconditionError("arc breakpoints must increase")
        if bps[-1] - bps[0] >= _Q1:
            raise PreconditionError("an arc must be shorter than the circle")
        for i in range(1, len(pcs)):
            if _piece_value(pcs[i - 1], bps[i]) != _piece_value(pcs[i], bps[i]):
                raise PreconditionError(f"discontinuity at {bps[i]}")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "pieces", pcs)

    @property
    def lo(self) -> Quad:
        return self.breakpoints[0]

    @property
    def hi(self) -> Quad:
        return self.breakpoints[-1]

    def _lift(self, t: Quad) -> Quad | None:
        for k in (0, 1, -1):
            lifted = t + k
            if self.lo <= lifted <= self.hi:
                return lifted
        return None

    def covers(self, t) -> bool:
        return self._lift(_as_quad(t)) is not None

    def piece_at(self, t) -> tuple[Quad, Quad]:
        """(slope, intercept) in canonical coordinates at circle point t."""
        t = _as_quad(t)
        lifted = self._lift(t)
        if lifted is None:
            raise PreconditionError(f"{t} is outside the arc")
        idx = 0
        for i, bp in enumerate(self.breakpoints[:-1]):
            if bp <= lifted:
                idx = i
        piece = self.pieces[idx]
        return _shift_piece(piece, int((lifted - t).a))


def restrict_to_arc(s: CirclePAF, lo, hi) -> ArcSection:
    """The restriction of a circle section to the lifted arc [lo, hi]."""
    lo, hi = _as_quad(lo), _as_quad(hi)
    if not (_Q0 <= lo < _Q1):
        raise PreconditionError("anchor the arc start in [0, 1)")
    if not lo < hi or hi - lo >= _Q1:
        raise PreconditionError("an arc must be shorter than the circle")
    cuts = [lo, hi]
    for bp in s.breakpoints:
        for k in (0, 1):
            lifted = bp + k
            if lo < lifted < hi:
                cuts.append(lifted)
    cuts = _quad_sorted(cuts)
    pcs = []
    for u, v in zip(cuts, cuts[1:]):
        mid = (u + v) / 2
        canonical = mid - mid.floor()
        a, b = s.piece_at(canonical)
        pcs.append(_shift_piece((a, b), -mid.floor()))
    return ArcSection(tuple(cuts), tuple(pcs))


def glue(sections) -> CirclePAF:
    """Glue arc sections covering the circle into one global section.

    Pairs must agree exactly wherever their arcs overlap; a gap or a
    disagreement is an error.
    """
    sections = list(sections)
    if not sections:
        raise PreconditionError("nothing to glue")
    cuts = set()
    for sec in sections:
        for t in sec.breakpoints:
            cuts.add(t - t.floor())
    cuts = _quad_sorted(cuts)
    bps, pcs = [], []
    for i, u in enumerate(cuts):
        v = cuts[(i + 1) % len(cuts)]
        v_lift = v if u < v else v + 1
        mid = (u + v_lift) / 2
        canonical = mid - mid.floor()
        covering = [sec for sec in sections if sec.covers(canonical)]
        if not covering:
            raise PreconditionError(f"the arcs do not cover the circle near {canonical}")
        ref = covering[0].piece_at(canonical)
        for other in covering[1:]:
            if other.piece_at(canonical) != ref:
                raise PreconditionError(f"sections disagree near {canonical}")
        bps.append(u)
        pcs.append(_shift_piece(ref, -mid.floor()))
    return CirclePAF(tuple(bps), tuple(pcs))


def germ(s: CirclePAF, x) -> tuple[tuple[Quad, Quad], tuple[Quad, Quad]]:
    """Stalk data at a point: the (left, right) canonical local pieces."""
    x = _as_quad(x)
    x = x - x.floor()
    right = s.piece_at(x)
    for i, bp in enumerate(s.breakpoints):
        if bp == x:
            left = s.pieces[i - 1]
            return (_shift_piece(left, 1) if i == 0 else left), right
    return right, right


def k_defined_check(s0, left, right) -> bool:
    """The rationally-defined-subsheaf test at one junction.

    left/right are rational (slope, intercept) pairs meeting at s0; raises
    if they do not actually meet there.  At an irrational s0 a rational
    junction cannot kink (rational independence forces equal pieces), so
    the check returns whether the kink vanishes; at a rational s0 the
    weaker condition applies: the kink must be a nonnegative rational.
    """
    s0 = _as_quad(s0)
    a, b = (Fraction(v) for v in left)
    a2, b2 = (Fraction(v) for v in right)
    if s0 * a + b != s0 * a2 + b2:
        raise PreconditionError("pieces do not meet at the junction")
    kink_val = a2 - a
    if s0.is_rational:
        return kink_val >= 0
    return kink_val == 0
