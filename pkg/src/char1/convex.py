"""Convex polygons in the plane under hull-of-union and Minkowski sum.

Vertices are exact rational points; hulls use the monotone chain with
exact orientation predicates, so degenerate bodies (points, segments) are
first-class.  The semiring of origin-containing bodies has hull-of-union
as its tropical sum and Minkowski sum as its addition; formal differences
of support functions make it a semifield (``FracBody``).

The unit body E is a caller-chosen full-dimensional polytope with the
origin strictly interior (default: the square [-1,1]^2).  Its gauge plays
the role the euclidean norm plays for the round unit ball; an optional
float mode evaluates euclidean quantities approximately and is flagged as
such wherever it appears.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError, SchemaError
from .scalars import fmt_rat, parse_rat
from .semifield import CharOneSemifield

Point = tuple[Fraction, Fraction]


def pt(x, y) -> Point:
    return (Fraction(x), Fraction(y))


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _int_hull(ipts) -> list:
    """Monotone chain over integer pairs: canonical CCW from the
    lexicographic minimum, collinear interior points dropped."""
    pts = sorted(set(ipts))
    if len(pts) == 1:
        return pts

    def turn(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and turn(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and turn(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        hull = hull[:1]
    return hull


def _common_den(pts) -> int:
    den = 1
    for x, y in pts:
        den = den * x.denominator // math.gcd(den, x.denominator)
        den = den * y.denominator // math.gcd(den, y.denominator)
    return den


def convex_hull(points) -> list[Point]:
    """Monotone chain; returns canonical CCW vertices starting at the
    lexicographic minimum, with no collinear interior points.

    Orientation tests run on integer surrogate coordinates (the points
    scaled by a common denominator): the hull only selects input points,
    so the returned vertices are the original exact rationals.
    """
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    if not pts:
        raise PreconditionError("hull of an empty point set")
    den = _common_den(pts)
    hull = _int_hull([(int(x * den), int(y * den)) for x, y in pts])
    return [(Fraction(x, den), Fraction(y, den)) for x, y in hull]


@dataclass(frozen=True)
class Polygon:
    """A convex polytope of dimension 0, 1 or 2, stored as its canonical
    CCW vertex list."""

    vertices: tuple[Point, ...]

    def __post_init__(self):
        verts = tuple(convex_hull(self.vertices))
        object.__setattr__(self, "vertices", verts)
        den = _common_den(verts)
        object.__setattr__(self, "_den", den)
        object.__setattr__(self, "_iverts",
                           tuple((int(x * den), int(y * den)) for x, y in verts))

    @classmethod
    def hull(cls, points) -> "Polygon":
        return cls(tuple(points))

    @classmethod
    def origin(cls) -> "Polygon":
        return cls(((Fraction(0), Fraction(0)),))

    @classmethod
    def square(cls, half_width=1) -> "Polygon":
        h = Fraction(half_width)
        return cls(((-h, -h), (h, -h), (h, h), (-h, h)))

    @property
    def dim(self) -> int:
        return min(len(self.vertices) - 1, 2)

    def contains(self, p: Point) -> bool:
        p = (Fraction(p[0]), Fraction(p[1]))
        if self.dim == 0:
            return p == self.vertices[0]
        if self.dim == 1:
            a, b = self.vertices
            if _cross(a, b, p) != 0:
                return False
            return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and \
                min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
        n = len(self.vertices)
        return all(_cross(self.vertices[i], self.vertices[(i + 1) % n], p) >= 0
                   for i in range(n))

    def contains_origin(self) -> bool:
        iverts = self._iverts
        if len(iverts) == 1:
            return iverts[0] == (0, 0)
        if len(iverts) == 2:
            (ax, ay), (bx, by) = iverts
            if ax * by - ay * bx != 0:
                return False
            return min(ax, bx) <= 0 <= max(ax, bx) and min(ay, by) <= 0 <= max(ay, by)
        n = len(iverts)
        for i in range(n):
            px, py = iverts[i]
            qx, qy = iverts[(i + 1) % n]
            if (qx - px) * (-py) - (qy - py) * (-px) < 0:
                return False
        return True

    def dilate(self, q) -> "Polygon":
        """Scale by the rational q >= 0 about the origin."""
        q = Fraction(q)
        if q < 0:
            raise PreconditionError("dilation factor must be nonnegative")
        if q == 0:
            return Polygon.origin()
        # positive scaling preserves the canonical vertex order
        return _from_int_hull(
            [(x * q.numerator, y * q.numerator) for x, y in self._iverts],
            self._den * q.denominator)

    def rotate90(self) -> "Polygon":
        """Multiplication by i: (x, y) -> (-y, x)."""
        return Polygon(tuple((-y, x) for x, y in self.vertices))

    def support(self, psi) -> Fraction:
        """max over the body of the linear form psi = (p, q)."""
        p, q = Fraction(psi[0]), Fraction(psi[1])
        return max(p * x + q * y for x, y in self.vertices)

    def to_json(self) -> dict:
        return {"vertices": [[fmt_rat(x), fmt_rat(y)] for x, y in self.vertices]}

    @classmethod
    def from_json(cls, data) -> "Polygon":
        try:
            pts = [(parse_rat(x), parse_rat(y)) for x, y in data["vertices"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad polygon object: {exc}") from None
        if not pts:
            raise SchemaError("polygon needs at least one vertex")
        return cls(tuple(pts))


def _rescale(a: Polygon, b: Polygon):
    """Integer vertex lists of both bodies over one common denominator."""
    g = math.gcd(a._den, b._den)
    den = a._den // g * b._den
    sa, sb = den // a._den, den // b._den
    ia = [(x * sa, y * sa) for x, y in a._iverts]
    ib = [(x * sb, y * sb) for x, y in b._iverts]
    return den, ia, ib


def _from_int_hull(ipts, den: int) -> Polygon:
    # the integer hull is already canonical: skip the re-hulling __init__
    hull = _int_hull(ipts)
    p = object.__new__(Polygon)
    object.__setattr__(p, "vertices",
                       tuple((Fraction(x, den), Fraction(y, den)) for x, y in hull))
    object.__setattr__(p, "_den", den)
    object.__setattr__(p, "_iverts", tuple(hull))
    return p


def minkowski(a: Polygon, b: Polygon) -> Polygon:
    """Exact Minkowski sum via all pairwise vertex sums.

    O(mn log mn), but uniformly correct across degenerate dimensions,
    which is what the desk-scale suites need.  Runs on the cached integer
    surrogates.
    """
    den, ia, ib = _rescale(a, b)
    return _from_int_hull([(x1 + x2, y1 + y2) for x1, y1 in ia for x2, y2 in ib], den)


def hull_union(a: Polygon, b: Polygon) -> Polygon:
    """Convex hull of the union: the tropical sum of the body semiring."""
    den, ia, ib = _rescale(a, b)
    return _from_int_hull(ia + ib, den)


@dataclass(frozen=True)
class Direction:
    """A nonzero linear form, canonicalized to a primitive integer vector
    so that positively proportional forms define the same character."""

    p: Fraction
    q: Fraction

    def __post_init__(self):
        p, q = Fraction(self.p), Fraction(self.q)
        if p == 0 and q == 0:
            raise PreconditionError("direction must be nonzero")
        m = math.lcm(p.denominator, q.denominator)
        g = math.gcd(int(p * m), int(q * m))
        object.__setattr__(self, "p", p * m / g)
        object.__setattr__(self, "q", q * m / g)

    def as_pair(self) -> Point:
        return (self.p, self.q)

    def to_json(self) -> list:
        return [fmt_rat(self.p), fmt_rat(self.q)]

    @classmethod
    def from_json(cls, data) -> "Direction":
        try:
            p, q = (parse_rat(v) for v in data)
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"bad direction: {exc}") from None
        return cls(p, q)


# -- gauges, polars, norms ----------------------------------------------------


def facets(e: Polygon) -> list[tuple[Point, Fraction]]:
    """Outward facet normals (n, c) with E = {x : <n, x> <= c} for each facet."""
    if e.dim != 2:
        raise PreconditionError("unit body must be full-dimensional")
    out = []
    n = len(e.vertices)
    for i in range(n):
        px, py = e.vertices[i]
        qx, qy = e.vertices[(i + 1) % n]
        normal = (qy - py, -(qx - px))
        out.append((normal, normal[0] * px + normal[1] * py))
    return out


def _unit_facets(e: Polygon) -> list[tuple[Point, Fraction]]:
    fs = facets(e)
    if any(c <= 0 for _, c in fs):
        raise PreconditionError("unit body must contain the origin strictly inside")
    return fs


def gauge(v: Point, e: Polygon) -> Fraction:
    """Least t >= 0 with v in t*E, from the facet inequalities of E."""
    v = (Fraction(v[0]), Fraction(v[1]))
    best = Fraction(0)
    for (nx, ny), c in _unit_facets(e):
        best = max(best, (nx * v[0] + ny * v[1]) / c)
    return best

def r_norm_body(a: Polygon, e: Polygon) -> Fraction:
    """Spectral norm of a body: the largest vertex gauge; zero only for {0}."""
    fs = _unit_facets(e)
    best = Fraction(0)
    for x, y in a.vertices:
        for (nx, ny), c in fs:
            best = max(best, (nx * x + ny * y) / c)
    return best


def polar(e: Polygon) -> Polygon:
    """The polar body: facet <n, x> <= c becomes vertex n/c."""
    return Polygon(tuple((nx / c, ny / c) for (nx, ny), c in _unit_facets(e)))


def normal_fan_rays(p: Polygon) -> list[Point]:
    """Outward edge normals; candidate directions where support-function
    ratios attain their extrema (a ratio of linears over a pointed cone is
    a mediant, so it is maximized on a ray)."""
    if p.dim == 0:
        return []
    if p.dim == 1:
        (ax, ay), (bx, by) = p.vertices
        n = (by - ay, -(bx - ax))
        return [n, (-n[0], -n[1])]
    return [n for n, _ in facets(p)]


def r_norm_euclidean(a: Polygon) -> float:
    """Euclidean-unit norm, float mode: the support function evaluated over
    candidate directions on the circle.  Approximate (~1e-12); flagged as
    such in the CLI output."""
    dirs = [(float(x), float(y)) for x, y in a.vertices if (x, y) != (0, 0)]
    dirs += [(math.cos(k * math.pi / 64), math.sin(k * math.pi / 64)) for k in range(128)]
    best = 0.0
    verts = [(float(x), float(y)) for x, y in a.vertices]
    for dx, dy in dirs:
        norm = math.hypot(dx, dy)
        if norm == 0.0:
            continue
        best = max(best, max(vx * dx + vy * dy for vx, vy in verts) / norm)
    return best


# -- characters over the body semiring ----------------------------------------


def char_eval(psi, x, e: Polygon) -> Fraction:
    """The normalized support-direction character: l_X(psi) / l_E(psi).

    Fraction pairs evaluate to (l_A - l_B) / l_E.  The denominator is
    positive because the origin is strictly interior to E.
    """
    psi = psi.as_pair() if isinstance(psi, Direction) else psi
    _unit_facets(e)
    denom = e.support(psi)
    if isinstance(x, FracBody):
        return (x.pos.support(psi) - x.neg.support(psi)) / denom
    return x.support(psi) / denom


# -- the fraction semifield ----------------------------------------------------


@dataclass(frozen=True)
class FracBody:
    """A formal difference of origin-containing bodies: l_pos - l_neg."""

    pos: Polygon
    neg: Polygon

    def __post_init__(self):
        for side in (self.pos, self.neg):
            if not side.contains_origin():
                raise PreconditionError("fraction bodies must contain the origin")

    @classmethod
    def of(cls, body: Polygon) -> "FracBody":
        return cls(body, Polygon.origin())

    def to_json(self) -> dict:
        return {"pos": self.pos.to_json(), "neg": self.neg.to_json()}

    @classmethod
    def from_json(cls, data) -> "FracBody":
        try:
            return cls(Polygon.from_json(data["pos"]), Polygon.from_json(data["neg"]))
        except KeyError as exc:
            raise SchemaError(f"bad fraction body: missing {exc}") from None


def frac_equal(x: FracBody, y: FracBody) -> bool:
    """Cancellative equality: A - B = A' - B' iff A + B' = A' + B."""
    return minkowski(x.pos, y.neg) == minkowski(y.pos, x.neg)


def frac_oplus(x: FracBody, y: FracBody) -> FracBody:
    """Tropical sum of differences: hull((A1+B2) u (A2+B1)) - (B1+B2)."""
    return FracBody(
        hull_union(minkowski(x.pos, y.neg), minkowski(y.pos, x.neg)),
        minkowski(x.neg, y.neg),
    )


def frac_plus(x: FracBody, y: FracBody) -> FracBody:
    return FracBody(minkowski(x.pos, y.pos), minkowski(x.neg, y.neg))


def frac_neg(x: FracBody) -> FracBody:
    return FracBody(x.neg, x.pos)


def frac_scale(q, x: FracBody) -> FracBody:
    q = Fraction(q)
    if q < 0:
        return frac_scale(-q, frac_neg(x))
    return FracBody(x.pos.dilate(q), x.neg.dilate(q))


def r_norm_frac(x: FracBody, e: Polygon) -> Fraction:
    """Least t >= 0 with -tE <= A - B <= tE, i.e. A <= B + tE and B <= A + tE.

    The ratio |l_A - l_B| / l_E is piecewise a ratio of linear forms over the
    common refinement of the three normal fans, so its maximum sits on one of
    the candidate rays below.
    """
    _unit_facets(e)
    candidates = normal_fan_rays(e) + normal_fan_rays(x.pos) + normal_fan_rays(x.neg)
    best = Fraction(0)
    for psi in candidates:
        diff = x.pos.support(psi) - x.neg.support(psi)
        best = max(best, abs(diff) / e.support(psi))
    return best


# -- the square-symmetry example ------------------------------------------------


def i_invariant(a: Polygon) -> bool:
    """Is the body fixed by multiplication by i (exact 90-degree rotation)?"""
    return a.rotate90() == a


def i_symmetrize(a: Polygon) -> Polygon:
    """Hull of the four rotations: the least i-invariant body containing a."""
    b = a.rotate90()
    c = b.rotate90()
    d = c.rotate90()
    return Polygon(a.vertices + b.vertices + c.vertices + d.vertices)


# -- semifield adapter -----------------------------------------------------------


class PolygonFractionSemifield(CharOneSemifield):
    """Fractions of origin-containing convex bodies, unit = a chosen polytope."""

    name = "convex-fraction"

    def __init__(self, unit_body: Polygon | None = None):
        self._unit_body = unit_body if unit_body is not None else Polygon.square()
        _unit_facets(self._unit_body)

    @property
    def unit_body(self) -> Polygon:
        return self._unit_body

    def oplus(self, x, y):
        return frac_oplus(x, y)

    def plus(self, x, y):
        return frac_plus(x, y)

    def neg(self, x):
        return frac_neg(x)

    def scale(self, q, x):
        return frac_scale(q, x)

    @property
    def zero(self):
        return FracBody(Polygon.origin(), Polygon.origin())

    @property
    def unit(self):
        return FracBody.of(self._unit_body)

    def eq(self, x, y):
        return frac_equal(x, y)

    def norm(self, x):
        return r_norm_frac(x, self._unit_body)

    def random(self, rng):
        # triangles and degenerate bodies keep the law suites inside their
        # time budget; the convex suite exercises richer shapes
        return FracBody(random_polygon(rng, max_extra=2),
                        random_polygon(rng, max_extra=2))


def random_polygon(rng, max_extra=3, lim=4) -> Polygon:
    """A small random origin-containing body (possibly a point or segment).

    Integer coordinates keep the law suites fast; rational coordinates
    still arise downstream through the Frobenius dilations.
    """
    pts = [(Fraction(0), Fraction(0))]
    for _ in range(rng.randint(0, max_extra)):
        pts.append((Fraction(rng.randint(-lim, lim)), Fraction(rng.randint(-lim, lim))))
    return Polygon(tuple(pts))


def random_direction(rng, lim=5) -> Direction:
    while True:
        p, q = rng.randint(-lim, lim), rng.randint(-lim, lim)
        if p or q:
            return Direction(Fraction(p), Fraction(q))
