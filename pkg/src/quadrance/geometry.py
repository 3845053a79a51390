"""Points of F_q x F_q, quadrance, circles and exact circle intersection.

The quadrance between [x1,y1] and [x2,y2] is (x2-x1)^2 + (y2-y1)^2 valued
in the field.  A circle is the set of points at fixed quadrance from its
center; whether two circles meet is governed by a symmetric discriminant of
the two radii and the center quadrance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    CoincidentCenters,
    NullClassInWrongField,
    WrongResidueClass,
    ZeroArgument,
    ZeroQuadranceClass,
)
from .field import FieldCtx


class Point(NamedTuple):
    x: int
    y: int


ORIGIN = Point(0, 0)


def point_index(ctx: FieldCtx, pt: Point) -> int:
    """Canonical index, a bijection F_q^2 <-> 0..q^2-1."""
    return pt.x * ctx.q + pt.y


def point_at(ctx: FieldCtx, index: int) -> Point:
    return Point(*divmod(index, ctx.q))


def all_points(ctx: FieldCtx) -> list[Point]:
    """Every point in canonical-index order."""
    q = ctx.q
    return [Point(x, y) for x in range(q) for y in range(q)]


def translate(ctx: FieldCtx, pt: Point, by: Point) -> Point:
    return Point(ctx.add(pt.x, by.x), ctx.add(pt.y, by.y))


def quadrance(ctx: FieldCtx, a: Point, b: Point) -> int:
    dx = ctx.sub(b.x, a.x)
    dy = ctx.sub(b.y, a.y)
    return ctx.add(ctx.mul(dx, dx), ctx.mul(dy, dy))


NONSQUARE = "nonsquare"
ZERO = "zero"
NONZERO_SQUARE = "nonzero_square"


def square_status(ctx: FieldCtx, value: int) -> str:
    c = ctx.chi(value)
    if c == 0:
        return ZERO
    return NONZERO_SQUARE if c == 1 else NONSQUARE


@dataclass(frozen=True)
class Discriminant:
    value: int
    square_status: str

    @property
    def is_square_or_zero(self) -> bool:
        return self.square_status != NONSQUARE


DISCRIMINANT_NOTE = (
    "intersection discriminant computed from the symmetric expansion "
    "(2ij + 2jk + 2ki - i^2 - j^2 - k^2)/4; the asymmetric variant "
    "ij - (i-j-k)^2/4 is not permutation invariant"
)


def discriminant(ctx: FieldCtx, i: int, j: int, k: int) -> Discriminant:
    """Symmetric intersection discriminant of radii i, j at center quadrance k.

    Two circles of quadrances i and j whose centers are at quadrance k != 0
    meet in 0, 1 or 2 points according to this value being a nonsquare,
    zero, or a nonzero square.
    """
    cross = ctx.add(ctx.add(ctx.mul(i, j), ctx.mul(j, k)), ctx.mul(k, i))
    squares = ctx.add(ctx.add(ctx.mul(i, i), ctx.mul(j, j)), ctx.mul(k, k))
    four_f = ctx.sub(ctx.add(cross, cross), squares)
    value = ctx.mul(four_f, ctx.inv4)
    return Discriminant(value, square_status(ctx, value))


def predicted_intersections(ctx: FieldCtx, i: int, j: int, k: int) -> int:
    """Closed-form |C_i(X) cap C_j(Y)| for Q(X,Y) = k, all of i, j, k nonzero."""
    if i == 0 or j == 0 or k == 0:
        raise ZeroArgument("i, j and k must all be nonzero")
    status = discriminant(ctx, i, j, k).square_status
    if status == NONSQUARE:
        return 0
    if status == ZERO:
        return 1
    return 2


@dataclass(frozen=True)
class CircleSpec:
    """A circle: points at quadrance `klass` from `center`.

    klass is a field element index, or the integer q (allowed only when
    q = 1 mod 4) naming the punctured isotropic circle: the points other
    than the center at quadrance 0 from it.  klass 0 always denotes the
    singleton {center}.
    """

    center: Point
    klass: int


def null_class_label(ctx: FieldCtx) -> int:
    return ctx.q


def circle_points(ctx: FieldCtx, spec: CircleSpec) -> list[Point]:
    """Exhaustively enumerate the circle in canonical-index order."""
    q = ctx.q
    if not 0 <= spec.klass <= q:
        raise ValueError(f"circle class {spec.klass} out of range for q={q}")
    if spec.klass == q and ctx.residue_class != 1:
        raise NullClassInWrongField(
            "the punctured isotropic circle exists only for q = 1 mod 4"
        )
    center = spec.center
    if spec.klass == 0:
        return [center]
    out = []
    for x in range(q):
        for y in range(q):
            pt = Point(x, y)
            qd = quadrance(ctx, center, pt)
            if spec.klass == q:
                if qd == 0 and pt != center:
                    out.append(pt)
            elif qd == spec.klass:
                out.append(pt)
    return out


def first_point_at(ctx: FieldCtx, center: Point, quad: int) -> Point:
    """Smallest-index point distinct from center at the given quadrance."""
    q = ctx.q
    for idx in range(q * q):
        pt = point_at(ctx, idx)
        if pt != center and quadrance(ctx, center, pt) == quad:
            return pt
    raise ValueError(f"no point at quadrance {quad} from {center} in F_{q}^2")


def intersection_by_enumeration(
    ctx: FieldCtx, a: Point, i: int, b: Point, j: int
) -> list[Point]:
    """Brute-force C_i(a) cap C_j(b) over all q^2 points; the oracle the
    constructive solver is checked against."""
    out = []
    for x in range(ctx.q):
        for y in range(ctx.q):
            pt = Point(x, y)
            if quadrance(ctx, a, pt) == i and quadrance(ctx, b, pt) == j:
                out.append(pt)
    return out


def intersect_circles(ctx: FieldCtx, a: Point, i: int, b: Point, j: int) -> list[Point]:
    """Constructively intersect C_i(a) with C_j(b) for distinct centers.

    When the centers are at nonzero quadrance k this solves the two-signs
    linear system produced by the discriminant; when k = 0 (possible only
    for q = 1 mod 4) a single point exists exactly when i != j and is found
    by a direct linear solve along the isotropic direction.
    """
    if a == b:
        raise CoincidentCenters("circle centers must be distinct")
    if i == 0 or j == 0:
        raise ZeroQuadranceClass("circle quadrances must be nonzero")
    k = quadrance(ctx, a, b)
    dx = ctx.sub(b.x, a.x)
    dy = ctx.sub(b.y, a.y)

    if k == 0:
        if i == j:
            return []
        # <z, delta> = (i-j)/2 with delta isotropic forces one solution.
        c = ctx.div(ctx.sub(i, j), ctx.from_int(2))
        num = ctx.sub(ctx.mul(c, c), ctx.mul(i, ctx.mul(dx, dx)))
        den = ctx.mul(ctx.from_int(2), ctx.mul(c, dy))
        z2 = ctx.div(num, den)
        z1 = ctx.div(ctx.sub(c, ctx.mul(dy, z2)), dx)
        pt = Point(ctx.add(a.x, z1), ctx.add(a.y, z2))
        points = [pt]
    else:
        disc = discriminant(ctx, i, j, k)
        if disc.square_status == NONSQUARE:
            return []
        alpha = ctx.div(ctx.sub(ctx.sub(i, j), k), ctx.from_int(2))
        beta = 0 if disc.square_status == ZERO else ctx.sqrt(disc.value)[0]
        ax_ = ctx.mul(alpha, dx)
        ay_ = ctx.mul(alpha, dy)
        bx_ = ctx.mul(beta, dx)
        by_ = ctx.mul(beta, dy)
        found = set()
        for u, v in (
            (ctx.sub(ax_, by_), ctx.add(ay_, bx_)),
            (ctx.add(ax_, by_), ctx.sub(ay_, bx_)),
        ):
            found.add(Point(ctx.add(b.x, ctx.div(u, k)), ctx.add(b.y, ctx.div(v, k))))
        points = sorted(found, key=lambda p: point_index(ctx, p))

    for pt in points:
        assert quadrance(ctx, a, pt) == i and quadrance(ctx, b, pt) == j
    return points


def count_admissible_k(ctx: FieldCtx, i: int, j: int) -> tuple[int, list[int]]:
    """All k in F_q whose discriminant with radii i, j is square or zero.

    For q = 3 mod 4 the count is (q+3)/2 when ij is a square and (q+1)/2
    otherwise; for q = 1 mod 4 only the enumeration is meaningful.
    """
    if i == 0 or j == 0:
        raise ZeroArgument("i and j must be nonzero")
    ks = [k for k in ctx.elements() if discriminant(ctx, i, j, k).is_square_or_zero]
    return len(ks), ks


COMPANION_NOTE = (
    "third companion branch uses j = -6i (for which both discriminants are "
    "-15i^2 and -25i^2/4, squares whenever 15 is); j = -2i fails the "
    "square condition"
)


def companion_pair(ctx: FieldCtx, i: int) -> int:
    """A nonzero j with both discriminant(i,i,j) and discriminant(j,j,i)
    square or zero; exists for every nonzero i when q = 1 mod 4."""
    if ctx.residue_class != 1:
        raise WrongResidueClass("companion pairs are defined for q = 1 mod 4")
    if i == 0:
        raise ZeroArgument("i must be nonzero")
    if ctx.chi(ctx.from_int(3)) >= 0:
        j = i
    elif ctx.chi(ctx.from_int(5)) >= 0:
        j = ctx.neg(i)
    else:
        j = ctx.mul(ctx.neg(ctx.from_int(6)), i)
    assert discriminant(ctx, i, i, j).is_square_or_zero
    assert discriminant(ctx, j, j, i).is_square_or_zero
    return j
