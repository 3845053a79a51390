"""Closed polygons with prescribed side quadrances.

build_polygon finds vertices A_1..A_n with Q(A_i, A_{i+1}) = a_i cyclically,
or reports infeasibility with a certificate of the exhausted search.  For
q = 3 mod 4 every list of n >= 4 nonzero quadrances is feasible; for
q = 1 mod 4 the same holds from n = 5, while quadrangles may genuinely
fail and are settled by a complete search over the diagonal quadrance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import LengthMismatch, TooLarge, WrongResidueClass, ZeroQuadrance
from .field import FieldCtx
from .geometry import (
    ORIGIN,
    CircleSpec,
    Point,
    circle_points,
    companion_pair,
    discriminant,
    first_point_at,
    intersect_circles,
    point_index,
    quadrance,
    translate,
)


@dataclass
class PolygonResult:
    quadrances: list[int]
    feasible: bool
    vertices: list[Point] | None
    certificate: dict | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self, ctx: FieldCtx) -> dict:
        return {
            "q": ctx.q,
            "quadrances": list(self.quadrances),
            "feasible": self.feasible,
            "vertices": [[p.x, p.y] for p in self.vertices] if self.vertices else None,
        }


def verify_polygon(ctx: FieldCtx, vertices: list[Point], quadrances: list[int]) -> bool:
    """True iff Q(vertex_i, vertex_{i+1}) = a_i cyclically."""
    n = len(vertices)
    if n != len(quadrances):
        raise LengthMismatch(
            f"{n} vertices against {len(quadrances)} quadrances"
        )
    if n < 3:
        raise ValueError("a polygon needs at least 3 sides")
    return all(
        quadrance(ctx, vertices[i], vertices[(i + 1) % n]) == quadrances[i]
        for i in range(n)
    )


def _first_intersection(ctx, a, i, b, j) -> Point:
    points = intersect_circles(ctx, a, i, b, j)
    if not points:
        raise RuntimeError("expected a nonempty circle intersection")
    return points[0]


def _triangle(ctx, quads) -> PolygonResult:
    a1, a2, a3 = quads
    disc = discriminant(ctx, a1, a2, a3)
    if not disc.is_square_or_zero:
        return PolygonResult(
            quads,
            False,
            None,
            certificate={"discriminant": disc.value, "status": disc.square_status},
        )
    v1 = ORIGIN
    v2 = first_point_at(ctx, v1, a1)
    v3 = _first_intersection(ctx, v1, a3, v2, a2)
    return PolygonResult(quads, True, [v1, v2, v3])


def _degenerate_quadrangle(ctx, quads) -> list[Point]:
    # a1 == a2 and a3 == a4: fold the quadrangle over a repeated vertex.
    a1, _, a3, _ = quads
    v2 = first_point_at(ctx, ORIGIN, a1)
    v4 = first_point_at(ctx, ORIGIN, a3)
    return [ORIGIN, v2, ORIGIN, v4]


def _quadrangle(ctx, quads) -> PolygonResult:
    """Complete search for a diagonal quadrance splitting the quadrangle
    into two solvable circle intersections."""
    a1, a2, a3, a4 = quads
    rejected = {}
    for k in range(1, ctx.q):
        d12 = discriminant(ctx, a1, a2, k)
        if not d12.is_square_or_zero:
            rejected[f"k={k}"] = "first-pair discriminant nonsquare"
            continue
        d34 = discriminant(ctx, a3, a4, k)
        if not d34.is_square_or_zero:
            rejected[f"k={k}"] = "second-pair discriminant nonsquare"
            continue
        x = ORIGIN
        z = first_point_at(ctx, x, k)
        v2 = _first_intersection(ctx, x, a1, z, a2)
        v4 = _first_intersection(ctx, x, a4, z, a3)
        return PolygonResult(quads, True, [x, v2, z, v4])

    if a1 == a2 and a3 == a4:
        return PolygonResult(quads, True, _degenerate_quadrangle(ctx, quads))
    rejected["k=0 repeated vertex"] = "needs a1 = a2 and a3 = a4"
    if ctx.residue_class == 1:
        if a1 != a2 and a3 != a4:
            x = ORIGIN
            z = first_point_at(ctx, x, 0)
            v2 = _first_intersection(ctx, x, a1, z, a2)
            v4 = _first_intersection(ctx, x, a4, z, a3)
            return PolygonResult(
                quads,
                True,
                [x, v2, z, v4],
                notes=["isotropic diagonal used"],
            )
        rejected["k=0 isotropic pair"] = "needs a1 != a2 and a3 != a4"
    return PolygonResult(
        quads,
        False,
        None,
        certificate={"searched_diagonal_quadrances": ctx.q, "rejected": rejected},
    )


def _circle_offsets(ctx) -> dict[int, list[Point]]:
    offsets: dict[int, list[Point]] = {v: [] for v in ctx.elements()}
    for x in range(ctx.q):
        for y in range(ctx.q):
            offsets[quadrance(ctx, ORIGIN, Point(x, y))].append(Point(x, y))
    return offsets


def _polygon_by_layer_search(ctx, quads) -> PolygonResult:
    """Exact search over reachable vertex sets; feasible iff some walk with
    the prescribed quadrances closes up.  Exhaustive, so it doubles as an
    independent oracle for the constructive routes."""
    offsets = _circle_offsets(ctx)
    layers: list[set[Point]] = [{ORIGIN}]
    for a in quads[:-1]:
        nxt = set()
        for base in layers[-1]:
            for off in offsets[a]:
                nxt.add(translate(ctx, base, off))
        layers.append(nxt)
    closing = sorted(
        (p for p in layers[-1] if quadrance(ctx, p, ORIGIN) == quads[-1]),
        key=lambda p: point_index(ctx, p),
    )
    if not closing:
        return PolygonResult(
            quads,
            False,
            None,
            certificate={"layer_sizes": [len(s) for s in layers]},
            notes=["exhaustive layer search"],
        )
    n = len(quads)
    vertices = [ORIGIN] * n
    vertices[n - 1] = closing[0]
    for m in range(n - 2, 0, -1):
        vertices[m] = min(
            (p for p in layers[m] if quadrance(ctx, p, vertices[m + 1]) == quads[m]),
            key=lambda p: point_index(ctx, p),
        )
    return PolygonResult(quads, True, vertices, notes=["exhaustive layer search"])


def _reduce_tail(ctx, quads, build) -> PolygonResult:
    """Collapse the two trailing quadrances into one admissible diagonal,
    build the shorter polygon, then reinsert the removed vertex."""
    a_last2, a_last = quads[-2], quads[-1]
    k_red = next(
        (
            k
            for k in range(1, ctx.q)
            if discriminant(ctx, a_last2, a_last, k).is_square_or_zero
        ),
        None,
    )
    if k_red is None:
        raise RuntimeError("no nonzero admissible diagonal quadrance")
    sub = build(ctx, quads[:-2] + [k_red])
    assert sub.feasible and sub.vertices is not None
    tail = _first_intersection(ctx, sub.vertices[-1], a_last2, sub.vertices[0], a_last)
    return PolygonResult(
        quads, True, sub.vertices + [tail], notes=sub.notes + ["tail reduction"]
    )


def _pentagon_equal(ctx, quads) -> PolygonResult:
    # All five quadrances coincide: route through a companion quadrance j
    # so every needed circle pair intersects.
    a = quads[0]
    j = companion_pair(ctx, a)
    v1 = ORIGIN
    v2 = first_point_at(ctx, v1, a)
    v4 = _first_intersection(ctx, v1, j, v2, j)
    v3 = _first_intersection(ctx, v2, a, v4, a)
    v5 = _first_intersection(ctx, v4, a, v1, a)
    return PolygonResult(
        quads, True, [v1, v2, v3, v4, v5], notes=["repeated-quadrance companion route"]
    )


def _pentagon_mixed(ctx, quads) -> PolygonResult:
    # Rotate until the first two quadrances differ, then route the walk
    # through an isotropic point pair.
    r = next(i for i in range(5) if quads[i] != quads[(i + 1) % 5])
    b = quads[r:] + quads[:r]
    k = next(
        k
        for k in range(1, ctx.q)
        if k != b[4] and discriminant(ctx, b[2], b[3], k).is_square_or_zero
    )
    x = ORIGIN
    z = first_point_at(ctx, x, 0)
    y = _first_intersection(ctx, x, b[0], z, b[1])
    v = _first_intersection(ctx, x, b[4], z, k)
    t = _first_intersection(ctx, z, b[2], v, b[3])
    rotated = [x, y, z, t, v]
    vertices = [rotated[(i - r) % 5] for i in range(5)]
    return PolygonResult(quads, True, vertices, notes=["isotropic pair route"])


def build_polygon(ctx: FieldCtx, quadrances: list[int]) -> PolygonResult:
    """Construct a polygon realizing the given nonzero side quadrances.

    Feasible outputs always verify; infeasible outputs carry a certificate
    describing the exhausted search space.
    """
    quads = list(quadrances)
    if len(quads) < 3:
        raise ValueError("a polygon needs at least 3 sides")
    for a in quads:
        if not 0 < a < ctx.q:
            raise ZeroQuadrance(f"side quadrances must be nonzero, got {a}")

    if len(quads) == 3:
        result = _triangle(ctx, quads)
    elif ctx.residue_class == 3:
        if ctx.q == 3:
            result = _polygon_by_layer_search(ctx, quads)
        elif len(quads) == 4:
            result = _quadrangle(ctx, quads)
        else:
            result = _reduce_tail(ctx, quads, build_polygon)
    else:
        if len(quads) == 4:
            result = _quadrangle(ctx, quads)
        elif ctx.q == 5:
            result = _polygon_by_layer_search(ctx, quads)
        elif len(quads) == 5:
            if len(set(quads)) == 1:
                result = _pentagon_equal(ctx, quads)
            else:
                result = _pentagon_mixed(ctx, quads)
        else:
            result = _reduce_tail(ctx, quads, build_polygon)

    if result.feasible:
        assert result.vertices is not None
        assert verify_polygon(ctx, result.vertices, quads)
    return result


def canonical_cycle(quads: tuple[int, ...]) -> tuple[int, ...]:
    """Least representative of a quadrance tuple under rotation and reflection."""
    n = len(quads)
    best = None
    for seq in (quads, tuple(reversed(quads))):
        for r in range(n):
            cand = seq[r:] + seq[:r]
            if best is None or cand < best:
                best = cand
    return best


def quadrangle_feasibility_table(
    ctx: FieldCtx, max_q: int = 13
) -> dict[tuple[int, int, int, int], bool]:
    """Exhaustive quadrangle feasibility over (F_q*)^4, canonicalized up to
    rotation and reflection.  Data in support of an open problem; no
    closed-form criterion is asserted."""
    if ctx.residue_class != 1:
        raise WrongResidueClass("the feasibility table is kept for q = 1 mod 4")
    if ctx.q > max_q:
        raise TooLarge(f"q={ctx.q} exceeds the brute-force bound {max_q}")
    offsets = _circle_offsets(ctx)
    closing_sets = {
        a: frozenset(circle_points(ctx, CircleSpec(ORIGIN, a)))
        for a in ctx.nonzero_elements()
    }
    canon = set()
    for a1 in ctx.nonzero_elements():
        for a2 in ctx.nonzero_elements():
            for a3 in ctx.nonzero_elements():
                for a4 in ctx.nonzero_elements():
                    canon.add(canonical_cycle((a1, a2, a3, a4)))
    table = {}
    for tup in sorted(canon):
        a1, a2, a3, a4 = tup
        second = {translate(ctx, ORIGIN, off) for off in offsets[a1]}
        third = set()
        for base in second:
            for off in offsets[a2]:
                third.add(translate(ctx, base, off))
        fourth = set()
        for base in third:
            for off in offsets[a3]:
                fourth.add(translate(ctx, base, off))
        table[tup] = not closing_sets[a4].isdisjoint(fourth)
    return table


def feasibility_table_rows(table: dict) -> list[dict]:
    return [
        {"quadrances": list(tup), "feasible": feasible}
        for tup, feasible in sorted(table.items())
    ]
