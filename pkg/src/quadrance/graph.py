"""The quadrance graph on F_q^2 and its exact combinatorics.

Vertices are the q^2 points; two points are adjacent when their quadrance
is a nonzero square.  For q = 3 mod 4 this graph is strongly regular with
parameters ((q^2-1)/2, (q^2-5)/4, (q^2-1)/4), every vertex subset obeys an
exact edge-deviation bound, and affine lines are cliques or independent
sets according to the character of their direction.  The clique engine is
a branch-and-bound over bitset adjacency with a greedy coloring bound.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass

from .errors import EmptySubset, NotStronglyRegular, TooLarge, WrongResidueClass
from .field import FieldCtx
from .geometry import Point, point_at, point_index, quadrance


@dataclass
class QuadGraph:
    ctx: FieldCtx
    q: int
    n: int
    adj: list[int]

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()


def build_graph(ctx: FieldCtx) -> QuadGraph:
    """Adjacency bitsets of the quadrance graph; refused for q = 1 mod 4,
    where zero quadrance no longer separates points."""
    if ctx.residue_class != 3:
        raise WrongResidueClass("the quadrance graph is built for q = 3 mod 4")
    q = ctx.q
    n = q * q
    points = [point_at(ctx, i) for i in range(n)]
    adj = [0] * n
    for a in range(n):
        for b in range(a + 1, n):
            if ctx.chi(quadrance(ctx, points[a], points[b])) == 1:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    graph = QuadGraph(ctx, q, n, adj)
    expected = (n - 1) // 2
    for v in range(n):
        assert graph.degree(v) == expected
    return graph


@dataclass(frozen=True)
class SrgParams:
    v: int
    k: int
    lam: int
    mu: int

    def identity_holds(self) -> bool:
        return self.k * (self.k - self.lam - 1) == (self.v - self.k - 1) * self.mu

    def as_list(self) -> list[int]:
        return [self.v, self.k, self.lam, self.mu]


def srg_params(graph: QuadGraph) -> SrgParams:
    """Exhaustive common-neighbour counts over every vertex pair; raises if
    any pair deviates from the first value seen on its side."""
    adj = graph.adj
    n = graph.n
    k = graph.degree(0)
    lam = mu = None
    for a in range(n):
        if graph.degree(a) != k:
            raise NotStronglyRegular(f"vertex {a} has degree {graph.degree(a)} != {k}")
        row = adj[a]
        for b in range(a + 1, n):
            common = (row & adj[b]).bit_count()
            if row >> b & 1:
                if lam is None:
                    lam = common
                elif common != lam:
                    raise NotStronglyRegular(
                        f"adjacent pair ({a},{b}) has {common} common neighbours, "
                        f"expected {lam}",
                        pair=(a, b),
                    )
            else:
                if mu is None:
                    mu = common
                elif common != mu:
                    raise NotStronglyRegular(
                        f"non-adjacent pair ({a},{b}) has {common} common "
                        f"neighbours, expected {mu}",
                        pair=(a, b),
                    )
    return SrgParams(n, k, lam, mu)


@dataclass(frozen=True)
class SubsetStats:
    u: int
    edges: int
    triples: int
    bound_lhs: int
    bound_rhs: int
    holds: bool

    @property
    def equality(self) -> bool:
        return self.bound_lhs == self.bound_rhs


def subset_edge_stats(graph: QuadGraph, subset) -> SubsetStats:
    """Edge count, cherry-triple count, and the exact cross-multiplied
    deviation bound |4q e(U) - q u(u-1)| <= u (q^2 - u) for a vertex set."""
    vertices = list(subset)
    if not vertices:
        raise EmptySubset("the subset must be non-empty")
    if len(set(vertices)) != len(vertices):
        raise ValueError("duplicate vertices in subset")
    adj = graph.adj
    q = graph.q
    u = len(vertices)
    mask = 0
    for v in vertices:
        mask |= 1 << v
    edges = sum((adj[v] & mask).bit_count() for v in vertices) // 2
    triples = 0
    for i, a in enumerate(vertices):
        for b in vertices[i + 1 :]:
            triples += (adj[a] & adj[b]).bit_count()
    # The strongly regular counts force this identity; a failure would mean
    # a corrupted graph.
    assert triples == u * (u - 1) // 2 * ((q * q - 1) // 4) - edges
    lhs = abs(4 * q * edges - q * u * (u - 1))
    rhs = u * (q * q - u)
    return SubsetStats(u, edges, triples, lhs, rhs, lhs <= rhs)


def random_subset_trials(graph: QuadGraph, trials: int, seed: int) -> dict:
    """Seeded random subsets pushed through the deviation bound."""
    rng = random.Random(seed)
    failures = []
    equality = 0
    for trial in range(trials):
        u = rng.randint(1, graph.n)
        stats = subset_edge_stats(graph, rng.sample(range(graph.n), u))
        if not stats.holds:
            failures.append({"trial": trial, "u": stats.u, "edges": stats.edges})
        if stats.equality:
            equality += 1
    return {
        "trials": trials,
        "seed": seed,
        "all_hold": not failures,
        "equality_count": equality,
        "failures": failures,
    }


# -- affine lines ----------------------------------------------------------


def all_lines(ctx: FieldCtx) -> list[list[Point]]:
    """The q(q+1) affine lines of F_q^2, each as q points."""
    q = ctx.q
    lines = []
    for m in range(q):
        for b in range(q):
            lines.append(
                [Point(t, ctx.add(ctx.mul(m, t), b)) for t in range(q)]
            )
    for a in range(q):
        lines.append([Point(a, t) for t in range(q)])
    return lines


def line_direction_character(ctx: FieldCtx, line: list[Point]) -> int:
    """chi of the quadrance of the line's direction vector."""
    return ctx.chi(quadrance(ctx, line[0], line[1]))


def is_full_line(ctx: FieldCtx, points: list[Point]) -> bool:
    """True when the points are exactly the q points of one affine line."""
    if len(points) != ctx.q or len(set(points)) != ctx.q:
        return False
    p0, p1 = points[0], points[1]
    dx = ctx.sub(p1.x, p0.x)
    dy = ctx.sub(p1.y, p0.y)
    for p in points[2:]:
        ex = ctx.sub(p.x, p0.x)
        ey = ctx.sub(p.y, p0.y)
        if ctx.sub(ctx.mul(ex, dy), ctx.mul(ey, dx)) != 0:
            return False
    return True


# -- exact maximum clique --------------------------------------------------


def _degeneracy_order(adj: list[int], n: int) -> list[int]:
    alive = (1 << n) - 1
    order = []
    for _ in range(n):
        best = None
        best_deg = n + 1
        rest = alive
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            deg = (adj[v] & alive).bit_count()
            if deg < best_deg:
                best, best_deg = v, deg
        order.append(best)
        alive &= ~(1 << best)
    return order


def _greedy_initial_clique(adj: list[int], order: list[int]) -> list[int]:
    clique: list[int] = []
    candidates = -1
    for v in reversed(order):
        if candidates >> v & 1 or not clique:
            clique.append(v)
            candidates = adj[v] if len(clique) == 1 else candidates & adj[v]
    return clique


def _color_order(p_mask: int, adj: list[int]) -> list[tuple[int, int]]:
    order = []
    uncolored = p_mask
    color = 0
    while uncolored:
        color += 1
        avail = uncolored
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            avail &= ~(low | adj[v])
            uncolored ^= low
            order.append((v, color))
    return order


def _search_max_size(adj: list[int], n: int) -> tuple[int, list[int]]:
    order = _degeneracy_order(adj, n)
    rank = {v: i for i, v in enumerate(order)}
    perm = sorted(range(n), key=lambda v: rank[v])
    radj = [0] * n
    for new_a, old_a in enumerate(perm):
        row = adj[old_a]
        while row:
            low = row & -row
            row ^= low
            radj[new_a] |= 1 << rank[low.bit_length() - 1]

    seed = _greedy_initial_clique(radj, list(range(n)))
    best_size = len(seed)
    best = list(seed)
    stack: list[int] = []

    def expand(p_mask: int) -> None:
        nonlocal best_size, best
        for v, color in reversed(_color_order(p_mask, radj)):
            if len(stack) + color <= best_size:
                return
            stack.append(v)
            sub = p_mask & radj[v]
            if sub:
                expand(sub)
            elif len(stack) > best_size:
                best_size = len(stack)
                best = list(stack)
            stack.pop()
            p_mask &= ~(1 << v)

    expand((1 << n) - 1)
    return best_size, sorted(perm[v] for v in best)


def _enumerate_maximum_cliques(adj: list[int], n: int, omega: int) -> list[list[int]]:
    found: list[list[int]] = []
    stack: list[int] = []

    def expand(p_mask: int) -> None:
        for v, color in reversed(_color_order(p_mask, adj)):
            if len(stack) + color < omega:
                return
            stack.append(v)
            if len(stack) == omega:
                found.append(sorted(stack))
            else:
                sub = p_mask & adj[v]
                if sub:
                    expand(sub)
            stack.pop()
            p_mask &= ~(1 << v)

    expand((1 << n) - 1)
    found.sort()
    return found


@dataclass
class CliqueReport:
    omega: int
    witnesses: list[list[Point]]
    all_lines: bool
    independent_counterpart: "CliqueReport | None" = None

    def to_json(self) -> dict:
        out = {
            "omega": self.omega,
            "witness_count": len(self.witnesses),
            "witnesses": [[[p.x, p.y] for p in w] for w in self.witnesses],
            "all_lines": self.all_lines,
        }
        if self.independent_counterpart is not None:
            out["independent"] = self.independent_counterpart.to_json()
        return out


DEFAULT_CLIQUE_LIMIT = 11


def _clique_side(ctx, adj, n, enumerate_all) -> CliqueReport:
    omega, witness = _search_max_size(adj, n)
    if enumerate_all:
        raw = _enumerate_maximum_cliques(adj, n, omega)
    else:
        raw = [witness]
    witnesses = [[point_at(ctx, v) for v in w] for w in raw]
    lines = all(is_full_line(ctx, w) for w in witnesses)
    return CliqueReport(omega, witnesses, lines)


def max_clique(
    graph: QuadGraph, enumerate_all: bool = False, force: bool = False
) -> CliqueReport:
    """Exact maximum clique, plus the same search on the complement for
    maximum independent sets.  Enumeration lists every maximum witness."""
    if graph.q > DEFAULT_CLIQUE_LIMIT and not force:
        raise TooLarge(
            f"q={graph.q} is beyond the default clique bound "
            f"{DEFAULT_CLIQUE_LIMIT}; pass force=True to override"
        )
    ctx = graph.ctx
    n = graph.n
    report = _clique_side(ctx, graph.adj, n, enumerate_all)
    full = (1 << n) - 1
    comp = [full ^ (1 << v) ^ graph.adj[v] for v in range(n)]
    report.independent_counterpart = _clique_side(ctx, comp, n, enumerate_all)
    return report


def conjecture_check(ctx: FieldCtx) -> dict:
    """Enumerate all maximum cliques and independent sets and test whether
    every order-q witness is an affine line.  Evidence, never a verdict."""
    if ctx.q not in (3, 7, 11):
        raise TooLarge("conjecture evidence is gathered for q in {3, 7, 11}")
    if ctx.q == 11:
        warnings.warn("q=11 enumerates cliques on 121 vertices; expect a wait")
    graph = build_graph(ctx)
    report = max_clique(graph, enumerate_all=True)
    independent = report.independent_counterpart
    clique_lines = sum(is_full_line(ctx, w) for w in report.witnesses)
    indep_lines = sum(is_full_line(ctx, w) for w in independent.witnesses)
    consistent = (
        report.omega == ctx.q
        and independent.omega == ctx.q
        and clique_lines == len(report.witnesses)
        and indep_lines == len(independent.witnesses)
    )
    return {
        "q": ctx.q,
        "omega": report.omega,
        "clique_witnesses": len(report.witnesses),
        "clique_lines": clique_lines,
        "independent_omega": independent.omega,
        "independent_witnesses": len(independent.witnesses),
        "independent_lines": indep_lines,
        "conjecture_consistent": consistent,
    }
