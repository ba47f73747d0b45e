"""Closed forms for torus codes and the parameter bounds for edge codes."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import comb

from .graphs import Graph, analyze, perfect_matching


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def length_formula(n: int, m: int, q: int) -> int:
    """|X| for a bipartite graph with a perfect matching, n vertices, m components."""
    if n < 2 or not 1 <= m <= n // 2:
        raise ValueError(f"need n >= 2 and 1 <= m <= n/2, got n={n}, m={m}")
    return (q - 1) ** (n - m - 1)


def torus_hilbert(k: int, d: int, q: int) -> int:
    """Hilbert function of the projective torus T_{k-1} over GF(q) in degree d."""
    if k < 1 or d < 0:
        raise ValueError(f"need k >= 1 and d >= 0, got k={k}, d={d}")
    return sum(
        (-1) ** j * comb(k - 1, j) * comb(k - 1 + d - j * (q - 1), k - 1)
        for j in range(d // (q - 1) + 1)
    )


def torus_reg(k: int, q: int) -> int:
    return (q - 2) * (k - 1)


def torus_min_distance(s: int, q: int, d: int) -> int:
    """Minimum distance of the degree-d code on T_{s-1} (s coordinates).

    Write d = a(q-2) + b with 1 <= b <= q-2; below the regularity the value
    is (q-1)^(s-2-a) (q-1-b), at or beyond it the code is the full space.
    """
    if s < 1 or d < 0:
        raise ValueError(f"need s >= 1 and d >= 0, got s={s}, d={d}")
    if d == 0:
        return (q - 1) ** (s - 1)
    if d >= (q - 2) * (s - 1):
        return 1
    a, b = divmod(d - 1, q - 2)
    b += 1
    return (q - 1) ** (s - 2 - a) * (q - 1 - b)


def singleton_bound(length: int, dimension: int) -> int:
    return length - dimension + 1


@dataclass(frozen=True)
class BoundsReport:
    d: int
    l_d: int
    u_d: int
    B_d: int
    dim_lower: int
    reg_lower: int
    reg_upper: int
    # (q-2)(k-1), the regularity of the torus on the matching edges
    reg_torus_lower: int
    length: int

    def as_dict(self) -> dict:
        return asdict(self)


def graph_invariants(graph: Graph) -> tuple[int, int, int]:
    """(n, m, k) for a bipartite graph with a perfect matching."""
    g = graph if graph.gamma is not None else analyze(graph)
    if g.gamma:
        raise ValueError(f"graph is not bipartite (gamma={g.gamma})")
    if perfect_matching(g) is None:
        raise ValueError("graph has no perfect matching")
    return g.n, g.m, g.n // 2


def theorem3_bounds(graph: Graph, q: int, d: int, hilbert: int | None = None) -> BoundsReport:
    """Length, regularity, dimension and distance bounds for C_X(d).

    ``B_d`` is the Singleton bound computed from ``hilbert`` when supplied,
    otherwise from the dimension lower bound (which makes it an upper bound
    on the Singleton value, still a valid distance upper bound).
    """
    n, m, k = graph_invariants(graph)
    length = length_formula(n, m, q)
    l_d = ceil_div(torus_min_distance(n, q, 2 * d), (q - 1) ** m)
    u_d = (q - 1) ** (k - m) * torus_min_distance(k, q, d)
    dim_lower = torus_hilbert(k, d, q)
    B_d = singleton_bound(length, hilbert if hilbert is not None else dim_lower)
    # a single point has regularity 0, below the general formula
    reg_lower = 0 if length == 1 else ceil_div((q - 2) * (n - 1), 2 * (q - 1) ** m)
    reg_upper = (q - 2) * (k - 1) + (q - 1) ** (k - m) - 1
    return BoundsReport(d, l_d, u_d, B_d, dim_lower, reg_lower, reg_upper, torus_reg(k, q), length)
