"""Independent brute-force oracles the tests compare library output against.

Everything here works from the raw order matrix with plain Python loops, on
purpose: none of it shares code with the library's table construction, so an
agreement is evidence rather than tautology.
"""
from __future__ import annotations

import numpy as np


def brute_bounds(leq: np.ndarray):
    """(meet, join) tables computed as unique greatest/least bounds, or None
    entries where no unique bound exists."""
    n = leq.shape[0]
    meet = [[None] * n for _ in range(n)]
    join = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            lower = [x for x in range(n) if leq[x, a] and leq[x, b]]
            greatest = [x for x in lower if all(leq[y, x] for y in lower)]
            if len(greatest) == 1:
                meet[a][b] = greatest[0]
            upper = [x for x in range(n) if leq[a, x] and leq[b, x]]
            least = [x for x in upper if all(leq[x, y] for y in upper)]
            if len(least) == 1:
                join[a][b] = least[0]
    return meet, join


def all_partitions(n: int):
    """Every partition of {0..n-1} as a block-index tuple, in restricted
    growth order."""
    out: list[tuple[int, ...]] = []

    def grow(prefix: list[int], width: int) -> None:
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for b in range(width + 1):
            grow(prefix + [b], max(width, b + 1))

    grow([], 0)
    return out


def is_congruence_partition(lat, block_of) -> bool:
    """Compatibility from the definition: a related to b forces a op c
    related to b op c, for both operations and every c."""
    n = lat.n
    for a in range(n):
        for b in range(a + 1, n):
            if block_of[a] != block_of[b]:
                continue
            for c in range(n):
                if block_of[lat.meet(a, c)] != block_of[lat.meet(b, c)]:
                    return False
                if block_of[lat.join(a, c)] != block_of[lat.join(b, c)]:
                    return False
    return True


def brute_congruence_count(lat) -> int:
    return sum(1 for p in all_partitions(lat.n) if is_congruence_partition(lat, p))


def brute_congruence_set(lat) -> set:
    return {p for p in all_partitions(lat.n) if is_congruence_partition(lat, p)}


def blocks_are_intervals(lat, block_of) -> bool:
    n = lat.n
    for blk in set(block_of):
        members = [x for x in range(n) if block_of[x] == blk]
        lo = [x for x in members if all(lat.le(x, y) for y in members)]
        hi = [x for x in members if all(lat.le(y, x) for y in members)]
        if len(lo) != 1 or len(hi) != 1:
            return False
        between = [x for x in range(n) if lat.le(lo[0], x) and lat.le(x, hi[0])]
        if between != members:
            return False
    return True


def adjoin_new_bottom(lat):
    """The input lattice with one extra element glued in below everything."""
    from latkit import from_covers

    covers = [(a + 1, b + 1) for a, b in lat.covers]
    covers.append((0, 1))
    return from_covers(lat.n + 1, covers)
