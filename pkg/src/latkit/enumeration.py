"""Exhaustive generation of finite lattices up to isomorphism.

The main generator works bottom-up: every lattice with n elements arises from
a lattice with n - 1 elements by adding back a removed atom, because deleting
any atom of a finite lattice leaves a lattice (pairs whose meet was the atom
fall to the bottom, and nothing else changes). So extending each smaller
lattice by one new atom with every upward-closed set of upper bounds, keeping
the candidates that satisfy the lattice axioms, and rejecting isomorphic
duplicates is complete.

``enumerate_lattices_naive`` is a deliberately independent cross-check: it
scans all upper-triangular relations directly. It exists to validate the
generator's counts on small sizes, not to be fast.
"""
from __future__ import annotations

import numpy as np

from .core import FiniteLattice, are_isomorphic, _iso_profiles
from .errors import CapExceeded, NotALattice, ParameterOutOfRange

# The incremental generator refuses sizes beyond this.
ENUMERATION_CAP = 9
# The naive cross-check is exponential in n*(n-1)/2.
NAIVE_CAP = 6

_cache: dict[int, tuple] = {}


def _extend_by_atom(base: FiniteLattice, upset_mask: int) -> FiniteLattice | None:
    """Add one new atom below the elements selected by ``upset_mask``."""
    n = base.n + 1
    leq = np.zeros((n, n), dtype=bool)
    leq[: base.n, : base.n] = base.leq
    x = base.n
    leq[x, x] = True
    leq[0, x] = True
    for y in range(base.n):
        if upset_mask >> y & 1:
            leq[x, y] = True
    try:
        lat, _ = FiniteLattice._build(leq)
    except NotALattice:
        return None
    return lat


def enumerate_lattices(n: int) -> tuple:
    """All lattices with exactly n elements, one per isomorphism class.

    Deterministic order; results are cached per size. Hard-capped at
    n <= 9 (the class counts grow too fast beyond that for this design).
    """
    if n < 1:
        raise ParameterOutOfRange("lattice size must be at least 1")
    if n > ENUMERATION_CAP:
        raise CapExceeded(f"enumeration capped at {ENUMERATION_CAP} elements")
    if n in _cache:
        return _cache[n]
    if n == 1:
        from .core import from_covers

        result = (from_covers(1, []),)
        _cache[1] = result
        return result

    smaller = enumerate_lattices(n - 1)
    buckets: dict[tuple, list] = {}
    reps: list[FiniteLattice] = []
    for base in smaller:
        m = base.n
        # the new atom needs every old join to exist above it; for m >= 2
        # that requires the old top in its strict up-set
        for mask in range(1 << m):
            if mask & 1:
                continue  # never below the bottom
            if m >= 2 and not (mask >> (m - 1) & 1):
                continue
            # up-closed: everything above a selected element is selected
            ok = True
            for y in range(1, m):
                if mask >> y & 1:
                    above = int(sum(1 << int(z) for z in np.flatnonzero(base.leq[y])))
                    if above & mask != above:
                        ok = False
                        break
            if not ok:
                continue
            cand = _extend_by_atom(base, mask)
            if cand is None:
                continue
            sig = (tuple(sorted(_iso_profiles(cand))), len(cand.covers))
            bucket = buckets.setdefault(sig, [])
            if any(are_isomorphic(cand, seen) is not None for seen in bucket):
                continue
            bucket.append(cand)
            reps.append(cand)
    result = tuple(reps)
    _cache[n] = result
    return result


def enumerate_lattices_naive(n: int) -> tuple:
    """Independent slow enumeration by scanning upper-triangular relations.

    Every finite lattice admits a linear extension, so restricting to
    index-increasing relations loses nothing up to isomorphism.
    """
    if n < 1:
        raise ParameterOutOfRange("lattice size must be at least 1")
    if n > NAIVE_CAP:
        raise CapExceeded(f"naive enumeration capped at {NAIVE_CAP} elements")
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    buckets: dict[tuple, list] = {}
    reps: list[FiniteLattice] = []
    for bits in range(1 << len(pairs)):
        leq = np.eye(n, dtype=bool)
        for k, (i, j) in enumerate(pairs):
            if bits >> k & 1:
                leq[i, j] = True
        reach = (leq.astype(np.int32) @ leq.astype(np.int32)) > 0
        if (reach & ~leq).any():
            continue  # not transitive
        try:
            lat, _ = FiniteLattice._build(leq)
        except NotALattice:
            continue
        sig = (tuple(sorted(_iso_profiles(lat))), len(lat.covers))
        bucket = buckets.setdefault(sig, [])
        if any(are_isomorphic(lat, seen) is not None for seen in bucket):
            continue
        bucket.append(lat)
        reps.append(lat)
    return tuple(reps)
