"""Finite lattices as dense order matrices with fully tabulated operations.

A lattice on n elements is stored as an n-by-n boolean matrix ``leq`` together
with complete meet and join tables. Construction normalizes element order to a
canonical linear extension (sorted by height, then comparability degree, then
input index), so the bottom is always index 0 and the top is always index
n - 1. Meets and joins are then table lookups, which keeps the congruence and
product machinery simple and fast.

Construction is the only place order theory happens: every constructor checks
that the input really is a lattice and raises ``NotALattice`` with a witness
pair otherwise. Small lattices (up to ``_SELF_CHECK_LIMIT`` elements) also get
an exhaustive self-check of the algebra laws at build time, so a bug in the
tabulation cannot survive quietly.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    CapExceeded,
    CycleDetected,
    InternalVerificationFailed,
    NotALattice,
    NotAnEmbedding,
    NotComparable,
    NotDistributive,
    ParameterOutOfRange,
    SizeOverflow,
    UnknownName,
)

# Global construction cap; operations that build lattices accept an override.
DEFAULT_ELEMENT_CAP = 200_000
# Isomorphism search refuses inputs larger than this.
ISO_ELEMENT_CAP = 512
# Exhaustive algebra-law self-check runs at construction up to this size.
_SELF_CHECK_LIMIT = 60
# Down-set enumeration is exponential in the poset size.
_DOWNSET_POSET_CAP = 20


def _as_bool_matrix(mat) -> np.ndarray:
    arr = np.asarray(mat, dtype=bool)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ParameterOutOfRange("order relation must be a square matrix")
    return arr


def _transitive_closure(mat: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure of a boolean relation, by squaring."""
    n = mat.shape[0]
    closure = mat | np.eye(n, dtype=bool)
    while True:
        # float32 keeps the matmul on BLAS; counts stay below 2**24, so exact
        nxt = closure | ((closure.astype(np.float32) @ closure.astype(np.float32)) > 0)
        if np.array_equal(nxt, closure):
            return closure
        closure = nxt


def _check_cap(size: int, max_elements: int | None) -> None:
    cap = DEFAULT_ELEMENT_CAP if max_elements is None else max_elements
    if size > cap:
        raise SizeOverflow(f"construction needs {size} elements, cap is {cap}")


class FiniteLattice:
    """A finite lattice on elements ``0 .. n-1`` in a canonical linear extension.

    Attributes:
        n: element count.
        leq: boolean matrix, ``leq[x, y]`` iff x <= y. Read-only.
        covers: frozenset of pairs ``(lo, hi)`` with hi covering lo.
        meet_table / join_table: complete operation tables (int32). Read-only.
        labels: optional tuple of per-element labels, carried through
            normalization (products and pruned constructions use coordinate
            tuples).
        name: optional display name.
        pruned_edges: optional tuple of product cover edges absent from this
            lattice; set by the pruning constructions, ``None`` elsewhere.

    Index 0 is the bottom and index n - 1 is the top. Do not instantiate
    directly; use ``from_covers`` or one of the construction functions.
    """

    def __init__(self, leq, meet_table, join_table, covers, labels, name):
        self.n: int = leq.shape[0]
        self.leq = leq
        self.meet_table = meet_table
        self.join_table = join_table
        self.covers: frozenset = covers
        self.labels = labels
        self.name = name
        self.pruned_edges = None
        for arr in (self.leq, self.meet_table, self.join_table):
            arr.setflags(write=False)

    # -- construction ---------------------------------------------------

    @classmethod
    def _build(cls, leq, labels=None, name=None) -> tuple["FiniteLattice", np.ndarray]:
        """Normalize a verified-reflexive order matrix into a lattice.

        Returns the lattice and the permutation used, with ``perm[new] = old``,
        so callers that track per-element data can realign it. Raises
        ``NotALattice`` (with a witness pair) if some pair lacks a meet or a
        join.
        """
        leq = _as_bool_matrix(leq)
        n = leq.shape[0]
        if n == 0:
            raise ParameterOutOfRange("lattices here are nonempty")
        if not leq[np.diag_indices(n)].all():
            raise InternalVerificationFailed("order matrix must be reflexive")
        if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
            x, y = map(int, np.argwhere(leq & leq.T & ~np.eye(n, dtype=bool))[0])
            raise CycleDetected(f"elements {x} and {y} are mutually below each other", witness=(x, y))

        height = _heights(leq)
        degree = leq.sum(axis=0) + leq.sum(axis=1) - 2  # comparability degree
        perm = np.lexsort((np.arange(n), degree, height))
        leq = leq[np.ix_(perm, perm)]
        if labels is not None:
            labels = tuple(labels[int(i)] for i in perm)

        # a linear extension: anything below the diagonal violates it
        if (leq & np.tril(np.ones((n, n), dtype=bool), -1)).any():
            raise InternalVerificationFailed("normalization did not produce a linear extension")

        minimals = np.flatnonzero(leq.sum(axis=0) == 1)
        if len(minimals) != 1:
            a, b = int(minimals[0]), int(minimals[1])
            raise NotALattice(f"no bottom: elements {a} and {b} have no common lower bound", witness=(a, b))
        maximals = np.flatnonzero(leq.sum(axis=1) == 1)
        if len(maximals) != 1:
            a, b = int(maximals[0]), int(maximals[1])
            raise NotALattice(f"no top: elements {a} and {b} have no common upper bound", witness=(a, b))

        meet = np.empty((n, n), dtype=np.int32)
        join = np.empty((n, n), dtype=np.int32)
        for a in range(n):
            # common[x, b]: x is below both a and b
            common = leq[:, a, None] & leq
            cand = (n - 1) - np.argmax(common[::-1, :], axis=0)  # largest common index
            bad = common & ~leq[:, cand]
            if bad.any():
                b = int(np.flatnonzero(bad.any(axis=0))[0])
                raise NotALattice(f"elements {a} and {b} have no greatest lower bound", witness=(a, b))
            meet[a] = cand

            # upper[x, b]: x is above both a and b
            upper = leq[a][:, None] & leq.T
            cand = np.argmax(upper, axis=0)  # smallest common index
            bad = upper & ~leq[cand].T
            if bad.any():
                b = int(np.flatnonzero(bad.any(axis=0))[0])
                raise NotALattice(f"elements {a} and {b} have no least upper bound", witness=(a, b))
            join[a] = cand

        strict = leq & ~np.eye(n, dtype=bool)
        two_step = (strict.astype(np.float32) @ strict.astype(np.float32)) > 0
        cover_pairs = frozenset((int(a), int(b)) for a, b in np.argwhere(strict & ~two_step))

        lat = cls(leq, meet, join, cover_pairs, labels, name)
        lat._verify_tables()
        return lat, perm

    def _verify_tables(self) -> None:
        """Consistency checks; exhaustive algebra laws for small lattices."""
        n, meet, join, leq = self.n, self.meet_table, self.join_table, self.leq
        idx = np.arange(n)
        ok = (
            np.array_equal(meet, meet.T)
            and np.array_equal(join, join.T)
            and np.array_equal(meet[idx, idx], idx)
            and np.array_equal(join[idx, idx], idx)
            and np.array_equal(meet == idx[:, None], leq)
            and np.array_equal(join == idx[:, None], leq.T)
        )
        if not ok:
            raise InternalVerificationFailed("operation tables disagree with the order matrix")
        if n > _SELF_CHECK_LIMIT:
            return
        # associativity and absorption, all triples / pairs
        if not np.array_equal(meet[meet, :], meet[:, meet]):
            raise InternalVerificationFailed("meet is not associative")
        if not np.array_equal(join[join, :], join[:, join]):
            raise InternalVerificationFailed("join is not associative")
        if not (np.array_equal(join[idx[:, None], meet], np.broadcast_to(idx[:, None], (n, n)))
                and np.array_equal(meet[idx[:, None], join], np.broadcast_to(idx[:, None], (n, n)))):
            raise InternalVerificationFailed("absorption laws fail")

    # -- basic queries ---------------------------------------------------

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.n - 1

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    def meet(self, a: int, b: int) -> int:
        return int(self.meet_table[a, b])

    def join(self, a: int, b: int) -> int:
        return int(self.join_table[a, b])

    def down(self, a: int) -> np.ndarray:
        """Indices of all elements <= a, ascending."""
        return np.flatnonzero(self.leq[:, a])

    def up(self, a: int) -> np.ndarray:
        """Indices of all elements >= a, ascending."""
        return np.flatnonzero(self.leq[a, :])

    def atoms(self) -> list[int]:
        return sorted(b for (a, b) in self.covers if a == 0)

    def coatoms(self) -> list[int]:
        return sorted(a for (a, b) in self.covers if b == self.n - 1)

    def upper_covers(self, a: int) -> list[int]:
        return sorted(hi for (lo, hi) in self.covers if lo == a)

    def lower_covers(self, a: int) -> list[int]:
        return sorted(lo for (lo, hi) in self.covers if hi == a)

    def heights(self) -> np.ndarray:
        return _heights(self.leq)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteLattice):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.leq, other.leq)
            and self.labels == other.labels
        )

    __hash__ = None

    def __repr__(self) -> str:
        tag = f" {self.name!r}" if self.name else ""
        return f"<FiniteLattice{tag} n={self.n} covers={len(self.covers)}>"


def _heights(leq: np.ndarray) -> np.ndarray:
    """Length of a longest chain below each element (bottoms have height 0)."""
    n = leq.shape[0]
    height = np.zeros(n, dtype=np.int64)
    strict = leq & ~np.eye(n, dtype=bool)
    # x < y implies |down(x)| < |down(y)|, so this order is a linear extension
    for a in np.argsort(leq.sum(axis=0), kind="stable"):
        below = np.flatnonzero(strict[:, a])
        if len(below):
            height[a] = height[below].max() + 1
    return height


def from_covers(n: int, covers, *, name: str | None = None) -> FiniteLattice:
    """Build a lattice from its element count and cover pairs.

    The reflexive-transitive closure of the cover relation must be a lattice
    order; otherwise ``CycleDetected`` or ``NotALattice`` (with a witnessing
    pair) is raised. Indices are renumbered to the canonical linear extension.
    """
    if n < 1:
        raise ParameterOutOfRange("element count must be at least 1")
    rel = np.eye(n, dtype=bool)
    for a, b in covers:
        a, b = int(a), int(b)
        if not (0 <= a < n and 0 <= b < n):
            raise ParameterOutOfRange(f"cover ({a}, {b}) references an element outside 0..{n - 1}")
        if a == b:
            raise CycleDetected(f"self-loop on element {a}", witness=(a, a))
        rel[a, b] = True
    closure = _transitive_closure(rel)
    sym = closure & closure.T & ~np.eye(n, dtype=bool)
    if sym.any():
        x, y = map(int, np.argwhere(sym)[0])
        raise CycleDetected(f"cover cycle through elements {x} and {y}", witness=(x, y))
    lat, _ = FiniteLattice._build(closure, name=name)
    return lat


# -- catalog ------------------------------------------------------------


def standard(name: str, k: int | None = None) -> FiniteLattice:
    """Catalog of standard lattices: ``chain:k``, ``boolean:k``, ``m3``, ``n5``.

    ``chain`` is the k-element chain, ``boolean`` the lattice of subsets of a
    k-element set (capped at k <= 16), ``m3`` the diamond, ``n5`` the pentagon.
    """
    key = name.lower()
    if key == "chain":
        if k is None or k < 1:
            raise ParameterOutOfRange("chain needs k >= 1")
        _check_cap(k, None)
        leq = np.triu(np.ones((k, k), dtype=bool))
        lat, _ = FiniteLattice._build(leq, name=f"chain:{k}")
        return lat
    if key == "boolean":
        if k is None or k < 1:
            raise ParameterOutOfRange("boolean needs k >= 1")
        if k > 16:
            raise ParameterOutOfRange("boolean is capped at k <= 16")
        masks = np.arange(1 << k, dtype=np.uint32)
        leq = (masks[:, None] & ~masks[None, :]) == 0  # subset inclusion
        labels = tuple(tuple(i for i in range(k) if m >> i & 1) for m in masks)
        lat, _ = FiniteLattice._build(leq, labels=labels, name=f"boolean:{k}")
        return lat
    if key == "m3":
        if k is not None:
            raise ParameterOutOfRange("m3 takes no size parameter")
        return from_covers(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)], name="m3")
    if key == "n5":
        if k is not None:
            raise ParameterOutOfRange("n5 takes no size parameter")
        return from_covers(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)], name="n5")
    raise UnknownName(f"no lattice named {name!r} in the catalog")


# -- products -----------------------------------------------------------


def product_many(factors, *, max_elements: int | None = None) -> FiniteLattice:
    """Direct product of a sequence of lattices, labeled by coordinate tuples."""
    factors = list(factors)
    if not factors:
        raise ParameterOutOfRange("product needs at least one factor")
    size = 1
    for f in factors:
        size *= f.n
    _check_cap(size, max_elements)
    leq = np.ones((1, 1), dtype=bool)
    for f in factors:
        leq = np.kron(leq, f.leq)
    labels = tuple(itertools.product(*(range(f.n) for f in factors)))
    lat, _ = FiniteLattice._build(leq, labels=labels)
    return lat


def direct_product(a: FiniteLattice, b: FiniteLattice, *, max_elements: int | None = None) -> FiniteLattice:
    """Componentwise-ordered product of two lattices, labeled by index pairs."""
    return product_many([a, b], max_elements=max_elements)


# -- intervals and embeddings -------------------------------------------


@dataclass(frozen=True, eq=False)
class Embedding:
    """An injective, operation-preserving map between lattices.

    ``map[x]`` is the target index of source element x. Validation happens at
    construction: a non-injective or non-preserving map raises
    ``NotAnEmbedding``.
    """

    source: FiniteLattice
    target: FiniteLattice
    map: tuple

    def __post_init__(self):
        img = np.asarray(self.map, dtype=np.int64)
        if len(img) != self.source.n:
            raise NotAnEmbedding("map length differs from source size")
        if (img < 0).any() or (img >= self.target.n).any():
            raise NotAnEmbedding("map image leaves the target")
        if len(set(self.map)) != len(self.map):
            raise NotAnEmbedding("map is not injective")
        sm, tm = self.source.meet_table, self.target.meet_table
        sj, tj = self.source.join_table, self.target.join_table
        if not np.array_equal(img[sm], tm[np.ix_(img, img)]):
            bad = np.argwhere(img[sm] != tm[np.ix_(img, img)])[0]
            raise NotAnEmbedding(f"meet of pair {tuple(map(int, bad))} is not preserved")
        if not np.array_equal(img[sj], tj[np.ix_(img, img)]):
            bad = np.argwhere(img[sj] != tj[np.ix_(img, img)])[0]
            raise NotAnEmbedding(f"join of pair {tuple(map(int, bad))} is not preserved")

    @classmethod
    def identity(cls, lat: FiniteLattice) -> "Embedding":
        return cls(lat, lat, tuple(range(lat.n)))

    def __call__(self, x: int) -> int:
        return int(self.map[x])

    def __repr__(self) -> str:
        return f"<Embedding {self.source.n} -> {self.target.n}>"


def interval(lat: FiniteLattice, a: int, b: int) -> tuple[FiniteLattice, Embedding]:
    """The sublattice [a, b], plus its inclusion into the host.

    Raises ``NotComparable`` unless a <= b in the host.
    """
    if not lat.le(a, b):
        raise NotComparable(f"interval endpoints {a} and {b} are not ordered")
    members = np.flatnonzero(lat.leq[a, :] & lat.leq[:, b])
    sub_leq = lat.leq[np.ix_(members, members)]
    sub, _ = FiniteLattice._build(sub_leq, labels=tuple(int(m) for m in members))
    inclusion = Embedding(sub, lat, sub.labels)
    return sub, inclusion


# -- isomorphism --------------------------------------------------------


def _iso_profiles(lat: FiniteLattice) -> list[tuple]:
    height = lat.heights()
    upd = np.zeros(lat.n, dtype=np.int64)
    dnd = np.zeros(lat.n, dtype=np.int64)
    for lo, hi in lat.covers:
        upd[lo] += 1
        dnd[hi] += 1
    dsz = lat.leq.sum(axis=0)
    usz = lat.leq.sum(axis=1)
    return [
        (int(height[x]), int(upd[x]), int(dnd[x]), int(dsz[x]), int(usz[x]))
        for x in range(lat.n)
    ]


def are_isomorphic(a: FiniteLattice, b: FiniteLattice, *, max_elements: int | None = None) -> tuple | None:
    """Search for a lattice isomorphism; returns the bijection or ``None``.

    The search maps elements of ``a`` in index order, trying candidates in
    index order, so the returned bijection is deterministic (first found).
    Inputs beyond the configured element cap raise ``CapExceeded``.
    """
    cap = ISO_ELEMENT_CAP if max_elements is None else max_elements
    if a.n > cap or b.n > cap:
        raise CapExceeded(f"isomorphism search capped at {cap} elements per side")
    if a.n != b.n or len(a.covers) != len(b.covers):
        return None
    prof_a, prof_b = _iso_profiles(a), _iso_profiles(b)
    if sorted(prof_a) != sorted(prof_b):
        return None

    candidates = [[y for y in range(b.n) if prof_b[y] == prof_a[x]] for x in range(a.n)]
    mapping = [-1] * a.n
    used = [False] * b.n
    aleq, bleq = a.leq, b.leq
    amt, ajt = a.meet_table, a.join_table
    bmt, bjt = b.meet_table, b.join_table

    def extend(x: int) -> bool:
        if x == a.n:
            return True
        for y in candidates[x]:
            if used[y]:
                continue
            ok = True
            for z in range(x):
                fz = mapping[z]
                if aleq[x, z] != bleq[y, fz] or aleq[z, x] != bleq[fz, y]:
                    ok = False
                    break
                # prune by operations once the result is already mapped
                m = amt[x, z]
                if m < x and mapping[m] != bmt[y, fz]:
                    ok = False
                    break
                j = ajt[x, z]
                if j < x and mapping[j] != bjt[y, fz]:
                    ok = False
                    break
            if not ok:
                continue
            mapping[x] = y
            used[y] = True
            if extend(x + 1):
                return True
            mapping[x] = -1
            used[y] = False
        return False

    if not extend(0):
        return None
    img = np.asarray(mapping, dtype=np.int64)
    if not (np.array_equal(img[amt], bmt[np.ix_(img, img)]) and np.array_equal(img[ajt], bjt[np.ix_(img, img)])):
        raise InternalVerificationFailed("isomorphism search returned a non-isomorphism")
    return tuple(mapping)


# -- structural reports -------------------------------------------------


@dataclass(frozen=True)
class StructureReport:
    is_distributive: bool
    is_sectionally_complemented: bool
    atoms: tuple
    join_irreducibles: tuple
    meet_irreducibles: tuple
    nondistributive_witness: tuple | None = None


def _distributive_by_identity(lat: FiniteLattice) -> bool:
    meet, join = lat.meet_table, lat.join_table
    for a in range(lat.n):
        left = meet[a][join]                    # a /\ (b \/ c)
        u = meet[a]
        right = join[np.ix_(u, u)]              # (a /\ b) \/ (a /\ c)
        if not np.array_equal(left, right):
            return False
    return True


def _find_forbidden_sublattice(lat: FiniteLattice) -> tuple | None:
    """A pentagon or diamond sublattice if one exists, else ``None``."""
    n, leq = lat.n, lat.leq
    meet, join = lat.meet_table, lat.join_table
    strict = leq & ~np.eye(n, dtype=bool)
    incomp = ~(leq | leq.T)
    for z in range(n):
        eqm = meet[z][:, None] == meet[z][None, :]
        eqj = join[z][:, None] == join[z][None, :]
        cand = strict & eqm & eqj
        cand[z, :] = False
        cand[:, z] = False
        hit = np.argwhere(cand)
        if len(hit):
            x, y = map(int, hit[0])
            return ("pentagon", int(meet[z, x]), x, y, z, int(join[z, x]))
    for x in range(n):
        for y in range(x + 1, n):
            if not incomp[x, y]:
                continue
            m, j = meet[x, y], join[x, y]
            zs = (
                (meet[x] == m) & (meet[y] == m) & (join[x] == j) & (join[y] == j)
                & incomp[x] & incomp[y]
            )
            zs[x] = zs[y] = False
            z = np.flatnonzero(zs)
            if len(z):
                return ("diamond", int(m), x, y, int(z[0]), int(j))
    return None


def structure_report(lat: FiniteLattice) -> StructureReport:
    """Distributivity, sectional complementation, and the irreducible elements.

    Distributivity is decided twice, by the identity on all triples and by a
    forbidden-sublattice search; the two must agree or the toolkit aborts.
    """
    witness = _find_forbidden_sublattice(lat)
    by_identity = _distributive_by_identity(lat)
    if by_identity != (witness is None):
        raise InternalVerificationFailed("distributivity algorithms disagree")

    lower_count = np.zeros(lat.n, dtype=np.int64)
    upper_count = np.zeros(lat.n, dtype=np.int64)
    for lo, hi in lat.covers:
        upper_count[lo] += 1
        lower_count[hi] += 1
    ji = tuple(int(x) for x in np.flatnonzero(lower_count == 1))
    mi = tuple(int(x) for x in np.flatnonzero(upper_count == 1))

    meet, join = lat.meet_table, lat.join_table
    sect = True
    for b in range(lat.n):
        members = lat.down(b)
        sub_meet = meet[np.ix_(members, members)]
        sub_join = join[np.ix_(members, members)]
        has_complement = ((sub_meet == 0) & (sub_join == b)).any(axis=1)
        if not has_complement.all():
            sect = False
            break

    return StructureReport(
        is_distributive=witness is None,
        is_sectionally_complemented=sect,
        atoms=tuple(lat.atoms()),
        join_irreducibles=ji,
        meet_irreducibles=mi,
        nondistributive_witness=witness,
    )


# -- posets and Birkhoff duality -----------------------------------------


@dataclass(frozen=True, eq=False)
class Poset:
    """A finite poset as a reflexive order matrix; no lattice laws assumed."""

    n: int
    leq: np.ndarray
    labels: tuple | None = None

    def __post_init__(self):
        leq = _as_bool_matrix(self.leq)
        if leq.shape[0] != self.n:
            raise ParameterOutOfRange("order matrix size differs from element count")
        if not leq[np.diag_indices(self.n)].all():
            raise ParameterOutOfRange("poset order must be reflexive")
        if (leq & leq.T & ~np.eye(self.n, dtype=bool)).any():
            x, y = map(int, np.argwhere(leq & leq.T & ~np.eye(self.n, dtype=bool))[0])
            raise CycleDetected(f"elements {x} and {y} are mutually below each other", witness=(x, y))
        closed = _transitive_closure(leq)
        if not np.array_equal(closed, leq):
            raise ParameterOutOfRange("poset order must be transitive")
        leq.setflags(write=False)
        object.__setattr__(self, "leq", leq)

    @classmethod
    def from_lt(cls, n: int, pairs, labels=None) -> "Poset":
        """Poset from strict-order generator pairs; cycles are rejected."""
        if n < 0:
            raise ParameterOutOfRange("poset size must be nonnegative")
        rel = np.eye(n, dtype=bool)
        for a, b in pairs:
            a, b = int(a), int(b)
            if not (0 <= a < n and 0 <= b < n):
                raise ParameterOutOfRange(f"pair ({a}, {b}) references an element outside 0..{n - 1}")
            if a == b:
                raise CycleDetected(f"self-loop on element {a}", witness=(a, a))
            rel[a, b] = True
        closure = _transitive_closure(rel)
        sym = closure & closure.T & ~np.eye(n, dtype=bool)
        if sym.any():
            x, y = map(int, np.argwhere(sym)[0])
            raise CycleDetected(f"order cycle through elements {x} and {y}", witness=(x, y))
        return cls(n, closure, tuple(labels) if labels is not None else None)

    @classmethod
    def antichain(cls, n: int) -> "Poset":
        return cls.from_lt(n, [])

    @classmethod
    def chain(cls, n: int) -> "Poset":
        return cls.from_lt(n, [(i, i + 1) for i in range(n - 1)])

    def lt_pairs(self) -> list[tuple[int, int]]:
        strict = self.leq & ~np.eye(self.n, dtype=bool)
        return [(int(a), int(b)) for a, b in np.argwhere(strict)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.leq, other.leq)

    __hash__ = None


def downset_lattice(poset: Poset, *, max_elements: int | None = None) -> FiniteLattice:
    """The lattice of down-sets of a poset, ordered by inclusion.

    Elements are labeled by the sorted tuple of poset indices they contain.
    Always distributive; this is verified at construction.
    """
    n = poset.n
    if n > _DOWNSET_POSET_CAP:
        raise CapExceeded(f"down-set enumeration capped at posets of {_DOWNSET_POSET_CAP} elements")
    down_mask = np.zeros(n, dtype=np.int64)
    for e in range(n):
        down_mask[e] = int(sum(1 << int(x) for x in np.flatnonzero(poset.leq[:, e])))
    masks = []
    for m in range(1 << n):
        need = 0
        for e in range(n):
            if m >> e & 1:
                need |= int(down_mask[e])
        if need == m:
            masks.append(m)
    _check_cap(len(masks), max_elements)
    arr = np.asarray(masks, dtype=np.int64)
    leq = (arr[:, None] & ~arr[None, :]) == 0
    labels = tuple(tuple(e for e in range(n) if m >> e & 1) for m in masks)
    lat, _ = FiniteLattice._build(leq, labels=labels)
    if not _distributive_by_identity(lat):
        raise InternalVerificationFailed("a down-set lattice must be distributive")
    return lat


def ji_poset(lat: FiniteLattice) -> Poset:
    """The poset of join-irreducible elements of a distributive lattice.

    Raises ``NotDistributive`` otherwise. Labels carry the original element
    indices, so ``downset_lattice(ji_poset(D))`` is isomorphic to ``D``.
    """
    report = structure_report(lat)
    if not report.is_distributive:
        raise NotDistributive("join-irreducible poset is only taken for distributive lattices")
    ji = list(report.join_irreducibles)
    sub = lat.leq[np.ix_(ji, ji)].copy()
    return Poset(len(ji), sub, labels=tuple(ji))
