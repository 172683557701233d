"""Congruences of finite lattices and the classification machinery on them.

A congruence is stored as a block map: ``block_of[x]`` is the block id of
element x, with ids normalized so that they increase with the least element
of each block. Construction verifies compatibility with meet and join
exhaustively and checks that every block is an interval, so an invalid
partition can never circulate.

Principal congruences are computed by a union-find fixpoint: starting from the
generating pair, every pair ever unioned is revisited and its meets and joins
with all elements are unioned too, until nothing changes. The full congruence
lattice is the join closure of the principal congruences of cover pairs.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import (
    Embedding,
    FiniteLattice,
    are_isomorphic,
    interval,
    standard,
)
from .errors import (
    CapExceeded,
    FunctionSpaceCapExceeded,
    InternalVerificationFailed,
    ParameterOutOfRange,
)

# Hosts larger than this refuse congruence enumeration.
DEFAULT_CON_HOST_CAP = 3_000
# Unary polynomial closure stops growing past this many functions.
DEFAULT_FUNCTION_CAP = 100_000


def _normalize_blocks(block_of) -> tuple[int, ...]:
    """Relabel block ids in order of first occurrence (= least member)."""
    seen: dict[int, int] = {}
    out = []
    for b in block_of:
        b = int(b)
        if b not in seen:
            seen[b] = len(seen)
        out.append(seen[b])
    return tuple(out)


class Congruence:
    """A verified congruence of ``host``.

    ``block_of[x]`` gives the block of element x; ids increase with the least
    element of each block, so block 0 always contains the bottom.
    """

    __slots__ = ("host", "block_of", "num_blocks")

    def __init__(self, host: FiniteLattice, block_of):
        self.host = host
        self.block_of = _normalize_blocks(block_of)
        if len(self.block_of) != host.n:
            raise ParameterOutOfRange("block map length differs from host size")
        self.num_blocks = max(self.block_of) + 1
        self._verify()

    def _verify(self) -> None:
        host = self.host
        blocks = np.asarray(self.block_of, dtype=np.int64)
        rep = np.zeros(self.num_blocks, dtype=np.int64)
        for x in range(host.n - 1, -1, -1):
            rep[blocks[x]] = x
        rep_of = rep[blocks]
        bm = blocks[host.meet_table]
        bj = blocks[host.join_table]
        # a ~ b forces meet(a, z) ~ meet(b, z) for every z, same for join
        if not (np.array_equal(bm, bm[rep_of]) and np.array_equal(bj, bj[rep_of])):
            raise InternalVerificationFailed("partition is not compatible with the operations")
        # every block must be the interval between its own bounds
        for b in range(self.num_blocks):
            members = np.flatnonzero(blocks == b)
            lo = members[0]
            hi = members[-1]
            span = np.flatnonzero(host.leq[lo] & host.leq[:, hi])
            if not np.array_equal(members, span):
                raise InternalVerificationFailed(f"block {b} is not an interval")
            if host.meet_table[lo, hi] != lo or host.join_table[lo, hi] != hi:
                raise InternalVerificationFailed(f"block {b} bounds are not ordered")

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for x, b in enumerate(self.block_of):
            out[b].append(x)
        return out

    def related(self, a: int, b: int) -> bool:
        return self.block_of[a] == self.block_of[b]

    def is_identity(self) -> bool:
        return self.num_blocks == self.host.n

    def is_full(self) -> bool:
        return self.num_blocks == 1

    def refines(self, other: "Congruence") -> bool:
        mine = self.block_of
        rep_block = {}
        for x, b in enumerate(mine):
            if b not in rep_block:
                rep_block[b] = other.block_of[x]
            elif rep_block[b] != other.block_of[x]:
                return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, Congruence):
            return NotImplemented
        return self.host is other.host and self.block_of == other.block_of

    def __hash__(self) -> int:
        return hash(self.block_of)

    def __repr__(self) -> str:
        parts = "|".join("".join(str(x) for x in blk) if self.host.n <= 10 else
                         ",".join(str(x) for x in blk) for blk in self.blocks())
        return f"<Congruence {parts}>"


def identity_congruence(host: FiniteLattice) -> Congruence:
    return Congruence(host, tuple(range(host.n)))


def full_congruence(host: FiniteLattice) -> Congruence:
    return Congruence(host, (0,) * host.n)


def principal(host: FiniteLattice, a: int, b: int) -> Congruence:
    """The smallest congruence collapsing a and b.

    Union-find fixpoint: every directly unioned pair gets its meets and joins
    with all elements unioned as well; a chain argument extends the closure
    property to whole classes, so revisiting only directly unioned pairs is
    enough.
    """
    n = host.n
    if not (0 <= a < n and 0 <= b < n):
        raise ParameterOutOfRange("principal pair references elements outside the host")
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> bool:
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        parent[max(rx, ry)] = min(rx, ry)
        return True

    meet, join = host.meet_table, host.join_table
    work = []
    if union(a, b):
        work.append((a, b))
    while work:
        x, y = work.pop()
        for z in range(n):
            p, q = int(meet[x, z]), int(meet[y, z])
            if union(p, q):
                work.append((p, q))
            p, q = int(join[x, z]), int(join[y, z])
            if union(p, q):
                work.append((p, q))
    return Congruence(host, tuple(find(x) for x in range(n)))


def _join_block_maps(n: int, b1, b2) -> tuple[int, ...]:
    """Join of two partitions as equivalences (transitive closure of the union)."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    first_of: dict[tuple[int, int], int] = {}
    for x in range(n):
        for key in ((0, b1[x]), (1, b2[x])):
            if key in first_of:
                rx, ry = find(x), find(first_of[key])
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)
            else:
                first_of[key] = x
    return tuple(find(x) for x in range(n))


@dataclass(frozen=True, eq=False)
class ConLattice:
    """The congruence lattice of a host lattice.

    ``congruences[i]`` corresponds to element i of ``lattice``, which is
    ordered by refinement; index 0 is the identity congruence and the last
    index is the full congruence. ``ji_indices`` are the join-irreducible
    elements of ``lattice``.
    """

    host: FiniteLattice
    congruences: tuple
    lattice: FiniteLattice
    ji_indices: tuple

    def __len__(self) -> int:
        return len(self.congruences)

    def index_of(self, theta: Congruence) -> int:
        return self._index[theta.block_of]

    def __repr__(self) -> str:
        return f"<ConLattice host={self.host.n} size={len(self.congruences)}>"


def con_lattice(host: FiniteLattice, *, max_host: int | None = None) -> ConLattice:
    """Enumerate all congruences: principal congruences of cover pairs, then
    closure under join.

    The result's ``lattice`` field is always distributive; this is verified.
    """
    cap = DEFAULT_CON_HOST_CAP if max_host is None else max_host
    if host.n > cap:
        raise CapExceeded(f"congruence enumeration capped at hosts of {cap} elements")

    found: dict[tuple[int, ...], Congruence] = {}
    ident = identity_congruence(host)
    found[ident.block_of] = ident
    for lo, hi in sorted(host.covers):
        theta = principal(host, lo, hi)
        found.setdefault(theta.block_of, theta)

    frontier = list(found.values())
    while frontier:
        fresh = []
        existing = list(found.values())
        for a in frontier:
            for b in existing:
                joined = _join_block_maps(host.n, a.block_of, b.block_of)
                joined = _normalize_blocks(joined)
                if joined not in found:
                    theta = Congruence(host, joined)
                    found[theta.block_of] = theta
                    fresh.append(theta)
        frontier = fresh

    # finer congruences first; ties broken by the block map itself
    cons = sorted(found.values(), key=lambda t: (host.n - t.num_blocks, t.block_of))
    k = len(cons)
    refines = np.zeros((k, k), dtype=bool)
    reps = []
    for t in cons:
        blocks = np.asarray(t.block_of)
        rep = np.zeros(t.num_blocks, dtype=np.int64)
        for x in range(host.n - 1, -1, -1):
            rep[blocks[x]] = x
        reps.append(rep[blocks])
    maps = [np.asarray(t.block_of) for t in cons]
    for i in range(k):
        for j in range(k):
            refines[i, j] = np.array_equal(maps[j], maps[j][reps[i]])

    lattice, perm = FiniteLattice._build(refines)
    cons = [cons[int(p)] for p in perm]

    lower_count = np.zeros(k, dtype=np.int64)
    for lo, hi in lattice.covers:
        lower_count[hi] += 1
    ji = tuple(int(x) for x in np.flatnonzero(lower_count == 1))

    result = ConLattice(host, tuple(cons), lattice, ji)
    object.__setattr__(result, "_index", {t.block_of: i for i, t in enumerate(cons)})

    from .core import structure_report  # local import avoids a cycle at module load

    if not structure_report(lattice).is_distributive:
        raise InternalVerificationFailed("a congruence lattice must be distributive")
    if not cons[0].is_identity() or not cons[-1].is_full():
        raise InternalVerificationFailed("congruence lattice bounds are wrong")
    return result


def quotient(host: FiniteLattice, theta: Congruence) -> tuple[FiniteLattice, tuple[int, ...]]:
    """The quotient lattice and the block map onto it."""
    if theta.host is not host:
        raise ParameterOutOfRange("congruence belongs to a different host")
    k = theta.num_blocks
    onehot = np.zeros((host.n, k), dtype=np.int32)
    onehot[np.arange(host.n), np.asarray(theta.block_of)] = 1
    block_leq = (onehot.T @ host.leq.astype(np.float32) @ onehot) > 0
    lat, perm = FiniteLattice._build(block_leq)
    inv = np.empty(k, dtype=np.int64)
    inv[perm] = np.arange(k)
    block_map = tuple(int(inv[b]) for b in theta.block_of)
    bm = np.asarray(block_map)
    if not (np.array_equal(bm[host.meet_table], lat.meet_table[np.ix_(bm, bm)])
            and np.array_equal(bm[host.join_table], lat.join_table[np.ix_(bm, bm)])):
        raise InternalVerificationFailed("quotient map is not a homomorphism")
    return lat, block_map


# -- classification -----------------------------------------------------


@dataclass(frozen=True)
class ClassifyResult:
    is_regular: bool
    is_uniform: bool
    is_isoform: bool
    is_simple: bool
    witnesses: tuple
    con_size: int


def classify(host: FiniteLattice, *, max_host: int | None = None) -> ClassifyResult:
    """Regular / uniform / isoform / simple, with witnesses for each failure.

    A witness is a dict naming the failing check, the congruence index, and
    the blocks that exhibit the failure.
    """
    con = con_lattice(host, max_host=max_host)
    witnesses: list[dict] = []
    regular = uniform = isoform = True

    for i, theta in enumerate(con.congruences):
        blocks = theta.blocks()
        sizes = {len(b) for b in blocks}
        if len(sizes) > 1:
            uniform = False
            small = min(blocks, key=len)
            big = max(blocks, key=len)
            witnesses.append({
                "check": "uniform", "congruence": i,
                "detail": f"classes of sizes {len(small)} and {len(big)} (least elements {small[0]}, {big[0]})",
            })

        base = None
        for blk in blocks:
            cls_lat, _ = interval(host, blk[0], blk[-1])
            if base is None:
                base = (blk, cls_lat)
                continue
            if are_isomorphic(base[1], cls_lat) is None:
                isoform = False
                witnesses.append({
                    "check": "isoform", "congruence": i,
                    "detail": f"classes at {base[0][0]} and {blk[0]} are not isomorphic",
                })
                break

        for blk in blocks:
            generated = principal(host, blk[0], blk[-1])
            if generated.block_of != theta.block_of:
                regular = False
                witnesses.append({
                    "check": "regular", "congruence": i,
                    "detail": f"smallest congruence with class at {blk[0]} is strictly finer",
                })
                break

    simple = len(con.congruences) == 2 and host.n >= 2
    return ClassifyResult(
        is_regular=regular,
        is_uniform=uniform,
        is_isoform=isoform,
        is_simple=simple,
        witnesses=tuple(witnesses),
        con_size=len(con.congruences),
    )


@dataclass(frozen=True)
class PermutabilityResult:
    ok: bool
    witness: tuple | None  # (theta_index, phi_index, a, b) breaking permutability


def is_congruence_permutable(host: FiniteLattice, *, max_host: int | None = None) -> PermutabilityResult:
    """Do all pairs of congruences permute under relational composition?

    The witness, if any, is the lexicographically least (theta index,
    phi index, a, b) with a related to b by theta-then-phi but not by
    phi-then-theta.
    """
    con = con_lattice(host, max_host=max_host)
    rels = []
    for theta in con.congruences:
        b = np.asarray(theta.block_of)
        rels.append((b[:, None] == b[None, :]).astype(np.int32))
    for i in range(len(rels)):
        for j in range(len(rels)):
            if i == j:
                continue
            comp_ij = (rels[i] @ rels[j]) > 0
            comp_ji = (rels[j] @ rels[i]) > 0
            diff = comp_ij & ~comp_ji
            if diff.any():
                a, b = map(int, np.argwhere(diff)[0])
                return PermutabilityResult(ok=False, witness=(i, j, a, b))
    return PermutabilityResult(ok=True, witness=None)


# -- algebraic isoformity ------------------------------------------------


@dataclass(frozen=True)
class AlgIsoformResult:
    ok: bool
    certificate: dict | None  # (congruence index, class least element) -> polynomial
    witness: tuple | None     # (congruence index, class least element) with no polynomial


def _polynomial_certifies(host: FiniteLattice, func: np.ndarray, zero_class: np.ndarray,
                          target_class: np.ndarray) -> bool:
    img = func[zero_class]
    if len(np.unique(img)) != len(img):
        return False
    if not np.array_equal(np.sort(img), target_class):
        return False
    # an order isomorphism of finite lattices preserves meet and join
    return np.array_equal(
        host.leq[np.ix_(zero_class, zero_class)],
        host.leq[np.ix_(img, img)],
    )


def is_algebraically_isoform(host: FiniteLattice, *, max_functions: int | None = None,
                             max_host: int | None = None) -> AlgIsoformResult:
    """Is every congruence class the image of the bottom class under a unary
    polynomial isomorphism?

    Unary polynomials are generated from the identity and the constants by
    pointwise meet and join. A positive answer can be certified from a partial
    closure; a negative answer needs either a class-size obstruction or the
    complete closure. If the function cap is hit first, the check is
    inconclusive and ``FunctionSpaceCapExceeded`` is raised.
    """
    cap = DEFAULT_FUNCTION_CAP if max_functions is None else max_functions
    con = con_lattice(host, max_host=max_host)
    n = host.n

    needed: list[tuple[int, int, np.ndarray, np.ndarray]] = []
    for i, theta in enumerate(con.congruences):
        blocks = theta.blocks()
        zero_class = np.asarray(blocks[0])
        for blk in blocks:
            if len(blk) != len(zero_class):
                # no bijection can exist, let alone a polynomial one
                return AlgIsoformResult(ok=False, certificate=None, witness=(i, blk[0]))
            needed.append((i, blk[0], zero_class, np.asarray(blk)))

    pool: list[np.ndarray] = [np.arange(n, dtype=np.int32)]
    exprs: list[str] = ["x"]
    seen: dict[bytes, int] = {pool[0].tobytes(): 0}
    for c in range(n):
        f = np.full(n, c, dtype=np.int32)
        key = f.tobytes()
        if key not in seen:
            seen[key] = len(pool)
            pool.append(f)
            exprs.append(f"const({c})")

    certificate: dict[tuple[int, int], str] = {}
    open_needs = list(range(len(needed)))

    def absorb(start: int) -> None:
        nonlocal open_needs
        still = []
        for t in open_needs:
            i, rep, zc, tc = needed[t]
            hit = None
            for fi in range(start, len(pool)):
                if _polynomial_certifies(host, pool[fi], zc, tc):
                    hit = fi
                    break
            if hit is None:
                still.append(t)
            else:
                certificate[(i, rep)] = exprs[hit]
        open_needs = still

    absorb(0)
    frontier = list(range(len(pool)))
    meet, join = host.meet_table, host.join_table
    while open_needs and frontier:
        first_new = len(pool)
        snapshot = len(pool)
        for fi in frontier:
            for gi in range(snapshot):
                for table, tag in ((meet, "meet"), (join, "join")):
                    h = table[pool[fi], pool[gi]]
                    key = h.tobytes()
                    if key not in seen:
                        if len(pool) >= cap:
                            raise FunctionSpaceCapExceeded(
                                f"polynomial closure passed {cap} functions with "
                                f"{len(open_needs)} classes still unresolved")
                        seen[key] = len(pool)
                        pool.append(h)
                        exprs.append(f"{tag}({exprs[fi]}, {exprs[gi]})")
        absorb(first_new)
        frontier = list(range(first_new, len(pool)))

    if open_needs:
        i, rep, _, _ = needed[open_needs[0]]
        return AlgIsoformResult(ok=False, certificate=None, witness=(i, rep))
    return AlgIsoformResult(ok=True, certificate=certificate, witness=None)


# -- atom generation properties -------------------------------------------


@dataclass(frozen=True)
class PQResult:
    p_holds: bool
    q_holds: bool
    witnesses: tuple


def check_properties_PQ(host: FiniteLattice, *, max_host: int | None = None) -> PQResult:
    """Two atom-generation properties of the congruence structure.

    P: every join-irreducible congruence is generated by (bottom, atom) for
    some atom. Q: every antichain of join-irreducible congruences is realized
    by distinct atoms whose generated ideal is a boolean lattice.
    """
    con = con_lattice(host, max_host=max_host)
    atoms = host.atoms()
    realizers: dict[int, list[int]] = {i: [] for i in con.ji_indices}
    for a in atoms:
        theta = principal(host, 0, a)
        i = con.index_of(theta)
        if i in realizers:
            realizers[i].append(a)

    witnesses: list[dict] = []
    p_holds = True
    for i in con.ji_indices:
        if not realizers[i]:
            p_holds = False
            witnesses.append({"check": "P", "congruence": i,
                              "detail": "no atom generates this join-irreducible congruence"})

    q_holds = True
    leq = con.lattice.leq
    jis = list(con.ji_indices)
    for r in range(1, len(jis) + 1):
        for combo in itertools.combinations(jis, r):
            if any(leq[a, b] or leq[b, a] for a, b in itertools.combinations(combo, 2)):
                continue  # not an antichain
            ok = False
            for picks in itertools.product(*(realizers[i] for i in combo)):
                if len(set(picks)) != len(picks):
                    continue
                top = 0
                for p in picks:
                    top = host.join(top, p)
                ideal, _ = interval(host, 0, top)
                if are_isomorphic(ideal, standard("boolean", r)) is not None:
                    ok = True
                    break
            if not ok:
                q_holds = False
                witnesses.append({"check": "Q", "congruence": combo,
                                  "detail": "no atom family realizes this antichain as a boolean ideal"})
    return PQResult(p_holds=p_holds, q_holds=q_holds, witnesses=tuple(witnesses))


# -- congruence-preserving extensions --------------------------------------


@dataclass(frozen=True)
class CpeResult:
    ok: bool
    extension_counts: tuple  # per source congruence, in source enumeration order


def is_cpe(emb: Embedding, *, max_host: int | None = None) -> CpeResult:
    """Is the embedding a congruence-preserving extension?

    Counts, for each congruence of the source, how many congruences of the
    target restrict to it; the embedding is congruence-preserving exactly when
    every count is 1. When it is, the congruence lattices must be isomorphic,
    which is asserted.
    """
    con_s = con_lattice(emb.source, max_host=max_host)
    con_t = con_lattice(emb.target, max_host=max_host)
    img = np.asarray(emb.map)
    counts = [0] * len(con_s.congruences)
    for tau in con_t.congruences:
        tb = np.asarray(tau.block_of)
        restricted = _normalize_blocks(tb[img])
        try:
            counts[con_s.index_of(Congruence(emb.source, restricted))] += 1
        except KeyError:
            raise InternalVerificationFailed(
                "restriction of a congruence is not a source congruence")
    ok = all(c == 1 for c in counts)
    if ok and are_isomorphic(con_s.lattice, con_t.lattice) is None:
        raise InternalVerificationFailed(
            "congruence-preserving extension with non-isomorphic congruence lattices")
    return CpeResult(ok=ok, extension_counts=tuple(counts))
