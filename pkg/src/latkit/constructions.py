"""Pruned products, two-factor prunings, and congruence-preserving machinery.

Two pruning constructions live here. ``n_construction(A, B)`` orders A x B by
the product order minus every comparability between pairs whose A-coordinates
are both interior (neither bound of A) and whose B-coordinates differ.
``pruned_product`` generalizes over a poset P of positions with a separable
lattice at each position: a <= b requires the product order plus, for every
p < p' in P, that a and b sitting on the separator at p agree at p'.

Both constructions verify the result is a lattice rather than trusting any
formula, and both record which product cover edges the pruning removed (for
dashed-edge rendering downstream). The per-pair formulas ``nab_formula_*``
and ``theorem_join`` / ``theorem_meet`` are implemented independently of the
tables precisely so the two can be played against each other in tests.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .congruence import con_lattice, classify, quotient
from .core import (
    Embedding,
    FiniteLattice,
    Poset,
    are_isomorphic,
    from_covers,
    ji_poset,
    product_many,
    standard,
    structure_report,
    _check_cap,
)
from .enumeration import ENUMERATION_CAP, enumerate_lattices
from .errors import (
    BudgetExhausted,
    CapExceeded,
    ComparableInput,
    InternalVerificationFailed,
    NotALattice,
    NotALatticeUnderPruning,
    NotAnEmbedding,
    NotDistributive,
    NotSeparable,
    ParameterOutOfRange,
    VerificationFailed,
)

# Distributive targets with more join-irreducibles than this are refused.
DEFAULT_JI_BOUND = 6
# How many extra elements the simple-extension search may add.
DEFAULT_EXTENSION_BUDGET = 4


# -- shared product plumbing ----------------------------------------------


def _product_order(factor_leqs) -> np.ndarray:
    leq = np.ones((1, 1), dtype=bool)
    for f in factor_leqs:
        leq = np.kron(leq, f)
    return leq


def _coordinates(sizes) -> np.ndarray:
    """coords[p, i] = p-th coordinate of product element i (row-major)."""
    total = int(np.prod(sizes))
    coords = np.empty((len(sizes), total), dtype=np.int64)
    stride = total
    for p, s in enumerate(sizes):
        stride //= s
        coords[p] = (np.arange(total) // stride) % s
    return coords


def _cover_pairs(leq: np.ndarray) -> set:
    strict = leq & ~np.eye(leq.shape[0], dtype=bool)
    red = strict & ~((strict.astype(np.float32) @ strict.astype(np.float32)) > 0)
    return {(int(a), int(b)) for a, b in np.argwhere(red)}


def _finish_pruned(pruned_leq, product_leq, labels, name, error_cls):
    """Build the lattice, then record which product covers went missing."""
    n = pruned_leq.shape[0]
    reach = (pruned_leq.astype(np.int32) @ pruned_leq.astype(np.int32)) > 0
    broken = reach & ~pruned_leq
    if broken.any():
        u, v = map(int, np.argwhere(broken)[0])
        raise error_cls(
            f"pruned order is not transitive at elements {u} and {v}", witness=(u, v))
    try:
        lat, perm = FiniteLattice._build(pruned_leq, labels=labels, name=name)
    except NotALattice as exc:
        raise error_cls(f"pruned order is not a lattice: {exc}", witness=exc.witness) from exc
    inv = np.empty(n, dtype=np.int64)
    inv[perm] = np.arange(n)
    absent = []
    for u, v in _cover_pairs(product_leq):
        edge = (int(inv[u]), int(inv[v]))
        if edge not in lat.covers:
            absent.append(edge)
    lat.pruned_edges = tuple(sorted(absent))
    return lat


# -- the two-factor construction ------------------------------------------


def _interior_mask(lat: FiniteLattice) -> np.ndarray:
    mask = np.ones(lat.n, dtype=bool)
    mask[0] = mask[lat.n - 1] = False
    return mask


def n_construction(a: FiniteLattice, b: FiniteLattice, *,
                   max_elements: int | None = None) -> FiniteLattice:
    """Order A x B by the product order minus the interior-A comparabilities.

    A pair of product elements loses its comparability exactly when both have
    interior first coordinates (neither the bottom nor the top of A) and their
    second coordinates differ. Elements are labeled by their (A, B) index
    pairs; removed product cover edges are recorded in ``pruned_edges``.
    """
    _check_cap(a.n * b.n, max_elements)
    product_leq = _product_order([a.leq, b.leq])
    coords = _coordinates([a.n, b.n])
    interior = _interior_mask(a)[coords[0]]
    differs = coords[1][:, None] != coords[1][None, :]
    deleted = product_leq & interior[:, None] & interior[None, :] & differs
    labels = tuple(itertools.product(range(a.n), range(b.n)))
    try:
        return _finish_pruned(product_leq & ~deleted, product_leq, labels,
                              None, NotALatticeUnderPruning)
    except NotALatticeUnderPruning as exc:
        # this construction is a lattice for every A and B; reaching here is a bug
        raise InternalVerificationFailed(str(exc)) from exc


def _nab_comparable(a: FiniteLattice, b: FiniteLattice, u, v) -> bool:
    ua, ub = u
    va, vb = v
    both_interior = 0 < ua < a.n - 1 and 0 < va < a.n - 1
    if a.le(ua, va) and b.le(ub, vb) and not (both_interior and ub != vb):
        return True
    if a.le(va, ua) and b.le(vb, ub) and not (both_interior and ub != vb):
        return True
    return False


def _check_nab_pair(a: FiniteLattice, b: FiniteLattice, u, v) -> None:
    for coord, lat, side in ((u[0], a, "first"), (v[0], a, "first"),
                             (u[1], b, "second"), (v[1], b, "second")):
        if not 0 <= coord < lat.n:
            raise ParameterOutOfRange(f"{side} coordinate {coord} outside the factor")
    if _nab_comparable(a, b, u, v):
        raise ComparableInput(f"pair {u}, {v} is comparable; the formula covers incomparable pairs")


def nab_formula_meet(a: FiniteLattice, b: FiniteLattice, u, v) -> tuple[int, int]:
    """Case formula for the meet of an incomparable pair of ``n_construction(a, b)``.

    The componentwise meet stands unless it lands on an interior A-coordinate
    while the B-coordinates differ, in which case the A-coordinate drops to
    the bottom.
    """
    _check_nab_pair(a, b, u, v)
    ma = a.meet(u[0], v[0])
    mb = b.meet(u[1], v[1])
    if 0 < ma < a.n - 1 and u[1] != v[1]:
        return (0, mb)
    return (ma, mb)


def nab_formula_join(a: FiniteLattice, b: FiniteLattice, u, v) -> tuple[int, int]:
    """Dual case formula for the join of an incomparable pair."""
    _check_nab_pair(a, b, u, v)
    ja = a.join(u[0], v[0])
    jb = b.join(u[1], v[1])
    if 0 < ja < a.n - 1 and u[1] != v[1]:
        return (a.n - 1, jb)
    return (ja, jb)


# -- pruned products over a position poset ---------------------------------


@dataclass(frozen=True, eq=False)
class SeparableFactor:
    """A lattice with a designated separator v satisfying 0 -< v -< 1."""

    lattice: FiniteLattice
    separator: int

    def __post_init__(self):
        lat, v = self.lattice, self.separator
        if lat.n < 3:
            raise NotSeparable("a separable lattice needs at least 3 elements")
        if (0, v) not in lat.covers or (v, lat.n - 1) not in lat.covers:
            raise NotSeparable(f"element {v} is not both an atom and a coatom")


def default_separator(lat: FiniteLattice) -> SeparableFactor:
    """Designate the least-index element that is both an atom and a coatom."""
    for v in lat.atoms():
        if (v, lat.n - 1) in lat.covers:
            return SeparableFactor(lat, v)
    raise NotSeparable("lattice has no element covering the bottom and covered by the top")


@dataclass(frozen=True, eq=False)
class PrunedProductSpec:
    """A poset of positions with a separable factor at each position."""

    poset: Poset
    factors: tuple

    def __post_init__(self):
        if len(self.factors) != self.poset.n:
            raise ParameterOutOfRange("one factor is needed per poset position")
        object.__setattr__(self, "factors", tuple(self.factors))


def pruned_product(spec: PrunedProductSpec, *, max_elements: int | None = None) -> FiniteLattice:
    """The product of the factors minus the separator-pinned comparabilities.

    a <= b holds when a is componentwise below b and, for every pair of
    positions p < p' in the poset, a and b agreeing on the separator at p
    forces them to agree at p'. The result's ``labels`` are coordinate tuples
    and ``pruned_edges`` lists the removed product cover edges. A pruning that
    destroys the order or a meet is escalated as a verification failure.
    """
    sizes = [f.lattice.n for f in spec.factors]
    total = int(np.prod(sizes))
    _check_cap(total, max_elements)
    product_leq = _product_order([f.lattice.leq for f in spec.factors])
    coords = _coordinates(sizes)
    pruned = product_leq.copy()
    k = spec.poset.n
    for p in range(k):
        sep = coords[p] == spec.factors[p].separator
        on_sep = sep[:, None] & sep[None, :]
        for q in range(k):
            if p == q or not spec.poset.leq[p, q]:
                continue
            differs = coords[q][:, None] != coords[q][None, :]
            pruned &= ~(on_sep & differs)
    labels = tuple(tuple(int(coords[p, i]) for p in range(k)) for i in range(total))
    return _finish_pruned(pruned, product_leq, labels, None, NotALatticeUnderPruning)


def _position_coords(spec: PrunedProductSpec, a) -> tuple[int, ...]:
    if len(a) != spec.poset.n:
        raise ParameterOutOfRange("coordinate tuple length differs from the position count")
    for p, (x, f) in enumerate(zip(a, spec.factors)):
        if not 0 <= x < f.lattice.n:
            raise ParameterOutOfRange(f"coordinate {x} outside factor at position {p}")
    return tuple(int(x) for x in a)


def forks(spec: PrunedProductSpec, a, b) -> tuple[int, ...]:
    """Positions where a and b sit on the separator but differ strictly above."""
    a = _position_coords(spec, a)
    b = _position_coords(spec, b)
    out = []
    for q in range(spec.poset.n):
        if a[q] != b[q] or a[q] != spec.factors[q].separator:
            continue
        for q2 in range(spec.poset.n):
            if q2 != q and spec.poset.leq[q, q2] and a[q2] != b[q2]:
                out.append(q)
                break
    return tuple(out)


def _formula_fires(spec: PrunedProductSpec, a, b, p: int, fork_set) -> bool:
    """Shared exceptional-case test for the join and meet formulas.

    Quantifies p' over every position >= p (p itself included for the two
    one-sided clauses). The clause set is symmetric in a and b, which is what
    makes the meet formula the literal dual of the join formula.
    """
    for p2 in range(spec.poset.n):
        if not spec.poset.leq[p, p2]:
            continue
        if p2 in fork_set:
            return True
        f_p, f_p2 = spec.factors[p].lattice, spec.factors[p2].lattice
        if f_p.le(b[p], a[p]) and not f_p2.le(b[p2], a[p2]):
            return True
        if f_p.le(a[p], b[p]) and not f_p2.le(a[p2], b[p2]):
            return True
    return False


def theorem_join(spec: PrunedProductSpec, a, b) -> tuple[int, ...]:
    """Coordinatewise join formula with the separator exception.

    A coordinate whose componentwise join lands on the separator jumps to the
    factor's top when some position above it is a fork or sees the one-sided
    comparability flip; otherwise the componentwise join stands.
    """
    a = _position_coords(spec, a)
    b = _position_coords(spec, b)
    fork_set = set(forks(spec, a, b))
    out = []
    for p, f in enumerate(spec.factors):
        j = f.lattice.join(a[p], b[p])
        if j == f.separator and _formula_fires(spec, a, b, p, fork_set):
            j = f.lattice.n - 1
        out.append(j)
    return tuple(out)


def theorem_meet(spec: PrunedProductSpec, a, b) -> tuple[int, ...]:
    """Dual of ``theorem_join``: separator meets fall to the factor's bottom."""
    a = _position_coords(spec, a)
    b = _position_coords(spec, b)
    fork_set = set(forks(spec, a, b))
    out = []
    for p, f in enumerate(spec.factors):
        m = f.lattice.meet(a[p], b[p])
        if m == f.separator and _formula_fires(spec, a, b, p, fork_set):
            m = 0
        out.append(m)
    return tuple(out)


# -- representation of distributive lattices as congruence lattices --------


def represent_isoform(target: FiniteLattice,
                      factor_choice: Callable[[int, Poset], SeparableFactor] | None = None,
                      *, ji_bound: int | None = None,
                      max_elements: int | None = None) -> tuple[FiniteLattice, dict]:
    """Build an isoform lattice whose congruence lattice is the given target.

    The positions are the join-irreducibles of the (distributive) target; each
    gets a simple separable factor, by default the diamond with its first atom
    as separator. The pruned product is then verified: its congruence lattice
    must be isomorphic to the target and the lattice must be isoform. No
    unverified lattice is ever returned; failure raises ``VerificationFailed``
    with the diagnostics and the offending lattice attached.
    """
    if target.n < 2:
        raise ParameterOutOfRange("the target must have at least 2 elements")
    if not structure_report(target).is_distributive:
        raise NotDistributive("only distributive lattices arise as congruence lattices here")
    bound = DEFAULT_JI_BOUND if ji_bound is None else ji_bound
    positions = ji_poset(target)
    if positions.n > bound:
        raise CapExceeded(f"target has {positions.n} join-irreducibles, bound is {bound}")

    if factor_choice is None:
        def factor_choice(_p, _poset):
            diamond = standard("m3")
            return SeparableFactor(diamond, diamond.atoms()[0])

    factors = tuple(factor_choice(p, positions) for p in range(positions.n))
    built = pruned_product(PrunedProductSpec(positions, factors), max_elements=max_elements)

    diagnostics: list[str] = []
    con = con_lattice(built)
    iso = are_isomorphic(con.lattice, target)
    if iso is None:
        diagnostics.append(
            f"congruence lattice has {len(con.congruences)} elements and is not "
            f"isomorphic to the {target.n}-element target")
    cls = classify(built)
    if not cls.is_isoform:
        diagnostics.append("result is not isoform: " + "; ".join(
            w["detail"] for w in cls.witnesses if w["check"] == "isoform"))
    if diagnostics:
        raise VerificationFailed("representation did not verify",
                                 subject=built, diagnostics=diagnostics)
    report = {
        "size": built.n,
        "target_size": target.n,
        "positions": positions.n,
        "factor_sizes": tuple(f.lattice.n for f in factors),
        "pruned_edge_count": len(built.pruned_edges),
        "con_size": len(con.congruences),
        "iso": iso,
        "is_isoform": cls.is_isoform,
        "is_uniform": cls.is_uniform,
    }
    return built, report


# -- simple extensions ------------------------------------------------------


def m_lattice(k: int) -> FiniteLattice:
    """The lattice of height 2 with k pairwise incomparable atoms."""
    if k < 3:
        raise ParameterOutOfRange("spanning diamonds need at least 3 atoms")
    covers = [(0, i) for i in range(1, k + 1)] + [(i, k + 1) for i in range(1, k + 1)]
    return from_covers(k + 2, covers, name=f"m{k}")


def partition_lattice(base_size: int) -> FiniteLattice:
    """The lattice of set partitions of a base set, ordered by refinement."""
    if not 1 <= base_size <= 6:
        raise ParameterOutOfRange("partition lattices supported for base sizes 1..6")
    parts: list[tuple[int, ...]] = []

    def grow(prefix: list[int], used: int) -> None:
        if len(prefix) == base_size:
            parts.append(tuple(prefix))
            return
        for b in range(used + 1):
            prefix.append(b)
            grow(prefix, max(used, b + 1))
            prefix.pop()

    grow([0], 1)
    k = len(parts)
    leq = np.zeros((k, k), dtype=bool)
    for i, fine in enumerate(parts):
        for j, coarse in enumerate(parts):
            image = {}
            ok = True
            for x in range(base_size):
                if fine[x] in image:
                    if image[fine[x]] != coarse[x]:
                        ok = False
                        break
                else:
                    image[fine[x]] = coarse[x]
            leq[i, j] = ok
    lat, _ = FiniteLattice._build(leq, name=f"partitions:{base_size}")
    return lat


def _find_sublattice_embedding(small: FiniteLattice, big: FiniteLattice) -> tuple | None:
    """First injective meet/join-preserving map found, or ``None``.

    Elements of the small lattice are mapped in index order; since indices
    form a linear extension, both operands' meet is always already mapped, so
    meets prune during the search and joins are verified at the end.
    """
    if small.n > big.n:
        return None
    sm, sj = small.meet_table, small.join_table
    bm, bj = big.meet_table, big.join_table
    sleq, bleq = small.leq, big.leq
    mapping = [-1] * small.n
    used = [False] * big.n

    def full_check() -> bool:
        img = np.asarray(mapping)
        return (np.array_equal(img[sm], bm[np.ix_(img, img)])
                and np.array_equal(img[sj], bj[np.ix_(img, img)]))

    def extend(x: int) -> bool:
        if x == small.n:
            return full_check()
        for y in range(big.n):
            if used[y]:
                continue
            ok = True
            for z in range(x):
                fz = mapping[z]
                if sleq[z, x] != bleq[fz, y] or sleq[x, z] != bleq[y, fz]:
                    ok = False
                    break
                if mapping[sm[x, z]] != bm[y, fz]:
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

    return tuple(mapping) if extend(0) else None


def _extension_catalog() -> list[FiniteLattice]:
    return [standard("m3"), m_lattice(4), m_lattice(5), partition_lattice(4)]


def simple_extension(base: FiniteLattice, *, budget: int | None = None,
                     max_host: int | None = None) -> Embedding:
    """Embed the base into some finite simple lattice.

    Cascade: the base itself if already simple; then a catalog of known simple
    lattices (diamonds with 3..5 atoms and the partition lattice of a
    4-element set) searched for a sublattice copy; then lattices with up to
    ``budget`` extra elements in enumeration order. Every returned target is
    verified simple. Raises ``BudgetExhausted`` when the cascade runs dry.
    """
    budget = DEFAULT_EXTENSION_BUDGET if budget is None else budget
    con = con_lattice(base, max_host=max_host)
    if base.n >= 2 and len(con.congruences) == 2:
        return Embedding.identity(base)

    for target in _extension_catalog():
        if len(con_lattice(target).congruences) != 2:
            raise InternalVerificationFailed("extension catalog contains a non-simple lattice")
        found = _find_sublattice_embedding(base, target)
        if found is not None:
            return Embedding(base, target, found)

    for extra in range(1, budget + 1):
        size = base.n + extra
        if size > ENUMERATION_CAP:
            break
        for cand in enumerate_lattices(size):
            if len(con_lattice(cand).congruences) != 2:
                continue
            found = _find_sublattice_embedding(base, cand)
            if found is not None:
                return Embedding(base, cand, found)
    raise BudgetExhausted(
        f"no simple extension of the {base.n}-element base found within budget {budget}")


# -- cubic extensions --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CubicFactor:
    """One subdirect factor: a meet-irreducible congruence, the quotient by
    it, the block map onto the quotient, and a simple extension of it."""

    psi: object
    quotient: FiniteLattice
    block_map: tuple
    extension: Embedding


@dataclass(frozen=True, eq=False)
class CubicExtensionResult:
    base: FiniteLattice
    factors: tuple
    product: FiniteLattice
    diagonal: Embedding


def cubic_extension(base: FiniteLattice, *, budget: int | None = None,
                    max_elements: int | None = None,
                    max_host: int | None = None) -> CubicExtensionResult:
    """Product of simple extensions of the subdirect factors, base embedded
    diagonally.

    The subdirect factors are the quotients by the meet-irreducible
    congruences. Verified on the result: the congruence lattice of the product
    is Boolean, its atom count equals the number of join-irreducible
    congruences of the base, and every congruence of the base is a restriction
    of at least one congruence of the product.
    """
    if base.n < 2:
        raise ParameterOutOfRange("the base must have at least 2 elements")
    con = con_lattice(base, max_host=max_host)
    upper_count = np.zeros(len(con.congruences), dtype=np.int64)
    for lo, _hi in con.lattice.covers:
        upper_count[lo] += 1
    mi_indices = [i for i in range(len(con.congruences)) if upper_count[i] == 1]

    factors = []
    for i in mi_indices:
        psi = con.congruences[i]
        quot, block_map = quotient(base, psi)
        ext = simple_extension(quot, budget=budget, max_host=max_host)
        factors.append(CubicFactor(psi=psi, quotient=quot, block_map=block_map, extension=ext))

    product = product_many([f.extension.target for f in factors], max_elements=max_elements)
    label_index = {lab: i for i, lab in enumerate(product.labels)}
    diag = tuple(
        label_index[tuple(f.extension(f.block_map[x]) for f in factors)]
        for x in range(base.n)
    )
    try:
        diagonal = Embedding(base, product, diag)
    except NotAnEmbedding as exc:
        raise VerificationFailed(f"diagonal map is not an embedding: {exc}",
                                 subject=product) from exc

    diagnostics: list[str] = []
    con_prod = con_lattice(product, max_host=max_host)
    atom_count = len(con_prod.lattice.atoms())
    if len(con_prod.congruences) != 1 << atom_count or are_isomorphic(
            con_prod.lattice, standard("boolean", max(atom_count, 1))) is None:
        diagnostics.append(
            f"congruence lattice of the product ({len(con_prod.congruences)} elements, "
            f"{atom_count} atoms) is not Boolean")
    if atom_count != len(con.ji_indices):
        diagnostics.append(
            f"product congruence atoms ({atom_count}) differ from the base's "
            f"join-irreducible congruences ({len(con.ji_indices)})")
    img = np.asarray(diag)
    restrictions = set()
    for tau in con_prod.congruences:
        tb = np.asarray(tau.block_of)
        restricted = tb[img]
        seen: dict[int, int] = {}
        norm = []
        for v in restricted:
            v = int(v)
            if v not in seen:
                seen[v] = len(seen)
            norm.append(seen[v])
        restrictions.add(tuple(norm))
    for theta in con.congruences:
        if theta.block_of not in restrictions:
            diagnostics.append(f"congruence {theta!r} of the base does not extend")
    if diagnostics:
        raise VerificationFailed("cubic extension did not verify",
                                 subject=product, diagnostics=diagnostics)
    return CubicExtensionResult(base=base, factors=tuple(factors),
                                product=product, diagonal=diagonal)
