"""Congruences end to end: principal congruences, the congruence lattice,
quotients, and the regular/uniform/isoform classification.
"""
from latkit import (
    are_isomorphic,
    check_properties_PQ,
    classify,
    con_lattice,
    is_congruence_permutable,
    principal,
    quotient,
    standard,
    structure_report,
)


def show_blocks(tag: str, theta) -> None:
    print(f"  {tag}: {theta.blocks()}")


def main() -> None:
    pentagon = standard("n5")
    print(f"pentagon order: covers {sorted(pentagon.covers)}")

    # Collapsing one cover can force much more to collapse; the principal
    # congruence is the smallest congruence relating the pair.
    for a, b in sorted(pentagon.covers):
        show_blocks(f"collapse ({a},{b})", principal(pentagon, a, b))

    con = con_lattice(pentagon)
    print(f"\nCon(N5) has {len(con)} congruences; it is itself a lattice "
          f"(always distributive: {structure_report(con.lattice).is_distributive})")
    print(f"join-irreducible congruences sit at indices {con.ji_indices}")

    # Quotients: collapse a congruence and the lattice operations descend.
    theta = principal(pentagon, *min(pentagon.covers))
    q, block_map = quotient(pentagon, theta)
    print(f"\npentagon / one principal congruence: {q.n} elements "
          f"(block map {block_map})")

    # The classification that drives everything downstream: regular means
    # each congruence is determined by any one of its classes, uniform means
    # all classes of a congruence share one size, isoform means all classes
    # are isomorphic as lattices.
    for name in ("m3", "n5"):
        lat = standard(name)
        cls = classify(lat)
        print(f"\n{name}: regular={cls.is_regular} uniform={cls.is_uniform} "
              f"isoform={cls.is_isoform} simple={cls.is_simple}")
        for w in cls.witnesses:
            print(f"  fails {w['check']}: {w['detail']}")

    chain = standard("chain", 3)
    perm = is_congruence_permutable(chain)
    print(f"\n3-chain congruence permutable? {perm.ok}, witness {perm.witness}")

    cube = standard("boolean", 3)
    pq = check_properties_PQ(cube)
    print(f"cube: every join-irreducible congruence comes from collapsing "
          f"an atom onto the bottom (P) {pq.p_holds}; antichains of them "
          f"are realized by atoms spanning a boolean ideal (Q) {pq.q_holds}")

    # Con distinguishes lattices the raw size cannot.
    b2 = standard("boolean", 2)
    print(f"\nCon(C3) is a square: "
          f"{are_isomorphic(con_lattice(standard('chain', 3)).lattice, b2) is not None}")


if __name__ == "__main__":
    main()
