"""Tour of the basic lattice machinery: catalog shapes, building from cover
relations, products, intervals, and the downset/Birkhoff round trip.

Run as a script; it prints what it finds at each step.
"""
from latkit import (
    Poset,
    are_isomorphic,
    direct_product,
    downset_lattice,
    from_covers,
    interval,
    ji_poset,
    standard,
    structure_report,
)


def main() -> None:
    chain = standard("chain", 4)
    cube = standard("boolean", 3)
    diamond = standard("m3")
    pentagon = standard("n5")

    print("catalog shapes:")
    for lat in (chain, cube, diamond, pentagon):
        print(f"  {lat.name}: {lat.n} elements, {len(lat.covers)} covers, "
              f"height {int(lat.heights().max())}")

    # Same pentagon, but assembled by hand from its cover relation. Input
    # order does not matter; elements are renumbered into a canonical order.
    handmade = from_covers(5, [(0, 3), (3, 4), (4, 1), (0, 2), (2, 1)])
    mapping = are_isomorphic(handmade, pentagon)
    print(f"\nhand-built pentagon matches the catalog one: {mapping is not None}")

    report = structure_report(pentagon)
    kind, *elements = report.nondistributive_witness
    print(f"pentagon distributive? {report.is_distributive} "
          f"(witness: {kind} on elements {tuple(elements)})")

    square = direct_product(standard("chain", 2), standard("chain", 2))
    print(f"\nC2 x C2 has {square.n} elements; labels are coordinate pairs:")
    print(f"  {square.labels}")

    # Every interval of a finite lattice is again a lattice; here the upper
    # half of the cube is a square.
    atom = cube.atoms()[0]
    upper, inclusion = interval(cube, atom, cube.top)
    print(f"\n[{atom}, top] inside the cube: {upper.n} elements, "
          f"square? {are_isomorphic(upper, square) is not None}")
    print(f"  inclusion map: {inclusion.map}")

    # Distributive lattices are downset lattices of their join-irreducibles.
    fence = Poset.from_lt(3, [(0, 1), (0, 2)])
    down = downset_lattice(fence)
    recovered = ji_poset(down)
    print(f"\ndownsets of a 3-point fence: {down.n} elements, "
          f"distributive? {structure_report(down).is_distributive}")
    print(f"join-irreducibles recover the fence: "
          f"{sorted(recovered.lt_pairs()) == sorted(fence.lt_pairs())}")


if __name__ == "__main__":
    main()
