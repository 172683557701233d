"""The headline constructions: realize a distributive lattice as the
congruence lattice of an isoform lattice, embed a lattice in one whose
congruence lattice is boolean, and survey how the congruence classes relate
across all small lattices.
"""
from latkit import (
    are_isomorphic,
    classify,
    con_lattice,
    cubic_extension,
    enumerate_lattices,
    represent_isoform,
    standard,
    structure_report,
)


def main() -> None:
    # Any small distributive lattice is the congruence lattice of some
    # isoform lattice. The builder verifies both halves before returning.
    target = standard("boolean", 2)
    lat, report = represent_isoform(target)
    print(f"target Con = {target.name}: built {report['size']} elements from "
          f"{report['positions']} positions, {report['pruned_edge_count']} "
          f"edges pruned, verified isoform={report['is_isoform']}")

    # Cubic extension: quotient by each meet-irreducible congruence, extend
    # each quotient to a simple lattice, take the product. The base embeds
    # diagonally and the result's congruence lattice is boolean.
    base = standard("n5")
    res = cubic_extension(base)
    con_r = con_lattice(res.product)
    k = len(res.factors)
    print(f"\ncubic extension of the pentagon: {res.product.n} elements from "
          f"factors {[f.extension.target.n for f in res.factors]}")
    print(f"Con of the extension is the {k}-cube: "
          f"{are_isomorphic(con_r.lattice, standard('boolean', k)) is not None}")
    print(f"diagonal embedding of the base: {res.diagonal.map}")

    # Scan every lattice with up to 7 elements and tally the classes. The
    # containments isoform < uniform < regular are strict already here.
    print("\n n  total  regular  uniform  isoform  simple  seccomp")
    for n in range(1, 8):
        lats = enumerate_lattices(n)
        rows = [0, 0, 0, 0, 0]
        for lat in lats:
            cls = classify(lat)
            rows[0] += cls.is_regular
            rows[1] += cls.is_uniform
            rows[2] += cls.is_isoform
            rows[3] += cls.is_simple
            rows[4] += structure_report(lat).is_sectionally_complemented
        print(f" {n}  {len(lats):5d}  {rows[0]:7d}  {rows[1]:7d}  "
              f"{rows[2]:7d}  {rows[3]:6d}  {rows[4]:7d}")


if __name__ == "__main__":
    main()
