import itertools

import pytest

from latkit import (
    CapExceeded,
    ParameterOutOfRange,
    are_isomorphic,
    enumerate_lattices,
    enumerate_lattices_naive,
    standard,
)

# http://oeis.org/A006966: unlabeled lattices on n elements
KNOWN_COUNTS = [1, 1, 1, 2, 5, 15, 53, 222, 1078]


def test_counts_match_the_known_sequence():
    for n, expected in enumerate(KNOWN_COUNTS[:8], start=1):
        assert len(enumerate_lattices(n)) == expected


def test_nine_element_count():
    assert len(enumerate_lattices(9)) == 1078


def test_agrees_with_the_naive_enumerator():
    """The incremental generator and the brute relation scan must produce the
    same isomorphism classes."""
    for n in range(1, 7):
        fast = enumerate_lattices(n)
        slow = enumerate_lattices_naive(n)
        assert len(fast) == len(slow)
        for lat in slow:
            matches = [f for f in fast if are_isomorphic(lat, f) is not None]
            assert len(matches) == 1


def test_no_duplicate_isomorphism_classes():
    lats = enumerate_lattices(6)
    for a, b in itertools.combinations(lats, 2):
        assert are_isomorphic(a, b) is None


def test_known_lattices_show_up():
    five = enumerate_lattices(5)
    for name in ("m3", "n5"):
        assert any(are_isomorphic(standard(name), lat) is not None for lat in five)
    assert any(are_isomorphic(standard("boolean", 3), lat) is not None
               for lat in enumerate_lattices(8))


def test_every_enumerated_lattice_is_bounded_and_sized():
    for n in range(1, 7):
        for lat in enumerate_lattices(n):
            assert lat.n == n
            assert lat.bottom == 0 and lat.top == n - 1


def test_out_of_range_requests():
    with pytest.raises(ParameterOutOfRange):
        enumerate_lattices(0)
    with pytest.raises(CapExceeded):
        enumerate_lattices(10)
    with pytest.raises(CapExceeded):
        enumerate_lattices_naive(7)
