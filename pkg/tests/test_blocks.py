import itertools
import random

import pytest

from affspringer import InputError, InvariantViolation
from affspringer.blocks import (
    check_admissible,
    check_lattice_identity,
    count_by_facet_type,
    enumerate_xi_sc,
    facet_type_counts,
    in_closed_alcove,
    parabolic_order,
    reduce_to_alcove,
    xi_orbits,
)
from affspringer.rootdata import root_datum


def lattice_identity_oracle(rd, ell):
    """No nonzero class of the coroot lattice mod l lands in l * coweights."""
    C = rd.cartan_matrix
    r = rd.rank
    for c in itertools.product(range(ell), repeat=r):
        if not any(c):
            continue
        if all(sum(C[i][j] * c[j] for j in range(r)) % ell == 0 for i in range(r)):
            return False
    return True


def brute_alcove(rd, ell):
    r = rd.rank
    return sorted(
        tuple(v - 1 for v in nu)
        for nu in itertools.product(range(ell + 1), repeat=r)
        if in_closed_alcove(rd, tuple(v - 1 for v in nu), ell)
    )


@pytest.mark.parametrize("label,ell", [("A1", 3), ("A1", 5), ("A2", 5), ("B2", 5), ("G2", 7), ("A3", 5)])
def test_points_match_brute_force(label, ell):
    rd = root_datum(label)
    pts = enumerate_xi_sc(rd, ell)
    assert sorted(p.omega for p in pts) == brute_alcove(rd, ell)


@pytest.mark.parametrize(
    "label,ell,npts,norb", [("A1", 3, 4, 2), ("A2", 5, 21, 7), ("B2", 5, 12, 6), ("G2", 7, 8, 8), ("C2", 5, 12, 6)]
)
def test_orbit_structure(label, ell, npts, norb):
    rd = root_datum(label)
    pts = enumerate_xi_sc(rd, ell)
    orbits = xi_orbits(rd, ell)
    assert len(pts) == npts and len(orbits) == norb
    assert all(len(o) == rd.pi1_order for o in orbits)
    for o in orbits:
        assert len({(p.stabilizer_order, p.stabilizer_type) for p in o}) == 1


def test_a1_orbits():
    rd = root_datum("A1")
    orbits = xi_orbits(rd, 3)
    assert sorted(tuple(p.omega[0] for p in o) for o in orbits) == [(-1, 2), (0, 1)]


@pytest.mark.parametrize("label,ell", [("A2", 5), ("B2", 5), ("G2", 7)])
def test_stabilizer_orders(label, ell):
    rd = root_datum(label)
    for p in enumerate_xi_sc(rd, ell):
        assert p.stabilizer_order == parabolic_order(rd, p.facet_type, ell)
        assert len(p.facet_type) <= rd.rank


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "B2", "C2", "G2"])
@pytest.mark.parametrize("ell", range(2, 10))
def test_lattice_identity_against_oracle(label, ell):
    rd = root_datum(label)
    assert check_lattice_identity(rd, ell) == lattice_identity_oracle(rd, ell)


@pytest.mark.parametrize("label,ell", [("A2", 5), ("B2", 7), ("G2", 7)])
def test_reduce_to_alcove(label, ell):
    rd = root_datum(label)
    rng = random.Random(1)
    for _ in range(200):
        om = tuple(rng.randint(-30, 30) for _ in range(rd.rank))
        red = reduce_to_alcove(rd, om, ell)
        assert in_closed_alcove(rd, red, ell)
        assert reduce_to_alcove(rd, red, ell) == red


@pytest.mark.parametrize("label,ell", [("A2", 7), ("B2", 9), ("A3", 5)])
def test_fast_facet_counts(label, ell):
    rd = root_datum(label)
    assert facet_type_counts(rd, ell) == count_by_facet_type(enumerate_xi_sc(rd, ell))


def test_admissibility():
    rd = root_datum("A2")
    with pytest.raises(InputError):
        check_admissible(rd, 6)
    with pytest.raises(InputError):
        check_admissible(rd, 3)
    check_admissible(rd, 3, force=True)
    with pytest.raises(InputError):
        check_admissible(root_datum("G2"), 9)


def test_orbit_size_violation_is_reported():
    rd = root_datum("A2")
    # gcd(l, e) != 1 breaks freeness of the pi1 action
    pts = enumerate_xi_sc(rd, 6, force=True)
    with pytest.raises(InvariantViolation):
        xi_orbits(rd, 6, points=pts)
    sizes = sorted(len(o) for o in xi_orbits(rd, 6, force=True))
    assert sizes[0] == 1 and sum(sizes) == len(pts)
