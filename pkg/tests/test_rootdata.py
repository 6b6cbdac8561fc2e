import pytest

from affspringer import InputError
from affspringer.rootdata import (
    build_root_datum,
    classify_subsystem,
    coroot_coordinates,
    enumerate_weyl,
    exponents_from_heights,
    height,
    in_coroot_lattice,
    pair,
    root_datum,
)

# (label, |Phi+|, h, exponents, |W|, |pi1|)
TABLE = [
    ("A1", 1, 2, (1,), 2, 2),
    ("A2", 3, 3, (1, 2), 6, 3),
    ("A3", 6, 4, (1, 2, 3), 24, 4),
    ("B2", 4, 4, (1, 3), 8, 2),
    ("C2", 4, 4, (1, 3), 8, 2),
    ("B3", 9, 6, (1, 3, 5), 48, 2),
    ("C3", 9, 6, (1, 3, 5), 48, 2),
    ("D4", 12, 6, (1, 3, 3, 5), 192, 4),
    ("G2", 6, 6, (1, 5), 12, 1),
    ("F4", 24, 12, (1, 5, 7, 11), 1152, 1),
]


@pytest.mark.parametrize("label,npos,h,exps,W,pi1", TABLE)
def test_classical_invariants(label, npos, h, exps, W, pi1):
    rd = root_datum(label)
    assert len(rd.positive_roots) == npos
    assert rd.coxeter_number == h
    assert rd.exponents == exps
    assert rd.weyl_order == W
    assert rd.pi1_order == pi1
    assert exponents_from_heights(rd) == exps
    assert height(rd.highest_root) == h - 1


@pytest.mark.parametrize("label", ["A1", "A2", "B2", "C2", "G2", "A3", "B3"])
def test_weyl_enumeration_matches_order(label):
    rd = root_datum(label)
    W = enumerate_weyl(rd)
    assert len(W) == rd.weyl_order
    assert sum(w.sign() for w in W) == 0


@pytest.mark.parametrize("label", ["A2", "B2", "G2", "A3", "B3", "C3"])
def test_coroots_and_reflections(label):
    rd = root_datum(label)
    for a in rd.roots:
        assert pair(a, rd.coroot(a)) == 2
        s = rd.reflection(a)
        assert s.apply_root(a) == tuple(-x for x in a)
        assert (s * s).is_identity()
        for b in rd.roots:
            assert rd.is_root(s.apply_root(b))


def test_cartan_matrix_convention():
    rd = root_datum("B2")
    # columns are the simple coroots in fundamental-coweight coordinates
    for j, a in enumerate(rd.simple_roots):
        assert rd.coroot(a) == tuple(rd.cartan_matrix[i][j] for i in range(2))
    assert rd.theta_check == rd.coroot(rd.highest_root)


def test_coroot_lattice_membership():
    rd = root_datum("A2")
    assert in_coroot_lattice(rd, (2, -1))
    assert not in_coroot_lattice(rd, (1, 0))
    assert coroot_coordinates(rd, (1, 1)) == (1, 1)


def test_invalid_types():
    with pytest.raises(InputError):
        build_root_datum("B", 1)
    with pytest.raises(InputError):
        root_datum("Q3")
    with pytest.raises(InputError):
        build_root_datum("G", 3)


def test_subsystem_classification():
    rd = root_datum("B2")
    sub = classify_subsystem(rd, rd.positive_roots)
    assert sub.order == 8 and sub.exponents == (1, 3)
    short = [a for a in rd.positive_roots if not rd.is_long(a)]
    long_ = [a for a in rd.positive_roots if rd.is_long(a)]
    assert classify_subsystem(rd, long_).label == "A1xA1"
    assert classify_subsystem(rd, short).label == "A1xA1"
    assert classify_subsystem(rd, []).label == "trivial"
    rd = root_datum("G2")
    longs = [a for a in rd.positive_roots if rd.is_long(a)]
    sub = classify_subsystem(rd, longs)
    assert sub.order == 6 and sub.exponents == (1, 2)
