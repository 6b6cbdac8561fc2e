from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affspringer import InputError, ResourceError
from affspringer.affweyl import (
    AffineRoot,
    alcove_value,
    finite,
    identity,
    inversion_set,
    length,
    min_coset_reps,
    reflection,
    simple_affine_reflections,
    simple_affine_root,
    translation,
)
from affspringer.formulas import bott_check, bott_counts, bott_series
from affspringer.rootdata import root_datum
from helpers import affine_roots, coweights, elements

LABELS = ["A1", "A2", "B2", "G2", "A3"]


@pytest.mark.parametrize("label", LABELS)
@given(data=st.data())
@settings(max_examples=60, deadline=None)
def test_group_axioms(label, data):
    rd = root_datum(label)
    x, y, z = (data.draw(elements(label)) for _ in range(3))
    e = identity(rd)
    assert (x * y) * z == x * (y * z)
    assert x * e == x == e * x
    assert (x * x.inverse()).is_identity()


@pytest.mark.parametrize("label", LABELS)
@given(data=st.data())
@settings(max_examples=60, deadline=None)
def test_actions_are_compatible_with_products(label, data):
    x, y = data.draw(elements(label)), data.draw(elements(label))
    lam = data.draw(coweights(label))
    beta = data.draw(affine_roots(label))
    xy = x * y
    assert xy.act_linear(lam) == x.act_linear(y.act_linear(lam))
    assert xy.act_dot(lam) == x.act_dot(y.act_dot(lam))
    assert xy.act_affine_root(beta) == x.act_affine_root(y.act_affine_root(beta))


@pytest.mark.parametrize("label", LABELS)
@given(data=st.data())
@settings(max_examples=60, deadline=None)
def test_length_matches_inversion_set(label, data):
    rd = root_datum(label)
    x = data.draw(elements(label, radius=3))
    assert length(rd, x) == len(inversion_set(rd, x))
    assert length(rd, x) == length(rd, x.inverse())


@pytest.mark.parametrize("label", LABELS)
@given(data=st.data(), ell=st.integers(2, 5))
@settings(max_examples=30, deadline=None)
def test_dilated_length_matches_inversion_set(label, data, ell):
    rd = root_datum(label)
    x = data.draw(elements(label, ell=ell, radius=2))
    assert length(rd, x, ell) == len(inversion_set(rd, x, ell))


@pytest.mark.parametrize("label", LABELS)
def test_simple_reflections(label):
    rd = root_datum(label)
    for ell in (1, 3):
        gens = simple_affine_reflections(rd, ell)
        assert len(gens) == rd.rank + 1
        for i, s in enumerate(gens):
            assert (s * s).is_identity()
            assert length(rd, s, ell) == 1
            a = simple_affine_root(rd, i, ell)
            assert s.act_affine_root(a) == -a


def test_affine_root_positivity():
    assert AffineRoot((1,), 0).is_positive()
    assert not AffineRoot((-1,), 0).is_positive()
    assert AffineRoot((-1,), 1).is_positive()
    assert not AffineRoot((1,), -1).is_positive()
    assert -AffineRoot((1,), 2) == AffineRoot((-1,), -2)


def test_translation_validates_dilation():
    rd = root_datum("A1")
    with pytest.raises(InputError):
        translation(rd, (1,), 3)
    assert translation(rd, (3,), 3).in_dilated_extended(3)


def test_reflection_on_dot_action():
    rd = root_datum("A1")
    # s_{alpha + m delta} . 0 = -(1 + m) alpha-check
    for m in range(-3, 4):
        assert reflection(rd, (1,), m).act_dot((0,)) == (-2 * (1 + m),)


def test_alcove_value_examples():
    rd = root_datum("A2")
    e = identity(rd)
    assert alcove_value(rd, e, AffineRoot((1, 0), 0)) == Fraction(1, 3)
    assert alcove_value(rd, e, AffineRoot((-1, -1), 1)) == Fraction(1, 3)


@pytest.mark.parametrize("label", ["A1", "A2", "B2", "G2"])
def test_bott_counts(label):
    rd = root_datum(label)
    assert bott_check(rd, 10)


def test_bott_series_small():
    assert bott_series((1,), 4) == [1, 1, 1, 1, 1]
    assert bott_series((1, 2), 5) == [1, 1, 2, 2, 3, 3]
    assert bott_counts(root_datum("A1"), 4) == [1, 1, 1, 1, 1]


def test_coset_reps_respect_bounds():
    rd = root_datum("A1")
    with pytest.raises(ResourceError):
        min_coset_reps(rd, [1], 10**4)
    with pytest.raises(InputError):
        min_coset_reps(rd, [5], 3)


def test_finite_embedding():
    rd = root_datum("A2")
    s = finite(rd.simple_reflection(0))
    assert s.act_linear((0, 0)) == (0, 0)
    assert s.act_dot((0, 0)) == (-2, 1)
