import random
from fractions import Fraction

import pytest

from affspringer import InputError
from affspringer.rankone import (
    build_algebra,
    center_report,
    center_space,
    check_associativity,
    check_relations,
    congruence_enumerator,
    example_central_element,
    interior_congruence_holds,
    interior_equation_holds,
    is_central,
)


def test_small_algebra_axioms():
    A = build_algebra(2, 2)
    assert check_relations(A)
    assert check_associativity(A)


def test_associativity_on_random_elements():
    A = build_algebra(3, 3)
    rng = random.Random(2)

    def rand():
        return A.element({b: [Fraction(rng.randint(-2, 2)) for _ in range(A.N)] for b in rng.sample(A.basis, 6)})

    for _ in range(40):
        u, v, w = rand(), rand(), rand()
        assert A.mul(A.mul(u, v), w) == A.mul(u, A.mul(v, w))


def test_unit():
    A = build_algebra(3, 2)
    one = A.unit()
    for b in A.basis:
        e = A.basis_element(b)
        assert A.mul(one, e) == e == A.mul(e, one)
    assert is_central(A, one)


@pytest.mark.parametrize("N", [2, 3, 4])
def test_example_central_element(N):
    A = build_algebra(4, N)
    z = example_central_element(A)
    assert is_central(A, z)
    assert interior_equation_holds(A, z)


@pytest.mark.parametrize("K,N", [(3, 2), (3, 3), (4, 2), (4, 3)])
def test_center_matches_congruence_count(K, N):
    rep = center_report(K, N)
    assert rep["interior_dim"] == rep["predicted_interior_dim"]
    assert rep["congruences"] and rep["product_rule"]
    A = build_algebra(K, N)
    for z in center_space(A):
        assert is_central(A, z)
        assert interior_congruence_holds(A, z)
        assert interior_equation_holds(A, z)


def test_vector_roundtrip():
    A = build_algebra(2, 3)
    z = example_central_element(A)
    assert A.from_vector(A.to_vector(z)) == z


def test_input_validation():
    with pytest.raises(InputError):
        build_algebra(1, 3)
    with pytest.raises(InputError):
        build_algebra(3, 1)
    with pytest.raises(InputError):
        congruence_enumerator(1, 3)
