import random

import pytest

from bimodule import dual_bimodule, regular_bimodule
from errors import AlgebraMismatchError, CapExceededError, NotACocycleError, NotADerivationError
from hochschild import (Cochain, CochainComplex, apply_differential, bar_differential, bracket1, class_equal, cup,
                        derivation_from_arrows, hh, hh1_via_derivations, inner_derivation, random_cochain, unit_class)


def _arrow(algebra, name, coefficient=1):
    return {algebra.arrow_index(name): algebra.field.convert(coefficient)}


@pytest.mark.parametrize("name, dims", [
    ("cycle2_nakayama", [1, 1]),
    ("triangle_path", [1, 2, 0]),
    ("triangle_zero_relation", [1, 1, 1, 0]),
])
def test_hh_dimensions(bundled, name, dims):
    A = bundled(name)
    complex_ = CochainComplex(A, regular_bimodule(A))
    assert [complex_.cohomology(n).dim for n in range(len(dims))] == dims


@pytest.mark.parametrize("name", ["cycle2_nakayama", "triangle_path"])
def test_normalized_complex_agrees_with_bar(bundled, name):
    A = bundled(name)
    M = regular_bimodule(A)
    normalized = CochainComplex(A, M)
    full = CochainComplex(A, M, normalized=False)
    assert normalized.normalized and not full.normalized
    for n in (0, 1):
        assert normalized.cohomology(n).dim == full.cohomology(n).dim
    assert hh1_via_derivations(A, M).dim == full.cohomology(1).dim


@pytest.mark.parametrize("name", ["triangle_zero_relation", "commutative_square"])
def test_differential_squares_to_zero(bundled, name):
    A = bundled(name)
    for module in (regular_bimodule(A), dual_bimodule(A)):
        complex_ = CochainComplex(A, module)
        for n in (0, 1):
            assert (complex_.differential(n + 1) * complex_.differential(n)).is_zero_matrix


def test_hh0_of_the_dual_module(bundled):
    # invariants of DA are dual to A/[A, A], spanned by the vertices here
    A = bundled("triangle_path")
    assert hh(A, dual_bimodule(A), 0).dim == 3


def test_euler_derivation_is_outer(bundled):
    A = bundled("cycle2_nakayama")
    M = regular_bimodule(A)
    space = hh1_via_derivations(A, M)
    euler = derivation_from_arrows(A, M, {"alpha0": _arrow(A, "alpha0"), "alpha1": _arrow(A, "alpha1")})
    inner = derivation_from_arrows(A, M, {"alpha0": _arrow(A, "alpha0"), "alpha1": _arrow(A, "alpha1", -1)})
    assert not space.is_inner(euler)
    assert space.is_inner(inner)
    assert inner == inner_derivation(A, M, {A.vertex_idempotent("1"): A.field.one})
    assert class_equal(euler, euler + inner)
    assert bracket1(euler, euler).is_zero()


def test_arrow_values_must_respect_relations(bundled):
    A = bundled("commutative_square")
    with pytest.raises(NotADerivationError):
        derivation_from_arrows(A, regular_bimodule(A), {"a": _arrow(A, "a")})


def test_cup_with_the_unit(bundled):
    A = bundled("triangle_path")
    M = regular_bimodule(A)
    one = unit_class(A)
    for representative in hh(A, M, 1).representatives:
        assert cup(one, representative) == representative
        assert cup(representative, one) == representative


def test_non_cocycles_are_rejected(bundled):
    A = bundled("cycle2_nakayama")
    M = regular_bimodule(A)
    broken = Cochain(A, M, 1, {(A.arrow_index("alpha0"),): {A.vertex_idempotent("0"): A.field.one}})
    assert not apply_differential(broken).is_zero()
    with pytest.raises(NotACocycleError):
        hh(A, M, 1).coordinates(broken)


def test_coboundaries_have_zero_class(bundled):
    A = bundled("cycle2_nakayama")
    M = regular_bimodule(A)
    rng = random.Random(7)
    chain = random_cochain(A, M, 1, rng)
    boundary = apply_differential(chain)
    full = CochainComplex(A, M, normalized=False)
    assert full.cohomology(2).is_coboundary(boundary)


def test_mismatched_module_and_caps(bundled):
    A, other = bundled("triangle_path"), bundled("cycle2_nakayama")
    with pytest.raises(AlgebraMismatchError):
        Cochain(A, regular_bimodule(other), 0)
    with pytest.raises(CapExceededError):
        bar_differential(A, regular_bimodule(A), 2, cap=100)
    with pytest.raises(CapExceededError):
        CochainComplex(A, regular_bimodule(A), normalized=False, cap=10).cohomology(1)
