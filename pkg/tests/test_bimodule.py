import pytest

from algebra import center_basis
from bimodule import (Bimodule, bimodules_isomorphic, dual_bimodule, hom_bimodule, invariants, is_symmetric_over_center,
                      peirce_adapted, pullback_bimodule, regular_bimodule, tensor_over, zero_bimodule)
from errors import AlgebraMismatchError, AxiomError, ShapeError
from exactlin import LinearMap


@pytest.mark.parametrize("name", ["triangle_path", "cycle2_nakayama", "commutative_square"])
def test_bimodule_maps_of_the_regular_module_are_central(bundled, name):
    A = bundled(name)
    assert len(hom_bimodule(regular_bimodule(A), regular_bimodule(A))) == len(center_basis(A))
    assert len(invariants(regular_bimodule(A))) == len(center_basis(A))


def test_dual_module_is_transposed(bundled):
    A = bundled("triangle_path")
    D = dual_bimodule(A)
    assert D.dim == A.dim
    assert len(regular_bimodule(A).block(0, 1)) == len(D.block(1, 0)) == 2
    assert D.has_zero_product()
    assert len(hom_bimodule(D, D)) == 1


def test_regular_module_carries_the_multiplication(bundled):
    A = bundled("triangle_zero_relation")
    M = regular_bimodule(A)
    alpha, beta = A.arrow_index("alpha"), A.arrow_index("beta")
    assert M.multiply({alpha: A.field.one}, {beta: A.field.one}) == {}
    assert not M.has_zero_product()


def test_tensor_with_the_regular_module(bundled):
    A = bundled("triangle_path")
    D = dual_bimodule(A)
    product = tensor_over(regular_bimodule(A), D)
    assert product.dim == D.dim
    assert bimodules_isomorphic(product, D)


def test_isomorphism_verdicts(bundled):
    A = bundled("cycle2_nakayama")
    D = dual_bimodule(A)
    assert bimodules_isomorphic(D, D).status == "yes"
    assert bimodules_isomorphic(regular_bimodule(A), zero_bimodule(A)).status == "no"


def test_peirce_adapted_keeps_the_module(bundled):
    A = bundled("triangle_loop")
    adapted, embedding = peirce_adapted(dual_bimodule(A))
    assert adapted.dim == A.dim
    assert embedding.rank() == A.dim
    assert bimodules_isomorphic(adapted, dual_bimodule(A))


def test_pullback_along_the_identity(bundled):
    A = bundled("triangle_path")
    D = dual_bimodule(A)
    pulled = pullback_bimodule(D, LinearMap.identity(A.field, A.dim), A)
    assert pulled.peirce == D.peirce
    assert is_symmetric_over_center(pulled)


def test_wrong_shapes_and_actions_are_rejected(bundled):
    A = bundled("triangle_path")
    M = regular_bimodule(A)
    with pytest.raises(ShapeError):
        Bimodule(A, M.dim, M.left[:-1], M.right)
    with pytest.raises(AxiomError):
        Bimodule(A, M.dim, M.left, M.left)
    with pytest.raises(AlgebraMismatchError):
        hom_bimodule(M, regular_bimodule(bundled("cycle2_nakayama")))
