import pytest

from bimodule import dual_bimodule, regular_bimodule
from errors import AxiomError, NotMonomialError
from hochschild import hh
from minres import build_partial_resolution, exactness_ranks, gn_sets, hh_via_minres, partial_resolution
from relext import relation_extension_algebra

EXPECTED_OVERLAPS = {"alpha*beta*delta", "beta*delta*alpha", "delta*alpha*beta", "beta*delta*gamma*delta",
                     "delta*gamma*delta*gamma*delta", "delta*gamma*delta*alpha"}


@pytest.fixture(scope="module")
def relation_extension(bundled):
    return relation_extension_algebra(bundled("triangle_zero_relation").presentation, names=["delta"])[1]


def test_chains_of_the_nakayama_algebra(bundled):
    sets = gn_sets(bundled("cycle2_nakayama"))
    assert [str(p) for p in sets.chains(0)] == ["e_0", "e_1"]
    assert [str(p) for p in sets.chains(2)] == ["alpha0*alpha1", "alpha1*alpha0"]
    assert {str(p) for p in sets.chains(3)} == {"alpha0*alpha1*alpha0", "alpha1*alpha0*alpha1"}
    assert all(o.shift == 1 for o in sets.g3)


def test_chains_of_the_relation_extension(relation_extension):
    sets = gn_sets(relation_extension)
    assert {str(p) for p in sets.chains(2)} == {"delta*alpha", "alpha*beta", "beta*delta", "delta*gamma*delta"}
    assert {str(p) for p in sets.chains(3)} == EXPECTED_OVERLAPS


def test_hereditary_algebra_has_no_relations(bundled):
    sets = gn_sets(bundled("triangle_path"))
    assert sets.chains(2) == [] and sets.chains(3) == []


@pytest.mark.parametrize("name", ["cycle2_nakayama", "triangle_path", "triangle_zero_relation"])
def test_minres_agrees_with_bar(bundled, name):
    A = bundled(name)
    resolution = build_partial_resolution(A)
    assert all(resolution.certify().values())
    for n in range(3):
        assert hh_via_minres(A, n).dim == hh(A, regular_bimodule(A), n).dim


def test_minres_with_dual_coefficients(bundled):
    A = bundled("triangle_zero_relation")
    D = dual_bimodule(A)
    for n in range(3):
        assert hh_via_minres(A, n, D).dim == hh(A, D, n).dim


def test_ranks_for_the_zero_relation(bundled):
    ranks = exactness_ranks(partial_resolution(bundled("triangle_zero_relation")))
    assert ranks["hom_dims"] == [3, 3, 1, 0]


def test_ranks_for_the_relation_extension(relation_extension):
    ranks = exactness_ranks(partial_resolution(relation_extension))
    assert ranks["hom_dims"][:3] == [5, 5, 3]
    assert (ranks["image_1"], ranks["kernel_1"]) == (3, 2)
    assert (ranks["image_2"], ranks["kernel_2"]) == (0, 5)
    assert ranks["kernel_3"] == 2
    assert [hh_via_minres(relation_extension, n).dim for n in range(3)] == [2, 2, 2]


def test_non_monomial_and_out_of_range(bundled):
    with pytest.raises(NotMonomialError):
        gn_sets(bundled("commutative_square"))
    with pytest.raises(AxiomError):
        hh_via_minres(bundled("triangle_path"), 3)
