import pytest

from algebra import build_algebra
from algebra_files import presentation_from_file
from errors import NotTriangularError, PresentationError
from relext import (Potential, crosscheck_with_trivial_extension, cyclic_derivative, keller_potential,
                    relation_extension_algebra, relation_extension_file, relation_extension_quiver)

EXPECTED_RELATIONS = {"delta*alpha", "alpha*beta", "beta*delta", "delta*gamma*delta"}


@pytest.fixture(scope="module")
def zero_relation_extension(bundled):
    return relation_extension_algebra(bundled("triangle_zero_relation").presentation, names=["delta"])


def test_presented_relation_extension(zero_relation_extension):
    relext, B = zero_relation_extension
    assert str(relext.potential) == "alpha*beta*delta"
    assert {str(r) for r in relext.relations} == EXPECTED_RELATIONS
    assert B.dim == 10
    (arrow, relation), = relext.new_arrows
    assert (arrow.name, arrow.source, arrow.target) == ("delta", "3", "1")
    assert str(relation) == "alpha*beta"


def test_cyclic_derivatives(zero_relation_extension):
    relext, _ = zero_relation_extension
    potential = relext.potential
    assert str(cyclic_derivative(potential, "delta")) == "alpha*beta"
    assert str(cyclic_derivative(potential, "alpha")) == "beta*delta"
    assert str(cyclic_derivative(potential, "beta")) == "delta*alpha"
    assert cyclic_derivative(potential, "gamma").is_zero()


def test_potential_terms_are_cyclic_classes(zero_relation_extension, QQ):
    quiver = zero_relation_extension[0].quiver
    rotated = Potential(quiver, QQ, [(("beta", "delta", "alpha"), QQ.one)])
    assert rotated == Potential(quiver, QQ, [(("alpha", "beta", "delta"), QQ.one)])
    cancelled = Potential(quiver, QQ, [(("alpha", "beta", "delta"), QQ.one), (("delta", "alpha", "beta"), -QQ.one)])
    assert cancelled.is_zero()
    assert len(Potential.rotations(("alpha", "beta", "delta"))) == 3
    with pytest.raises(PresentationError):
        Potential(quiver, QQ, [(("alpha", "beta"), QQ.one)])


def test_hereditary_algebra_is_its_own_relation_extension(bundled):
    C = bundled("triangle_path")
    relext, B = relation_extension_algebra(C.presentation)
    assert relext.new_arrows == []
    assert relext.potential.is_zero()
    assert B.dim == C.dim


def test_commutative_square_gets_one_arrow(bundled):
    C = bundled("commutative_square")
    quiver, new_arrows = relation_extension_quiver(C.presentation)
    (arrow, _), = new_arrows
    assert (arrow.name, arrow.source, arrow.target) == ("rel1", "4", "1")
    potential = keller_potential(quiver, C.field, new_arrows)
    assert len(potential.terms) == 2


def test_cyclic_quivers_are_rejected(bundled):
    with pytest.raises(NotTriangularError):
        relation_extension_algebra(bundled("cycle2_nakayama").presentation)


@pytest.mark.parametrize("names", [["alpha"], ["delta", "epsilon"]])
def test_bad_arrow_names(bundled, names):
    with pytest.raises(PresentationError):
        relation_extension_quiver(bundled("triangle_zero_relation").presentation, names)


def test_emitted_file_rebuilds_the_algebra(zero_relation_extension):
    relext, B = zero_relation_extension
    data = relation_extension_file(relext)
    assert [a["name"] for a in data["arrows"]][-1] == "delta"
    assert build_algebra(presentation_from_file(data)).dim == B.dim


@pytest.mark.slow
def test_crosscheck_with_trivial_extension(bundled):
    result = crosscheck_with_trivial_extension(bundled("triangle_zero_relation"))
    assert result.passed, result.details
    assert result.details["hh_presented"] == [2, 2]
