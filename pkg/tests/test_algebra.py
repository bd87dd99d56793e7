import pytest

from algebra import Algebra, build_algebra, center_basis, is_triangular, system_of_relations
from errors import AxiomError, NotAdmissibleError
from quiver import Path, PathSum


@pytest.mark.parametrize("name, dim", [
    ("cycle2_nakayama", 4),
    ("cycle2_doubled", 8),
    ("triangle_path", 7),
    ("triangle_loop", 10),
    ("triangle_zero_relation", 6),
    ("commutative_square", 9),
])
def test_bundled_dimensions(bundled, name, dim):
    assert bundled(name).dim == dim


def test_loop_triangle_basis(bundled):
    B = bundled("triangle_loop")
    labels = set(B.labels)
    assert {"e_1", "e_2", "e_3", "alpha", "beta", "gamma", "epsilon", "beta*gamma", "gamma*epsilon"} <= labels
    # alpha*epsilon = beta*gamma*epsilon: one of the two survives
    assert len(labels & {"alpha*epsilon", "beta*gamma*epsilon"}) == 1


def test_normal_form_uses_relations(bundled):
    B = bundled("triangle_loop")
    field = B.field
    left = B.normal_form(PathSum.of_path(field, Path("1", "2", ("alpha", "epsilon"))))
    right = B.normal_form(PathSum.of_path(field, Path("1", "2", ("beta", "gamma", "epsilon"))))
    assert left == right != {}
    assert B.normal_form(PathSum.of_path(field, Path("2", "2", ("epsilon", "epsilon")))) == {}


def test_element_arithmetic(bundled):
    C = bundled("triangle_zero_relation")
    alpha = C.basis_element(C.arrow_index("alpha"))
    beta = C.basis_element(C.arrow_index("beta"))
    assert (alpha * beta).is_zero()
    assert C.one() * alpha == alpha
    assert (alpha + alpha - 2 * alpha).is_zero()


def test_nilpotency(bundled):
    assert bundled("cycle2_nakayama").nilpotency == 2
    assert bundled("triangle_zero_relation").nilpotency == 2


def test_cycle_without_relations_is_rejected(presentation):
    with pytest.raises(NotAdmissibleError):
        build_algebra(presentation(["1"], [("x", "1", "1")]))


def test_inhomogeneous_loop_relation_is_rejected(presentation):
    # I = x^2(1 - x) holds no power of x
    with pytest.raises(NotAdmissibleError):
        build_algebra(presentation(["1"], [("x", "1", "1")], ["x*x - x*x*x"]), cap=8)


def test_inhomogeneous_relation_with_zero_tail_is_accepted(presentation):
    loop = presentation(["1"], [("x", "1", "1")], ["x*x - x*x*x", "x*x*x"])
    A = build_algebra(loop)
    assert A.dim == 2
    assert A.nilpotency == 2


def test_system_of_relations_drops_consequences(presentation):
    chain = presentation(["1", "2", "3", "4"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")],
                         ["a*b", "a*b*c", "b*c"])
    kept = system_of_relations(chain)
    assert [str(r) for r in kept] == ["a*b", "b*c"]


def test_reverse_order_gives_same_dimension(bundled):
    B = bundled("triangle_loop")
    reversed_basis = build_algebra(B.presentation, reverse_order=True)
    assert reversed_basis.dim == B.dim
    assert "beta*gamma*epsilon" in reversed_basis.labels


def test_center_and_triangularity(bundled):
    assert len(center_basis(bundled("triangle_path"))) == 1
    assert is_triangular(bundled("commutative_square"))
    assert not is_triangular(bundled("cycle2_nakayama"))


def test_axioms_are_checked(QQ):
    with pytest.raises(AxiomError):
        Algebra.from_structure_constants(QQ, ["e", "x"], {(0, 0): {0: 1}, (0, 1): {1: 1}}, [0])
    with pytest.raises(AxiomError):
        Algebra.from_structure_constants(QQ, ["e", "f"], {(0, 0): {0: 1}, (1, 1): {1: 1}, (0, 1): {0: 1}}, [0, 1])


def test_dual_numbers_from_structure_constants(QQ):
    A = Algebra.from_structure_constants(QQ, ["e", "x"], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}, [0])
    x = A.basis_element(1)
    assert (x * x).is_zero()
    assert len(center_basis(A)) == 2
    assert A.presentation is None
