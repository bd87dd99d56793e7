import pytest

from bimodule import bimodules_isomorphic, dual_bimodule, regular_bimodule, zero_bimodule
from errors import ExtensionError, PresentationError
from extension import (cale, delta10_kernel_matches_cale, lie_bracket_failure, lower_bound_check, phi, phi_class,
                       rho_kernel_check, sigma_nu, split_extension, split_extension_from_morphisms,
                       trivial_extension, verify_decompositions, verify_lemma21, verify_ses, verify_theorem_A)
from hochschild import derivation_from_arrows, hh
from reports import HYPOTHESIS_FAILS


def _arrow(algebra, name, coefficient=1):
    return {algebra.arrow_index(name): algebra.field.convert(coefficient)}


def test_cycle_pair_shape(cycle_pair):
    assert (cycle_pair.C.dim, cycle_pair.B.dim, cycle_pair.E.dim) == (4, 8, 4)
    assert cycle_pair.is_trivial
    assert bimodules_isomorphic(cycle_pair.E, dual_bimodule(cycle_pair.C)).status == "yes"


def test_cycle_pair_phi1(cycle_pair):
    matrix = phi(cycle_pair, 1)
    assert (matrix.source.dim, matrix.target.dim) == (4, 1)
    assert matrix.rank == 1 and matrix.surjective
    assert matrix.kernel_dim == 3


def test_cycle_pair_derivation_images(cycle_pair):
    B = cycle_pair.B
    module = regular_bimodule(B)
    u0 = derivation_from_arrows(B, module, {"a0": _arrow(B, "a0"), "a1": _arrow(B, "a1")})
    u1 = derivation_from_arrows(B, module, {"ab0": _arrow(B, "a1"), "ab1": _arrow(B, "a0", -1)})
    v0 = derivation_from_arrows(B, module, {"a0": _arrow(B, "ab1"), "a1": _arrow(B, "ab0", -1)})
    assert any(phi_class(cycle_pair, u0))
    assert not any(phi_class(cycle_pair, u1))
    assert phi_class(cycle_pair, u0) == [-v for v in phi_class(cycle_pair, v0)]
    failure = lie_bracket_failure(cycle_pair, u0, v0)
    assert failure["differ"]
    assert not any(failure["bracket_of_images"])


def test_cale_of_the_cycle_pair(cycle_pair):
    assert len(cale(cycle_pair.E)) == 1
    assert delta10_kernel_matches_cale(cycle_pair.E).passed
    ses = verify_ses(cycle_pair)
    assert ses.passed
    assert ses.details["hh1(B,E)"] == 2
    assert rho_kernel_check(cycle_pair).passed


def test_loop_triangle(loop_triangle):
    assert (loop_triangle.C.dim, loop_triangle.B.dim, loop_triangle.E.dim) == (7, 10, 3)
    matrix = phi(loop_triangle, 1)
    assert (matrix.source.dim, matrix.target.dim, matrix.rank) == (3, 2, 1)
    assert not matrix.surjective
    assert rho_kernel_check(loop_triangle).outcome == HYPOTHESIS_FAILS
    assert sigma_nu(loop_triangle, 1).retraction_holds


@pytest.mark.parametrize("name", ["triangle_path", "cycle2_nakayama"])
def test_trivial_extension_by_the_dual(bundled, name):
    C = bundled(name)
    ext = trivial_extension(C, dual_bimodule(C))
    assert ext.B.dim == 2 * C.dim
    for n in (0, 1):
        assert phi(ext, n).surjective
    assert verify_decompositions(ext).passed
    assert verify_lemma21(ext, 1, trials=3).passed


def test_cup_compatibility(loop_triangle):
    result = verify_theorem_A(loop_triangle, 2)
    assert result.passed
    assert result.details["unit"]


def test_split_extension_by_the_regular_module(bundled):
    C = bundled("triangle_path")
    ext = split_extension(C, regular_bimodule(C))
    assert not ext.is_trivial
    assert ext.B.dim == 2 * C.dim
    assert phi(ext, 1).surjective


def test_lower_bound_on_the_dual_extension(bundled):
    C = bundled("triangle_path")
    result = lower_bound_check(trivial_extension(C, dual_bimodule(C)))
    assert result.passed
    assert result.details["difference"] >= 1
    assert lower_bound_check(trivial_extension(C, zero_bimodule(C))).outcome == HYPOTHESIS_FAILS


def test_extension_errors(bundled):
    C, other = bundled("triangle_path"), bundled("cycle2_nakayama")
    with pytest.raises(ExtensionError):
        trivial_extension(C, dual_bimodule(other))
    with pytest.raises(ExtensionError):
        split_extension(C, dual_bimodule(C))
    with pytest.raises(ExtensionError):
        verify_decompositions(split_extension(C, regular_bimodule(C)))
    B = bundled("triangle_loop")
    with pytest.raises(PresentationError):
        split_extension_from_morphisms(B, C, {"alpha": "alpha"}, {"alpha": "alpha", "beta": "beta", "gamma": "gamma"})


def test_hh1_of_the_ideal(cycle_pair):
    assert hh(cycle_pair.B, cycle_pair.E_over_B, 1).dim == 2
