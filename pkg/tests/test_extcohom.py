import pytest

from bimodule import regular_bimodule
from errors import NotADerivationError
from extcohom import (alpha, dc_complex, ext_dc_c, verify_action_relations, verify_chain_map,
                      verify_phi1_surjective_Em)
from hochschild import Cochain, hh1_via_derivations, inner_derivation


def test_self_injective_algebra(bundled):
    # DC is projective as a right module, so only Hom survives
    C = bundled("cycle2_nakayama")
    assert ext_dc_c(C, 0).dim == 4
    assert ext_dc_c(C, 1).dim == 0


def test_second_ext_of_a_hereditary_algebra(bundled):
    assert ext_dc_c(bundled("triangle_path"), 2).dim == 0


def test_second_ext_of_the_zero_relation(bundled):
    C = bundled("triangle_zero_relation")
    E2 = ext_dc_c(C, 2)
    assert E2.dim == 4
    assert E2.module.dim == 4
    assert E2.certify_actions().passed
    assert len(E2.module.peirce) == 4


def test_differential_squares_to_zero(bundled):
    C = bundled("triangle_zero_relation")
    complex_ = dc_complex(C)
    for m in (0, 1):
        assert (complex_.differential(m + 1) * complex_.differential(m)).is_zero_matrix


def test_alpha_operators(bundled):
    C = bundled("triangle_zero_relation")
    for zeta in hh1_via_derivations(C, regular_bimodule(C)).representatives:
        assert verify_action_relations(C, zeta).passed
        for m in (0, 1, 2):
            assert verify_chain_map(C, m, zeta).passed
        operator = alpha(C, 2, zeta)
        assert operator.induced.source_dim == operator.induced.target_dim == 4


def test_inner_derivations_give_bimodule_maps(bundled):
    C = bundled("triangle_zero_relation")
    M = regular_bimodule(C)
    zeta = inner_derivation(C, M, {C.vertex_idempotent("1"): C.field.one})
    assert verify_chain_map(C, 1, zeta).passed


@pytest.mark.slow
def test_phi1_onto_for_the_ext_extensions(bundled):
    C = bundled("triangle_zero_relation")
    for m in (0, 1, 2):
        result = verify_phi1_surjective_Em(C, m)
        assert result.passed, result.details


def test_alpha_needs_a_derivation(bundled):
    C = bundled("triangle_zero_relation")
    M = regular_bimodule(C)
    broken = Cochain(C, M, 1, {(C.arrow_index("alpha"),): {C.vertex_idempotent("1"): C.field.one}})
    with pytest.raises(NotADerivationError):
        alpha(C, 1, broken)
    with pytest.raises(NotADerivationError):
        verify_action_relations(C, Cochain(C, M, 0))
