import pytest

from checks import BLOCKS, Corpus, run_suite


def test_unknown_block():
    with pytest.raises(KeyError):
        run_suite("nope")


def test_corpus_caches_algebras():
    corpus = Corpus()
    assert corpus.algebra("triangle_path") is corpus.algebra("triangle_path")
    relext, B = corpus.relation_extension("triangle_zero_relation")
    assert B.dim == 10


def test_loop_triangle_block():
    results = run_suite("loop-triangle")
    assert list(results) == ["loop-triangle"]
    assert all(check.passed for check in results["loop-triangle"])


@pytest.mark.slow
@pytest.mark.parametrize("block", sorted(BLOCKS))
def test_every_block_passes(block):
    results = run_suite(block)[block]
    failed = [check.to_dict() for check in results if not check.passed]
    assert not failed


def test_differential_squares_vanish_in_degree_three(bundled):
    from bimodule import dual_bimodule, regular_bimodule
    from checks import _bar_squares_vanish, _differential_squares_vanish

    A = bundled("cycle2_nakayama")
    for module in (regular_bimodule(A), dual_bimodule(A)):
        assert _differential_squares_vanish(A, module, "cycle2", top=3).passed
        assert _bar_squares_vanish(A, module, "cycle2", top=3).passed


@pytest.mark.slow
def test_graded_commutativity_up_to_total_degree_three(bundled):
    from checks import _graded_commutativity
    from extcohom import ext_dc_c
    from extension import trivial_extension

    C = bundled("triangle_zero_relation")
    B = trivial_extension(C, ext_dc_c(C, 2).module).B
    result = _graded_commutativity(B, "zero relation x E2")
    assert result.passed
    assert result.details["pairs_by_total_degree"][3] > 0


def test_corrupted_algebra_becomes_a_failed_check(tmp_path):
    import json
    import shutil

    from algebra_files import BUNDLED_DIR

    for source in BUNDLED_DIR.glob("*.json"):
        shutil.copy(source, tmp_path / source.name)
    target = tmp_path / "cycle2_nakayama.json"
    data = json.loads(target.read_text(encoding="utf-8"))
    data["relations"] = ["alpha0*alpha1", "alpha1*alpha0*alpha1"]
    target.write_text(json.dumps(data), encoding="utf-8")

    results = run_suite("cycle-pair", tmp_path)["cycle-pair"]
    assert [check.name for check in results] == ["cycle-pair block"]
    assert not results[0].passed
    assert "error" in results[0].details
