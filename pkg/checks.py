"""Replication suite behind ``cli.py verify``.

Each block loads bundled algebras from ``algebras/`` and returns a list of
``CheckResult``s.  Blocks never raise on a failed identity.  A block that
raises a ``HochprojError`` on corrupted input is reported as one failed check
named after the block.
"""
from __future__ import annotations

import functools
import itertools
import logging
from pathlib import Path
from typing import Callable, Optional

from algebra import Algebra, build_algebra, system_of_relations
from algebra_files import BUNDLED_DIR, load_algebra, load_presentation, load_split_extension
from bimodule import bimodules_isomorphic, dual_bimodule, hom_bimodule, regular_bimodule
from errors import CapExceededError, HochprojError
from extcohom import alpha, ext_dc_c, verify_chain_map, verify_phi1_surjective_Em
from extension import (
    SplitExtensionData, cale, check_c_conditions, delta10_kernel_matches_cale, dual_witness, lie_bracket_failure,
    lower_bound_check, phi, phi_class, regular_witness, rho_kernel_check, sigma_nu, trivial_extension,
    verify_decompositions, verify_lemma21, verify_ses, verify_theorem_A,
)
from hochschild import (
    Cochain, CochainComplex, apply_differential, cochain_complex, cup, derivation_from_arrows, hh,
    hh1_via_derivations,
)
from minres import exactness_ranks, gn_sets, hh_via_minres, partial_resolution
from relext import crosscheck_with_trivial_extension, relation_extension_algebra
from reports import CheckResult, hypothesis_fails, vector_strings

logger = logging.getLogger(__name__)

CORPUS = ("cycle2_nakayama", "cycle2_doubled", "triangle_path", "triangle_loop",
          "triangle_zero_relation", "commutative_square")
MONOMIAL_CORPUS = ("cycle2_nakayama", "triangle_path", "triangle_zero_relation")


class Corpus:
    """Bundled algebras and extensions, loaded once per suite run."""

    def __init__(self, directory: Optional[Path] = None):
        self.directory = Path(directory) if directory is not None else BUNDLED_DIR

    def path(self, name: str) -> Path:
        return self.directory / f"{name}.json"

    @functools.lru_cache(maxsize=None)
    def algebra(self, name: str) -> Algebra:
        return load_algebra(self.path(name))

    @functools.lru_cache(maxsize=None)
    def split(self, base: str, name: str) -> SplitExtensionData:
        return load_split_extension(self.path(name), self.algebra(base))

    @functools.lru_cache(maxsize=None)
    def relation_extension(self, name: str):
        presentation = load_presentation(self.path(name))
        count = len(system_of_relations(presentation)) if presentation.relations else 0
        names = ["delta"] if count == 1 else [f"delta{i}" for i in range(1, count + 1)]
        return relation_extension_algebra(presentation, names=names)


def _arrow(algebra: Algebra, name: str, coefficient: int = 1) -> dict:
    return {algebra.arrow_index(name): algebra.field.convert(coefficient)}


def _strings(algebra: Algebra, values) -> list[str]:
    return vector_strings(algebra.field, values)


def _bar_dim(algebra: Algebra, module, n: int) -> int:
    return CochainComplex(algebra, module, normalized=False).cohomology(n).dim


# -------------------- Two-vertex cycle -------------------- #

def cycle_pair_block(corpus: Corpus) -> list[CheckResult]:
    C = corpus.algebra("cycle2_nakayama")
    ext = corpus.split("cycle2_nakayama", "cycle2_doubled_split")
    B = ext.B
    checks = [CheckResult("cycle pair dimensions", (C.dim, B.dim, ext.E.dim) == (4, 8, 4),
                          {"C": C.dim, "B": B.dim, "E": ext.E.dim})]

    hh1_c = hh(C, regular_bimodule(C), 1).dim
    hh1_b = hh(B, regular_bimodule(B), 1).dim
    hh1_b_der = hh1_via_derivations(B, regular_bimodule(B)).dim
    hh1_b_bar = _bar_dim(B, regular_bimodule(B), 1)
    checks.append(CheckResult("cycle pair first cohomology",
                              hh1_c == 1 and hh1_b == hh1_b_der == hh1_b_bar == 4,
                              {"HH1(C)": hh1_c, "HH1(B)": hh1_b, "via derivations": hh1_b_der,
                               "via bar": hh1_b_bar}))

    phi1 = phi(ext, 1)
    checks.append(CheckResult("cycle pair phi1", phi1.rank == 1 and phi1.surjective,
                              {"rank": phi1.rank, "surjective": phi1.surjective, "matrix": phi1.matrix}))

    module = regular_bimodule(B)
    u0 = derivation_from_arrows(B, module, {"a0": _arrow(B, "a0"), "a1": _arrow(B, "a1")})
    u1 = derivation_from_arrows(B, module, {"ab0": _arrow(B, "a1"), "ab1": _arrow(B, "a0", -1)})
    v0 = derivation_from_arrows(B, module, {"a0": _arrow(B, "ab1"), "a1": _arrow(B, "ab0", -1)})
    v1 = derivation_from_arrows(B, module, {"ab0": _arrow(B, "ab0", -1), "ab1": _arrow(B, "ab1", -1)})
    images = {name: phi_class(ext, d) for name, d in (("u0", u0), ("u1", u1), ("v0", v0), ("v1", v1))}
    negated_v0 = [-value for value in images["v0"]]
    killed = not any(images["u1"]) and not any(images["v1"])
    checks.append(CheckResult("cycle pair images of u and v",
                              killed and any(images["u0"]) and images["u0"] == negated_v0,
                              {name: _strings(C, values) for name, values in images.items()}))

    bracket = lie_bracket_failure(ext, u0, v0)
    checks.append(CheckResult("cycle pair Lie bracket failure",
                              bracket["differ"] and any(bracket["image_of_bracket"])
                              and not any(bracket["bracket_of_images"]),
                              {"image_of_bracket": _strings(C, bracket["image_of_bracket"]),
                               "bracket_of_images": _strings(C, bracket["bracket_of_images"])}))

    verdict = bimodules_isomorphic(ext.E, dual_bimodule(C))
    checks.append(CheckResult("kernel of p is DC", verdict.status == "yes", {"verdict": verdict.status}))
    return checks


# -------------------- Loop on a triangle -------------------- #

def loop_triangle_block(corpus: Corpus) -> list[CheckResult]:
    C = corpus.algebra("triangle_path")
    ext = corpus.split("triangle_path", "triangle_loop_split")
    checks = [CheckResult("loop triangle dimensions", (C.dim, ext.B.dim, ext.E.dim) == (7, 10, 3),
                          {"C": C.dim, "B": ext.B.dim, "E": ext.E.dim, "trivial": ext.is_trivial})]
    hh_c = [hh(C, ext.C_regular, n).dim for n in (0, 1)]
    hh1_b = hh(ext.B, ext.B_regular, 1).dim
    checks.append(CheckResult("loop triangle first cohomology", hh_c == [1, 2] and hh1_b == 3,
                              {"HH(C)": hh_c, "HH1(B)": hh1_b}))
    phi1 = phi(ext, 1)
    checks.append(CheckResult("loop triangle phi1 not onto", phi1.rank == 1 and not phi1.surjective,
                              {"rank": phi1.rank, "surjective": phi1.surjective, "kernel": phi1.kernel_dim}))
    retraction = sigma_nu(ext, 1)
    checks.append(CheckResult("loop triangle sigma/nu retraction", retraction.retraction_holds,
                              {"HH1(C)": retraction.hh_c_dim, "hh1(B,C)": retraction.hh_bc_dim}))
    return checks


# -------------------- 𝓔(E) -------------------- #

def cale_block(corpus: Corpus) -> list[CheckResult]:
    ext = corpus.split("cycle2_nakayama", "cycle2_doubled_split")
    cale_dim = len(cale(ext.E))
    hh1_be = hh(ext.B, ext.E_over_B, 1).dim
    phi1 = phi(ext, 1)
    identity = phi1.source.dim == hh1_be + cale_dim + phi1.target.dim
    return [
        CheckResult("cale of the cycle pair", cale_dim == 1, {"cale": cale_dim}),
        CheckResult("first cohomology identity", identity and hh1_be == 2,
                    {"HH1(B)": phi1.source.dim, "hh1(B,E)": hh1_be, "cale": cale_dim, "HH1(C)": phi1.target.dim}),
        delta10_kernel_matches_cale(ext.E),
        verify_ses(ext),
        rho_kernel_check(ext),
    ]


# -------------------- Relation extension -------------------- #

EXPECTED_RELATIONS = {"delta*alpha", "alpha*beta", "beta*delta", "delta*gamma*delta"}
EXPECTED_OVERLAPS = {"alpha*beta*delta", "beta*delta*alpha", "delta*alpha*beta", "beta*delta*gamma*delta",
                     "delta*gamma*delta*gamma*delta", "delta*gamma*delta*alpha"}


def relation_extension_block(corpus: Corpus) -> list[CheckResult]:
    C = corpus.algebra("triangle_zero_relation")
    relext, B = corpus.relation_extension("triangle_zero_relation")
    relations = {str(r) for r in relext.relations}
    checks = [CheckResult("presented relation extension",
                          str(relext.potential) == "alpha*beta*delta" and relations == EXPECTED_RELATIONS,
                          {"potential": str(relext.potential), "relations": sorted(relations)})]

    e2 = ext_dc_c(C, 2)
    checks.append(CheckResult("relation extension dimension", B.dim == 10 == C.dim + e2.dim,
                              {"B": B.dim, "C": C.dim, "E2": e2.dim}))
    hh_c = [hh(C, regular_bimodule(C), n).dim for n in range(4)]
    hh_b = [hh(B, regular_bimodule(B), n).dim for n in range(3)]
    checks.append(CheckResult("relation extension cohomology", hh_c == [1, 1, 1, 0] and hh_b == [2, 2, 2],
                              {"HH(C)": hh_c, "HH(B)": hh_b}))

    ext = trivial_extension(C, e2.module)
    phi1, phi2 = phi(ext, 1), phi(ext, 2)
    checks.append(CheckResult("relation extension phi",
                              phi1.surjective and phi1.source.dim == phi1.target.dim + 1 and phi2.is_zero(),
                              {"phi1_rank": phi1.rank, "HH1(B)": phi1.source.dim, "HH1(C)": phi1.target.dim,
                               "phi2": phi2.matrix}))
    cale_dim = len(cale(e2.module))
    hh1_ce = hh(C, e2.module, 1).dim
    end_dim = len(hom_bimodule(e2.module, e2.module))
    checks.append(CheckResult("relation extension bimodule invariants", (cale_dim, hh1_ce, end_dim) == (0, 0, 1),
                              {"cale": cale_dim, "hh1(C,E2)": hh1_ce, "End(E2)": end_dim}))
    checks.append(lower_bound_check(ext))
    checks.append(crosscheck_with_trivial_extension(C))

    sets = gn_sets(B)
    overlaps = {str(x) for x in sets.chains(3)}
    second = {str(x) for x in sets.chains(2)}
    checks.append(CheckResult("minimal resolution chains", second == EXPECTED_RELATIONS and overlaps == EXPECTED_OVERLAPS,
                              {"g2": sorted(second), "g3": sorted(overlaps)}))
    minres_dims = [hh_via_minres(B, n).dim for n in range(3)]
    checks.append(CheckResult("minimal resolution against bar", minres_dims == hh_b,
                              {"minres": minres_dims, "bar": hh_b,
                               "ranks": exactness_ranks(partial_resolution(B))}))
    return checks


# -------------------- Surjectivity corpus -------------------- #

SURJECTIVITY_DEGREES = (0, 1, 2)


def _phi_surjective(ext: SplitExtensionData, label: str) -> list[CheckResult]:
    results = []
    for n in SURJECTIVITY_DEGREES:
        name = f"phi{n} onto for {label}"
        try:
            matrix = phi(ext, n)
        except CapExceededError as exc:
            results.append(hypothesis_fails(name, f"skipped: {exc}"))
            continue
        results.append(CheckResult(name, matrix.surjective, {"rank": matrix.rank, "HH(C)": matrix.target.dim}))
    return results


def surjectivity_block(corpus: Corpus) -> list[CheckResult]:
    checks = []
    for name in CORPUS:
        C = corpus.algebra(name)
        dual_ext = trivial_extension(C, dual_bimodule(C))
        regular_ext = trivial_extension(C, regular_bimodule(C))
        checks.extend(_phi_surjective(dual_ext, f"{name} x DC"))
        checks.extend(_phi_surjective(regular_ext, f"{name} x C"))
        for zeta in hh1_via_derivations(C, regular_bimodule(C)).representatives:
            checks.append(check_c_conditions(dual_ext, 1, zeta, dual_witness(dual_ext, zeta)))
            checks.append(check_c_conditions(regular_ext, 1, zeta, regular_witness(regular_ext, zeta)))
        for m in range(3):
            try:
                checks.append(verify_phi1_surjective_Em(C, m))
            except CapExceededError as exc:
                checks.append(hypothesis_fails(f"phi1 onto for {name} x E_{m}", f"skipped: {exc}"))
    return checks


# -------------------- Structural identities -------------------- #

def _differential_squares_vanish(algebra: Algebra, module, label: str, top: int = 3) -> CheckResult:
    complex_ = cochain_complex(algebra, module)
    failures = []
    for n in range(top + 1):
        product = complex_.differential(n + 1) * complex_.differential(n)
        if not product.is_zero_matrix:
            failures.append(n)
    return CheckResult(f"b∘b = 0 for {label}", not failures, {"failing_degrees": failures})


def _bar_squares_vanish(algebra: Algebra, module, label: str, top: int = 3) -> CheckResult:
    """b∘b = 0 on every basis cochain of the full bar complex up to degree ``top``."""
    one = algebra.field.one
    failures = []
    for n in range(top + 1):
        for key in itertools.product(range(algebra.dim), repeat=n):
            twice = [apply_differential(apply_differential(Cochain(algebra, module, n, {key: {m: one}})))
                     for m in range(module.dim)]
            if any(any(c.full_vector().values()) for c in twice):
                failures.append(n)
                break
    return CheckResult(f"bar b∘b = 0 for {label}", not failures, {"failing_degrees": failures})


def _graded_commutativity(algebra: Algebra, label: str, max_total_degree: int = 3) -> CheckResult:
    module = regular_bimodule(algebra)
    mismatches = []
    checked = {total: 0 for total in range(max_total_degree + 1)}
    for s in range(max_total_degree + 1):
        for t in range(max_total_degree + 1 - s):
            target = hh(algebra, module, s + t)
            sign = -algebra.field.one if (s * t) % 2 else algebra.field.one
            for a, first in enumerate(hh(algebra, module, s).representatives):
                for b, second in enumerate(hh(algebra, module, t).representatives):
                    checked[s + t] += 1
                    left = target.coordinates(cup(first, second))
                    right = [sign * v for v in target.coordinates(cup(second, first))]
                    if left != right:
                        mismatches.append([s, t, a, b])
    return CheckResult(f"graded commutativity for {label}", not mismatches,
                       {"mismatches": mismatches, "pairs_by_total_degree": checked})


def identities_block(corpus: Corpus) -> list[CheckResult]:
    checks = []
    for name in CORPUS:
        A = corpus.algebra(name)
        checks.append(_differential_squares_vanish(A, regular_bimodule(A), f"{name} regular"))
        checks.append(_differential_squares_vanish(A, dual_bimodule(A), f"{name} dual"))
        checks.append(_bar_squares_vanish(A, regular_bimodule(A), f"{name} regular"))

    extensions = {
        "cycle pair": corpus.split("cycle2_nakayama", "cycle2_doubled_split"),
        "loop triangle": corpus.split("triangle_path", "triangle_loop_split"),
        "zero relation x E2": trivial_extension(corpus.algebra("triangle_zero_relation"),
                                                ext_dc_c(corpus.algebra("triangle_zero_relation"), 2).module),
    }
    for label, ext in extensions.items():
        for n in range(3):
            result = verify_lemma21(ext, n)
            result.name = f"{result.name} ({label})"
            checks.append(result)
        result = verify_theorem_A(ext, 3)
        result.name = f"{result.name} ({label})"
        checks.append(result)
        checks.append(_graded_commutativity(ext.B, label))

    C = corpus.algebra("triangle_zero_relation")
    for zeta in hh1_via_derivations(C, regular_bimodule(C)).representatives:
        for m in range(3):
            checks.append(verify_chain_map(C, m, zeta))
        operator = alpha(C, 2, zeta)
        checks.append(CheckResult("alpha_2 acts on E2 of the zero relation", operator.induced.source_dim == ext_dc_c(C, 2).dim == 4,
                                  {"induced": operator.induced}))

    for name in CORPUS:
        C = corpus.algebra(name)
        for label, module in (("DC", dual_bimodule(C)), ("E2", ext_dc_c(C, 2).module)):
            result = verify_decompositions(trivial_extension(C, module))
            result.name = f"{result.name} ({name} x {label})"
            checks.append(result)
    return checks


# -------------------- Oracles -------------------- #

def oracles_block(corpus: Corpus) -> list[CheckResult]:
    checks = []
    for name in CORPUS:
        A = corpus.algebra(name)
        for label, module in (("regular", regular_bimodule(A)), ("dual", dual_bimodule(A))):
            derivations = hh1_via_derivations(A, module).dim
            normalized = hh(A, module, 1).dim
            bar = _bar_dim(A, module, 1)
            checks.append(CheckResult(f"hh1 oracles for {name} {label}", derivations == normalized == bar,
                                      {"derivations": derivations, "normalized": normalized, "bar": bar}))
        reversed_basis = build_algebra(A.presentation, reverse_order=True)
        dims = [hh(A, regular_bimodule(A), n).dim for n in range(3)]
        reversed_dims = [hh(reversed_basis, regular_bimodule(reversed_basis), n).dim for n in range(3)]
        checks.append(CheckResult(f"basis independence for {name}", dims == reversed_dims,
                                  {"lexicographic": dims, "reversed": reversed_dims}))

    monomial = [corpus.algebra(name) for name in MONOMIAL_CORPUS]
    monomial.append(corpus.relation_extension("triangle_zero_relation")[1])
    labels = list(MONOMIAL_CORPUS) + ["relation extension"]
    for label, A in zip(labels, monomial):
        resolution = partial_resolution(A)
        minres_dims = [hh_via_minres(A, n).dim for n in range(3)]
        bar_dims = [hh(A, regular_bimodule(A), n).dim for n in range(3)]
        checks.append(CheckResult(f"minres against bar for {label}", minres_dims == bar_dims,
                                  {"minres": minres_dims, "bar": bar_dims,
                                   "projectives": [resolution.dimension(n) for n in range(4)]}))
    return checks


BLOCKS: dict[str, Callable[[Corpus], list[CheckResult]]] = {
    "cycle-pair": cycle_pair_block,
    "loop-triangle": loop_triangle_block,
    "cale": cale_block,
    "relation-extension": relation_extension_block,
    "surjectivity": surjectivity_block,
    "identities": identities_block,
    "oracles": oracles_block,
}


def run_suite(only: Optional[str] = None, directory: Optional[Path] = None) -> dict[str, list[CheckResult]]:
    """Run every block, or the one named by ``only``, in canonical order."""
    if only is not None and only not in BLOCKS:
        raise KeyError(only)
    corpus = Corpus(directory)
    results = {}
    for name, block in BLOCKS.items():
        if only is not None and name != only:
            continue
        logger.info(f"Running block {name}")
        try:
            results[name] = block(corpus)
        except HochprojError as exc:
            logger.error(f"Block {name} aborted: {type(exc).__name__}: {exc}")
            results[name] = [CheckResult(f"{name} block", False, {"error": f"{type(exc).__name__}: {exc}"})]
            continue
        failed = [c.name for c in results[name] if not c.passed]
        if failed:
            logger.warning(f"Block {name}: {len(failed)} failing checks: {failed}")
    return results
