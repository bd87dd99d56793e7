"""Relation extensions: the extended quiver, Keller potentials, cyclic derivatives and the presented algebra."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Any, Optional, Sequence

from algebra import Algebra, build_algebra, system_of_relations
from algebra_files import presentation_to_file
from bimodule import hom_bimodule, regular_bimodule
from errors import NotTriangularError, PresentationError
from extcohom import ext_dc_c
from extension import cale, lower_bound_check, trivial_extension, verify_ses
from hochschild import hh
from quiver import Arrow, Path, PathSum, Presentation, Quiver, paths_up_to
from reports import CheckResult

logger = logging.getLogger(__name__)


def _least_rotation(cycle: tuple[str, ...]) -> tuple[str, ...]:
    return min(cycle[i:] + cycle[:i] for i in range(len(cycle)))


class Potential:
    """Linear combination of cycles, each stored by its lexicographically least rotation."""

    def __init__(self, quiver: Quiver, field, terms: Sequence[tuple[tuple[str, ...], Any]] = ()):
        self.quiver = quiver
        self.field = field
        collected: dict[tuple[str, ...], Any] = {}
        for cycle, coefficient in terms:
            cycle = tuple(cycle)
            path = quiver.path(cycle)
            if not cycle or path.source != path.target:
                raise PresentationError(f"{'*'.join(cycle) or 'empty word'} is not a cycle")
            key = _least_rotation(cycle)
            value = collected.get(key, field.zero) + coefficient
            if value:
                collected[key] = value
            else:
                collected.pop(key, None)
        self._terms = tuple(sorted(collected.items(), key=lambda item: (len(item[0]), item[0])))

    @property
    def terms(self) -> dict[tuple[str, ...], Any]:
        return dict(self._terms)

    @staticmethod
    def rotations(cycle: Sequence[str]) -> list[tuple[str, ...]]:
        cycle = tuple(cycle)
        return [cycle[i:] + cycle[:i] for i in range(len(cycle))]

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Potential):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __str__(self) -> str:
        as_paths = PathSum(self.field, [(Path(self.quiver.arrow(c[0]).source, self.quiver.arrow(c[0]).source, c), v)
                                        for c, v in self._terms])
        return str(as_paths)

    def __repr__(self) -> str:
        return f"Potential({self})"


def cyclic_derivative(potential: Potential, arrow: str) -> PathSum:
    """∂_a(β_1 ⋯ β_s) = Σ over i with β_i = a of β_{i+1} ⋯ β_s β_1 ⋯ β_{i-1}."""
    quiver = potential.quiver
    a = quiver.arrow(arrow)
    terms = []
    for cycle, coefficient in potential.terms.items():
        for i, name in enumerate(cycle):
            if name == arrow:
                rest = cycle[i + 1:] + cycle[:i]
                terms.append((Path(a.target, a.source, rest), coefficient))
    return PathSum(potential.field, terms)


@dataclass
class RelationExtensionPresentation:
    """Q_B, the new arrows with the relations they reverse, W_B and the relations of B."""

    quiver: Quiver
    field: Any
    new_arrows: list[tuple[Arrow, PathSum]]
    potential: Potential
    cyclic_derivatives: list[PathSum] = dataclass_field(default_factory=list)
    square_generators: list[PathSum] = dataclass_field(default_factory=list)
    relations: list[PathSum] = dataclass_field(default_factory=list)
    implied: list[PathSum] = dataclass_field(default_factory=list)

    @property
    def presentation(self) -> Presentation:
        return Presentation(self.quiver, self.field, tuple(self.relations))


def _require_triangular(presentation: Presentation) -> None:
    if not presentation.quiver.is_acyclic():
        raise NotTriangularError("Relation extensions need a triangular algebra (acyclic quiver)")


def relation_extension_quiver(presentation: Presentation, names: Optional[Sequence[str]] = None,
                              relations: Optional[Sequence[PathSum]] = None) -> tuple[Quiver, list[tuple[Arrow, PathSum]]]:
    """Q_C plus one arrow y -> x for each relation from x to y in a minimal system R."""
    _require_triangular(presentation)
    quiver = presentation.quiver
    if relations is None:
        relations = system_of_relations(presentation) if presentation.relations else []
    if names is not None and len(names) != len(relations):
        raise PresentationError(f"{len(names)} names given for {len(relations)} relations")
    taken = set(quiver.vertices) | {a.name for a in quiver.arrows}
    new_arrows = []
    counter = 0
    for position, relation in enumerate(relations):
        x, y = relation.endpoints()
        if names is not None:
            name = names[position]
            if name in taken:
                raise PresentationError(f"New arrow name {name!r} is already used")
        else:
            counter += 1
            name = f"rel{counter}"
            while name in taken:
                counter += 1
                name = f"rel{counter}"
        taken.add(name)
        new_arrows.append((Arrow(name, y, x), relation))
    extended = Quiver(quiver.vertices, list(quiver.arrows) + [arrow for arrow, _ in new_arrows])
    logger.info(f"Relation extension quiver: {len(new_arrows)} new arrows")
    return extended, new_arrows


def keller_potential(quiver: Quiver, field, new_arrows: Sequence[tuple[Arrow, PathSum]]) -> Potential:
    """W_B = Σ ρ_i α_i."""
    terms = []
    for arrow, relation in new_arrows:
        for path, coefficient in relation:
            terms.append((path.arrows + (arrow.name,), coefficient))
    return Potential(quiver, field, terms)


def _square_generators(old: Quiver, extended: Quiver, field, new_arrows: Sequence[tuple[Arrow, PathSum]]) -> list[PathSum]:
    """α u α' for new arrows α, α' and paths u of Q_C; they generate the square of the new-arrow ideal."""
    paths = paths_up_to(old, len(old.vertices))
    generators = []
    for first, _ in new_arrows:
        for second, _ in new_arrows:
            for middle in paths:
                if middle.source == first.target and middle.target == second.source:
                    word = (first.name,) + middle.arrows + (second.name,)
                    generators.append(PathSum.of_path(field, extended.path(word)))
    return generators


def relation_extension_algebra(presentation: Presentation, names: Optional[Sequence[str]] = None,
                               cap: Optional[int] = None) -> tuple[RelationExtensionPresentation, Algebra]:
    """B = J(Q_B, W_B) modulo the square of the new-arrow ideal."""
    _require_triangular(presentation)
    field = presentation.field
    extended, new_arrows = relation_extension_quiver(presentation, names)
    potential = keller_potential(extended, field, new_arrows)
    derivatives = []
    for arrow in extended.arrows:
        derivative = cyclic_derivative(potential, arrow.name)
        if not derivative.is_zero() and derivative not in derivatives:
            derivatives.append(derivative)
    squares = _square_generators(presentation.quiver, extended, field, new_arrows)
    candidates = derivatives + [g for g in squares if g not in derivatives]
    result = RelationExtensionPresentation(extended, field, list(new_arrows), potential, derivatives, squares)
    if candidates:
        kept = system_of_relations(Presentation(extended, field, tuple(candidates)), cap=cap)
    else:
        kept = []
    result.relations = kept
    result.implied = [g for g in candidates if g not in kept]
    algebra = build_algebra(result.presentation, cap=cap)
    logger.info(f"Relation extension: W = {potential}, {len(kept)} relations, dim B {algebra.dim}")
    return result, algebra


def crosscheck_with_trivial_extension(algebra: Algebra) -> CheckResult:
    """The presented relation extension against C ⋉ E_2 on dimensions, quiver counts and first cohomology."""
    if algebra.presentation is None:
        raise PresentationError("The cross-check needs a presented algebra")
    presentation = algebra.presentation
    relext, presented = relation_extension_algebra(presentation)
    e2 = ext_dc_c(algebra, 2)
    ext = trivial_extension(algebra, e2.module)
    relations = system_of_relations(presentation) if presentation.relations else []
    counts_ok = (len(relext.quiver.vertices) == len(presentation.quiver.vertices)
                 and len(relext.quiver.arrows) == len(presentation.quiver.arrows) + len(relations))
    for arrow, relation in relext.new_arrows:
        x, y = relation.endpoints()
        counts_ok = counts_ok and (arrow.source, arrow.target) == (y, x)
    hh_presented = [hh(presented, regular_bimodule(presented), n).dim for n in (0, 1)]
    hh_extension = [hh(ext.B, ext.B_regular, n).dim for n in (0, 1)]
    ses = verify_ses(ext)
    bound = lower_bound_check(ext)
    cale_dim = len(cale(ext.E))
    end_dim = len(hom_bimodule(ext.E, ext.E))
    details = {
        "dim_B": presented.dim, "dim_C": algebra.dim, "dim_E2": e2.dim,
        "quiver_counts": counts_ok, "hh_presented": hh_presented, "hh_trivial_extension": hh_extension,
        "potential": str(relext.potential), "relations": [str(r) for r in relext.relations],
        "cale": cale_dim, "End(E2)": end_dim, "ses": ses, "lower_bound": bound,
        "global_dimension": "assumed at most 2",
    }
    passed = (presented.dim == algebra.dim + e2.dim and counts_ok and hh_presented == hh_extension
              and cale_dim == 0 and ses.passed and bound.passed)
    return CheckResult("relation extension against C x E2", passed, details)


def relation_extension_file(relext: RelationExtensionPresentation) -> dict:
    """AlgebraFile mapping for the presented relation extension."""
    return presentation_to_file(relext.presentation)
