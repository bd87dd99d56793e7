"""Finite-dimensional algebras by structure constants, built from bound quivers or given abstractly."""
from __future__ import annotations

import logging
from typing import Any, Callable, Mapping, Optional, Sequence

from config import get_config
from errors import (AlgebraMismatchError, AxiomError, CapExceededError,
                    NotAdmissibleError, PresentationError)
from exactlin import (add_into, format_scalar, kernel_basis, matrix_from_rows, quotient_data,
                      row_echelon, scalar, scale)
from quiver import Path, PathSum, Presentation, compose, paths_up_to

logger = logging.getLogger(__name__)


class Algebra:
    """An associative algebra k^dim with structure constants b_i b_j = Σ_k c^k_ij b_k.

    ``idempotents`` are basis indices of orthogonal idempotents summing to the
    unit.  ``peirce`` tags each basis element with the (source, target)
    positions in ``idempotents`` such that e_s b e_t = b.
    """

    def __init__(self, field, labels: Sequence[str], table: Mapping[tuple[int, int], Mapping[int, Any]],
                 idempotents: Sequence[int], peirce: Optional[Sequence[tuple[int, int]]] = None,
                 presentation: Optional[Presentation] = None, basis_paths: Optional[Sequence[Path]] = None,
                 nilpotency: Optional[int] = None, reducer: Optional[Callable[[Path], dict]] = None,
                 check: bool = True):
        self.field = field
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.table: dict[tuple[int, int], dict] = {}
        for (i, j), product in table.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise AxiomError(f"Structure constant index ({i}, {j}) outside dimension {self.dim}")
            cleaned = {k: scalar(field, v) for k, v in product.items()}
            cleaned = {k: v for k, v in cleaned.items() if v}
            if cleaned:
                self.table[(i, j)] = cleaned
        self.idempotents = tuple(idempotents)
        self.peirce = tuple(tuple(tag) for tag in peirce) if peirce is not None else None
        self.presentation = presentation
        self.basis_paths = tuple(basis_paths) if basis_paths is not None else None
        self.nilpotency = nilpotency
        self._path_index = {p: i for i, p in enumerate(self.basis_paths)} if self.basis_paths else {}
        self._reducer = reducer
        if check:
            self.check_axioms()

    @classmethod
    def from_structure_constants(cls, field, labels: Sequence[str], table, idempotents: Sequence[int],
                                 peirce: Optional[Sequence[tuple[int, int]]] = None) -> "Algebra":
        """An algebra with no presentation, checked against the axioms."""
        return cls(field, labels, table, idempotents, peirce=peirce)

    # -------------------- Arithmetic -------------------- #

    def product(self, i: int, j: int) -> dict:
        return self.table.get((i, j), {})

    def multiply_vectors(self, u: Mapping, v: Mapping) -> dict:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                product = self.table.get((i, j))
                if product:
                    add_into(out, product, a * b)
        return out

    def unit(self) -> dict:
        return {e: self.field.one for e in self.idempotents}

    def element(self, values: Mapping | Sequence) -> "AlgElement":
        if isinstance(values, Mapping):
            return AlgElement(self, {k: scalar(self.field, v) for k, v in values.items()})
        return AlgElement(self, {i: scalar(self.field, v) for i, v in enumerate(values)})

    def basis_element(self, i: int) -> "AlgElement":
        return AlgElement(self, {i: self.field.one})

    def one(self) -> "AlgElement":
        return AlgElement(self, self.unit())

    def composable(self, i: int, j: int) -> bool:
        """Whether b_i b_j can be nonzero by Peirce degree."""
        if self.peirce is None:
            return True
        return self.peirce[i][1] == self.peirce[j][0]

    def non_idempotent_basis(self) -> list[int]:
        idempotents = set(self.idempotents)
        return [i for i in range(self.dim) if i not in idempotents]

    # -------------------- Path bookkeeping -------------------- #

    def path_index(self, path: Path) -> int:
        try:
            return self._path_index[path]
        except KeyError:
            raise PresentationError(f"{path} is not a basis path") from None

    def arrow_index(self, name: str) -> int:
        if self.presentation is None:
            raise PresentationError("Algebra has no presentation")
        arrow = self.presentation.quiver.arrow(name)
        return self.path_index(Path(arrow.source, arrow.target, (name,)))

    def vertex_idempotent(self, vertex: str) -> int:
        if self.presentation is None:
            raise PresentationError("Algebra has no presentation")
        return self.path_index(self.presentation.quiver.trivial(vertex))

    def normal_form(self, path_sum: PathSum) -> dict:
        """Coordinates of the class of a path combination."""
        if self._reducer is None:
            raise PresentationError("Algebra has no presentation")
        out: dict = {}
        for path, coefficient in path_sum:
            add_into(out, self._reducer(path), coefficient)
        return out

    def element_from_path_sum(self, path_sum: PathSum) -> "AlgElement":
        return AlgElement(self, self.normal_form(path_sum))

    # -------------------- Checks -------------------- #

    def check_axioms(self) -> None:
        """Associativity on basis triples, idempotent axioms and Peirce homogeneity."""
        one = self.field.one
        for i in range(self.dim):
            for j in range(self.dim):
                left = self.table.get((i, j))
                if not left:
                    continue
                for k in range(self.dim):
                    first = self.multiply_vectors(left, {k: one})
                    second = self.multiply_vectors({i: one}, self.product(j, k))
                    if first != second:
                        raise AxiomError(
                            f"Multiplication is not associative on ({self.labels[i]}, {self.labels[j]}, {self.labels[k]})")
        unit = self.unit()
        for i in range(self.dim):
            basis = {i: one}
            if self.multiply_vectors(unit, basis) != basis or self.multiply_vectors(basis, unit) != basis:
                raise AxiomError(f"Idempotents do not sum to the unit on {self.labels[i]}")
        for a in self.idempotents:
            for b in self.idempotents:
                expected = {a: one} if a == b else {}
                if self.product(a, b) != expected:
                    raise AxiomError("Idempotents are not orthogonal")
        if self.peirce is not None:
            if len(self.peirce) != self.dim:
                raise AxiomError("Peirce tags do not cover the basis")
            for i, (s, t) in enumerate(self.peirce):
                basis = {i: one}
                sandwich = self.multiply_vectors(self.multiply_vectors({self.idempotents[s]: one}, basis),
                                                 {self.idempotents[t]: one})
                if sandwich != basis:
                    raise AxiomError(f"Basis element {self.labels[i]} is not Peirce-homogeneous")

    def format_vector(self, vector: Mapping) -> dict[str, str]:
        return {self.labels[i]: format_scalar(self.field, v) for i, v in sorted(vector.items())}

    def __repr__(self) -> str:
        return f"Algebra(dim={self.dim}, idempotents={len(self.idempotents)})"


class AlgElement:
    __slots__ = ("algebra", "vector")

    def __init__(self, algebra: Algebra, vector: Mapping):
        self.algebra = algebra
        self.vector = {k: v for k, v in vector.items() if v}

    def _check(self, other: "AlgElement") -> None:
        if other.algebra is not self.algebra:
            raise AlgebraMismatchError("Elements belong to different algebras")

    def __add__(self, other: "AlgElement") -> "AlgElement":
        self._check(other)
        return AlgElement(self.algebra, add_into(dict(self.vector), other.vector))

    def __sub__(self, other: "AlgElement") -> "AlgElement":
        self._check(other)
        return AlgElement(self.algebra, add_into(dict(self.vector), other.vector, -self.algebra.field.one))

    def __neg__(self) -> "AlgElement":
        return AlgElement(self.algebra, scale(self.vector, -self.algebra.field.one))

    def __mul__(self, other):
        if isinstance(other, AlgElement):
            return multiply(self, other)
        return AlgElement(self.algebra, scale(self.vector, scalar(self.algebra.field, other)))

    def __rmul__(self, other):
        return AlgElement(self.algebra, scale(self.vector, scalar(self.algebra.field, other)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgElement):
            return NotImplemented
        return self.algebra is other.algebra and self.vector == other.vector

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.vector

    def coefficients(self) -> list:
        return [self.vector.get(i, self.algebra.field.zero) for i in range(self.algebra.dim)]

    def __repr__(self) -> str:
        return f"AlgElement({self.algebra.format_vector(self.vector)})"


def multiply(a: AlgElement, b: AlgElement) -> AlgElement:
    a._check(b)
    return AlgElement(a.algebra, a.algebra.multiply_vectors(a.vector, b.vector))


# -------------------- Construction from a presentation -------------------- #

def _ideal_generators(presentation: Presentation, paths: list[Path], max_length: int,
                      index: Mapping[Path, int], min_outer: int = 0, exact: bool = False) -> list[dict]:
    """Truncations to length <= max_length of u·r·v over relations r and paths u, v.

    With ``exact`` only products whose every term has length <= max_length
    are returned, so nothing is truncated.
    """
    ending_at: dict[str, list[Path]] = {}
    starting_at: dict[str, list[Path]] = {}
    for path in paths:
        ending_at.setdefault(path.target, []).append(path)
        starting_at.setdefault(path.source, []).append(path)
    generators = []
    for relation in presentation.relations:
        source, target = relation.endpoints()
        shortest = min(p.length for p in relation.paths)
        reach = max(p.length for p in relation.paths) if exact else shortest
        for prefix in ending_at.get(source, ()):
            if prefix.length + shortest > max_length:
                continue
            for suffix in starting_at.get(target, ()):
                if prefix.length + suffix.length < min_outer:
                    continue
                if prefix.length + reach + suffix.length > max_length:
                    continue
                vector: dict = {}
                for path, coefficient in relation:
                    word = compose(compose(prefix, path), suffix)
                    if word.length <= max_length:
                        add_into(vector, {index[word]: coefficient})
                if vector:
                    generators.append(vector)
    return generators


def _nilpotency_certificate(presentation: Presentation, cap: int, path_cap: int) -> int:
    """Least L found with every path of length L in span{u r v}, for untruncated u r v of length <= N <= cap.

    Each certificate is an identity in kQ, so J^L lies in I.
    """
    quiver = presentation.quiver
    if not presentation.relations and not quiver.is_acyclic():
        raise NotAdmissibleError("Quiver has an oriented cycle but no relations")
    for bound in range(1, cap + 1):
        paths = paths_up_to(quiver, bound)
        if len(paths) > path_cap:
            raise CapExceededError("Admissibility check path space", len(paths), path_cap,
                                   "the quiver may not be admissibly bound")
        index = {p: i for i, p in enumerate(paths)}
        rows, pivots = row_echelon(_ideal_generators(presentation, paths, bound, index, exact=True), len(paths),
                                   presentation.field)
        # e_i lies in an RREF row space iff e_i is itself a row
        unit_rows = {pivot for row, pivot in zip(rows, pivots) if len(row) == 1}
        by_length: dict[int, list[int]] = {}
        for path, i in index.items():
            by_length.setdefault(path.length, []).append(i)
        for length in range(1, bound + 1):
            if all(i in unit_rows for i in by_length.get(length, [])):
                return length
    raise NotAdmissibleError(f"No power of the arrow ideal lies in the ideal within cap {cap}")


def build_algebra(presentation: Presentation, cap: Optional[int] = None,
                  reverse_order: bool = False) -> Algebra:
    """Basis of normal-form paths and structure constants of kQ/I.

    The basis consists of the lexicographically earliest surviving paths
    (latest ones with ``reverse_order``).
    """
    settings = get_config()
    cap = settings.ADMISSIBILITY_CAP if cap is None else cap
    bound = _nilpotency_certificate(presentation, cap, settings.PATH_SPACE_CAP)
    field = presentation.field
    quiver = presentation.quiver

    paths = paths_up_to(quiver, bound - 1)
    count = len(paths)
    index = {p: i for i, p in enumerate(paths)}
    column = (lambda i: i) if reverse_order else (lambda i: count - 1 - i)
    generators = _ideal_generators(presentation, paths, bound - 1, index)
    quotient = quotient_data([{column(i): v for i, v in g.items()} for g in generators], count, field)
    survivors = sorted(column(c) for c in quotient.free)
    basis_paths = [paths[i] for i in survivors]
    basis_of_free = {column(i): k for k, i in enumerate(survivors)}

    def reduce(path: Path) -> dict:
        if path.length >= bound:
            return {}
        coordinates = quotient.coordinates({column(index[path]): field.one})
        return {basis_of_free[quotient.free[pos]]: value
                for pos, value in enumerate(coordinates) if value}

    table = {}
    for i, left in enumerate(basis_paths):
        for j, right in enumerate(basis_paths):
            word = compose(left, right)
            if word is not None:
                product = reduce(word)
                if product:
                    table[(i, j)] = product

    vertex_position = quiver.vertex_index
    idempotents = [basis_paths.index(quiver.trivial(v)) for v in quiver.vertices]
    peirce = [(vertex_position[p.source], vertex_position[p.target]) for p in basis_paths]
    nilpotency = bound
    for length in range(1, bound):
        if all(not reduce(p) for p in paths if p.length == length):
            nilpotency = length
            break

    algebra = Algebra(field, [str(p) for p in basis_paths], table, idempotents, peirce=peirce,
                      presentation=presentation, basis_paths=basis_paths, nilpotency=nilpotency,
                      reducer=reduce)
    logger.info(f"Built algebra: dim {algebra.dim}, nilpotency {nilpotency}, {len(presentation.relations)} relations")
    return algebra


def system_of_relations(presentation: Presentation, cap: Optional[int] = None) -> list[PathSum]:
    """A minimal generating set of I, chosen among the given relations.

    Works modulo J^(L+1) where J^L ⊆ I: a relation is kept when it is
    independent of J·I + I·J and of the relations already kept.  Relations
    are visited grouped by (source, target) in vertex order.
    """
    settings = get_config()
    cap = settings.ADMISSIBILITY_CAP if cap is None else cap
    bound = _nilpotency_certificate(presentation, cap, settings.PATH_SPACE_CAP)
    quiver = presentation.quiver
    paths = paths_up_to(quiver, bound)
    index = {p: i for i, p in enumerate(paths)}
    field = presentation.field
    decomposables = _ideal_generators(presentation, paths, bound, index, min_outer=1)
    order = quiver.vertex_index
    ranked = sorted(enumerate(presentation.relations),
                    key=lambda item: (order[item[1].endpoints()[0]], order[item[1].endpoints()[1]], item[0]))
    kept: list[tuple[int, PathSum]] = []
    span = list(decomposables)
    current_rank = len(row_echelon(span, len(paths), field)[1])
    for position, relation in ranked:
        vector: dict = {}
        for path, coefficient in relation:
            if path.length <= bound:
                add_into(vector, {index[path]: coefficient})
        candidate_rank = len(row_echelon(span + [vector], len(paths), field)[1])
        if candidate_rank > current_rank:
            span.append(vector)
            current_rank = candidate_rank
            kept.append((position, relation))
    logger.debug(f"System of relations: kept {len(kept)} of {len(presentation.relations)}")
    return [relation for _, relation in kept]


def center_basis(algebra: Algebra) -> list[AlgElement]:
    """Basis of Z(A) = {z : z b = b z for all basis b}."""
    dim = algebra.dim
    rows: dict[int, dict] = {}
    for i in range(dim):
        for j in range(dim):
            difference = add_into(dict(algebra.product(i, j)), algebra.product(j, i), -algebra.field.one)
            for k, value in difference.items():
                rows.setdefault(j * dim + k, {})[i] = value
    system = matrix_from_rows(rows, (dim * dim, dim), algebra.field)
    return [AlgElement(algebra, v) for v in kernel_basis(system)]


def is_triangular(algebra: Algebra) -> bool:
    if algebra.presentation is None:
        raise PresentationError("Triangularity needs a quiver presentation")
    return algebra.presentation.quiver.is_acyclic()
