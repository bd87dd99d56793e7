"""Bimodules over an ``Algebra`` given by explicit left and right action matrices."""
from __future__ import annotations

import functools
import itertools
import logging
import random
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from algebra import Algebra, center_basis
from config import get_config
from errors import AlgebraMismatchError, AxiomError, ShapeError
from exactlin import (LinearMap, Span, add_into, combine_maps, image_basis,
                      kernel_basis, matrix_from_rows, quotient_data)

logger = logging.getLogger(__name__)


class Bimodule:
    """A-A-bimodule on k^dim.

    ``left[a]`` and ``right[a]`` are the ``LinearMap``s m -> b_a·m and
    m -> m·b_a.  ``peirce`` tags each basis vector with idempotent positions
    (s, t) such that e_s·m·e_t = m.  ``product`` optionally stores an
    associative bimodule map M ⊗_A M -> M on basis pairs.
    """

    def __init__(self, algebra: Algebra, dim: int, left: Sequence[LinearMap], right: Sequence[LinearMap],
                 labels: Optional[Sequence[str]] = None, peirce: Optional[Sequence[tuple[int, int]]] = None,
                 product: Optional[Mapping[tuple[int, int], Mapping]] = None, check: bool = True):
        if len(left) != algebra.dim or len(right) != algebra.dim:
            raise ShapeError("One action matrix per algebra basis element is required")
        for action in list(left) + list(right):
            if (action.source_dim, action.target_dim) != (dim, dim):
                raise ShapeError(f"Action matrix of shape {action.target_dim}x{action.source_dim} on a {dim}-dim module")
        self.algebra = algebra
        self.field = algebra.field
        self.dim = dim
        self.left = tuple(left)
        self.right = tuple(right)
        self.labels = tuple(labels) if labels is not None else tuple(f"m{i}" for i in range(dim))
        self.peirce = tuple(tuple(t) for t in peirce) if peirce is not None else None
        self.product = None
        if product is not None:
            self.product = {key: dict(v) for key, v in product.items() if v}
        if check:
            check_axioms(self)
            if self.product is not None:
                check_product(self)

    def act_left(self, a: Mapping, m: Mapping) -> dict:
        out: dict = {}
        for i, coefficient in a.items():
            add_into(out, self.left[i].apply(m), coefficient)
        return out

    def act_right(self, m: Mapping, a: Mapping) -> dict:
        out: dict = {}
        for i, coefficient in a.items():
            add_into(out, self.right[i].apply(m), coefficient)
        return out

    def multiply(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        if not self.product:
            return out
        for i, a in x.items():
            for j, b in y.items():
                value = self.product.get((i, j))
                if value:
                    add_into(out, value, a * b)
        return out

    def has_zero_product(self) -> bool:
        return not self.product

    def block(self, s: int, t: int) -> list[int]:
        if self.peirce is None:
            raise AxiomError("Bimodule has no Peirce tags")
        return [i for i, tag in enumerate(self.peirce) if tag == (s, t)]

    def __repr__(self) -> str:
        return f"Bimodule(dim={self.dim}, over {self.algebra!r})"


def check_axioms(module: Bimodule) -> None:
    """Unital commuting actions compatible with the multiplication, plus Peirce tags."""
    algebra = module.algebra
    one = module.field.one
    unit = algebra.unit()
    for m in range(module.dim):
        basis = {m: one}
        if module.act_left(unit, basis) != basis or module.act_right(basis, unit) != basis:
            raise AxiomError(f"Unit does not act as identity on {module.labels[m]}")
    for a in range(algebra.dim):
        for m in range(module.dim):
            left_m = module.left[a].columns[m]
            right_m = module.right[a].columns[m]
            for b in range(algebra.dim):
                product = algebra.product(a, b)
                if module.act_left({a: one}, module.left[b].columns[m]) != module.act_left(product, {m: one}):
                    raise AxiomError(f"Left action is not associative at ({algebra.labels[a]}, {algebra.labels[b]})")
                if module.act_right(right_m, {b: one}) != module.act_right({m: one}, product):
                    raise AxiomError(f"Right action is not associative at ({algebra.labels[a]}, {algebra.labels[b]})")
                if module.right[b].apply(left_m) != module.left[a].apply(module.right[b].columns[m]):
                    raise AxiomError("Left and right actions do not commute")
    if module.peirce is not None:
        if len(module.peirce) != module.dim:
            raise AxiomError("Peirce tags do not cover the module basis")
        for m, (s, t) in enumerate(module.peirce):
            basis = {m: one}
            sandwich = module.right[algebra.idempotents[t]].apply(
                module.left[algebra.idempotents[s]].columns[m])
            if sandwich != basis:
                raise AxiomError(f"Module vector {module.labels[m]} is not Peirce-homogeneous")


def check_product(module: Bimodule) -> None:
    """The product is associative and an A-A-bimodule map from M ⊗_A M."""
    one = module.field.one
    dim = module.dim
    for x in range(dim):
        for y in range(dim):
            xy = module.multiply({x: one}, {y: one})
            for z in range(dim):
                if module.multiply(xy, {z: one}) != module.multiply({x: one}, module.multiply({y: one}, {z: one})):
                    raise AxiomError("Bimodule product is not associative")
            for a in range(module.algebra.dim):
                if module.multiply(module.left[a].columns[x], {y: one}) != module.left[a].apply(xy):
                    raise AxiomError("Bimodule product is not left linear")
                if module.multiply({x: one}, module.right[a].columns[y]) != module.right[a].apply(xy):
                    raise AxiomError("Bimodule product is not right linear")
                if module.multiply(module.right[a].columns[x], {y: one}) != module.multiply({x: one}, module.left[a].columns[y]):
                    raise AxiomError("Bimodule product is not balanced")


# -------------------- Constructions -------------------- #

def zero_bimodule(algebra: Algebra) -> Bimodule:
    empty = [LinearMap.zero(algebra.field, 0, 0) for _ in range(algebra.dim)]
    return Bimodule(algebra, 0, empty, empty, labels=[], peirce=[])


@functools.lru_cache(maxsize=None)
def regular_bimodule(algebra: Algebra) -> Bimodule:
    dim = algebra.dim
    left = [LinearMap(algebra.field, dim, dim, [algebra.product(a, m) for m in range(dim)]) for a in range(dim)]
    right = [LinearMap(algebra.field, dim, dim, [algebra.product(m, a) for m in range(dim)]) for a in range(dim)]
    return Bimodule(algebra, dim, left, right, labels=algebra.labels, peirce=algebra.peirce,
                    product=algebra.table)


@functools.lru_cache(maxsize=None)
def dual_bimodule(algebra: Algebra) -> Bimodule:
    """DC with (f·c)(x) = f(cx) and (c·f)(x) = f(xc)."""
    dim = algebra.dim
    left_columns = [[{} for _ in range(dim)] for _ in range(dim)]
    right_columns = [[{} for _ in range(dim)] for _ in range(dim)]
    for (i, k), product in algebra.table.items():
        for j, coefficient in product.items():
            # b_i b_k has coefficient c^j_ik on b_j
            right_columns[i][j][k] = coefficient
            left_columns[k][j][i] = coefficient
    left = [LinearMap(algebra.field, dim, dim, cols) for cols in left_columns]
    right = [LinearMap(algebra.field, dim, dim, cols) for cols in right_columns]
    peirce = [(t, s) for s, t in algebra.peirce] if algebra.peirce is not None else None
    return Bimodule(algebra, dim, left, right, labels=[f"D({label})" for label in algebra.labels], peirce=peirce)


class TensorBimodule(Bimodule):
    """E ⊗_A F with pure-tensor representatives."""

    def __init__(self, first: Bimodule, second: Bimodule):
        if first.algebra is not second.algebra:
            raise AlgebraMismatchError("Tensor factors live over different algebras")
        algebra = first.algebra
        field = algebra.field
        self.first = first
        self.second = second
        width = second.dim
        ambient = first.dim * width
        relations = []
        for x in range(first.dim):
            for c in range(algebra.dim):
                x_c = first.right[c].columns[x]
                for y in range(second.dim):
                    vector: dict = {}
                    for m, a in x_c.items():
                        add_into(vector, {m * width + y: a})
                    for n, a in second.left[c].columns[y].items():
                        add_into(vector, {x * width + n: -a})
                    if vector:
                        relations.append(vector)
        self.quotient = quotient_data(relations, ambient, field)
        pairs = [divmod(index, width) for index in self.quotient.free]
        dim = len(pairs)

        def act(images) -> list:
            return [self.project_vector(images(x, y)) for x, y in pairs]

        left = [LinearMap(field, dim, dim, act(lambda x, y, c=c: self._outer(first.left[c].columns[x], {y: field.one})))
                for c in range(algebra.dim)]
        right = [LinearMap(field, dim, dim, act(lambda x, y, c=c: self._outer({x: field.one}, second.right[c].columns[y])))
                 for c in range(algebra.dim)]
        peirce = None
        if first.peirce is not None and second.peirce is not None:
            peirce = [(first.peirce[x][0], second.peirce[y][1]) for x, y in pairs]
        labels = [f"{first.labels[x]}⊗{second.labels[y]}" for x, y in pairs]
        self.pairs = pairs
        super().__init__(algebra, dim, left, right, labels=labels, peirce=peirce)

    def _outer(self, u: Mapping, v: Mapping) -> dict:
        width = self.second.dim
        out: dict = {}
        for x, a in u.items():
            for y, b in v.items():
                add_into(out, {x * width + y: a * b})
        return out

    def project_vector(self, ambient: Mapping) -> dict:
        coordinates = self.quotient.coordinates(ambient)
        return {i: v for i, v in enumerate(coordinates) if v}

    def project(self, x: int, y: int) -> dict:
        """Class of the pure tensor b_x ⊗ b_y."""
        return self.project_vector({x * self.second.dim + y: self.field.one})

    def project_tensor(self, u: Mapping, v: Mapping) -> dict:
        return self.project_vector(self._outer(u, v))


def tensor_over(first: Bimodule, second: Bimodule) -> TensorBimodule:
    return TensorBimodule(first, second)


def hom_bimodule(source: Bimodule, target: Bimodule) -> list[LinearMap]:
    """Basis of A-A-bimodule maps source -> target."""
    if source.algebra is not target.algebra:
        raise AlgebraMismatchError("Hom between bimodules over different algebras")
    algebra = source.algebra
    d_source, d_target = source.dim, target.dim
    if d_source == 0 or d_target == 0:
        return []
    unknowns = d_source * d_target
    rows: dict[int, dict] = {}
    row = 0
    for side in ("left", "right"):
        source_actions = source.left if side == "left" else source.right
        target_actions = target.left if side == "left" else target.right
        for c in range(algebra.dim):
            for m in range(d_source):
                # g(c·e_m) - c·g(e_m), one equation per output coordinate
                equations: dict[int, dict] = {}
                for m2, a in source_actions[c].columns[m].items():
                    for i in range(d_target):
                        add_into(equations.setdefault(i, {}), {m2 * d_target + i: a})
                for i in range(d_target):
                    for k, a in target_actions[c].columns[i].items():
                        add_into(equations.setdefault(k, {}), {m * d_target + i: -a})
                for equation in equations.values():
                    if equation:
                        rows[row] = equation
                        row += 1
    system = matrix_from_rows(rows, (row, unknowns), algebra.field)
    basis = []
    for vector in kernel_basis(system):
        columns = [{} for _ in range(d_source)]
        for index, value in vector.items():
            m, i = divmod(index, d_target)
            columns[m][i] = value
        basis.append(LinearMap(algebra.field, d_source, d_target, columns))
    return basis


def invariants(module: Bimodule) -> list[dict]:
    """Basis of {x : c·x = x·c for all c}."""
    rows: dict[int, dict] = {}
    dim = module.dim
    for c in range(module.algebra.dim):
        difference = module.left[c] - module.right[c]
        for m, column in enumerate(difference.columns):
            for k, value in column.items():
                rows.setdefault(c * dim + k, {})[m] = value
    return kernel_basis(matrix_from_rows(rows, (module.algebra.dim * dim, dim), module.field))


def is_symmetric_over_center(module: Bimodule) -> bool:
    for z in center_basis(module.algebra):
        for m in range(module.dim):
            basis = {m: module.field.one}
            if module.act_left(z.vector, basis) != module.act_right(basis, z.vector):
                return False
    return True


def pullback_bimodule(module: Bimodule, morphism: LinearMap, algebra: Algebra) -> Bimodule:
    """``module`` viewed over ``algebra`` through the algebra map ``morphism``: algebra -> module.algebra."""
    if morphism.source_dim != algebra.dim or morphism.target_dim != module.algebra.dim:
        raise ShapeError("Morphism does not match the algebras")
    base = module.algebra
    left = [combine_maps(module.left, _dense(morphism.columns[b], base)) if morphism.columns[b]
            else LinearMap.zero(module.field, module.dim, module.dim) for b in range(algebra.dim)]
    right = [combine_maps(module.right, _dense(morphism.columns[b], base)) if morphism.columns[b]
             else LinearMap.zero(module.field, module.dim, module.dim) for b in range(algebra.dim)]
    peirce = None
    if module.peirce is not None:
        positions = {}
        for x, e in enumerate(algebra.idempotents):
            image = morphism.columns[e]
            if len(image) == 1:
                (target, value), = image.items()
                if value == module.field.one and target in base.idempotents:
                    positions[base.idempotents.index(target)] = x
        if len(positions) == len(base.idempotents) == len(algebra.idempotents):
            peirce = [(positions[s], positions[t]) for s, t in module.peirce]
    return Bimodule(algebra, module.dim, left, right, labels=module.labels, peirce=peirce)


def _dense(vector: Mapping, algebra: Algebra) -> list:
    return [vector.get(i, algebra.field.zero) for i in range(algebra.dim)]


def peirce_adapted(module: Bimodule) -> tuple[Bimodule, LinearMap]:
    """The same bimodule on a basis of Peirce-homogeneous vectors.

    Returns the rebased module and the map from new to old coordinates.
    """
    algebra = module.algebra
    basis: list[dict] = []
    tags: list[tuple[int, int]] = []
    for s, e_s in enumerate(algebra.idempotents):
        for t, e_t in enumerate(algebra.idempotents):
            projector = module.right[e_t].compose(module.left[e_s])
            for vector in image_basis(projector.matrix()):
                basis.append(vector)
                tags.append((s, t))
    if len(basis) != module.dim:
        raise AxiomError("Idempotents do not decompose the module")
    span = Span(basis, module.dim, module.field)

    def rebase(actions: Sequence[LinearMap]) -> list[LinearMap]:
        return [LinearMap(module.field, module.dim, module.dim,
                          [dict((i, v) for i, v in enumerate(span.coordinates(action.apply(b))) if v) for b in basis])
                for action in actions]

    embedding = LinearMap(module.field, module.dim, module.dim, basis)
    product = None
    if module.product:
        product = {}
        for i, x in enumerate(basis):
            for j, y in enumerate(basis):
                value = module.multiply(x, y)
                if value:
                    product[(i, j)] = {k: v for k, v in enumerate(span.coordinates(value)) if v}
    adapted = Bimodule(algebra, module.dim, rebase(module.left), rebase(module.right),
                       labels=[f"{module.labels[min(b)]}'" for b in basis], peirce=tags, product=product)
    return adapted, embedding


# -------------------- Isomorphism search -------------------- #

@dataclass
class IsomorphismVerdict:
    status: str
    witness: Optional[LinearMap] = None

    def __bool__(self) -> bool:
        return self.status == "yes"


def _coefficient_tuples(count: int, bound: int) -> list[tuple[int, ...]]:
    values = range(-bound, bound + 1)
    tuples = [t for t in itertools.product(values, repeat=count) if any(t)]
    tuples.sort(key=lambda t: (max(abs(v) for v in t), sum(abs(v) for v in t), tuple(-v for v in t)))
    return tuples


def bimodules_isomorphic(first: Bimodule, second: Bimodule, bound: Optional[int] = None,
                         draws: Optional[int] = None, seed: Optional[int] = None) -> IsomorphismVerdict:
    """Search for an invertible bimodule map first -> second."""
    settings = get_config()
    bound = settings.ISO_COEFFICIENT_BOUND if bound is None else bound
    draws = settings.ISO_RANDOM_DRAWS if draws is None else draws
    seed = settings.RANDOM_SEED if seed is None else seed
    if first.dim != second.dim:
        return IsomorphismVerdict("no")
    if first.dim == 0:
        return IsomorphismVerdict("yes", LinearMap.zero(first.field, 0, 0))
    basis = hom_bimodule(first, second)
    if not basis:
        return IsomorphismVerdict("no")

    def invertible(coefficients) -> Optional[LinearMap]:
        candidate = combine_maps(basis, [first.field.convert(c) for c in coefficients])
        return candidate if candidate.rank() == first.dim else None

    if (2 * bound + 1) ** len(basis) <= 5000:
        for coefficients in _coefficient_tuples(len(basis), bound):
            found = invertible(coefficients)
            if found is not None:
                return IsomorphismVerdict("yes", found)
    rng = random.Random(seed)
    for _ in range(draws):
        found = invertible([rng.randint(-bound, bound) for _ in basis])
        if found is not None:
            return IsomorphismVerdict("yes", found)
    logger.warning(f"Isomorphism search inconclusive over {len(basis)} Hom generators")
    return IsomorphismVerdict("inconclusive")
