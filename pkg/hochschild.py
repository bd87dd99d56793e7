"""Hochschild cohomology hh^n(A, M) from the bar complex.

When both the algebra and the module carry Peirce tags, cohomology is
computed on the normalized complex relative to E = span of the primitive
idempotents: cochains live on composable tuples of non-idempotent basis
elements and take values in the matching e_s M e_t block.  Without tags the
full complex Hom_k(A^{⊗n}, M) is used.  ``bar_differential`` always returns
the full matrix.
"""
from __future__ import annotations

import functools
import itertools
import logging
import random
from typing import Iterable, Mapping, Optional, Sequence

from algebra import Algebra
from bimodule import Bimodule, regular_bimodule
from config import get_config
from errors import (AlgebraMismatchError, AxiomError, CapExceededError, NotACocycleError,
                    NotADerivationError, NotInSpanError, PresentationError)
from exactlin import (LinearMap, Subquotient, add_into, columns_of, kernel_basis, matrix_from_columns,
                      matrix_from_rows, random_vector, scale, solve)
from quiver import Path, PathSum

logger = logging.getLogger(__name__)


class Cochain:
    """A k-linear map A^{⊗n} -> M stored as ``values[tuple of basis indices] = vector of M``."""

    __slots__ = ("algebra", "module", "degree", "values")

    def __init__(self, algebra: Algebra, module: Bimodule, degree: int, values: Mapping[tuple, Mapping] = ()):
        if module.algebra is not algebra:
            raise AlgebraMismatchError("Coefficient bimodule lives over another algebra")
        self.algebra = algebra
        self.module = module
        self.degree = degree
        self.values = {}
        for key, vector in dict(values).items():
            key = tuple(key)
            if len(key) != degree:
                raise AxiomError(f"Argument tuple {key} does not have length {degree}")
            vector = {k: v for k, v in vector.items() if v}
            if vector:
                self.values[key] = vector

    @classmethod
    def zero(cls, algebra: Algebra, module: Bimodule, degree: int) -> "Cochain":
        return cls(algebra, module, degree)

    def evaluate(self, arguments: Sequence[int]) -> dict:
        return dict(self.values.get(tuple(arguments), {}))

    def evaluate_vectors(self, vectors: Sequence[Mapping]) -> dict:
        """Value on a tensor of arbitrary algebra elements."""
        out: dict = {}
        for key, value in self.values.items():
            coefficient = self.algebra.field.one
            for position, index in enumerate(key):
                entry = vectors[position].get(index)
                if not entry:
                    coefficient = None
                    break
                coefficient *= entry
            if coefficient is not None:
                add_into(out, value, coefficient)
        return out

    def is_zero(self) -> bool:
        return not self.values

    def _same_space(self, other: "Cochain") -> None:
        if (other.algebra is not self.algebra or other.module is not self.module
                or other.degree != self.degree):
            raise AlgebraMismatchError("Cochains belong to different complexes")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._same_space(other)
        values = {k: dict(v) for k, v in self.values.items()}
        for key, vector in other.values.items():
            values[key] = add_into(values.get(key, {}), vector)
        return Cochain(self.algebra, self.module, self.degree, values)

    def scaled(self, coefficient) -> "Cochain":
        return Cochain(self.algebra, self.module, self.degree,
                       {k: scale(v, coefficient) for k, v in self.values.items()})

    def __neg__(self) -> "Cochain":
        return self.scaled(-self.algebra.field.one)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.algebra is other.algebra and self.module is other.module
                and self.degree == other.degree and self.values == other.values)

    __hash__ = None

    def is_normalized(self) -> bool:
        """Supported on composable non-idempotent tuples with values in the matching block."""
        algebra, module = self.algebra, self.module
        if algebra.peirce is None or module.peirce is None:
            return False
        idempotents = set(algebra.idempotents)
        for key, vector in self.values.items():
            if any(i in idempotents for i in key):
                return False
            if any(not algebra.composable(a, b) for a, b in zip(key, key[1:])):
                return False
            if key:
                block = (algebra.peirce[key[0]][0], algebra.peirce[key[-1]][1])
                if any(module.peirce[m] != block for m in vector):
                    return False
            elif any(module.peirce[m][0] != module.peirce[m][1] for m in vector):
                return False
        return True

    def full_vector(self) -> dict:
        """Coordinates in Hom_k(A^{⊗n}, M), index flat(t)·dim M + m."""
        dim_a, dim_m = self.algebra.dim, self.module.dim
        out = {}
        for key, vector in self.values.items():
            flat = 0
            for index in key:
                flat = flat * dim_a + index
            for m, value in vector.items():
                out[flat * dim_m + m] = value
        return out

    @classmethod
    def from_full_vector(cls, algebra: Algebra, module: Bimodule, degree: int, vector: Mapping) -> "Cochain":
        values: dict = {}
        for index, value in vector.items():
            flat, m = divmod(index, module.dim)
            key = []
            for _ in range(degree):
                flat, position = divmod(flat, algebra.dim)
                key.append(position)
            values.setdefault(tuple(reversed(key)), {})[m] = value
        return cls(algebra, module, degree, values)

    def transport(self, algebra: Algebra, module: Bimodule, arg_map: LinearMap, value_map: LinearMap) -> "Cochain":
        """g(x_1, ..., x_n) = value_map(f(arg_map x_1, ..., arg_map x_n))."""
        if arg_map.target_dim != self.algebra.dim or value_map.source_dim != self.module.dim:
            raise AlgebraMismatchError("Transport maps do not match the cochain")
        preimages: dict[int, list] = {}
        for new_index, column in enumerate(arg_map.columns):
            for old_index, value in column.items():
                preimages.setdefault(old_index, []).append((new_index, value))
        values: dict = {}
        for key, vector in self.values.items():
            image = value_map.apply(vector)
            if not image:
                continue
            for choice in itertools.product(*(preimages.get(i, []) for i in key)):
                coefficient = algebra.field.one
                for _, value in choice:
                    coefficient *= value
                new_key = tuple(index for index, _ in choice)
                values[new_key] = add_into(values.get(new_key, {}), image, coefficient)
        return Cochain(algebra, module, self.degree, values)

    def __repr__(self) -> str:
        return f"Cochain(degree={self.degree}, support={len(self.values)})"


# -------------------- Differentials -------------------- #

def _factorizations(algebra: Algebra, restricted: bool) -> dict[int, list]:
    """c -> [(a, b, λ)] with λ the coefficient of b_c in b_a b_b."""
    idempotents = set(algebra.idempotents) if restricted else set()
    table: dict[int, list] = {}
    for (a, b), product in sorted(algebra.table.items()):
        if a in idempotents or b in idempotents:
            continue
        for c, value in product.items():
            if c not in idempotents:
                table.setdefault(c, []).append((a, b, value))
    return table


def _coboundary_terms(algebra: Algebra, module: Bimodule, key: tuple, m: int, elements: Sequence[int],
                      factorizations: Mapping[int, list], value: Optional[Mapping] = None) -> Iterable[tuple]:
    """Yield (tuple, module vector, coefficient) summands of b(E_{key,m})."""
    field = algebra.field
    n = len(key)
    vector = {m: field.one} if value is None else value
    for a in elements:
        image = module.act_left({a: field.one}, vector)
        if image:
            yield (a,) + key, image, field.one
    for j in range(1, n + 1):
        sign = field.one if j % 2 == 0 else -field.one
        for a, b, coefficient in factorizations.get(key[j - 1], ()):
            yield key[:j - 1] + (a, b) + key[j:], vector, sign * coefficient
    last_sign = field.one if (n + 1) % 2 == 0 else -field.one
    for a in elements:
        image = module.act_right(vector, {a: field.one})
        if image:
            yield key + (a,), image, last_sign


def apply_differential(cochain: Cochain) -> Cochain:
    """b^{n+1} f on the full complex."""
    algebra, module = cochain.algebra, cochain.module
    factorizations = _full_factorizations(algebra)
    elements = range(algebra.dim)
    values: dict = {}
    for key, vector in cochain.values.items():
        for new_key, image, coefficient in _coboundary_terms(algebra, module, key, -1, elements,
                                                             factorizations, value=vector):
            values[new_key] = add_into(values.get(new_key, {}), image, coefficient)
    return Cochain(algebra, module, cochain.degree + 1, values)


@functools.lru_cache(maxsize=64)
def _full_factorizations(algebra: Algebra) -> dict[int, list]:
    return _factorizations(algebra, restricted=False)


def bar_differential(algebra: Algebra, module: Bimodule, n: int, cap: Optional[int] = None):
    """Matrix of b^{n+1}: Hom_k(A^{⊗n}, M) -> Hom_k(A^{⊗n+1}, M)."""
    cap = get_config().BAR_CAP if cap is None else cap
    size = algebra.dim ** (n + 1) * module.dim
    if size > cap:
        raise CapExceededError(f"Bar differential in degree {n}", size, cap,
                               "use the normalized complex or minres for higher degrees")
    dim_m = module.dim
    rows_total = algebra.dim ** (n + 1) * dim_m
    columns = []
    one = algebra.field.one
    for key in itertools.product(range(algebra.dim), repeat=n):
        for m in range(dim_m):
            image = apply_differential(Cochain(algebra, module, n, {key: {m: one}}))
            columns.append(image.full_vector())
    logger.debug(f"Bar differential degree {n}: {rows_total} x {len(columns)}")
    return matrix_from_columns(columns, rows_total, algebra.field)


class CochainComplex:
    """Normalized (or full) cochain complex of (A, M) with cached bases and differentials."""

    def __init__(self, algebra: Algebra, module: Bimodule, normalized: Optional[bool] = None,
                 cap: Optional[int] = None):
        if module.algebra is not algebra:
            raise AlgebraMismatchError("Coefficient bimodule lives over another algebra")
        tagged = algebra.peirce is not None and module.peirce is not None
        self.algebra = algebra
        self.module = module
        self.normalized = tagged if normalized is None else (normalized and tagged)
        self.cap = get_config().BAR_CAP if cap is None else cap
        self._bases: dict[int, list] = {}
        self._indices: dict[int, dict] = {}
        self._differentials: dict[int, list] = {}
        self._spaces: dict[int, CohomologySpace] = {}
        self.elements = algebra.non_idempotent_basis() if self.normalized else list(range(algebra.dim))
        self.factorizations = _factorizations(algebra, restricted=self.normalized)

    def _tuples(self, n: int) -> list[tuple]:
        algebra = self.algebra
        if not self.normalized:
            return list(itertools.product(range(algebra.dim), repeat=n))
        level: list[tuple] = [()]
        for _ in range(n):
            level = [t + (a,) for t in level for a in self.elements
                     if not t or algebra.composable(t[-1], a)]
        return level

    def basis(self, n: int) -> list[tuple[tuple, int]]:
        if n not in self._bases:
            module, algebra = self.module, self.algebra
            if not self.normalized:
                size = algebra.dim ** n * module.dim
                if size > self.cap:
                    raise CapExceededError(f"Cochain space in degree {n}", size, self.cap,
                                           "use minres or a smaller degree")
            basis = []
            for key in self._tuples(n):
                if self.normalized:
                    if key:
                        block = (algebra.peirce[key[0]][0], algebra.peirce[key[-1]][1])
                        ms = [m for m in range(module.dim) if module.peirce[m] == block]
                    else:
                        ms = [m for m in range(module.dim) if module.peirce[m][0] == module.peirce[m][1]]
                else:
                    ms = range(module.dim)
                basis.extend((key, m) for m in ms)
                if len(basis) > self.cap:
                    raise CapExceededError(f"Normalized cochain space in degree {n}", len(basis), self.cap,
                                           "use minres or a smaller degree")
            self._bases[n] = basis
            self._indices[n] = {item: i for i, item in enumerate(basis)}
        return self._bases[n]

    def index(self, n: int) -> dict:
        self.basis(n)
        return self._indices[n]

    def dimension(self, n: int) -> int:
        return len(self.basis(n))

    def differential_columns(self, n: int) -> list[dict]:
        """Images of the basis cochains of degree n under b^{n+1}."""
        if n not in self._differentials:
            target = self.index(n + 1)
            columns = []
            for key, m in self.basis(n):
                column: dict = {}
                for new_key, image, coefficient in _coboundary_terms(
                        self.algebra, self.module, key, m, self.elements, self.factorizations):
                    for k, value in image.items():
                        add_into(column, {target[(new_key, k)]: coefficient * value})
                columns.append(column)
            self._differentials[n] = columns
            logger.debug(f"Differential degree {n}: {self.dimension(n + 1)} x {len(columns)}")
        return self._differentials[n]

    def differential(self, n: int):
        return matrix_from_columns(self.differential_columns(n), self.dimension(n + 1), self.algebra.field)

    def vector_of(self, cochain: Cochain) -> Optional[dict]:
        """Coordinates of a cochain in this complex, or None if it does not live here."""
        if not self.normalized:
            return cochain.full_vector()
        if not cochain.is_normalized():
            return None
        index = self.index(cochain.degree)
        out = {}
        for key, vector in cochain.values.items():
            for m, value in vector.items():
                out[index[(key, m)]] = value
        return out

    def cochain(self, n: int, vector: Mapping) -> Cochain:
        basis = self.basis(n)
        values: dict = {}
        for i, value in vector.items():
            key, m = basis[i]
            values.setdefault(key, {})[m] = value
        return Cochain(self.algebra, self.module, n, values)

    def cohomology(self, n: int) -> "CohomologySpace":
        if n not in self._spaces:
            cycles = kernel_basis(self.differential(n))
            boundaries = self.differential_columns(n - 1) if n > 0 else []
            quotient = Subquotient(cycles, boundaries, self.dimension(n), self.algebra.field)
            self._spaces[n] = CohomologySpace(self, n, quotient)
            logger.info(f"hh^{n}: dim {quotient.dim} (cochains {self.dimension(n)})")
        return self._spaces[n]


@functools.lru_cache(maxsize=128)
def cochain_complex(algebra: Algebra, module: Bimodule) -> CochainComplex:
    return CochainComplex(algebra, module)


class CohomologySpace:
    """hh^n(A, M) with deterministic representative cocycles."""

    def __init__(self, complex_: CochainComplex, degree: int, quotient: Subquotient):
        self.complex = complex_
        self.algebra = complex_.algebra
        self.module = complex_.module
        self.degree = degree
        self._quotient = quotient
        self.dim = quotient.dim
        self.representatives = [complex_.cochain(degree, v) for v in quotient.representatives]

    def coordinates(self, cochain: Cochain) -> list:
        """Class coordinates of a cocycle in the representative basis."""
        if cochain.degree != self.degree or cochain.algebra is not self.algebra or cochain.module is not self.module:
            raise AlgebraMismatchError("Cochain does not belong to this cohomology space")
        vector = self.complex.vector_of(cochain)
        if vector is not None:
            try:
                return self._quotient.coordinates(vector)
            except NotInSpanError:
                raise NotACocycleError(f"Cochain of degree {self.degree} is not a cocycle") from None
        return self._full_coordinates(cochain)

    def _full_coordinates(self, cochain: Cochain) -> list:
        if not apply_differential(cochain).is_zero():
            raise NotACocycleError(f"Cochain of degree {self.degree} is not a cocycle")
        columns = [rep.full_vector() for rep in self.representatives]
        if self.degree > 0:
            boundaries = bar_differential(self.algebra, self.module, self.degree - 1, cap=self.complex.cap)
            columns.extend(columns_of(boundaries))
        rows = self.algebra.dim ** self.degree * self.module.dim
        solution = solve(matrix_from_columns(columns, rows, self.algebra.field), cochain.full_vector())
        if solution is None:
            raise NotACocycleError("Cocycle is not a combination of representatives and coboundaries")
        return [solution.get(i, self.algebra.field.zero) for i in range(self.dim)]

    def is_coboundary(self, cochain: Cochain) -> bool:
        return not any(self.coordinates(cochain))

    def cochain(self, coordinates: Sequence) -> Cochain:
        total = Cochain.zero(self.algebra, self.module, self.degree)
        for value, rep in zip(coordinates, self.representatives):
            if value:
                total = total + rep.scaled(value)
        return total


def hh(algebra: Algebra, module: Bimodule, n: int) -> CohomologySpace:
    return cochain_complex(algebra, module).cohomology(n)


def class_equal(first: Cochain, second: Cochain, space: Optional[CohomologySpace] = None) -> bool:
    """Whether two cocycles differ by a coboundary."""
    first._same_space(second)
    space = space or hh(first.algebra, first.module, first.degree)
    for cochain in (first, second):
        if not apply_differential(cochain).is_zero():
            raise NotACocycleError("class_equal needs cocycles")
    return space.is_coboundary(first - second)


# -------------------- Derivations -------------------- #

def der0_basis(algebra: Algebra, module: Bimodule) -> list[Cochain]:
    """Basis of derivations d: A -> M with d(e) = 0 on the idempotents."""
    dim_a, dim_m = algebra.dim, module.dim
    one = algebra.field.one
    rows: dict[int, dict] = {}
    row = 0
    for i in range(dim_a):
        for j in range(dim_a):
            # d(b_i b_j) - b_i d(b_j) - d(b_i) b_j = 0
            equations: dict[int, dict] = {}
            for k, c in algebra.product(i, j).items():
                for out in range(dim_m):
                    add_into(equations.setdefault(out, {}), {k * dim_m + out: c})
            for m in range(dim_m):
                for out, c in module.left[i].columns[m].items():
                    add_into(equations.setdefault(out, {}), {j * dim_m + m: -c})
                for out, c in module.right[j].columns[m].items():
                    add_into(equations.setdefault(out, {}), {i * dim_m + m: -c})
            for equation in equations.values():
                if equation:
                    rows[row] = equation
                    row += 1
    for e in algebra.idempotents:
        for m in range(dim_m):
            rows[row] = {e * dim_m + m: one}
            row += 1
    system = matrix_from_rows(rows, (row, dim_a * dim_m), algebra.field)
    return [Cochain.from_full_vector(algebra, module, 1, v) for v in kernel_basis(system)]


def inner_derivation(algebra: Algebra, module: Bimodule, x: Mapping) -> Cochain:
    """b^1 x: c -> c·x - x·c."""
    values = {}
    for c in range(algebra.dim):
        basis = {c: algebra.field.one}
        values[(c,)] = add_into(module.act_left(basis, x), module.act_right(x, basis), -algebra.field.one)
    return Cochain(algebra, module, 1, values)


class DerivationCohomology:
    """hh^1(A, M) as Der_0 / Inn_0."""

    def __init__(self, algebra: Algebra, module: Bimodule):
        self.algebra = algebra
        self.module = module
        self.degree = 1
        field = algebra.field
        self.derivations = der0_basis(algebra, module)
        ambient = algebra.dim * module.dim
        balanced = self._balanced_elements()
        inner = [inner_derivation(algebra, module, x).full_vector() for x in balanced]
        self._quotient = Subquotient([d.full_vector() for d in self.derivations], inner, ambient, field)
        self.dim = self._quotient.dim
        self.representatives = [Cochain.from_full_vector(algebra, module, 1, v)
                                for v in self._quotient.representatives]
        self._all_inner = [inner_derivation(algebra, module, {m: field.one}).full_vector()
                           for m in range(module.dim)]

    def _balanced_elements(self) -> list[dict]:
        """x in M with e·x = x·e for every idempotent e."""
        algebra, module = self.algebra, self.module
        rows: dict[int, dict] = {}
        for position, e in enumerate(algebra.idempotents):
            difference = module.left[e] - module.right[e]
            for m, column in enumerate(difference.columns):
                for k, value in column.items():
                    rows.setdefault(position * module.dim + k, {})[m] = value
        return kernel_basis(matrix_from_rows(rows, (len(algebra.idempotents) * module.dim, module.dim),
                                             algebra.field))

    def coordinates(self, derivation: Cochain) -> list:
        if derivation.degree != 1 or not apply_differential(derivation).is_zero():
            raise NotADerivationError("Expected a derivation")
        columns = [rep.full_vector() for rep in self.representatives] + self._all_inner
        system = matrix_from_columns(columns, self.algebra.dim * self.module.dim, self.algebra.field)
        solution = solve(system, derivation.full_vector())
        if solution is None:
            raise NotADerivationError("Derivation is not a combination of representatives and inner derivations")
        return [solution.get(i, self.algebra.field.zero) for i in range(self.dim)]

    def is_inner(self, derivation: Cochain) -> bool:
        return not any(self.coordinates(derivation))


def hh1_via_derivations(algebra: Algebra, module: Bimodule) -> DerivationCohomology:
    space = DerivationCohomology(algebra, module)
    logger.info(f"hh^1 via derivations: Der0 {len(space.derivations)}, dim {space.dim}")
    return space


def derivation_from_arrows(algebra: Algebra, module: Bimodule, images: Mapping[str, Mapping]) -> Cochain:
    """Extend arrow values to basis paths by the Leibniz rule, zero on idempotents.

    Arrows missing from ``images`` are sent to zero.  Raises
    ``NotADerivationError`` if the extension does not respect the relations.
    """
    if algebra.basis_paths is None:
        raise PresentationError("Derivations from arrow values need a quiver presentation")
    field = algebra.field

    def path_class(source: str, target: str, arrows: tuple) -> dict:
        return algebra.normal_form(PathSum.of_path(field, Path(source, target, arrows)))

    quiver = algebra.presentation.quiver
    values = {}
    for index, path in enumerate(algebra.basis_paths):
        total: dict = {}
        vertices = [path.source] + [quiver.arrow(a).target for a in path.arrows]
        for j, name in enumerate(path.arrows):
            image = images.get(name)
            if not image:
                continue
            prefix = path_class(path.source, vertices[j], path.arrows[:j])
            suffix = path_class(vertices[j + 1], path.target, path.arrows[j + 1:])
            add_into(total, module.act_right(module.act_left(prefix, image), suffix))
        if total:
            values[(index,)] = total
    derivation = Cochain(algebra, module, 1, values)
    if not apply_differential(derivation).is_zero():
        raise NotADerivationError("Arrow values do not define a derivation")
    return derivation


def compose_linear(first: Cochain, second: Cochain) -> Cochain:
    """first ∘ second for degree-1 cochains with values in the regular bimodule."""
    if first.degree != 1 or second.degree != 1:
        raise NotADerivationError("Composition is defined for degree-1 cochains")
    first._same_space(second)
    if first.module.dim != first.algebra.dim:
        raise AlgebraMismatchError("Composition needs values in the algebra")
    values = {}
    for key, vector in second.values.items():
        total: dict = {}
        for k, value in vector.items():
            add_into(total, first.evaluate((k,)), value)
        values[key] = total
    return Cochain(first.algebra, first.module, 1, values)


def bracket1(first: Cochain, second: Cochain) -> Cochain:
    """[d, d'] = d∘d' - d'∘d."""
    for cochain in (first, second):
        if cochain.degree != 1 or not apply_differential(cochain).is_zero():
            raise NotADerivationError("The bracket is defined on derivations")
    return compose_linear(first, second) - compose_linear(second, first)


# -------------------- Cup product -------------------- #

def cup(first: Cochain, second: Cochain) -> Cochain:
    """(f ⌣ g)(c_1..c_{s+t}) = f(c_1..c_s)·g(c_{s+1}..c_{s+t})."""
    if first.algebra is not second.algebra or first.module is not second.module:
        raise AlgebraMismatchError("Cup product needs cochains of one complex")
    module = first.module
    if module.product is None:
        raise AxiomError("Coefficient bimodule has no product")
    values: dict = {}
    for left_key, left_value in first.values.items():
        for right_key, right_value in second.values.items():
            product = module.multiply(left_value, right_value)
            if product:
                key = left_key + right_key
                values[key] = add_into(values.get(key, {}), product)
    return Cochain(first.algebra, module, first.degree + second.degree, values)


def unit_class(algebra: Algebra, module: Optional[Bimodule] = None) -> Cochain:
    module = module or regular_bimodule(algebra)
    return Cochain(algebra, module, 0, {(): algebra.unit()})


def random_cochain(algebra: Algebra, module: Bimodule, degree: int, rng: random.Random,
                   density: float = 0.3) -> Cochain:
    """Pseudorandom full cochain with small integer values."""
    values = {}
    for key in itertools.product(range(algebra.dim), repeat=degree):
        if rng.random() < density:
            vector = random_vector(rng, module.dim, algebra.field, density=0.5)
            if vector:
                values[key] = vector
    return Cochain(algebra, module, degree, values)
