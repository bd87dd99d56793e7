"""Exact sparse linear algebra over Q and prime fields.

Matrices are sympy ``DomainMatrix`` objects in sparse format; vectors are
plain dicts ``{index: field element}`` with no stored zeros.  Every echelon
form goes through ``DomainMatrix.rref``; the reduced row echelon form is
unique, so kernels, images and quotient representatives read off it are
reproducible across runs.
"""
from __future__ import annotations

import logging
import random
import re
from fractions import Fraction
from typing import Any, Iterable, Mapping, Optional, Sequence

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from errors import FieldError, NotInSpanError, ShapeError

logger = logging.getLogger(__name__)

Vector = dict

_FP_TAG = re.compile(r"Fp:(\d+)")


# -------------------- Fields and scalars -------------------- #

def make_field(tag: str):
    """Return the sympy domain for ``"Q"`` or ``"Fp:<prime>"``."""
    tag = tag.strip()
    if tag in ("Q", "QQ"):
        return QQ
    match = _FP_TAG.fullmatch(tag)
    if match is None:
        raise FieldError(f"Unknown field tag {tag!r}; expected 'Q' or 'Fp:<prime>'")
    modulus = int(match.group(1))
    if not isprime(modulus):
        raise FieldError(f"Field modulus {modulus} is not prime")
    return GF(modulus)


def field_tag(field) -> str:
    if field.characteristic() == 0:
        return "Q"
    return f"Fp:{field.characteristic()}"


def scalar(field, value):
    """Convert an int, Fraction, ``"a/b"`` string or field element into ``field``."""
    if isinstance(value, bool):
        raise FieldError(f"Cannot use boolean {value!r} as a scalar")
    if isinstance(value, int):
        return field.convert(value)
    if isinstance(value, str):
        try:
            value = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"Malformed scalar {value!r}") from exc
    if isinstance(value, Fraction):
        denominator = field.convert(value.denominator)
        if not denominator:
            raise FieldError(f"{value} is not defined over {field_tag(field)}: division by zero")
        return field.quo(field.convert(value.numerator), denominator)
    if field.of_type(value):
        return value
    raise FieldError(f"{value!r} is not an element of {field_tag(field)}")


def format_scalar(field, value) -> str:
    """Exact string form: ``"-3/2"`` over Q, least residue over F_p."""
    if field.characteristic() == 0:
        return str(field.to_sympy(value))
    return str(int(field.to_sympy(value)) % field.characteristic())


# -------------------- Sparse vectors -------------------- #

def add_into(target: Vector, source: Mapping, coefficient=None) -> Vector:
    """target += coefficient * source, in place, dropping zeros."""
    for key, value in source.items():
        term = value if coefficient is None else coefficient * value
        current = target.get(key)
        total = term if current is None else current + term
        if total:
            target[key] = total
        else:
            target.pop(key, None)
    return target


def scale(vector: Mapping, coefficient) -> Vector:
    if not coefficient:
        return {}
    return {key: coefficient * value for key, value in vector.items()}


def dense(vector: Mapping, length: int, field) -> list:
    return [vector.get(i, field.zero) for i in range(length)]


def sparse(values: Sequence, field) -> Vector:
    out = {}
    for i, value in enumerate(values):
        value = scalar(field, value)
        if value:
            out[i] = value
    return out


def random_vector(rng: random.Random, length: int, field, density: float = 0.5, bound: int = 3) -> Vector:
    """Pseudorandom sparse vector with small integer entries."""
    out = {}
    for i in range(length):
        if rng.random() < density:
            value = field.convert(rng.randint(-bound, bound))
            if value:
                out[i] = value
    return out


def _as_vector(vector, length: int, field) -> Vector:
    if isinstance(vector, Mapping):
        for key in vector:
            if not 0 <= key < length:
                raise ShapeError(f"Vector index {key} outside ambient dimension {length}")
        return {k: v for k, v in vector.items() if v}
    if len(vector) != length:
        raise ShapeError(f"Vector of length {len(vector)} where {length} was expected")
    return sparse(vector, field)


# -------------------- Matrices -------------------- #

def matrix_from_rows(rows: Mapping[int, Mapping[int, Any]], shape: tuple[int, int], field,
                     check: bool = False) -> DomainMatrix:
    nrows, ncols = shape
    clean = {}
    for i, row in rows.items():
        if not 0 <= i < nrows:
            raise ShapeError(f"Row index {i} outside {nrows} rows")
        entries = {}
        for j, value in row.items():
            if not 0 <= j < ncols:
                raise ShapeError(f"Column index {j} outside {ncols} columns")
            if check and not field.of_type(value):
                raise FieldError(f"Mixed-field entry {value!r} in a matrix over {field_tag(field)}")
            if value:
                entries[j] = value
        if entries:
            clean[i] = entries
    return DomainMatrix(clean, (nrows, ncols), field)


def matrix_from_columns(columns: Sequence[Mapping], nrows: int, field) -> DomainMatrix:
    rows: dict[int, dict] = {}
    for j, column in enumerate(columns):
        for i, value in column.items():
            if value:
                rows.setdefault(i, {})[j] = value
    return matrix_from_rows(rows, (nrows, len(columns)), field)


def matrix(entries: Sequence[Sequence], field) -> DomainMatrix:
    """Dense nested-list constructor with scalar conversion and field checks."""
    nrows = len(entries)
    ncols = len(entries[0]) if nrows else 0
    rows = {}
    for i, row in enumerate(entries):
        if len(row) != ncols:
            raise ShapeError("Ragged matrix rows")
        rows[i] = {j: scalar(field, value) for j, value in enumerate(row)}
    return matrix_from_rows(rows, (nrows, ncols), field, check=True)


def rows_of(m: DomainMatrix) -> dict[int, dict]:
    return {i: dict(row) for i, row in m.to_sparse().rep.items() if row}


def columns_of(m: DomainMatrix) -> list[Vector]:
    columns: list[Vector] = [{} for _ in range(m.shape[1])]
    for i, row in rows_of(m).items():
        for j, value in row.items():
            columns[j][i] = value
    return columns


def mat_vec(m: DomainMatrix, vector: Mapping) -> Vector:
    out = {}
    for i, row in rows_of(m).items():
        total = m.domain.zero
        for j, value in row.items():
            other = vector.get(j)
            if other:
                total += value * other
        if total:
            out[i] = total
    return out


def _rref(m: DomainMatrix) -> tuple[list[dict], tuple[int, ...]]:
    nrows, ncols = m.shape
    if nrows == 0 or ncols == 0:
        return [], ()
    m = m.to_sparse()
    if not any(m.rep.values()):
        return [], ()
    reduced, pivots = m.rref()
    reduced_rows = reduced.to_sparse().rep
    return [dict(reduced_rows[i]) for i in range(len(pivots))], tuple(pivots)


def row_echelon(vectors: Sequence[Mapping], ambient_dim: int, field) -> tuple[list[dict], tuple[int, ...]]:
    """Reduced row echelon basis of span(vectors) and its pivot columns."""
    rows = {i: _as_vector(v, ambient_dim, field) for i, v in enumerate(vectors)}
    return _rref(matrix_from_rows(rows, (len(vectors), ambient_dim), field))


# -------------------- Core operations -------------------- #

def rank(m: DomainMatrix) -> int:
    return len(_rref(m)[1])


def kernel_basis(m: DomainMatrix) -> list[Vector]:
    """Basis of the right null space, one vector per free column of the RREF."""
    reduced, pivots = _rref(m)
    ncols = m.shape[1]
    by_column: dict[int, list] = {}
    for row, pivot in zip(reduced, pivots):
        for j, value in row.items():
            if j != pivot:
                by_column.setdefault(j, []).append((pivot, value))
    pivot_set = set(pivots)
    one = m.domain.one
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vector = {free: one}
        for pivot, value in by_column.get(free, ()):
            vector[pivot] = -value
        basis.append(vector)
    return basis


def image_basis(m: DomainMatrix) -> list[Vector]:
    """Echelon basis of the column space."""
    return _rref(m.transpose())[0]


def solve(m: DomainMatrix, b) -> Optional[Vector]:
    """Some x with m·x = b, or None when b is outside the column space."""
    nrows, ncols = m.shape
    b = _as_vector(b, nrows, m.domain)
    rows = rows_of(m)
    for i, value in b.items():
        rows.setdefault(i, {})[ncols] = value
    reduced, pivots = _rref(DomainMatrix(rows, (nrows, ncols + 1), m.domain))
    if pivots and pivots[-1] == ncols:
        return None
    return {pivot: row[ncols] for row, pivot in zip(reduced, pivots) if row.get(ncols)}


def same_span(first: Sequence[Mapping], second: Sequence[Mapping], ambient_dim: int, field) -> bool:
    return row_echelon(first, ambient_dim, field)[0] == row_echelon(second, ambient_dim, field)[0]


class _Reducer:
    """Reduction of vectors against fixed RREF rows."""

    def __init__(self, rows: list[dict], pivots: tuple[int, ...]):
        self.rows = rows
        self.pivots = pivots

    def reduce(self, vector: Mapping) -> Vector:
        residue = dict(vector)
        for row, pivot in zip(self.rows, self.pivots):
            value = residue.get(pivot)
            if value:
                add_into(residue, row, -value)
        return residue


class Quotient:
    """Complement representatives of span(sub) in k^ambient_dim plus class coordinates.

    Representatives are the standard basis vectors at the non-pivot columns of
    the RREF of ``sub``.
    """

    def __init__(self, sub: Sequence[Mapping], ambient_dim: int, field):
        self.field = field
        self.ambient_dim = ambient_dim
        rows, pivots = row_echelon(sub, ambient_dim, field)
        self._reducer = _Reducer(rows, pivots)
        pivot_set = set(pivots)
        self.free = [j for j in range(ambient_dim) if j not in pivot_set]
        self.representatives = [{j: field.one} for j in self.free]

    @property
    def dim(self) -> int:
        return len(self.free)

    def coordinates(self, vector) -> list:
        residue = self._reducer.reduce(_as_vector(vector, self.ambient_dim, self.field))
        return [residue.get(j, self.field.zero) for j in self.free]


def quotient_data(sub: Sequence[Mapping], ambient_dim: int, field) -> Quotient:
    """k^ambient_dim / span(sub): complement representatives and a coordinate map."""
    return Quotient(sub, ambient_dim, field)


class Span:
    """Coordinates with respect to a fixed linearly independent list."""

    def __init__(self, vectors: Sequence[Mapping], ambient_dim: int, field):
        self.field = field
        self.ambient_dim = ambient_dim
        self.size = len(vectors)
        rows = {}
        for i, vector in enumerate(vectors):
            row = _as_vector(vector, ambient_dim, field)
            row[ambient_dim + i] = field.one
            rows[i] = row
        reduced, pivots = _rref(matrix_from_rows(rows, (self.size, ambient_dim + self.size), field))
        if any(p >= ambient_dim for p in pivots):
            raise ShapeError("Span basis vectors are linearly dependent")
        self._rows = []
        for row, pivot in zip(reduced, pivots):
            head = {j: v for j, v in row.items() if j < ambient_dim}
            tail = {j - ambient_dim: v for j, v in row.items() if j >= ambient_dim}
            self._rows.append((pivot, head, tail))

    def coordinates(self, vector: Mapping) -> list:
        residue = dict(vector)
        coords: Vector = {}
        for pivot, head, tail in self._rows:
            value = residue.get(pivot)
            if value:
                add_into(residue, head, -value)
                add_into(coords, tail, value)
        if residue:
            raise NotInSpanError("Vector lies outside the span")
        return dense(coords, self.size, self.field)

    def contains(self, vector: Mapping) -> bool:
        try:
            self.coordinates(vector)
        except NotInSpanError:
            return False
        return True


class Subquotient:
    """span(top) / span(bottom) with deterministic representatives.

    Representatives are the RREF of the top vectors after reduction against
    the bottom echelon basis; ``coordinates`` expresses any vector of
    span(top) + span(bottom) in terms of their classes.
    """

    def __init__(self, top: Sequence[Mapping], bottom: Sequence[Mapping], ambient_dim: int, field):
        self.field = field
        self.ambient_dim = ambient_dim
        self._bottom = _Reducer(*row_echelon(bottom, ambient_dim, field))
        reduced_top = [self._bottom.reduce(_as_vector(v, ambient_dim, field)) for v in top]
        rows, pivots = row_echelon([v for v in reduced_top if v], ambient_dim, field)
        self.representatives = rows
        self._pivots = pivots

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def coordinates(self, vector: Mapping) -> list:
        residue = self._bottom.reduce(vector)
        coords = [residue.get(p, self.field.zero) for p in self._pivots]
        for value, row in zip(coords, self.representatives):
            if value:
                add_into(residue, row, -value)
        if residue:
            raise NotInSpanError("Vector is not in the cocycle space")
        return coords

    def in_bottom(self, vector: Mapping) -> bool:
        return not self._bottom.reduce(vector)


# -------------------- Linear maps -------------------- #

class LinearMap:
    """A linear map k^source_dim -> k^target_dim stored by sparse column images."""

    __slots__ = ("field", "source_dim", "target_dim", "columns")

    def __init__(self, field, source_dim: int, target_dim: int, columns: Sequence[Mapping]):
        if len(columns) != source_dim:
            raise ShapeError(f"{len(columns)} column images for a {source_dim}-dimensional source")
        self.field = field
        self.source_dim = source_dim
        self.target_dim = target_dim
        self.columns = tuple(_as_vector(c, target_dim, field) for c in columns)

    @classmethod
    def identity(cls, field, dim: int) -> "LinearMap":
        return cls(field, dim, dim, [{i: field.one} for i in range(dim)])

    @classmethod
    def zero(cls, field, source_dim: int, target_dim: int) -> "LinearMap":
        return cls(field, source_dim, target_dim, [{} for _ in range(source_dim)])

    @classmethod
    def from_matrix(cls, m: DomainMatrix) -> "LinearMap":
        return cls(m.domain, m.shape[1], m.shape[0], columns_of(m))

    def apply(self, vector: Mapping) -> Vector:
        out: Vector = {}
        for j, value in vector.items():
            add_into(out, self.columns[j], value)
        return out

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self ∘ other."""
        if other.target_dim != self.source_dim:
            raise ShapeError("Cannot compose maps with mismatched dimensions")
        return LinearMap(self.field, other.source_dim, self.target_dim,
                         [self.apply(c) for c in other.columns])

    def matrix(self) -> DomainMatrix:
        return matrix_from_columns(self.columns, self.target_dim, self.field)

    def flatten(self) -> Vector:
        """Coordinates in k^(target_dim * source_dim), column-major."""
        out = {}
        for j, column in enumerate(self.columns):
            for i, value in column.items():
                out[j * self.target_dim + i] = value
        return out

    def rank(self) -> int:
        return rank(self.matrix())

    def is_zero(self) -> bool:
        return not any(self.columns)

    def scaled(self, coefficient) -> "LinearMap":
        return LinearMap(self.field, self.source_dim, self.target_dim,
                         [scale(c, coefficient) for c in self.columns])

    def __add__(self, other: "LinearMap") -> "LinearMap":
        if (self.source_dim, self.target_dim) != (other.source_dim, other.target_dim):
            raise ShapeError("Cannot add maps of different shapes")
        return LinearMap(self.field, self.source_dim, self.target_dim,
                         [add_into(dict(a), b) for a, b in zip(self.columns, other.columns)])

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return self + other.scaled(-self.field.one)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return ((self.source_dim, self.target_dim, self.columns)
                == (other.source_dim, other.target_dim, other.columns))

    __hash__ = None

    def __repr__(self) -> str:
        return f"LinearMap({self.source_dim} -> {self.target_dim}, rank {self.rank()})"


def combine_maps(maps: Sequence[LinearMap], coefficients: Iterable) -> LinearMap:
    """Σ coefficient_k · maps[k]; all maps share one shape."""
    first = maps[0]
    columns = [{} for _ in range(first.source_dim)]
    for linear_map, coefficient in zip(maps, coefficients):
        if not coefficient:
            continue
        for column, image in zip(columns, linear_map.columns):
            add_into(column, image, coefficient)
    return LinearMap(first.field, first.source_dim, first.target_dim, columns)
