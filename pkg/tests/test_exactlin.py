from fractions import Fraction

import pytest

from errors import FieldError, NotInSpanError, ShapeError
from exactlin import (
    LinearMap, Span, Subquotient, field_tag, format_scalar, kernel_basis, make_field, matrix, quotient_data, rank,
    same_span, scalar, solve,
)


def test_field_tags():
    assert field_tag(make_field("Q")) == "Q"
    assert field_tag(make_field("Fp:7")) == "Fp:7"
    with pytest.raises(FieldError):
        make_field("Fp:6")
    with pytest.raises(FieldError):
        make_field("R")


def test_scalars_are_exact(QQ):
    assert format_scalar(QQ, scalar(QQ, "-3/2")) == "-3/2"
    assert scalar(QQ, Fraction(1, 3)) * 3 == QQ.one
    F2 = make_field("Fp:2")
    with pytest.raises(FieldError):
        scalar(F2, "1/2")
    with pytest.raises(FieldError):
        scalar(QQ, True)


def test_rank_and_kernel(QQ):
    m = matrix([[1, 2, 3], [2, 4, 6], [0, 1, 1]], QQ)
    assert rank(m) == 2
    kernel = kernel_basis(m)
    assert len(kernel) == 1
    image = LinearMap.from_matrix(m).apply(kernel[0])
    assert image == {}


def test_rank_depends_on_characteristic():
    entries = [[1, 1], [1, -1]]
    assert rank(matrix(entries, make_field("Q"))) == 2
    assert rank(matrix(entries, make_field("Fp:2"))) == 1


def test_solve(QQ):
    m = matrix([[1, 0], [0, 2]], QQ)
    assert solve(m, [3, 4]) == {0: QQ.convert(3), 1: QQ.convert(2)}
    singular = matrix([[1, 1], [1, 1]], QQ)
    assert solve(singular, [1, 0]) is None


def test_subquotient(QQ):
    top = [{0: QQ.one}, {1: QQ.one}]
    bottom = [{0: QQ.one, 1: QQ.one}]
    quotient = Subquotient(top, bottom, 3, QQ)
    assert quotient.dim == 1
    assert quotient.in_bottom({0: QQ.convert(2), 1: QQ.convert(2)})
    first = quotient.coordinates({0: QQ.one})
    second = quotient.coordinates({1: QQ.one})
    assert first == [-value for value in second]
    with pytest.raises(NotInSpanError):
        quotient.coordinates({2: QQ.one})


def test_quotient_data(QQ):
    quotient = quotient_data([{0: QQ.one, 1: QQ.one}, {2: QQ.one}], 3, QQ)
    assert quotient.dim == 1
    assert quotient.representatives == [{1: QQ.one}]
    assert quotient.coordinates({0: QQ.one}) == [-QQ.one]
    assert quotient.coordinates({2: QQ.convert(5)}) == [QQ.zero]

def test_span_coordinates(QQ):
    span = Span([{0: QQ.one, 1: QQ.one}, {1: QQ.one}], 2, QQ)
    assert span.coordinates({0: QQ.one}) == [QQ.one, -QQ.one]
    with pytest.raises(ShapeError):
        Span([{0: QQ.one}, {0: QQ.convert(2)}], 2, QQ)


def test_same_span(QQ):
    assert same_span([{0: QQ.one}, {1: QQ.one}], [{0: QQ.one, 1: QQ.one}, {0: QQ.one}], 2, QQ)
    assert not same_span([{0: QQ.one}], [{1: QQ.one}], 2, QQ)


def test_linear_map_shapes(QQ):
    identity = LinearMap.identity(QQ, 2)
    assert identity.compose(identity) == identity
    with pytest.raises(ShapeError):
        LinearMap(QQ, 2, 2, [{0: QQ.one}])
    with pytest.raises(ShapeError):
        identity.compose(LinearMap.identity(QQ, 3))
