import pytest

from errors import PresentationError, RelationSyntaxError
from quiver import Path, PathSum, Quiver, parse_path_sum, parse_relation, paths_up_to


@pytest.fixture
def triangle():
    return Quiver(["1", "2", "3"], [("alpha", "1", "2"), ("beta", "2", "3"), ("gamma", "1", "3")])


def test_parse_relation(triangle, QQ):
    relation = parse_relation("alpha*beta", triangle, QQ)
    assert relation.paths == [Path("1", "3", ("alpha", "beta"))]
    assert str(relation) == "alpha*beta"


def test_coefficients_and_printing(QQ):
    square = Quiver(["1", "2", "3", "4"], [("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")])
    relation = parse_relation("2*a*b - 1/2*c*d", square, QQ)
    assert str(relation) == "2*a*b - 1/2*c*d"
    assert parse_relation(str(relation), square, QQ) == relation


@pytest.mark.parametrize("text", ["alpha*", "alpha**beta", "alpha*beta +", "alpha $ beta"])
def test_syntax_errors(triangle, QQ, text):
    with pytest.raises((RelationSyntaxError, PresentationError)):
        parse_relation(text, triangle, QQ)


def test_rejects_bad_paths(triangle, QQ):
    with pytest.raises(PresentationError):
        parse_relation("beta*alpha", triangle, QQ)
    with pytest.raises(PresentationError):
        parse_relation("alpha*beta - gamma*gamma", triangle, QQ)
    with pytest.raises(PresentationError):
        parse_relation("alpha", triangle, QQ)
    with pytest.raises(PresentationError):
        parse_relation("delta*beta", triangle, QQ)


def test_parse_path_sum_allows_zero_and_arrows(triangle, QQ):
    assert parse_path_sum("0", triangle, QQ).is_zero()
    assert parse_path_sum("-gamma", triangle, QQ) == PathSum(QQ, [(Path("1", "3", ("gamma",)), -1)])


def test_paths_up_to(triangle):
    paths = paths_up_to(triangle, 5)
    assert len(paths) == 3 + 3 + 1
    assert triangle.is_acyclic()
    loop = Quiver(["1"], [("x", "1", "1")])
    assert not loop.is_acyclic()
    assert len(paths_up_to(loop, 3)) == 4


def test_quiver_validation():
    with pytest.raises(PresentationError):
        Quiver(["1", "1"], [])
    with pytest.raises(PresentationError):
        Quiver(["1"], [("a", "1", "2")])
    with pytest.raises(PresentationError):
        Quiver(["a"], [("a", "a", "a")])
