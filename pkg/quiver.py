"""Quivers, paths, linear combinations of paths and bound-quiver presentations.

Paths compose left to right: in the word ``a*b`` the arrow ``a`` is traversed
first, so ``target(a) == source(b)``.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Any, Iterable, Iterator, Mapping, Optional, Sequence

import networkx as nx

from errors import PresentationError, RelationSyntaxError
from exactlin import field_tag, format_scalar, scalar

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<op>[*/+\-]))")


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    arrows: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def sort_key(self) -> tuple:
        return (len(self.arrows), self.arrows, self.source, self.target)

    def __str__(self) -> str:
        if not self.arrows:
            return f"e_{self.source}"
        return "*".join(self.arrows)


def compose(first: Path, second: Path) -> Optional[Path]:
    """``first`` then ``second``, or None when the endpoints do not meet."""
    if first.target != second.source:
        return None
    return Path(first.source, second.target, first.arrows + second.arrows)


class PathSum:
    """Finite linear combination of paths with nonzero coefficients."""

    __slots__ = ("field", "_terms")

    def __init__(self, field, terms: Mapping[Path, Any] | Iterable[tuple[Path, Any]] = ()):
        self.field = field
        items = terms.items() if isinstance(terms, Mapping) else terms
        collected: dict[Path, Any] = {}
        for path, coefficient in items:
            value = collected.get(path, field.zero) + scalar(field, coefficient)
            if value:
                collected[path] = value
            else:
                collected.pop(path, None)
        self._terms = tuple(sorted(collected.items(), key=lambda item: item[0].sort_key()))

    @classmethod
    def of_path(cls, field, path: Path) -> "PathSum":
        return cls(field, [(path, field.one)])

    @property
    def terms(self) -> dict[Path, Any]:
        return dict(self._terms)

    @property
    def paths(self) -> list[Path]:
        return [path for path, _ in self._terms]

    def is_zero(self) -> bool:
        return not self._terms

    def is_parallel(self) -> bool:
        return len({(p.source, p.target) for p in self.paths}) <= 1

    def endpoints(self) -> Optional[tuple[str, str]]:
        if not self._terms:
            return None
        first = self._terms[0][0]
        return first.source, first.target

    def __iter__(self) -> Iterator[tuple[Path, Any]]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "PathSum") -> "PathSum":
        return PathSum(self.field, list(self._terms) + list(other._terms))

    def __neg__(self) -> "PathSum":
        return PathSum(self.field, [(p, -c) for p, c in self._terms])

    def __sub__(self, other: "PathSum") -> "PathSum":
        return self + (-other)

    def scaled(self, coefficient) -> "PathSum":
        coefficient = scalar(self.field, coefficient)
        return PathSum(self.field, [(p, coefficient * c) for p, c in self._terms])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PathSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for path, coefficient in self._terms:
            negative = coefficient == -self.field.one or (
                self.field.characteristic() == 0 and self.field.is_negative(coefficient))
            magnitude = -coefficient if negative else coefficient
            word = str(path) if magnitude == self.field.one else f"{format_scalar(self.field, magnitude)}*{path}"
            if not pieces:
                pieces.append(f"-{word}" if negative else word)
            else:
                pieces.append(f"- {word}" if negative else f"+ {word}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"PathSum({self})"


class Quiver:
    """Finite quiver with named vertices and arrows."""

    def __init__(self, vertices: Sequence[str], arrows: Sequence[Arrow | tuple[str, str, str]]):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise PresentationError("Duplicate vertex names in quiver")
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        parsed = []
        for arrow in arrows:
            if not isinstance(arrow, Arrow):
                arrow = Arrow(*arrow)
            if arrow.source not in self.vertex_index or arrow.target not in self.vertex_index:
                raise PresentationError(f"Arrow {arrow.name!r} has an endpoint outside the vertex set")
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", arrow.name):
                raise PresentationError(f"Arrow name {arrow.name!r} is not an identifier")
            parsed.append(arrow)
        self.arrows = tuple(parsed)
        self._by_name = {a.name: a for a in self.arrows}
        if len(self._by_name) != len(self.arrows):
            raise PresentationError("Duplicate arrow names in quiver")
        clashes = set(self._by_name) & set(self.vertices)
        if clashes:
            raise PresentationError(f"Names used for both a vertex and an arrow: {sorted(clashes)}")

    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise PresentationError(f"Unknown arrow {name!r}") from None

    def has_arrow(self, name: str) -> bool:
        return name in self._by_name

    def trivial(self, vertex: str) -> Path:
        if vertex not in self.vertex_index:
            raise PresentationError(f"Unknown vertex {vertex!r}")
        return Path(vertex, vertex)

    def path(self, names: Sequence[str]) -> Path:
        """The path traversing ``names`` in order."""
        if not names:
            raise PresentationError("Empty arrow word; use trivial() for e_x")
        first = self.arrow(names[0])
        path = Path(first.source, first.target, (first.name,))
        for name in names[1:]:
            arrow = self.arrow(name)
            joined = compose(path, Path(arrow.source, arrow.target, (name,)))
            if joined is None:
                raise PresentationError(f"Word {'*'.join(names)} is not composable at {name!r}")
            path = joined
        return path

    def arrows_from(self, vertex: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == vertex]

    def graph(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.vertices)
        for arrow in self.arrows:
            graph.add_edge(arrow.source, arrow.target, key=arrow.name)
        return graph

    def is_acyclic(self) -> bool:
        return nx.is_directed_acyclic_graph(self.graph())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.vertices == other.vertices and self.arrows == other.arrows

    def __hash__(self) -> int:
        return hash((self.vertices, self.arrows))

    def __repr__(self) -> str:
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"


def paths_up_to(quiver: Quiver, max_length: int) -> list[Path]:
    """All paths of length <= max_length, by length then arrow names."""
    if max_length < 0:
        return []
    level = [quiver.trivial(v) for v in quiver.vertices]
    paths = list(level)
    for _ in range(max_length):
        extended = []
        for path in level:
            for arrow in quiver.arrows_from(path.target):
                extended.append(Path(path.source, arrow.target, path.arrows + (arrow.name,)))
        level = sorted(extended, key=lambda p: p.arrows)
        if not level:
            break
        paths.extend(level)
    return paths


# -------------------- Relation grammar -------------------- #

def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN.match(text, position)
        if match is None:
            offset = position + len(text[position:]) - len(text[position:].lstrip())
            raise RelationSyntaxError(text, offset, f"Unexpected character {text[offset]!r}")
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind)))
        position = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str, quiver: Quiver, field, min_length: int):
        self.text = text
        self.quiver = quiver
        self.field = field
        self.min_length = min_length
        self.tokens = _tokenize(text)
        self.index = 0

    def _peek(self) -> Optional[tuple[str, str, int]]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def _position(self) -> int:
        token = self._peek()
        return token[2] if token else len(self.text)

    def _take(self, kind: str, value: Optional[str] = None) -> tuple[str, str, int]:
        token = self._peek()
        if token is None or token[0] != kind or (value is not None and token[1] != value):
            expected = value or kind
            raise RelationSyntaxError(self.text, self._position(), f"Expected {expected}")
        self.index += 1
        return token

    def parse(self) -> PathSum:
        if not self.tokens:
            raise RelationSyntaxError(self.text, 0, "Empty expression")
        if len(self.tokens) == 1 and self.tokens[0][:2] == ("int", "0") and self.min_length == 0:
            return PathSum(self.field)
        terms = []
        sign = 1
        token = self._peek()
        if token[0] == "op" and token[1] in "+-":
            sign = -1 if token[1] == "-" else 1
            self.index += 1
        terms.append(self._term(sign))
        while self._peek() is not None:
            op = self._take("op")
            if op[1] not in "+-":
                raise RelationSyntaxError(self.text, op[2], f"Unexpected operator {op[1]!r}")
            terms.append(self._term(-1 if op[1] == "-" else 1))
        result = PathSum(self.field, terms)
        if not result.is_parallel():
            raise PresentationError(f"Terms of {self.text!r} are not parallel paths")
        return result

    def _term(self, sign: int) -> tuple[Path, Any]:
        coefficient = Fraction(sign)
        token = self._peek()
        if token is not None and token[0] == "int":
            self.index += 1
            value = Fraction(int(token[1]))
            following = self._peek()
            if following is not None and following[:2] == ("op", "/"):
                self.index += 1
                denominator = int(self._take("int")[1])
                if denominator == 0:
                    raise RelationSyntaxError(self.text, following[2], "Division by zero")
                value /= denominator
            self._take("op", "*")
            coefficient *= value
        start = self._position()
        names = [self._take("ident")[1]]
        while True:
            following = self._peek()
            if following is None or following[:2] != ("op", "*"):
                break
            self.index += 1
            names.append(self._take("ident")[1])
        if len(names) == 1 and names[0] in self.quiver.vertex_index:
            path = self.quiver.trivial(names[0])
        else:
            for name in names:
                if not self.quiver.has_arrow(name):
                    raise PresentationError(f"Unknown arrow {name!r} in {self.text!r}")
            path = self.quiver.path(names)
        if path.length < self.min_length:
            raise PresentationError(
                f"Path {path} in {self.text!r} has length {path.length}, at least {self.min_length} required")
        return path, scalar(self.field, coefficient)


def parse_path_sum(text: str, quiver: Quiver, field, min_length: int = 0) -> PathSum:
    """Parse a linear combination of parallel paths; ``"0"`` is allowed when min_length is 0."""
    return _Parser(text, quiver, field, min_length).parse()


def parse_relation(text: str, quiver: Quiver, field) -> PathSum:
    relation = _Parser(text, quiver, field, 2).parse()
    if relation.is_zero():
        raise PresentationError(f"Relation {text!r} is zero")
    return relation


# -------------------- Presentations -------------------- #

@dataclass(frozen=True)
class Presentation:
    """A quiver, a field and relations in (kQ+)^2."""

    quiver: Quiver
    field: Any
    relations: tuple[PathSum, ...] = dataclass_field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(self.relations))
        for relation in self.relations:
            if relation.is_zero():
                raise PresentationError("Zero relation in presentation")
            if not relation.is_parallel():
                raise PresentationError(f"Relation {relation} has non-parallel terms")
            for path in relation.paths:
                if path.length < 2:
                    raise PresentationError(f"Relation {relation} contains {path}, of length < 2")
                self.quiver.path(path.arrows)

    @classmethod
    def from_strings(cls, quiver: Quiver, field, relations: Sequence[str]) -> "Presentation":
        return cls(quiver, field, tuple(parse_relation(text, quiver, field) for text in relations))

    @property
    def field_tag(self) -> str:
        return field_tag(self.field)

    def is_monomial(self) -> bool:
        return all(len(r) == 1 for r in self.relations)

    def with_relations(self, relations: Sequence[PathSum]) -> "Presentation":
        return Presentation(self.quiver, self.field, tuple(relations))
