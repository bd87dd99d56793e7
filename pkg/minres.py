"""Partial minimal projective bimodule resolutions P^3 -> P^2 -> P^1 -> P^0 of monomial algebras.

P^n is the direct sum of A e_{o(x)} ⊗ e_{t(x)} A over the chains x in g^n:
vertices, arrows, the minimal monomial relations and their overlaps.
Hom_{A-A}(A e_x ⊗ e_y A, M) is identified with e_x M e_y, so a cochain of
the Hom complex is a vector indexed by (chain, basis vector of the block).
"""
from __future__ import annotations

import functools
import logging
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from algebra import Algebra, system_of_relations
from bimodule import Bimodule, regular_bimodule
from errors import AxiomError, NotMonomialError, PresentationError
from exactlin import LinearMap, Subquotient, add_into, kernel_basis
from quiver import Path, PathSum

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Overlap:
    """A chain of g^3: ``path`` = r1·u = v·r2 with r1 a prefix and r2 a suffix relation."""

    path: Path
    prefix: int
    suffix: int
    shift: int


@dataclass
class GnSets:
    g0: list[Path]
    g1: list[Path]
    g2: list[Path]
    g3: list[Overlap]

    def chains(self, n: int) -> list[Path]:
        if n == 3:
            return [overlap.path for overlap in self.g3]
        return (self.g0, self.g1, self.g2)[n]


def _contains(word: tuple[str, ...], relation: tuple[str, ...]) -> list[int]:
    size = len(relation)
    return [i for i in range(len(word) - size + 1) if word[i:i + size] == relation]


def gn_sets(algebra: Algebra) -> GnSets:
    """g^0..g^3 for a monomial algebra, in deterministic order."""
    presentation = algebra.presentation
    if presentation is None:
        raise PresentationError("Minimal resolutions need a quiver presentation")
    if not presentation.is_monomial():
        raise NotMonomialError("Minimal resolutions are built for monomial relations only")
    quiver = presentation.quiver
    relations = system_of_relations(presentation) if presentation.relations else []
    g2 = sorted((r.paths[0] for r in relations), key=lambda p: p.sort_key())
    words = [r.arrows for r in g2]
    g3: dict[Path, Overlap] = {}
    for first, r1 in enumerate(words):
        for second, r2 in enumerate(words):
            for shift in range(1, len(r1)):
                overlap = len(r1) - shift
                if overlap >= len(r2) or r2[:overlap] != r1[shift:]:
                    continue
                word = r1 + r2[overlap:]
                end = len(word)
                # no relation strictly inside word[1:end-1]
                inner = word[1:end - 1]
                if any(_contains(inner, r) for r in words):
                    continue
                path = quiver.path(word)
                g3.setdefault(path, Overlap(path, first, second, shift))
    sets = GnSets(
        g0=[quiver.trivial(v) for v in quiver.vertices],
        g1=[quiver.path((a.name,)) for a in quiver.arrows],
        g2=g2,
        g3=sorted(g3.values(), key=lambda o: o.path.sort_key()),
    )
    logger.info(f"Chains: |g2| = {len(sets.g2)}, |g3| = {len(sets.g3)}")
    return sets


class PartialResolution:
    """P^0..P^3 with differentials d^1, d^2, d^3 given on the generators o(x) ⊗ t(x)."""

    def __init__(self, algebra: Algebra, sets: GnSets):
        self.algebra = algebra
        self.sets = sets
        self.quiver = algebra.presentation.quiver
        self._vertex = self.quiver.vertex_index
        self._bases: dict[int, list] = {}
        self._indices: dict[int, dict] = {}
        self.terms = {n: [self._differential_terms(n, k) for k in range(len(sets.chains(n)))] for n in (1, 2, 3)}

    def _path(self, source: str, target: str, arrows: Sequence[str]) -> dict:
        return self.algebra.normal_form(PathSum.of_path(self.algebra.field, Path(source, target, tuple(arrows))))

    def summands(self, n: int) -> list[tuple[int, int]]:
        """(o(x), t(x)) vertex positions of each summand A e_o ⊗ e_t A of P^n."""
        return [(self._vertex[x.source], self._vertex[x.target]) for x in self.sets.chains(n)]

    def summand_labels(self, n: int) -> list[str]:
        return [f"Ae_{x.source}⊗e_{x.target}A" for x in self.sets.chains(n)]

    def _differential_terms(self, n: int, k: int) -> list[tuple]:
        """d^n(o(x) ⊗ t(x)) as (coefficient, left vector, chain in g^{n-1}, right vector)."""
        one = self.algebra.field.one
        chains = self.sets.chains(n)
        x = chains[k]
        if n == 1:
            a = x.arrows
            return [(one, self._path(x.source, x.target, a), self._vertex[x.target],
                     self._path(x.target, x.target, ())),
                    (-one, self._path(x.source, x.source, ()), self._vertex[x.source],
                     self._path(x.source, x.target, a))]
        if n == 2:
            arrows_index = {path.arrows[0]: i for i, path in enumerate(self.sets.g1)}
            terms = []
            vertices = [x.source] + [self.quiver.arrow(a).target for a in x.arrows]
            for j, name in enumerate(x.arrows):
                left = self._path(x.source, vertices[j], x.arrows[:j])
                right = self._path(vertices[j + 1], x.target, x.arrows[j + 1:])
                terms.append((one, left, arrows_index[name], right))
            return terms
        overlap = self.sets.g3[k]
        r1 = self.sets.g2[overlap.prefix]
        r2 = self.sets.g2[overlap.suffix]
        u = x.arrows[r1.length:]
        v = x.arrows[:overlap.shift]
        return [(one, self._path(x.source, x.source, ()), overlap.prefix, self._path(r1.target, x.target, u)),
                (-one, self._path(x.source, r2.source, v), overlap.suffix, self._path(x.target, x.target, ()))]

    # -------------------- k-linear structure -------------------- #

    def basis(self, n: int) -> list[tuple[int, int, int]]:
        """(chain, λ, ρ) with λ in A e_o and ρ in e_t A."""
        if n not in self._bases:
            peirce = self.algebra.peirce
            basis = []
            for k, (o, t) in enumerate(self.summands(n)):
                lefts = [i for i in range(self.algebra.dim) if peirce[i][1] == o]
                rights = [j for j in range(self.algebra.dim) if peirce[j][0] == t]
                basis.extend((k, i, j) for i in lefts for j in rights)
            self._bases[n] = basis
            self._indices[n] = {item: i for i, item in enumerate(basis)}
        return self._bases[n]

    def dimension(self, n: int) -> int:
        return len(self.basis(n))

    def apply(self, n: int, element: Mapping[tuple[int, int, int], object]) -> dict:
        """d^n on an element of P^n given by (chain, λ, ρ) coefficients."""
        algebra, one = self.algebra, self.algebra.field.one
        out: dict = {}
        for (k, i, j), coefficient in element.items():
            for sign, left, z, right in self.terms[n][k]:
                lam = algebra.multiply_vectors({i: one}, left)
                rho = algebra.multiply_vectors(right, {j: one})
                for a, x in lam.items():
                    for b, y in rho.items():
                        key = (z, a, b)
                        value = out.get(key, algebra.field.zero) + coefficient * sign * x * y
                        if value:
                            out[key] = value
                        else:
                            out.pop(key, None)
        return out

    def matrix(self, n: int) -> LinearMap:
        index = self._index(n - 1)
        columns = []
        for item in self.basis(n):
            image = self.apply(n, {item: self.algebra.field.one})
            columns.append({index[key]: value for key, value in image.items()})
        return LinearMap(self.algebra.field, self.dimension(n), self.dimension(n - 1), columns)

    def _index(self, n: int) -> dict:
        self.basis(n)
        return self._indices[n]

    def augmentation(self) -> LinearMap:
        """P^0 -> A, λ ⊗ ρ -> λρ."""
        algebra = self.algebra
        columns = [algebra.product(i, j) for _, i, j in self.basis(0)]
        return LinearMap(algebra.field, self.dimension(0), algebra.dim, columns)

    def certify(self) -> dict:
        """d∘d = 0 on generators and exactness at P^0, P^1, P^2 by ranks."""
        one = self.algebra.field.one
        for n in (2, 3):
            for k, x in enumerate(self.sets.chains(n)):
                generator = {(k, self.algebra.vertex_idempotent(x.source), self.algebra.vertex_idempotent(x.target)): one}
                if self.apply(n - 1, self.apply(n, generator)):
                    raise AxiomError(f"d^{n - 1}∘d^{n} does not vanish on {x}")
        ranks = {n: self.matrix(n).rank() for n in (1, 2, 3)}
        augmentation_rank = self.augmentation().rank()
        exact = {
            "augmentation_onto": augmentation_rank == self.algebra.dim,
            "P0": self.dimension(0) - augmentation_rank == ranks[1],
            "P1": self.dimension(1) - ranks[1] == ranks[2],
            "P2": self.dimension(2) - ranks[2] == ranks[3],
        }
        if not all(exact.values()):
            raise AxiomError(f"Partial resolution is not exact: {exact}")
        logger.debug(f"Resolution ranks {ranks}, P dims {[self.dimension(n) for n in range(4)]}")
        return exact


def build_partial_resolution(algebra: Algebra, check: bool = True) -> PartialResolution:
    resolution = PartialResolution(algebra, gn_sets(algebra))
    if check:
        resolution.certify()
    return resolution


@functools.lru_cache(maxsize=32)
def partial_resolution(algebra: Algebra) -> PartialResolution:
    return build_partial_resolution(algebra)


# -------------------- Hom complex -------------------- #

def hom_basis(resolution: PartialResolution, module: Bimodule, n: int) -> list[tuple[int, int]]:
    """(chain, m) with m in the block e_o M e_t of the chain."""
    if module.peirce is None:
        raise AxiomError("The Hom complex needs a Peirce-tagged bimodule")
    return [(k, m) for k, tag in enumerate(resolution.summands(n))
            for m in range(module.dim) if module.peirce[m] == tag]


def hom_differential(resolution: PartialResolution, module: Bimodule, n: int) -> LinearMap:
    """Hom(d^n, M): Hom(P^{n-1}, M) -> Hom(P^n, M), φ -> (x -> Σ λ φ(z) ρ)."""
    source = hom_basis(resolution, module, n - 1)
    target = {item: i for i, item in enumerate(hom_basis(resolution, module, n))}
    one = module.field.one
    columns = []
    for z, m in source:
        column: dict = {}
        for k, terms in enumerate(resolution.terms[n]):
            for sign, left, chain, right in terms:
                if chain != z:
                    continue
                image = module.act_right(module.act_left(left, {m: one}), right)
                for m_out, value in image.items():
                    add_into(column, {target[(k, m_out)]: sign * value})
        columns.append(column)
    return LinearMap(module.field, len(source), len(target), columns)


@dataclass
class MinresCohomology:
    degree: int
    dim: int
    representatives: list[dict]


def hh_via_minres(algebra: Algebra, n: int, module: Optional[Bimodule] = None) -> MinresCohomology:
    """hh^n(A, M) for n <= 2 from the partial minimal resolution."""
    if not 0 <= n <= 2:
        raise AxiomError("The partial resolution reaches degree 2 cohomology at most")
    resolution = partial_resolution(algebra)
    module = module or regular_bimodule(algebra)
    field = algebra.field
    dim = len(hom_basis(resolution, module, n))
    cycles = kernel_basis(hom_differential(resolution, module, n + 1).matrix())
    boundaries = hom_differential(resolution, module, n).columns if n > 0 else []
    quotient = Subquotient(cycles, boundaries, dim, field)
    logger.info(f"hh^{n} via minimal resolution: dim {quotient.dim}")
    return MinresCohomology(n, quotient.dim, quotient.representatives)


def exactness_ranks(resolution: PartialResolution, module: Optional[Bimodule] = None) -> dict:
    """Dimensions of the Hom spaces and ranks and kernels of Hom(d^n, M) for n = 1, 2, 3."""
    module = module or regular_bimodule(resolution.algebra)
    report = {"hom_dims": [len(hom_basis(resolution, module, n)) for n in range(4)]}
    for n in (1, 2, 3):
        differential = hom_differential(resolution, module, n)
        image = differential.rank()
        report[f"image_{n}"] = image
        report[f"kernel_{n}"] = differential.source_dim - image
    return report
