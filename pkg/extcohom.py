"""E_m = Ext^m_C(DC, C) from the complex Hom_k(DC ⊗ C^{⊗m}, C), and the operators α_m.

A cochain θ is stored like a Hochschild cochain: ``values[(f, a_1, ..., a_m)]``
is the C-vector θ(D(f) ⊗ b_{a_1} ⊗ ... ⊗ b_{a_m}).  When C carries Peirce
tags the complex is normalized relative to the idempotents: the a_i are
non-idempotent, consecutive factors compose, and values lie in C·e_t for t the
right tag of the last factor.

    ∂θ(f ⊗ a_0 ⊗ ... ⊗ a_m) = θ(f·a_0 ⊗ a_1 ⊗ ...) + Σ_i (-1)^i θ(f ⊗ ... a_{i-1}a_i ...)
                               + (-1)^{m+1} θ(f ⊗ a_0 ⊗ ... ⊗ a_{m-1})·a_m

The bimodule structure on classes is (c·θ)(f ⊗ a) = c θ(f ⊗ a) and
(θ·c)(f ⊗ a) = θ(c·f ⊗ a).
"""
from __future__ import annotations

import functools
import logging
import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from algebra import Algebra
from bimodule import Bimodule, dual_bimodule, regular_bimodule
from config import get_config
from errors import AxiomError, CapExceededError, NotACocycleError, NotADerivationError, NotInSpanError
from exactlin import LinearMap, Subquotient, add_into, kernel_basis, matrix_from_columns, random_vector
from extension import MixedCochain, SplitExtensionData, check_c_conditions, phi, trivial_extension
from hochschild import Cochain, _factorizations, apply_differential, hh1_via_derivations
from reports import CheckResult

logger = logging.getLogger(__name__)


class DCComplex:
    """The complex Hom_k(DC ⊗ C^{⊗*}, C) with cached bases and differentials."""

    def __init__(self, algebra: Algebra, cap: Optional[int] = None, max_degree: Optional[int] = None):
        settings = get_config()
        self.algebra = algebra
        self.dual = dual_bimodule(algebra)
        self.cap = settings.EXT_CAP if cap is None else cap
        self.max_degree = settings.EXT_MAX_DEGREE if max_degree is None else max_degree
        self.normalized = algebra.peirce is not None
        self.elements = algebra.non_idempotent_basis() if self.normalized else list(range(algebra.dim))
        self.factorizations = _factorizations(algebra, restricted=self.normalized)
        one = algebra.field.one
        # f -> [(f', a, λ)] with λ the coefficient of D(f) in D(f')·b_a
        self.dual_factorizations: dict[int, list] = {}
        for a in self.elements:
            for f_prime, column in enumerate(self.dual.right[a].columns):
                for f, value in column.items():
                    self.dual_factorizations.setdefault(f, []).append((f_prime, a, value))
        self._bases: dict[int, list] = {}
        self._indices: dict[int, dict] = {}
        self._differentials: dict[int, list] = {}
        self._one = one

    # -------------------- Bases -------------------- #

    def _right_tag(self, key: tuple) -> int:
        if len(key) == 1:
            return self.dual.peirce[key[0]][1]
        return self.algebra.peirce[key[-1]][1]

    def _keys(self, m: int) -> list[tuple]:
        algebra = self.algebra
        level = [(f,) for f in range(algebra.dim)]
        for _ in range(m):
            if self.normalized:
                level = [key + (a,) for key in level for a in self.elements
                         if self._right_tag(key) == algebra.peirce[a][0]]
            else:
                level = [key + (a,) for key in level for a in self.elements]
        return level

    def basis(self, m: int) -> list[tuple[tuple, int]]:
        if m not in self._bases:
            if m > self.max_degree + 1:
                raise CapExceededError(f"Ext complex degree {m}", m, self.max_degree + 1,
                                       "lower the degree or raise HOCHPROJ_EXT_MAX_DEGREE")
            algebra = self.algebra
            basis = []
            for key in self._keys(m):
                if self.normalized:
                    t = self._right_tag(key)
                    outs = [c for c in range(algebra.dim) if algebra.peirce[c][1] == t]
                else:
                    outs = range(algebra.dim)
                basis.extend((key, c) for c in outs)
                if len(basis) > self.cap:
                    raise CapExceededError(f"Ext complex degree {m}", len(basis), self.cap,
                                           "use a smaller degree")
            self._bases[m] = basis
            self._indices[m] = {item: i for i, item in enumerate(basis)}
        return self._bases[m]

    def index(self, m: int) -> dict:
        self.basis(m)
        return self._indices[m]

    def dimension(self, m: int) -> int:
        return len(self.basis(m))

    def tag(self, key: tuple, out: int) -> tuple[int, int]:
        """(s, t) with e_s·θ·e_t = θ for the basis cochain at (key, out)."""
        return self.algebra.peirce[out][0], self.dual.peirce[key[0]][0]

    # -------------------- Vectors and values -------------------- #

    def vector_of(self, m: int, values: Mapping[tuple, Mapping]) -> dict:
        index = self.index(m)
        out = {}
        for key, vector in values.items():
            for c, value in vector.items():
                if not value:
                    continue
                position = index.get((key, c))
                if position is None:
                    raise AxiomError(f"Cochain value at {key} leaves the normalized Ext complex")
                out[position] = value
        return out

    def values_of(self, m: int, vector: Mapping) -> dict:
        basis = self.basis(m)
        values: dict = {}
        for i, value in vector.items():
            key, c = basis[i]
            values.setdefault(key, {})[c] = value
        return values

    # -------------------- Differential -------------------- #

    def _terms(self, key: tuple, vector: Mapping) -> Iterable[tuple]:
        """Yield (key, C-vector, coefficient) summands of ∂ applied to θ = E_key·vector."""
        algebra, one = self.algebra, self._one
        f, tail = key[0], key[1:]
        m = len(tail)
        for f_prime, a, value in self.dual_factorizations.get(f, ()):
            yield (f_prime, a) + tail, vector, value
        for j in range(1, m + 1):
            sign = one if j % 2 == 0 else -one
            for x, y, value in self.factorizations.get(tail[j - 1], ()):
                yield (f,) + tail[:j - 1] + (x, y) + tail[j:], vector, sign * value
        last_sign = one if (m + 1) % 2 == 0 else -one
        for a in self.elements:
            image = algebra.multiply_vectors(vector, {a: one})
            if image:
                yield key + (a,), image, last_sign

    def boundary(self, values: Mapping[tuple, Mapping]) -> dict:
        out: dict = {}
        for key, vector in values.items():
            for new_key, image, coefficient in self._terms(key, vector):
                out[new_key] = add_into(out.get(new_key, {}), image, coefficient)
        return {k: v for k, v in out.items() if v}

    def differential_columns(self, m: int) -> list[dict]:
        if m not in self._differentials:
            columns = [self.vector_of(m + 1, self.boundary({key: {c: self._one}})) for key, c in self.basis(m)]
            self._differentials[m] = columns
            logger.debug(f"Ext differential degree {m}: {self.dimension(m + 1)} x {len(columns)}")
        return self._differentials[m]

    def differential(self, m: int):
        return matrix_from_columns(self.differential_columns(m), self.dimension(m + 1), self.algebra.field)

    # -------------------- Actions -------------------- #

    def act_left(self, c_vector: Mapping, values: Mapping[tuple, Mapping]) -> dict:
        """c·θ: multiply values on the left."""
        out = {}
        for key, vector in values.items():
            image = self.algebra.multiply_vectors(c_vector, vector)
            if image:
                out[key] = image
        return out

    def act_right(self, values: Mapping[tuple, Mapping], c_vector: Mapping) -> dict:
        """θ·c: (θ·c)(f ⊗ a) = θ(c·f ⊗ a)."""
        out: dict = {}
        for c, coefficient in c_vector.items():
            action = self.dual.left[c]
            for f, column in enumerate(action.columns):
                for f_prime, value in column.items():
                    for key, vector in values.items():
                        if key[0] == f_prime:
                            new_key = (f,) + key[1:]
                            out[new_key] = add_into(out.get(new_key, {}), vector, coefficient * value)
        return {k: v for k, v in out.items() if v}


@functools.lru_cache(maxsize=16)
def dc_complex(algebra: Algebra) -> DCComplex:
    return DCComplex(algebra)


def compose_dual(algebra: Algebra, f_vector: Mapping, zeta: Cochain) -> dict:
    """g∘ζ for g in DC: (g∘ζ)(b_i) = g(ζ(b_i))."""
    out: dict = {}
    for i in range(algebra.dim):
        value = zeta.evaluate((i,))
        total = algebra.field.zero
        for j, coefficient in value.items():
            entry = f_vector.get(j)
            if entry:
                total += entry * coefficient
        if total:
            out[i] = total
    return out


def verify_action_relations(algebra: Algebra, zeta: Cochain) -> CheckResult:
    """c·(f∘ζ) = (c·f)∘ζ + ζ(c)·f and (f∘ζ)·c = (f·c)∘ζ + f·ζ(c) on basis pairs."""
    _require_derivation(algebra, zeta, normalized=False)
    dual = dual_bimodule(algebra)
    one = algebra.field.one
    failures = 0
    for c in range(algebra.dim):
        zeta_c = zeta.evaluate((c,))
        for f in range(algebra.dim):
            composed = compose_dual(algebra, {f: one}, zeta)
            left = dual.act_left({c: one}, composed)
            expected = add_into(compose_dual(algebra, dual.left[c].columns[f], zeta), dual.act_left(zeta_c, {f: one}))
            right = dual.act_right(composed, {c: one})
            expected_right = add_into(compose_dual(algebra, dual.right[c].columns[f], zeta),
                                      dual.act_right({f: one}, zeta_c))
            if left != expected or right != expected_right:
                failures += 1
    return CheckResult("derivation action relations on DC", failures == 0, {"failures": failures})


def _require_derivation(algebra: Algebra, zeta: Cochain, normalized: bool) -> None:
    if zeta.algebra is not algebra or zeta.degree != 1 or zeta.module.dim != algebra.dim:
        raise NotADerivationError("ζ must be a degree-1 cochain of C with values in C")
    if not apply_differential(zeta).is_zero():
        raise NotADerivationError("ζ is not a derivation")
    if normalized and any(zeta.evaluate((e,)) for e in algebra.idempotents):
        raise NotADerivationError("ζ does not vanish on the idempotents")


# -------------------- E_m -------------------- #

class ExtBimodule:
    """E_m with cocycle representatives in the ambient complex and its C-C-bimodule structure."""

    def __init__(self, algebra: Algebra, m: int, complex_: Optional[DCComplex] = None):
        self.algebra = algebra
        self.m = m
        self.complex = complex_ or dc_complex(algebra)
        field = algebra.field
        ambient = self.complex.dimension(m)
        cocycles = kernel_basis(self.complex.differential(m))
        coboundaries = self.complex.differential_columns(m - 1) if m > 0 else []
        self._quotient = Subquotient(cocycles, coboundaries, ambient, field)
        self._cocycles = cocycles
        self._coboundaries = coboundaries
        self.representatives = self._quotient.representatives
        self.dim = self._quotient.dim
        self.module = self._build_module()
        logger.info(f"Ext^{m}(DC, C): dim {self.dim} (ambient {ambient})")

    def coordinates(self, vector: Mapping) -> list:
        """Class coordinates of an ambient cocycle vector."""
        try:
            return self._quotient.coordinates(vector)
        except NotInSpanError:
            raise NotACocycleError(f"Vector is not a cocycle of degree {self.m}") from None

    def values(self, k: int) -> dict:
        return self.complex.values_of(self.m, self.representatives[k])

    def _class_vector(self, values: Mapping) -> dict:
        coordinates = self.coordinates(self.complex.vector_of(self.m, values))
        return {k: v for k, v in enumerate(coordinates) if v}

    def _tag(self, representative: Mapping) -> Optional[tuple[int, int]]:
        if not self.complex.normalized:
            return None
        basis = self.complex.basis(self.m)
        tags = {self.complex.tag(*basis[i]) for i in representative}
        if len(tags) != 1:
            raise AxiomError("Ext representative is not Peirce-homogeneous")
        return tags.pop()

    def _build_module(self) -> Bimodule:
        algebra, complex_, one = self.algebra, self.complex, self.algebra.field.one
        left, right = [], []
        for c in range(algebra.dim):
            left_columns, right_columns = [], []
            for k in range(self.dim):
                values = self.values(k)
                left_columns.append(self._class_vector(complex_.act_left({c: one}, values)))
                right_columns.append(self._class_vector(complex_.act_right(values, {c: one})))
            left.append(LinearMap(algebra.field, self.dim, self.dim, left_columns))
            right.append(LinearMap(algebra.field, self.dim, self.dim, right_columns))
        peirce = None
        if complex_.normalized:
            peirce = [self._tag(r) for r in self.representatives]
        labels = [f"E{self.m}_{k}" for k in range(self.dim)]
        return Bimodule(algebra, self.dim, left, right, labels=labels, peirce=peirce)

    def certify_actions(self) -> CheckResult:
        """Basis actions send cocycles to cocycles and coboundaries to coboundaries."""
        algebra, complex_, one = self.algebra, self.complex, self.algebra.field.one
        failures = 0
        for c in range(algebra.dim):
            for vector in self._cocycles:
                values = complex_.values_of(self.m, vector)
                for image in (complex_.act_left({c: one}, values), complex_.act_right(values, {c: one})):
                    if complex_.boundary(image):
                        failures += 1
            for vector in self._coboundaries:
                values = complex_.values_of(self.m, vector)
                for image in (complex_.act_left({c: one}, values), complex_.act_right(values, {c: one})):
                    if not self._quotient.in_bottom(complex_.vector_of(self.m, image)):
                        failures += 1
        return CheckResult(f"Ext^{self.m} actions well defined", failures == 0, {"failures": failures})


@functools.lru_cache(maxsize=32)
def ext_dc_c(algebra: Algebra, m: int) -> ExtBimodule:
    return ExtBimodule(algebra, m)


# -------------------- α_m -------------------- #

def alpha_values(algebra: Algebra, zeta: Cochain, values: Mapping[tuple, Mapping]) -> dict:
    """α_m(θ)(f ⊗ a) = Σ_j θ(f ⊗ ... ζ(a_j) ...) - θ(f∘ζ ⊗ a) - ζ(θ(f ⊗ a))."""
    field = algebra.field
    # x -> [(y, λ)] with ζ(b_y) = ... + λ b_x
    preimages: dict[int, list] = {}
    for (y,), image in zeta.values.items():
        for x, value in image.items():
            preimages.setdefault(x, []).append((y, value))
    out: dict = {}
    for key, vector in values.items():
        f, tail = key[0], key[1:]
        for j, x in enumerate(tail):
            for y, value in preimages.get(x, ()):
                new_key = (f,) + tail[:j] + (y,) + tail[j + 1:]
                out[new_key] = add_into(out.get(new_key, {}), vector, value)
        for f_prime, value in zeta.evaluate((f,)).items():
            new_key = (f_prime,) + tail
            out[new_key] = add_into(out.get(new_key, {}), vector, -value)
        image: dict = {}
        for c, coefficient in vector.items():
            add_into(image, zeta.evaluate((c,)), coefficient)
        out[key] = add_into(out.get(key, {}), image, -field.one)
    return {k: v for k, v in out.items() if v}


@dataclass
class AlphaOperator:
    """α_m for a derivation ζ on the ambient cochains and on E_m."""

    m: int
    zeta: Cochain
    ambient: LinearMap
    induced: LinearMap

    def is_zero(self) -> bool:
        return self.induced.is_zero()


def alpha(algebra: Algebra, m: int, zeta: Cochain) -> AlphaOperator:
    complex_ = dc_complex(algebra)
    _require_derivation(algebra, zeta, normalized=complex_.normalized)
    ext = ext_dc_c(algebra, m)
    one = algebra.field.one
    ambient_columns = [complex_.vector_of(m, alpha_values(algebra, zeta, {key: {c: one}}))
                       for key, c in complex_.basis(m)]
    dim = complex_.dimension(m)
    ambient = LinearMap(algebra.field, dim, dim, ambient_columns)
    induced_columns = []
    for representative in ext.representatives:
        image = ambient.apply(representative)
        induced_columns.append({k: v for k, v in enumerate(ext.coordinates(image)) if v})
    return AlphaOperator(m, zeta, ambient, LinearMap(algebra.field, ext.dim, ext.dim, induced_columns))


def verify_chain_map(algebra: Algebra, m: int, zeta: Cochain, trials: Optional[int] = None,
                     seed: Optional[int] = None) -> CheckResult:
    """∂(α_m θ) = α_{m+1}(∂θ) on a full basis when small, else on pseudorandom θ."""
    settings = get_config()
    trials = settings.RANDOM_TRIALS if trials is None else trials
    seed = settings.RANDOM_SEED if seed is None else seed
    complex_ = dc_complex(algebra)
    _require_derivation(algebra, zeta, normalized=complex_.normalized)
    dim = complex_.dimension(m)
    one = algebra.field.one
    if dim <= settings.CHAIN_MAP_FULL_BASIS_LIMIT:
        samples = [{key: {c: one}} for key, c in complex_.basis(m)]
        mode = "full basis"
    else:
        rng = random.Random(seed + m)
        samples = [complex_.values_of(m, random_vector(rng, dim, algebra.field, density=0.05))
                   for _ in range(trials)]
        mode = "random"
    failures = 0
    for theta in samples:
        left = complex_.boundary(alpha_values(algebra, zeta, theta))
        right = alpha_values(algebra, zeta, complex_.boundary(theta))
        if left != right:
            failures += 1
    return CheckResult(f"alpha chain map m={m}", failures == 0,
                       {"mode": mode, "samples": len(samples), "failures": failures})


def alpha_witness(ext: SplitExtensionData, operator: AlphaOperator) -> MixedCochain:
    """α_m on E_m as a degree-1 witness for the extension C ⋉ E_m."""
    d_c = ext.C.dim
    values = {(d_c + k,): column for k, column in enumerate(operator.induced.columns) if column}
    return MixedCochain(ext.C, ext.E, 1, values)


def verify_phi1_surjective_Em(algebra: Algebra, m: int) -> CheckResult:
    """φ¹ for C ⋉ E_m is onto, and α_m is a witness for every HH¹(C) generator."""
    ext_m = ext_dc_c(algebra, m)
    ext = trivial_extension(algebra, ext_m.module)
    phi1 = phi(ext, 1)
    witnesses = []
    for zeta in hh1_via_derivations(algebra, regular_bimodule(algebra)).representatives:
        operator = alpha(algebra, m, zeta)
        witnesses.append(check_c_conditions(ext, 1, zeta, alpha_witness(ext, operator)).passed)
    return CheckResult(f"phi1 onto for C x E_{m}", phi1.surjective and all(witnesses),
                       {"dim E": ext_m.dim, "phi1_rank": phi1.rank, "HH1(C)": phi1.target.dim,
                        "witnesses": witnesses})
