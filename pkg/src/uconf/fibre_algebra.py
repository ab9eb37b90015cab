"""Fibres of the free 2-algebra bundle over a configuration space.

The fibre over a configuration X is spanned by monomials that assign to
every point of X a commutative exponent pattern over that point's basis
vectors.  Empty patterns are stored explicitly: the monomial remembers
all of X, so fibres over different configurations never collide even
when most factors are trivial.

Two products act on these elements:

* ``hadamard_mul`` multiplies two elements over the *same* configuration
  pointwise (exponents add at each point);
* ``cauchy_mul`` juxtaposes elements over *disjoint* configurations into
  an element over the union.

All coefficients are exact rationals; no floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .configspace import BaseSpace, Configuration
from .errors import BasisOutOfRange, ConfigMismatch, OverlappingConfigurations

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True, order=True)
class PointFactor:
    """Commutative exponent pattern at one point: sorted (index, mult) pairs."""

    point: str
    exponents: tuple[tuple[int, int], ...] = ()

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.exponents)

    def multiplicity(self, index: int) -> int:
        for i, m in self.exponents:
            if i == index:
                return m
        return 0

    def bumped(self, index: int, delta: int) -> "PointFactor":
        """Adjust one exponent by delta, dropping it when it reaches zero."""
        table = dict(self.exponents)
        new = table.get(index, 0) + delta
        if new < 0:
            raise ValueError("exponent would become negative")
        if new == 0:
            table.pop(index, None)
        else:
            table[index] = new
        return PointFactor(self.point, tuple(sorted(table.items())))


def point_factor(point: str, exponents=()) -> PointFactor:
    """Build a factor from any iterable/mapping of index -> multiplicity."""
    table = dict(exponents)
    cleaned = tuple(sorted((int(i), int(m)) for i, m in table.items() if m))
    if any(i < 0 or m < 0 for i, m in cleaned):
        raise ValueError("exponents need nonnegative index and multiplicity")
    return PointFactor(point, cleaned)


@dataclass(frozen=True, order=True)
class CauchyMonomial:
    """One factor per configuration point, kept sorted by point label."""

    factors: tuple[PointFactor, ...]

    @property
    def config(self) -> Configuration:
        return Configuration(tuple(f.point for f in self.factors))

    @property
    def degree(self) -> int:
        return sum(f.degree for f in self.factors)

    def factor_at(self, point: str) -> PointFactor:
        for f in self.factors:
            if f.point == point:
                return f
        raise KeyError(point)

    def replace_factor(self, new: PointFactor) -> "CauchyMonomial":
        return CauchyMonomial(
            tuple(new if f.point == new.point else f for f in self.factors)
        )


def monomial(factors) -> CauchyMonomial:
    ordered = tuple(sorted(factors, key=lambda f: f.point))
    points = [f.point for f in ordered]
    if len(set(points)) != len(points):
        raise OverlappingConfigurations("monomial with two factors at one point")
    return CauchyMonomial(ordered)


def unit_monomial(config: Configuration) -> CauchyMonomial:
    return CauchyMonomial(tuple(PointFactor(x) for x in config))


@dataclass(frozen=True)
class FibreElement:
    """Exact linear combination of monomials over one fixed configuration.

    The zero element keeps its configuration tag, so 0 over {p} and 0
    over {q} stay distinct values.
    """

    config: Configuration
    terms: tuple[tuple[CauchyMonomial, Scalar], ...] = ()

    def term_map(self) -> dict[CauchyMonomial, Scalar]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "FibreElement") -> "FibreElement":
        if not isinstance(other, FibreElement):
            return NotImplemented
        if self.config != other.config:
            raise ConfigMismatch(
                "cannot add elements over %s and %s" % (self.config, other.config)
            )
        acc = dict(self.terms)
        for mono, c in other.terms:
            acc[mono] = acc.get(mono, ZERO) + c
        return element(self.config, acc)

    def __neg__(self):
        return FibreElement(self.config, tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, scalar) -> "FibreElement":
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        c = Fraction(scalar)
        if c == 0:
            return zero(self.config)
        return FibreElement(self.config, tuple((m, c * k) for m, k in self.terms))

    def __mul__(self, scalar):
        return self.__rmul__(scalar)


def element(config: Configuration, terms) -> FibreElement:
    """Normalize a monomial -> coefficient mapping into a FibreElement."""
    acc: dict[CauchyMonomial, Scalar] = {}
    for mono, coeff in dict(terms).items():
        c = Fraction(coeff)
        if c == 0:
            continue
        if mono.config != config:
            raise ConfigMismatch(
                "monomial over %s in element over %s" % (mono.config, config)
            )
        acc[mono] = acc.get(mono, ZERO) + c
    ordered = tuple(sorted(((m, c) for m, c in acc.items() if c != 0)))
    return FibreElement(config, ordered)


def zero(config: Configuration) -> FibreElement:
    return FibreElement(config, ())


def unit_hadamard(config: Configuration) -> FibreElement:
    """The fibrewise unit 1_X; over the empty configuration it is also
    the unit for the Cauchy product."""
    return FibreElement(config, ((unit_monomial(config), ONE),))


def embed_generator(base: BaseSpace, point: str, index: int) -> FibreElement:
    """Degree-one generator e[point, index] as an element over {point}."""
    rank = base.rank_of(point)
    if not 0 <= index < rank:
        raise BasisOutOfRange(
            "basis index %d out of range for rank %d at %r" % (index, rank, point)
        )
    mono = CauchyMonomial((PointFactor(point, ((index, 1),)),))
    return FibreElement(Configuration((point,)), ((mono, ONE),))


def hadamard_mul(a: FibreElement, b: FibreElement) -> FibreElement:
    """Fibrewise product over one configuration: exponents add pointwise."""
    if a.config != b.config:
        raise ConfigMismatch(
            "hadamard product needs equal configurations, got %s and %s"
            % (a.config, b.config)
        )
    acc: dict[CauchyMonomial, Scalar] = {}
    for ma, ca in a.terms:
        for mb, cb in b.terms:
            merged = CauchyMonomial(
                tuple(
                    _merge_factors(fa, fb)
                    for fa, fb in zip(ma.factors, mb.factors)
                )
            )
            acc[merged] = acc.get(merged, ZERO) + ca * cb
    return element(a.config, acc)


def _merge_factors(fa: PointFactor, fb: PointFactor) -> PointFactor:
    if not fb.exponents:
        return fa
    if not fa.exponents:
        return fb
    table = dict(fa.exponents)
    for i, m in fb.exponents:
        table[i] = table.get(i, 0) + m
    return PointFactor(fa.point, tuple(sorted(table.items())))


def cauchy_mul(a: FibreElement, b: FibreElement) -> FibreElement:
    """Juxtaposition over disjoint configurations; lands over the union."""
    target = a.config.union(b.config)
    acc: dict[CauchyMonomial, Scalar] = {}
    for ma, ca in a.terms:
        for mb, cb in b.terms:
            merged = CauchyMonomial(
                tuple(sorted(ma.factors + mb.factors, key=lambda f: f.point))
            )
            acc[merged] = acc.get(merged, ZERO) + ca * cb
    return element(target, acc)


def scale(c, a: FibreElement) -> FibreElement:
    return a.__rmul__(c)


def degrees(a: FibreElement) -> tuple[Configuration, tuple[int, ...]]:
    """Configuration plus the sorted multiset of term degrees."""
    return a.config, tuple(sorted(m.degree for m, _ in a.terms))


def enumerate_monomials(base: BaseSpace, config: Configuration, max_degree: int):
    """All monomials over ``config`` with per-point degree <= max_degree."""
    out = [()]
    for x in config:
        rank = base.rank_of(x)
        per_point = list(_exponent_patterns(rank, max_degree))
        out = [prefix + (point_factor(x, pat),) for prefix in out for pat in per_point]
    return [CauchyMonomial(factors) for factors in out]


def _exponent_patterns(rank: int, max_degree: int, start: int = 0):
    yield {}
    if max_degree == 0:
        return
    for i in range(start, rank):
        for rest in _exponent_patterns(rank, max_degree - 1, i):
            pat = dict(rest)
            pat[i] = pat.get(i, 0) + 1
            yield pat


def count_monomials(base: BaseSpace, config: Configuration, max_degree: int) -> int:
    """Closed form for ``enumerate_monomials``: one C(rank+d, d) per point."""
    n = 1
    for x in config:
        n *= comb(base.rank_of(x) + max_degree, max_degree)
    return n
