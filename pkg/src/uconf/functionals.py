"""Discrete fields, polynomial functionals, and the functional bracket.

A field assigns a rational vector (one entry per basis index) to each
point.  A section becomes a polynomial functional of the field by
reading each monomial as a product of field variables phi[x, i] and
weighting every configuration by the product of its points' density
weights.  On functionals the bracket is the double-derivative sum

    {F, G} = sum over x != y of k((x,i),(y,j)) dF/dphi_i(x) dG/dphi_j(y)

which reproduces the symbolic section bracket whenever the two sections
live on configurations of genuinely distinct points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .configspace import BaseSpace
from .errors import UnknownPoint
from .poisson import Kernel
from .sections import Section, section, section_bracket

Var = tuple[str, int]
PolyMono = tuple[tuple[Var, int], ...]


@dataclass(frozen=True)
class Field:
    """Rational field values: one vector per point, exact entries."""

    values: tuple[tuple[str, tuple[Fraction, ...]], ...] = ()

    @classmethod
    def of(cls, mapping) -> "Field":
        rows = []
        for point, vec in dict(mapping).items():
            rows.append((point, tuple(Fraction(v) for v in vec)))
        return cls(tuple(sorted(rows)))

    def at(self, point: str, index: int) -> Fraction:
        for p, vec in self.values:
            if p == point:
                if not 0 <= index < len(vec):
                    raise UnknownPoint(
                        "field at %r has no component %d" % (point, index)
                    )
                return vec[index]
        raise UnknownPoint("field undefined at %r" % point)


@dataclass(frozen=True)
class PolyFunctional:
    """Sparse exact polynomial in the variables phi[point, index]."""

    terms: tuple[tuple[PolyMono, Fraction], ...] = ()

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, PolyFunctional):
            return NotImplemented
        acc = dict(self.terms)
        for mono, c in other.terms:
            acc[mono] = acc.get(mono, Fraction(0)) + c
        return polynomial(acc)

    def __neg__(self):
        return PolyFunctional(tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__rmul__(other)
        if not isinstance(other, PolyFunctional):
            return NotImplemented
        acc: dict[PolyMono, Fraction] = {}
        for ma, ca in self.terms:
            for mb, cb in other.terms:
                table = dict(ma)
                for var, m in mb:
                    table[var] = table.get(var, 0) + m
                mono = tuple(sorted(table.items()))
                acc[mono] = acc.get(mono, Fraction(0)) + ca * cb
        return polynomial(acc)

    def __rmul__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        c = Fraction(scalar)
        if c == 0:
            return PolyFunctional()
        return PolyFunctional(tuple((m, c * k) for m, k in self.terms))

    def partial(self, var: Var) -> "PolyFunctional":
        acc: dict[PolyMono, Fraction] = {}
        for mono, c in self.terms:
            table = dict(mono)
            m = table.get(var, 0)
            if not m:
                continue
            if m == 1:
                table.pop(var)
            else:
                table[var] = m - 1
            key = tuple(sorted(table.items()))
            acc[key] = acc.get(key, Fraction(0)) + c * m
        return polynomial(acc)

    def variables(self) -> tuple[Var, ...]:
        seen = set()
        for mono, _ in self.terms:
            for var, _ in mono:
                seen.add(var)
        return tuple(sorted(seen))


def polynomial(terms) -> PolyFunctional:
    acc = {}
    for mono, coeff in dict(terms).items():
        c = Fraction(coeff)
        if c:
            acc[mono] = acc.get(mono, Fraction(0)) + c
    return PolyFunctional(tuple(sorted((m, c) for m, c in acc.items() if c)))


def constant(c) -> PolyFunctional:
    return polynomial({(): Fraction(c)})


def variable(var: Var) -> PolyFunctional:
    return polynomial({((var, 1),): Fraction(1)})


def evaluate(f: PolyFunctional, phi: Field) -> Fraction:
    total = Fraction(0)
    for mono, c in f.terms:
        prod = c
        for (point, index), m in mono:
            prod *= phi.at(point, index) ** m
        total += prod
    return total


def to_functional(s: Section, base: BaseSpace) -> PolyFunctional:
    """Weight each configuration by its density product and read
    monomials as products of field variables."""
    acc: dict[PolyMono, Fraction] = {}
    for cfg, elem in s.support:
        w = Fraction(1)
        for x in cfg:
            w *= base.weight_of(x)
        for mono, coeff in elem.terms:
            key = tuple(
                ((f.point, i), m) for f in mono.factors for i, m in f.exponents
            )
            key = tuple(sorted(key))
            acc[key] = acc.get(key, Fraction(0)) + w * coeff
    return polynomial(acc)


def peierls_bracket(
    f: PolyFunctional, g: PolyFunctional, kernel: Kernel, base: BaseSpace
) -> PolyFunctional:
    """Double-derivative pairing of two functionals through the kernel."""
    out = PolyFunctional()
    for x in base.points:
        for y in base.points:
            if x == y:
                continue
            for i in range(base.rank_of(x)):
                df = f.partial((x, i))
                if df.is_zero():
                    continue
                for j in range(base.rank_of(y)):
                    kv = kernel.eval((x, i), (y, j))
                    if kv == 0:
                        continue
                    dg = g.partial((y, j))
                    if dg.is_zero():
                        continue
                    out = out + kv * (df * dg)
    return out


def oracle_check(s: Section, t: Section, kernel: Kernel, base: BaseSpace) -> bool:
    """Do the symbolic and the functional bracket pipelines agree exactly?

    Guaranteed whenever the supports of s and t are point-disjoint (the
    discrete reading of configurations of distinct points).  When they
    overlap, the functional side keeps cross-terms at coincident points
    that the disjoint split-sum excludes, and this literal comparison
    can legitimately return False; ``pairwise_functional_bracket`` is
    the configuration-aware refinement.
    """
    lhs = to_functional(section_bracket(s, t, kernel), base)
    rhs = peierls_bracket(
        to_functional(s, base), to_functional(t, base), kernel, base
    )
    return lhs == rhs


def pairwise_functional_bracket(
    s: Section, t: Section, kernel: Kernel, base: BaseSpace
) -> PolyFunctional:
    """Functional bracket restricted to disjoint support pairs.

    Applies the double-derivative pairing to one pair of localized
    functionals at a time, skipping pairs whose configurations share a
    point; agrees with ``to_functional`` of the section bracket on every
    input.
    """
    out = PolyFunctional()
    for cfg_s, val_s in s.support:
        fs = to_functional(section({cfg_s: val_s}, len(cfg_s)), base)
        for cfg_t, val_t in t.support:
            if not cfg_s.is_disjoint(cfg_t):
                continue
            ft = to_functional(section({cfg_t: val_t}, len(cfg_t)), base)
            out = out + peierls_bracket(fs, ft, kernel, base)
    return out


def shift_coefficients(f: PolyFunctional, var: Var, phi: Field) -> list[Fraction]:
    """Exact coefficients of F(phi + h*delta_var) as a polynomial in h.

    Expanded with binomials, independently of ``partial``: the h^1
    coefficient is the derivative at phi by Taylor's theorem, which the
    tests hold against the symbolic derivative.
    """
    coeffs = [Fraction(0)]
    for mono, c in f.terms:
        prod = c
        power = 0
        for (point, index), m in mono:
            if (point, index) == var:
                power = m
            else:
                prod *= phi.at(point, index) ** m
        v = phi.at(*var) if power else None
        local = (
            [prod]
            if not power
            else [prod * comb(power, n) * v ** (power - n) for n in range(power + 1)]
        )
        while len(coeffs) < len(local):
            coeffs.append(Fraction(0))
        for n, cn in enumerate(local):
            coeffs[n] += cn
    return coeffs


def render_poly(f: PolyFunctional) -> str:
    """Human-readable canonical text for report output."""
    if not f.terms:
        return "0"
    parts = []
    for mono, c in f.terms:
        factors = [
            "phi[%s,%d]%s" % (point, index, "" if m == 1 else "^%d" % m)
            for (point, index), m in mono
        ]
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append("%s*%s" % (c, "*".join(factors)))
    return " + ".join(parts)
