"""Kernel-generated Poisson structure on the fibre algebra.

A kernel assigns an exact rational to every pair of generators at two
*distinct* points, antisymmetrically.  Storage is strictly upper
triangular in the point order; the sign appears on read, so the two
orientations cannot drift apart.  The bracket it generates is zero on
units, the kernel value times a unit on generators, and extends as a
biderivation in both products.

Two implementations are kept deliberately: ``bracket_fibre`` is the
closed one-shot biderivation sum, ``bracket_fibre_recursive`` peels
factors with the four Leibniz rules one at a time.  They must agree on
everything; tests enforce that.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .configspace import Configuration
from .errors import SamePoint
from .fibre_algebra import (
    CauchyMonomial,
    FibreElement,
    PointFactor,
    cauchy_mul,
    element,
    hadamard_mul,
    unit_hadamard,
    zero,
)

Generator = tuple[str, int]


@dataclass(frozen=True)
class Kernel:
    """Antisymmetric pairing of generators at distinct points."""

    entries: tuple[tuple[Generator, Generator, Fraction], ...] = ()

    @classmethod
    def of(cls, items) -> "Kernel":
        """Normalize entries to the upper-triangular orientation.

        Accepts a mapping {((x,i),(y,j)): value} or an iterable of
        ((x,i),(y,j),value) triples, in either orientation.
        """
        if isinstance(items, dict):
            items = [(u, v, val) for (u, v), val in items.items()]
        table: dict[tuple[Generator, Generator], Fraction] = {}
        for u, v, val in items:
            u = (u[0], int(u[1]))
            v = (v[0], int(v[1]))
            c = Fraction(val)
            if u[0] == v[0]:
                raise SamePoint(
                    "kernel entry pairs point %r with itself" % (u[0],)
                )
            if v[0] < u[0]:
                u, v, c = v, u, -c
            if (u, v) in table:
                raise ValueError("duplicate kernel entry for %r, %r" % (u, v))
            table[(u, v)] = c
        ordered = tuple(
            (u, v, c) for (u, v), c in sorted(table.items()) if c != 0
        )
        return cls(ordered)

    def eval(self, u: Generator, v: Generator) -> Fraction:
        if u[0] == v[0]:
            raise SamePoint("kernel is only defined at distinct points")
        flip = v[0] < u[0]
        if flip:
            u, v = v, u
        for eu, ev, c in self.entries:
            if eu == u and ev == v:
                return -c if flip else c
        return Fraction(0)


def kernel_eval(kernel: Kernel, u: Generator, v: Generator) -> Fraction:
    return kernel.eval(u, v)


def _mono_element(mono: CauchyMonomial) -> FibreElement:
    return FibreElement(mono.config, ((mono, Fraction(1)),))


def bracket_fibre(a: FibreElement, b: FibreElement, kernel: Kernel) -> FibreElement:
    """Closed biderivation form of the bracket.

    For each pair of generators occurring in the two monomials, one
    power moves out of each side and the kernel value comes in; the
    remainder lands over the disjoint union of the two configurations.
    """
    target = a.config.union(b.config)
    acc: dict[CauchyMonomial, Fraction] = {}
    for ma, ca in a.terms:
        for mb, cb in b.terms:
            cab = ca * cb
            for fa in ma.factors:
                if not fa.exponents:
                    continue
                for fb in mb.factors:
                    if not fb.exponents:
                        continue
                    for i, mi in fa.exponents:
                        for j, nj in fb.exponents:
                            kv = kernel.eval((fa.point, i), (fb.point, j))
                            if kv == 0:
                                continue
                            da = ma.replace_factor(fa.bumped(i, -1))
                            db = mb.replace_factor(fb.bumped(j, -1))
                            merged = CauchyMonomial(
                                tuple(
                                    sorted(
                                        da.factors + db.factors,
                                        key=lambda f: f.point,
                                    )
                                )
                            )
                            c = cab * mi * nj * kv
                            acc[merged] = acc.get(merged, Fraction(0)) + c
    return element(target, acc)


def bracket_fibre_recursive(
    a: FibreElement, b: FibreElement, kernel: Kernel
) -> FibreElement:
    """Same bracket, evaluated by literal Leibniz peeling.

    Splits off one Cauchy factor (or one Hadamard power at a single
    point) at a time until both arguments are bare generators, where the
    kernel is read off.  Extended bilinearly over terms.
    """
    target = a.config.union(b.config)
    out = zero(target)
    for ma, ca in a.terms:
        for mb, cb in b.terms:
            out = out + (ca * cb) * _bracket_mono(ma, mb, kernel)
    return out


def _bracket_mono(ma: CauchyMonomial, mb: CauchyMonomial, kernel: Kernel) -> FibreElement:
    x_cfg, y_cfg = ma.config, mb.config
    target = x_cfg.union(y_cfg)
    if ma.degree == 0 or mb.degree == 0:
        return zero(target)

    if len(x_cfg) > 1:
        # {a1 # rest, b} = {a1, b} # rest + a1 # {rest, b}
        head = CauchyMonomial((ma.factors[0],))
        rest = CauchyMonomial(ma.factors[1:])
        return cauchy_mul(_bracket_mono(head, mb, kernel), _mono_element(rest)) + cauchy_mul(
            _mono_element(head), _bracket_mono(rest, mb, kernel)
        )
    if ma.degree > 1:
        # single point, several powers:
        # {g . rest, b} = {g, b} . (rest # 1_Y) + (g # 1_Y) . {rest, b}
        f = ma.factors[0]
        i = f.exponents[0][0]
        gen = CauchyMonomial((PointFactor(f.point, ((i, 1),)),))
        rest = CauchyMonomial((f.bumped(i, -1),))
        unit_y = unit_hadamard(y_cfg)
        return hadamard_mul(
            _bracket_mono(gen, mb, kernel),
            cauchy_mul(_mono_element(rest), unit_y),
        ) + hadamard_mul(
            cauchy_mul(_mono_element(gen), unit_y),
            _bracket_mono(rest, mb, kernel),
        )

    if len(y_cfg) > 1:
        # {a, b1 # rest} = {a, b1} # rest + b1 # {a, rest}
        head = CauchyMonomial((mb.factors[0],))
        rest = CauchyMonomial(mb.factors[1:])
        return cauchy_mul(_bracket_mono(ma, head, kernel), _mono_element(rest)) + cauchy_mul(
            _mono_element(head), _bracket_mono(ma, rest, kernel)
        )
    if mb.degree > 1:
        # {a, g . rest} = {a, g} . (1_X # rest) + (1_X # g) . {a, rest}
        f = mb.factors[0]
        j = f.exponents[0][0]
        gen = CauchyMonomial((PointFactor(f.point, ((j, 1),)),))
        rest = CauchyMonomial((f.bumped(j, -1),))
        unit_x = unit_hadamard(x_cfg)
        return hadamard_mul(
            _bracket_mono(ma, gen, kernel),
            cauchy_mul(unit_x, _mono_element(rest)),
        ) + hadamard_mul(
            cauchy_mul(unit_x, _mono_element(gen)),
            _bracket_mono(ma, rest, kernel),
        )

    u = (ma.factors[0].point, ma.factors[0].exponents[0][0])
    v = (mb.factors[0].point, mb.factors[0].exponents[0][0])
    return kernel.eval(u, v) * unit_hadamard(target)


def bracket_with_density(
    a: FibreElement,
    alpha,
    b: FibreElement,
    beta,
    kernel: Kernel,
) -> tuple[FibreElement, Fraction]:
    """Bracket on density-tensored elements: densities just multiply."""
    alpha = Fraction(alpha)
    beta = Fraction(beta)
    if alpha <= 0 or beta <= 0:
        raise ValueError("density values must be positive rationals")
    return bracket_fibre(a, b, kernel), alpha * beta
