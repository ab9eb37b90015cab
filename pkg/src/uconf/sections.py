"""Finitely supported sections of the bundle and their convolution algebra.

A section assigns a fibre element to finitely many configurations, all
within a size bound ``max_points`` (the finite stand-in for summing
over configurations of every size).  Convolution multiplies values over
all disjoint splits of the target configuration; the bracket does the
same with the fibre bracket.  Results whose configurations outgrow the
bound are not silently lost: they come back on the ``dropped`` field of
the result, which never takes part in equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .configspace import Configuration
from .fibre_algebra import FibreElement, cauchy_mul, unit_hadamard, zero
from .poisson import Kernel, bracket_fibre

VACUUM = Configuration()


@dataclass(frozen=True)
class Section:
    support: tuple[tuple[Configuration, FibreElement], ...] = ()
    max_points: int = 0
    dropped: tuple[tuple[Configuration, FibreElement], ...] = field(
        default=(), compare=False
    )

    def value_at(self, config: Configuration) -> FibreElement:
        for cfg, val in self.support:
            if cfg == config:
                return val
        return zero(config)

    def support_configs(self) -> tuple[Configuration, ...]:
        return tuple(cfg for cfg, _ in self.support)

    def is_zero(self) -> bool:
        return not self.support

    def __add__(self, other: "Section") -> "Section":
        if not isinstance(other, Section):
            return NotImplemented
        acc = {cfg: val for cfg, val in self.support}
        for cfg, val in other.support:
            acc[cfg] = acc[cfg] + val if cfg in acc else val
        return section(acc, max(self.max_points, other.max_points))

    def __neg__(self) -> "Section":
        return Section(
            tuple((cfg, -val) for cfg, val in self.support), self.max_points
        )

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return section(
            {cfg: scalar * val for cfg, val in self.support}, self.max_points
        )


def section(values, max_points: int) -> Section:
    """Normalize a configuration -> element mapping; zero values vanish."""
    acc = []
    for cfg, val in dict(values).items():
        if val.config != cfg:
            raise ValueError(
                "section value over %s stored at %s" % (val.config, cfg)
            )
        if len(cfg) > max_points:
            raise ValueError(
                "configuration %s exceeds the %d-point bound" % (cfg, max_points)
            )
        if not val.is_zero():
            acc.append((cfg, val))
    return Section(tuple(sorted(acc, key=lambda pair: pair[0])), max_points)


def unit_section(max_points: int = 0) -> Section:
    """Convolution unit: the Hadamard unit at the vacuum, nothing else."""
    return section({VACUUM: unit_hadamard(VACUUM)}, max_points)


def _combine(s1: Section, s2: Section, combine_fibre) -> Section:
    bound = max(s1.max_points, s2.max_points)
    acc: dict[Configuration, FibreElement] = {}
    for cfg1, val1 in s1.support:
        for cfg2, val2 in s2.support:
            if not cfg1.is_disjoint(cfg2):
                continue
            out = combine_fibre(val1, val2)
            cfg = out.config
            acc[cfg] = acc[cfg] + out if cfg in acc else out
    kept: dict[Configuration, FibreElement] = {}
    dropped = []
    for cfg in sorted(acc):
        val = acc[cfg]
        if val.is_zero():
            continue
        if len(cfg) > bound:
            dropped.append((cfg, val))
        else:
            kept[cfg] = val
    base = section(kept, bound)
    return Section(base.support, bound, tuple(dropped))


def convolve(s1: Section, s2: Section) -> Section:
    """(s1 * s2)(X) = sum of cauchy products over ordered splits of X."""
    return _combine(s1, s2, cauchy_mul)


def section_bracket(s1: Section, s2: Section, kernel: Kernel) -> Section:
    """Split-sum of fibre brackets; same support discipline as convolve."""
    return _combine(s1, s2, lambda a, b: bracket_fibre(a, b, kernel))


def truncate(s: Section, bound: int) -> Section:
    """Forget configurations beyond ``bound`` points (reported, not lost)."""
    kept = []
    dropped = []
    for cfg, val in s.support:
        (kept if len(cfg) <= bound else dropped).append((cfg, val))
    return Section(tuple(kept), min(s.max_points, bound), tuple(dropped))


def jacobiator(s1: Section, s2: Section, s3: Section, kernel: Kernel) -> Section:
    """Cyclic sum of nested brackets; the zero section, exactly."""
    return (
        section_bracket(s1, section_bracket(s2, s3, kernel), kernel)
        + section_bracket(s2, section_bracket(s3, s1, kernel), kernel)
        + section_bracket(s3, section_bracket(s1, s2, kernel), kernel)
    )
