"""Finite base spaces and their unordered configuration spaces.

A base space is a finite set of labeled points, each carrying a fibre
rank and a positive density weight.  A configuration is a finite subset
of the points, kept as a strictly increasing label tuple so that equal
subsets are equal values.  The combinatorial kernel of everything
downstream lives here: ordered 2- and 3-part splits of a configuration
and the (i,j)-shuffle permutations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import OverlappingConfigurations, UnknownPoint


@dataclass(frozen=True, order=True)
class Configuration:
    """A finite point set, stored as a strictly increasing label tuple."""

    members: tuple[str, ...] = ()

    def __post_init__(self):
        for a, b in zip(self.members, self.members[1:]):
            if not a < b:
                raise ValueError(
                    "configuration members must be strictly increasing, got %r"
                    % (self.members,)
                )

    @classmethod
    def of(cls, *labels: str) -> "Configuration":
        ordered = tuple(sorted(labels))
        if len(set(ordered)) != len(ordered):
            raise OverlappingConfigurations(
                "repeated point label in %r" % (labels,)
            )
        return cls(ordered)

    def union(self, other: "Configuration") -> "Configuration":
        """Disjoint union; the only way configurations combine."""
        if not self.is_disjoint(other):
            raise OverlappingConfigurations(
                "configurations %s and %s share a point" % (self, other)
            )
        return Configuration(tuple(sorted(self.members + other.members)))

    def is_disjoint(self, other: "Configuration") -> bool:
        return not set(self.members) & set(other.members)

    def without(self, label: str) -> "Configuration":
        return Configuration(tuple(m for m in self.members if m != label))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, label):
        return label in self.members

    def __str__(self):
        return "{%s}" % ",".join(self.members)


VACUUM = Configuration()


@dataclass(frozen=True)
class BaseSpace:
    """Finite model base: points with ranks and positive density weights."""

    points: tuple[str, ...]
    rank: dict[str, int]
    weight: dict[str, Fraction]

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise ValueError("duplicate point labels in base space")
        object.__setattr__(self, "points", tuple(sorted(self.points)))
        for x in self.points:
            if self.rank.get(x, 0) < 1:
                raise ValueError("rank at %r must be a positive integer" % x)
            w = self.weight.get(x)
            if w is None or w <= 0:
                raise ValueError("weight at %r must be a positive rational" % x)
        if set(self.rank) != set(self.points) or set(self.weight) != set(self.points):
            raise ValueError("rank/weight tables must cover exactly the points")

    @classmethod
    def of(cls, specs) -> "BaseSpace":
        """Build from an iterable of (label, rank, weight) triples."""
        labels, ranks, weights = [], {}, {}
        for label, rank, weight in specs:
            labels.append(label)
            ranks[label] = int(rank)
            weights[label] = Fraction(weight)
        return cls(tuple(labels), ranks, weights)

    def rank_of(self, label: str) -> int:
        self._require(label)
        return self.rank[label]

    def weight_of(self, label: str) -> Fraction:
        self._require(label)
        return self.weight[label]

    def _require(self, label: str):
        if label not in self.rank:
            raise UnknownPoint("point %r is not in the base space" % label)

    def configuration(self, labels) -> Configuration:
        cfg = Configuration.of(*labels)
        for x in cfg:
            self._require(x)
        return cfg

    def configurations(self, size: int):
        """All configurations with exactly ``size`` points, lexicographic."""
        for chosen in combinations(self.points, size):
            yield Configuration(chosen)

    def all_configurations(self, max_size=None):
        top = len(self.points) if max_size is None else min(max_size, len(self.points))
        for k in range(top + 1):
            yield from self.configurations(k)


def splits2(x: Configuration) -> list[tuple[Configuration, Configuration]]:
    """All 2^|x| ordered splits (x1, x2) with disjoint union x.

    Ordered by the characteristic bitmask of the first part, ascending,
    with bit b standing for the b-th smallest member.
    """
    members = x.members
    k = len(members)
    out = []
    for mask in range(1 << k):
        first = tuple(members[b] for b in range(k) if mask >> b & 1)
        second = tuple(members[b] for b in range(k) if not mask >> b & 1)
        out.append((Configuration(first), Configuration(second)))
    return out


def splits3(x: Configuration) -> list[tuple[Configuration, Configuration, Configuration]]:
    """All 3^|x| ordered triples with disjoint union x (ternary-mask order)."""
    members = x.members
    k = len(members)
    out = []
    for mask in range(3 ** k):
        parts: tuple[list[str], list[str], list[str]] = ([], [], [])
        m = mask
        for b in range(k):
            parts[m % 3].append(members[b])
            m //= 3
        out.append(tuple(Configuration(tuple(p)) for p in parts))
    return out


def shuffles(i: int, j: int) -> list[tuple[int, ...]]:
    """The (i,j)-shuffles of {1..i+j} as image words, lexicographic.

    A shuffle is returned as the tuple (s(1), ..., s(i+j)); it is
    increasing on the first i slots and on the last j slots.  There are
    exactly C(i+j, i) of them.
    """
    if i < 0 or j < 0:
        raise ValueError("shuffle arities must be nonnegative")
    full = range(1, i + j + 1)
    words = []
    for head in combinations(full, i):
        tail = tuple(v for v in full if v not in head)
        words.append(head + tail)
    assert len(words) == comb(i + j, i)
    return words
