"""Ordered tensor words over configurations and their coproducts.

Words in the Cauchy tensor algebra visit each point of their
configuration exactly once, in some order; the free symmetric algebra
quotient is realized by ``symmetrize`` (into the commutative fibre
monomials) and ``alternate`` (sign of the point-sorting permutation).

Two deconcatenation coproducts live here.  The Cauchy one splits a word
along ordered splits of its configuration, inheriting letter order; the
Hadamard one cuts a same-configuration word into prefix and suffix.
They never mix: the two algebras have different letter disciplines, so
the Hadamard side works on plain tuples of opaque letters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial
from typing import NamedTuple

from .configspace import BaseSpace, Configuration, splits2
from .errors import ConfigMismatch, OverlappingConfigurations
from .fibre_algebra import (
    CauchyMonomial,
    FibreElement,
    PointFactor,
    Scalar,
    element,
)

ONE = Fraction(1)


class Letter(NamedTuple):
    point: str
    basis: int


@dataclass(frozen=True, order=True)
class Word:
    """A sequence of letters at pairwise distinct points."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        points = [l.point for l in self.letters]
        if len(set(points)) != len(points):
            raise OverlappingConfigurations("word visits a point twice")

    @property
    def config(self) -> Configuration:
        return Configuration(tuple(sorted(l.point for l in self.letters)))

    def __len__(self):
        return len(self.letters)


def word(*pairs) -> Word:
    return Word(tuple(Letter(p, int(i)) for p, i in pairs))


@dataclass(frozen=True)
class TensorElement:
    """Linear combination of words sharing one configuration."""

    config: Configuration
    terms: tuple[tuple[Word, Scalar], ...] = ()

    def term_map(self):
        return dict(self.terms)

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        if self.config != other.config:
            raise ConfigMismatch("adding tensor elements over unequal configurations")
        acc = dict(self.terms)
        for w, c in other.terms:
            acc[w] = acc.get(w, Fraction(0)) + c
        return tensor_element(self.config, acc)

    def __neg__(self):
        return TensorElement(self.config, tuple((w, -c) for w, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        c = Fraction(scalar)
        if c == 0:
            return TensorElement(self.config, ())
        return TensorElement(self.config, tuple((w, c * k) for w, k in self.terms))


def tensor_element(config: Configuration, terms) -> TensorElement:
    acc = {}
    for w, coeff in dict(terms).items():
        c = Fraction(coeff)
        if c == 0:
            continue
        if w.config != config:
            raise ConfigMismatch(
                "word over %s in element over %s" % (w.config, config)
            )
        acc[w] = acc.get(w, Fraction(0)) + c
    return TensorElement(config, tuple(sorted((w, c) for w, c in acc.items() if c)))


def concat(a: TensorElement, b: TensorElement) -> TensorElement:
    """Cauchy multiplication of words: juxtapose letter sequences."""
    target = a.config.union(b.config)
    acc = {}
    for wa, ca in a.terms:
        for wb, cb in b.terms:
            w = Word(wa.letters + wb.letters)
            acc[w] = acc.get(w, Fraction(0)) + ca * cb
    return tensor_element(target, acc)


def permute_slots(w: Word, images: tuple[int, ...]) -> Word:
    """Slot action: slot m of the result holds letter images[m]-1 of w.

    ``images`` is a permutation word of {1..len(w)} as produced by
    ``configspace.shuffles``.
    """
    return Word(tuple(w.letters[i - 1] for i in images))


def is_symmetric(a: TensorElement) -> bool:
    """True when every slot permutation fixes the element."""
    k = len(a.config)
    for perm in permutations(range(1, k + 1)):
        acc = {}
        for w, c in a.terms:
            pw = permute_slots(w, perm)
            acc[pw] = acc.get(pw, Fraction(0)) + c
        if tensor_element(a.config, acc) != a:
            return False
    return True


def symmetrize(a: TensorElement) -> FibreElement:
    """Project a word onto the commutative monomial with the same letters."""
    acc = {}
    for w, c in a.terms:
        mono = CauchyMonomial(
            tuple(
                PointFactor(l.point, ((l.basis, 1),))
                for l in sorted(w.letters)
            )
        )
        acc[mono] = acc.get(mono, Fraction(0)) + c
    return element(a.config, acc)


def alternate(a: TensorElement) -> TensorElement:
    """Send each word to sign(sorting permutation) times its point-sorted form."""
    acc = {}
    for w, c in a.terms:
        sorted_word = Word(tuple(sorted(w.letters)))
        sign = _sort_sign(w.letters)
        acc[sorted_word] = acc.get(sorted_word, Fraction(0)) + sign * c
    return tensor_element(a.config, acc)


def _sort_sign(letters) -> int:
    seq = list(letters)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[j] < seq[i]:
                sign = -sign
    return sign


@dataclass(frozen=True)
class SplitPairElement:
    """Linear combination of word pairs whose configurations union to one total."""

    total: Configuration
    terms: tuple[tuple[tuple[Word, Word], Scalar], ...] = ()

    def term_map(self):
        return dict(self.terms)


def split_pair_element(total: Configuration, terms) -> SplitPairElement:
    acc = {}
    for (w1, w2), coeff in dict(terms).items():
        c = Fraction(coeff)
        if c == 0:
            continue
        if w1.config.union(w2.config) != total:
            raise ConfigMismatch("pair does not split the stated configuration")
        acc[(w1, w2)] = acc.get((w1, w2), Fraction(0)) + c
    return SplitPairElement(total, tuple(sorted((k, c) for k, c in acc.items() if c)))


def word_cauchy_splits(w: Word) -> list[tuple[Word, Word]]:
    """Restrictions of one word to every ordered split of its configuration.

    Letter order is inherited from w on both sides.
    """
    out = []
    for left_cfg, _ in splits2(w.config):
        left = Word(tuple(l for l in w.letters if l.point in left_cfg))
        right = Word(tuple(l for l in w.letters if l.point not in left_cfg))
        out.append((left, right))
    return out


def deconcat_cauchy(a: TensorElement) -> SplitPairElement:
    """Sum of restrictions of each word over all ordered configuration splits."""
    acc = {}
    for w, c in a.terms:
        for pair in word_cauchy_splits(w):
            acc[pair] = acc.get(pair, Fraction(0)) + c
    return split_pair_element(a.config, acc)


def deconcat_hadamard(letters) -> dict[tuple[tuple, tuple], Fraction]:
    """Prefix/suffix cuts of one same-configuration tensor word.

    Letters are opaque; the word is any finite sequence.  All n+1 cuts
    appear with coefficient 1.
    """
    w = tuple(letters)
    out: dict[tuple[tuple, tuple], Fraction] = {}
    for i in range(len(w) + 1):
        key = (w[:i], w[i:])
        out[key] = out.get(key, Fraction(0)) + ONE
    return out


def shuffle_map(terms: dict) -> dict:
    """Re-pair ((a,b) over X', (c,d) over X'') into ((a,c),(b,d)).

    Input keys encode (a tensor b) boxtimes (c tensor d); output keys
    encode (a boxtimes c) tensor (b boxtimes d).  On basis terms this is
    an injective relabeling; it extends linearly.
    """
    out = {}
    for ((a, b), (c, d)), coeff in terms.items():
        if a.config != b.config or c.config != d.config:
            raise ConfigMismatch("shuffle input pairs must share configurations")
        if not a.config.is_disjoint(c.config):
            raise OverlappingConfigurations("shuffle halves must be disjoint")
        key = ((a, c), (b, d))
        out[key] = out.get(key, Fraction(0)) + coeff
    return out


def enumerate_words(base: BaseSpace, config: Configuration) -> list[Word]:
    """Basis words of the ordered tensor fibre: point orderings times
    basis choices."""
    out = []
    for order in permutations(config.members):
        ranges = [range(base.rank_of(x)) for x in order]
        for choice in product(*ranges):
            out.append(Word(tuple(Letter(x, i) for x, i in zip(order, choice))))
    return out


def dim_T_fibre(base: BaseSpace, config: Configuration) -> int:
    """Closed form k! * prod rank for the ordered tensor fibre."""
    n = factorial(len(config))
    for x in config:
        n *= base.rank_of(x)
    return n


def dim_TboxT_fibre(base: BaseSpace, config: Configuration) -> int:
    """Closed form (k+1) * k! * prod rank for one Cauchy square fibre."""
    return (len(config) + 1) * dim_T_fibre(base, config)


def count_words_enumerated(base: BaseSpace, config: Configuration) -> int:
    return len(enumerate_words(base, config))


def count_square_enumerated(base: BaseSpace, config: Configuration) -> int:
    """Brute force over all splits: pairs of basis words on the two parts."""
    total = 0
    for left, right in splits2(config):
        total += count_words_enumerated(base, left) * count_words_enumerated(
            base, right
        )
    return total


def compare_external(base: BaseSpace, points: tuple[str, ...]):
    """Table identifying the ordered external fibre with symmetrized words.

    For a tuple (x1..xk) of distinct points, maps every basis index
    tuple (i1..ik) to the commutative monomial putting e[x_j, i_j] at
    x_j.  The table is a bijection onto the all-degree-one monomials
    over the underlying configuration; permuting the tuple reproduces
    the same monomials.
    """
    if len(set(points)) != len(points):
        raise OverlappingConfigurations("repeated point in tuple %r" % (points,))
    ranges = [range(base.rank_of(x)) for x in points]
    table = []
    for choice in product(*ranges):
        w = Word(tuple(Letter(x, i) for x, i in zip(points, choice)))
        mono_elem = symmetrize(tensor_element(w.config, {w: ONE}))
        (mono, _), = mono_elem.terms
        table.append((tuple(choice), mono))
    return table


def hadamard_factor_bijection(rank_v: dict, rank_w: dict, config: Configuration):
    """Basis table for S(V tensor W) against S(V) tensor S(W) over one fibre.

    Each per-point choice of a pair index (i,j) corresponds to the pair
    of per-point choices (all i's, all j's); the table enumerates that
    correspondence, which is bijective with both sides of size
    prod rank_v * prod rank_w.
    """
    pair_ranges = [
        [(i, j) for i in range(rank_v[x]) for j in range(rank_w[x])]
        for x in config
    ]
    table = []
    for pairs in product(*pair_ranges):
        left = tuple(i for i, _ in pairs)
        right = tuple(j for _, j in pairs)
        table.append((tuple(pairs), (left, right)))
    return table
