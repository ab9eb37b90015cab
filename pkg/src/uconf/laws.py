"""Seeded invariant suites, shared by the tests and ``uconf axioms``.

Each law draws instances from its own deterministically seeded RNG
(string-seeded, so reports are byte-identical for a fixed seed) and
returns how many cases it checked.  Laws that need structure the
supplied model cannot promise (six points, mixed ranks, fancy weights)
build their own auxiliary bases; everything else runs against the model
it is given.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice, permutations, product
from math import comb, factorial

from .configspace import (
    VACUUM,
    BaseSpace,
    Configuration,
    shuffles,
    splits2,
    splits3,
)
from .errors import (
    BasisOutOfRange,
    ConfigMismatch,
    ExprSyntaxError,
    OverlappingConfigurations,
    UnknownPoint,
)
from .expr import parse_element, render
from .fibre_algebra import (
    FibreElement,
    cauchy_mul,
    count_monomials,
    degrees,
    element,
    embed_generator,
    enumerate_monomials,
    hadamard_mul,
    unit_hadamard,
    unit_monomial,
    zero,
)
from .functionals import (
    Field,
    evaluate,
    oracle_check,
    pairwise_functional_bracket,
    peierls_bracket,
    polynomial,
    shift_coefficients,
    to_functional,
)
from .poisson import (
    Kernel,
    bracket_fibre,
    bracket_fibre_recursive,
    bracket_with_density,
)
from .sections import (
    Section,
    convolve,
    jacobiator,
    section,
    section_bracket,
    truncate,
    unit_section,
)
from .tensors import (
    Letter,
    Word,
    alternate,
    compare_external,
    concat,
    count_square_enumerated,
    count_words_enumerated,
    deconcat_cauchy,
    deconcat_hadamard,
    dim_T_fibre,
    dim_TboxT_fibre,
    hadamard_factor_bijection,
    is_symmetric,
    permute_slots,
    shuffle_map,
    symmetrize,
    tensor_element,
    word_cauchy_splits,
)


@dataclass
class LawResult:
    name: str
    cases: int
    ok: bool
    detail: str | None = None


@dataclass
class LawEnv:
    base: BaseSpace
    kernel: Kernel
    cases: int
    max_points: int
    max_degree: int


LAWS: list[tuple[str, object]] = []


def law(name):
    def register(fn):
        LAWS.append((name, fn))
        return fn

    return register


def run_suites(base, kernel, seed=0, cases=25, max_points=None, max_degree=3):
    env = LawEnv(
        base,
        kernel,
        cases,
        len(base.points) if max_points is None else max_points,
        max_degree,
    )
    results = []
    for name, fn in LAWS:
        rng = random.Random("%s|%s" % (seed, name))
        try:
            checked = fn(rng, env)
            results.append(LawResult(name, checked, True))
        except AssertionError as err:
            results.append(LawResult(name, 0, False, str(err) or "assertion failed"))
        except Exception as err:  # surfaced as a failing law, not a crash
            results.append(
                LawResult(name, 0, False, "%s: %s" % (type(err).__name__, err))
            )
    return results


# ---------------------------------------------------------------- generators


def random_rational(rng, nonzero=False) -> Fraction:
    num = rng.randint(-3, 3)
    while nonzero and num == 0:
        num = rng.randint(-3, 3)
    return Fraction(num, rng.randint(1, 3))


def random_subset(rng, pool, max_size, min_size=0):
    pool = sorted(pool)
    size = rng.randint(min_size, min(max_size, len(pool)))
    return tuple(sorted(rng.sample(pool, size)))


def random_config(rng, base, max_size, min_size=0, pool=None) -> Configuration:
    pool = base.points if pool is None else pool
    return Configuration(random_subset(rng, pool, max_size, min_size))


def random_monomial(rng, base, config, max_degree):
    mono = unit_monomial(config)
    if not len(config):
        return mono
    for _ in range(rng.randint(0, max_degree)):
        x = rng.choice(config.members)
        i = rng.randrange(base.rank_of(x))
        mono = mono.replace_factor(mono.factor_at(x).bumped(i, 1))
    return mono


def random_element(rng, base, config, max_degree, max_terms=2) -> FibreElement:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        m = random_monomial(rng, base, config, max_degree)
        terms[m] = terms.get(m, Fraction(0)) + random_rational(rng, nonzero=True)
    return element(config, terms)


def random_kernel(rng, base) -> Kernel:
    entries = []
    pts = base.points
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            x, y = pts[a], pts[b]
            for i in range(base.rank_of(x)):
                for j in range(base.rank_of(y)):
                    if rng.random() < 0.75:
                        entries.append(((x, i), (y, j), random_rational(rng)))
    return Kernel.of(entries)


def random_word(rng, base, config) -> Word:
    order = list(config.members)
    rng.shuffle(order)
    return Word(tuple(Letter(x, rng.randrange(base.rank_of(x))) for x in order))


def random_tensor_element(rng, base, config, max_terms=2):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        w = random_word(rng, base, config)
        terms[w] = terms.get(w, Fraction(0)) + random_rational(rng, nonzero=True)
    return tensor_element(config, terms)


def random_section(
    rng, base, max_size, max_degree, max_configs=2, pool=None, bound=None
) -> Section:
    pool = base.points if pool is None else pool
    bound = len(base.points) if bound is None else bound
    values = {}
    for _ in range(rng.randint(1, max_configs)):
        cfg = random_config(rng, base, min(max_size, bound), pool=pool)
        if cfg not in values:
            values[cfg] = random_element(rng, base, cfg, max_degree)
    return section(values, bound)


def random_field(rng, base) -> Field:
    return Field.of(
        {
            x: [random_rational(rng) for _ in range(base.rank_of(x))]
            for x in base.points
        }
    )


def random_base(rng, max_points=5, max_rank=2, plain_weights=False) -> BaseSpace:
    n = rng.randint(2, max_points)
    specs = []
    for k in range(n):
        rank = rng.randint(1, max_rank)
        weight = (
            Fraction(1)
            if plain_weights
            else Fraction(rng.randint(1, 4), rng.randint(1, 4))
        )
        specs.append(("x%d" % k, rank, weight))
    return BaseSpace.of(specs)


def random_polynomial(rng, base, max_degree=3, max_terms=3):
    variables = [
        (x, i) for x in base.points for i in range(base.rank_of(x))
    ]
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        table = {}
        for _ in range(rng.randint(0, max_degree)):
            v = rng.choice(variables)
            table[v] = table.get(v, 0) + 1
        key = tuple(sorted(table.items()))
        terms[key] = terms.get(key, Fraction(0)) + random_rational(rng, nonzero=True)
    return polynomial(terms)


def disjoint_configs(rng, base, parts, max_each, allow_empty=True):
    pts = list(base.points)
    rng.shuffle(pts)
    out = []
    start = 0
    for k in range(parts):
        remaining = len(pts) - start
        reserve = 0 if allow_empty else parts - k - 1
        hi = max(0, min(max_each, remaining - reserve))
        lo = 0 if (allow_empty or hi == 0) else 1
        take = rng.randint(lo, hi)
        out.append(Configuration(tuple(sorted(pts[start : start + take]))))
        start += take
    return out


# ------------------------------------------------------------- configuration


@law("two-part splits partition the configuration")
def _law_splits2(rng, env):
    checked = 0
    for _ in range(env.cases):
        cfg = random_config(rng, env.base, min(5, len(env.base.points)))
        parts = splits2(cfg)
        assert len(parts) == 2 ** len(cfg)
        assert parts[0] == (VACUUM, cfg) and parts[-1] == (cfg, VACUUM)
        for left, right in parts:
            assert left.is_disjoint(right)
            assert left.union(right) == cfg
        assert sorted(parts) == sorted((b, a) for a, b in parts)
        assert len(set(parts)) == len(parts)
        checked += 1
    return checked


@law("three-part splits agree with nested two-part splits")
def _law_splits3(rng, env):
    checked = 0
    for _ in range(env.cases):
        cfg = random_config(rng, env.base, min(4, len(env.base.points)))
        triples = splits3(cfg)
        assert len(triples) == 3 ** len(cfg)
        for a, b, c in triples:
            assert a.union(b).union(c) == cfg
        via_left = sorted(
            (a, b, c) for a, bc in splits2(cfg) for b, c in splits2(bc)
        )
        via_right = sorted(
            (a, b, c) for ab, c in splits2(cfg) for a, b in splits2(ab)
        )
        assert sorted(triples) == via_left == via_right
        checked += 1
    return checked


@law("shuffle words: census, monotone blocks, lexicographic order")
def _law_shuffles(rng, env):
    checked = 0
    for i in range(0, 9):
        for j in range(0, 9 - i):
            words = shuffles(i, j)
            assert len(words) == comb(i + j, i)
            assert len(set(words)) == len(words)
            assert list(words) == sorted(words)
            for w in words:
                assert sorted(w) == list(range(1, i + j + 1))
                assert list(w[:i]) == sorted(w[:i])
                assert list(w[i:]) == sorted(w[i:])
            if i + j <= 6:
                brute = [
                    p
                    for p in permutations(range(1, i + j + 1))
                    if list(p[:i]) == sorted(p[:i])
                    and list(p[i:]) == sorted(p[i:])
                ]
                assert sorted(words) == sorted(brute)
            checked += 1
    return checked


# ------------------------------------------------------------- fibre algebra


def _two_disjoint(rng, env, max_each=2):
    return disjoint_configs(rng, env.base, 2, max_each)


@law("hadamard product: commutative monoid with unit 1_X")
def _law_hadamard_monoid(rng, env):
    checked = 0
    for _ in range(env.cases):
        cfg = random_config(rng, env.base, min(3, len(env.base.points)))
        a = random_element(rng, env.base, cfg, env.max_degree)
        b = random_element(rng, env.base, cfg, env.max_degree)
        c = random_element(rng, env.base, cfg, env.max_degree)
        assert hadamard_mul(a, unit_hadamard(cfg)) == a
        assert hadamard_mul(a, b) == hadamard_mul(b, a)
        assert hadamard_mul(hadamard_mul(a, b), c) == hadamard_mul(
            a, hadamard_mul(b, c)
        )
        checked += 1
    return checked


@law("cauchy product: commutative monoid with unit 1_vacuum")
def _law_cauchy_monoid(rng, env):
    checked = 0
    for _ in range(env.cases):
        x, y, z = disjoint_configs(rng, env.base, 3, 2)
        a = random_element(rng, env.base, x, env.max_degree)
        b = random_element(rng, env.base, y, env.max_degree)
        c = random_element(rng, env.base, z, env.max_degree)
        assert cauchy_mul(a, unit_hadamard(VACUUM)) == a
        assert cauchy_mul(a, b) == cauchy_mul(b, a)
        assert cauchy_mul(cauchy_mul(a, b), c) == cauchy_mul(a, cauchy_mul(b, c))
        checked += 1
    return checked


@law("product interchange: (a#c).(b#d) = (a.b)#(c.d)")
def _law_interchange(rng, env):
    checked = 0
    for _ in range(env.cases):
        x, y = _two_disjoint(rng, env)
        a = random_element(rng, env.base, x, env.max_degree)
        b = random_element(rng, env.base, x, env.max_degree)
        c = random_element(rng, env.base, y, env.max_degree)
        d = random_element(rng, env.base, y, env.max_degree)
        lhs = hadamard_mul(cauchy_mul(a, c), cauchy_mul(b, d))
        rhs = cauchy_mul(hadamard_mul(a, b), hadamard_mul(c, d))
        assert lhs == rhs
        checked += 1
    return checked


@law("monomial census matches the per-point closed form")
def _law_monomial_census(rng, env):
    checked = 0
    for _ in range(env.cases):
        cfg = random_config(rng, env.base, min(2, len(env.base.points)))
        degree = rng.randint(0, env.max_degree)
        monos = enumerate_monomials(env.base, cfg, degree)
        assert len(set(monos)) == len(monos)
        assert len(monos) == count_monomials(env.base, cfg, degree)
        for m in monos:
            assert m.config == cfg
            assert all(f.degree <= degree for f in m.factors)
        checked += 1
    return checked


@law("degrees: units are degree zero, generators degree one, products add")
def _law_degrees(rng, env):
    checked = 0
    for _ in range(env.cases):
        x, y = _two_disjoint(rng, env)
        assert degrees(unit_hadamard(x)) == (x, (0,))
        a = element(x, {random_monomial(rng, env.base, x, env.max_degree): Fraction(1)})
        b = element(y, {random_monomial(rng, env.base, y, env.max_degree): Fraction(1)})
        (da,) = degrees(a)[1]
        (db,) = degrees(b)[1]
        assert degrees(cauchy_mul(a, b)) == (x.union(y), (da + db,))
        a2 = element(x, {random_monomial(rng, env.base, x, env.max_degree): Fraction(1)})
        (da2,) = degrees(a2)[1]
        assert degrees(hadamard_mul(a, a2)) == (x, (da + da2,))
        if len(env.base.points):
            p = rng.choice(env.base.points)
            gen = embed_generator(env.base, p, rng.randrange(env.base.rank_of(p)))
            assert degrees(gen) == (Configuration((p,)), (1,))
        checked += 1
    return checked


# ------------------------------------------------------------- tensor words


@law("word concatenation is associative with the empty word as unit")
def _law_concat(rng, env):
    checked = 0
    empty = tensor_element(VACUUM, {Word(): Fraction(1)})
    for _ in range(env.cases):
        x, y, z = disjoint_configs(rng, env.base, 3, 2)
        a = random_tensor_element(rng, env.base, x)
        b = random_tensor_element(rng, env.base, y)
        c = random_tensor_element(rng, env.base, z)
        assert concat(a, empty) == a
        assert concat(concat(a, b), c) == concat(a, concat(b, c))
        checked += 1
    return checked


@law("symmetrization is an algebra map onto the cauchy product")
def _law_symmetrize_map(rng, env):
    checked = 0
    for _ in range(env.cases):
        x, y = _two_disjoint(rng, env)
        a = random_tensor_element(rng, env.base, x)
        b = random_tensor_element(rng, env.base, y)
        assert symmetrize(concat(a, b)) == cauchy_mul(symmetrize(a), symmetrize(b))
        w = random_word(rng, env.base, x)
        perm = rng.choice(list(permutations(range(1, len(w) + 1))))
        sw = permute_slots(w, perm)
        assert symmetrize(tensor_element(x, {w: Fraction(1)})) == symmetrize(
            tensor_element(x, {sw: Fraction(1)})
        )
        checked += 1
    return checked


@law("cauchy deconcatenation is coassociative")
def _law_deconcat_cauchy_coassoc(rng, env):
    checked = 0
    for _ in range(env.cases):
        cfg = random_config(rng, env.base, min(4, len(env.base.points)))
        a = random_tensor_element(rng, env.base, cfg)
        left = {}
        right = {}
        for (w1, w2), c in deconcat_cauchy(a).terms:
            for u1, u2 in word_cauchy_splits(w1):
                left[(u1, u2, w2)] = left.get((u1, u2, w2), Fraction(0)) + c
            for u1, u2 in word_cauchy_splits(w2):
                right[(w1, u1, u2)] = right.get((w1, u1, u2), Fraction(0)) + c
        left = {k: v for k, v in left.items() if v}
        right = {k: v for k, v in right.items() if v}
        assert left == right
        checked += 1
    return checked


@law("hadamard deconcatenation is coassociative")
def _law_deconcat_hadamard_coassoc(rng, env):
    checked = 0
    alphabet = ["u", "v", "w", "z"]
    for _ in range(env.cases):
        letters = tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 4)))
        pairs = deconcat_hadamard(letters)
        assert sum(pairs.values()) == len(letters) + 1
        left = {}
        right = {}
        for (w1, w2), c in pairs.items():
            for (u1, u2), d in deconcat_hadamard(w1).items():
                left[(u1, u2, w2)] = left.get((u1, u2, w2), Fraction(0)) + c * d
            for (u1, u2), d in deconcat_hadamard(w2).items():
                right[(w1, u1, u2)] = right.get((w1, u1, u2), Fraction(0)) + c * d
        assert left == right
        checked += 1
    return checked


@law("slot-symmetric elements stay symmetric under cauchy deconcatenation")
def _law_symmetric_closure(rng, env):
    checked = 0
    for _ in range(env.cases):
        cfg = random_config(rng, env.base, min(3, len(env.base.points)), min_size=1)
        w = random_word(rng, env.base, cfg)
        terms = {}
        for perm in permutations(range(1, len(w) + 1)):
            pw = permute_slots(w, perm)
            terms[pw] = terms.get(pw, Fraction(0)) + Fraction(1)
        sym_elem = tensor_element(cfg, terms)
        assert is_symmetric(sym_elem)
        if len(cfg) >= 2 and len(set(w.letters)) == len(w.letters):
            single = tensor_element(cfg, {w: Fraction(1)})
            assert not is_symmetric(single)
        grouped = {}
        for (w1, w2), c in deconcat_cauchy(sym_elem).terms:
            grouped.setdefault((w1.config, w2.config), {})[(w1, w2)] = c
        for (cfg1, cfg2), table in grouped.items():
            for perm in permutations(range(1, len(cfg1) + 1)):
                moved = {
                    (permute_slots(w1, perm), w2): c for (w1, w2), c in table.items()
                }
                assert moved == table
            for perm in permutations(range(1, len(cfg2) + 1)):
                moved = {
                    (w1, permute_slots(w2, perm)): c for (w1, w2), c in table.items()
                }
                assert moved == table
        checked += 1
    return checked


@law("alternation kills transpositions and is idempotent")
def _law_alternate(rng, env):
    checked = 0
    for _ in range(env.cases):
        cfg = random_config(rng, env.base, min(3, len(env.base.points)), min_size=2)
        w = random_word(rng, env.base, cfg)
        k = len(w)
        swap = list(range(1, k + 1))
        swap[0], swap[1] = swap[1], swap[0]
        tw = permute_slots(w, tuple(swap))
        both = tensor_element(cfg, {w: Fraction(1)}) + tensor_element(
            cfg, {tw: Fraction(1)}
        )
        assert alternate(both).is_zero()
        a = random_tensor_element(rng, env.base, cfg)
        assert alternate(alternate(a)) == alternate(a)
        checked += 1
    return checked


@law("fibre dimensions: (k+1)k! prod(rank), closed vs enumerated")
def _law_dim_identity(rng, env):
    checked = 0
    for k in range(7):
        lhs = sum(comb(k, i) * factorial(i) * factorial(k - i) for i in range(k + 1))
        assert lhs == (k + 1) * factorial(k)
        checked += 1
    six = BaseSpace.of([("a%d" % n, 1, 1) for n in range(6)])
    for k in range(7):
        cfg = Configuration(six.points[:k])
        assert dim_T_fibre(six, cfg) == count_words_enumerated(six, cfg) == factorial(k)
        enum = count_square_enumerated(six, cfg)
        assert dim_TboxT_fibre(six, cfg) == enum == (k + 1) * factorial(k)
        checked += 1
    mixed = BaseSpace.of([("a", 2, 1), ("b", 1, 1), ("c", 2, 1), ("d", 1, 1)])
    for k in range(min(4, len(mixed.points)) + 1):
        for cfg in mixed.configurations(k):
            rank_prod = 1
            for x in cfg:
                rank_prod *= mixed.rank_of(x)
            assert dim_T_fibre(mixed, cfg) == count_words_enumerated(mixed, cfg)
            assert (
                dim_TboxT_fibre(mixed, cfg)
                == count_square_enumerated(mixed, cfg)
                == (k + 1) * factorial(k) * rank_prod
            )
            checked += 1
    for k in range(min(3, len(env.base.points)) + 1):
        for cfg in islice(env.base.configurations(k), 10):
            assert dim_T_fibre(env.base, cfg) == count_words_enumerated(env.base, cfg)
            assert dim_TboxT_fibre(env.base, cfg) == count_square_enumerated(
                env.base, cfg
            )
            checked += 1
    return checked


@law("ordered external fibres biject onto degree-one monomials")
def _law_compare_external(rng, env):
    checked = 0
    mixed = BaseSpace.of([("a", 1, 1), ("b", 2, 1), ("c", 1, 1), ("d", 2, 1)])
    for base in (mixed, env.base):
        pts = base.points
        for k in range(min(4, len(pts)) + 1):
            tuples = list(permutations(pts, k))
            if len(tuples) > 40:
                tuples = [tuple(rng.sample(sorted(pts), k)) for _ in range(10)]
            for tup in tuples:
                table = compare_external(base, tup)
                monos = [m for _, m in table]
                rank_prod = 1
                for x in tup:
                    rank_prod *= base.rank_of(x)
                assert len(monos) == rank_prod
                assert len(set(monos)) == len(monos)
                cfg = Configuration(tuple(sorted(tup)))
                expected = set()
                for choice in product(*[range(base.rank_of(x)) for x in cfg]):
                    elem = unit_hadamard(cfg)
                    mono = unit_monomial(cfg)
                    for x, i in zip(cfg, choice):
                        mono = mono.replace_factor(mono.factor_at(x).bumped(i, 1))
                    expected.add(mono)
                assert set(monos) == expected
                flipped = compare_external(base, tuple(reversed(tup)))
                assert set(m for _, m in flipped) == expected
                checked += 1
    return checked


@law("shuffle map satisfies the interchange square after symmetrizing")
def _law_shuffle_interchange(rng, env):
    checked = 0
    for _ in range(env.cases):
        x, y = _two_disjoint(rng, env)
        pack = {}
        for _ in range(rng.randint(1, 2)):
            key = (
                (random_word(rng, env.base, x), random_word(rng, env.base, x)),
                (random_word(rng, env.base, y), random_word(rng, env.base, y)),
            )
            pack[key] = pack.get(key, Fraction(0)) + random_rational(rng, nonzero=True)
        shuffled = shuffle_map(pack)
        total = x.union(y)
        via_shuffle = zero(total)
        for ((a, c), (b, d)), coeff in shuffled.items():
            left = symmetrize(
                tensor_element(total, {Word(a.letters + c.letters): Fraction(1)})
            )
            right = symmetrize(
                tensor_element(total, {Word(b.letters + d.letters): Fraction(1)})
            )
            via_shuffle = via_shuffle + coeff * hadamard_mul(left, right)
        direct = zero(total)
        for ((a, b), (c, d)), coeff in pack.items():
            sa = symmetrize(tensor_element(x, {a: Fraction(1)}))
            sb = symmetrize(tensor_element(x, {b: Fraction(1)}))
            sc = symmetrize(tensor_element(y, {c: Fraction(1)}))
            sd = symmetrize(tensor_element(y, {d: Fraction(1)}))
            direct = direct + coeff * cauchy_mul(
                hadamard_mul(sa, sb), hadamard_mul(sc, sd)
            )
        assert via_shuffle == direct
        checked += 1
    return checked


@law("free symmetric cauchy algebra is strongly monoidal for hadamard pairs")
def _law_strong_monoidality(rng, env):
    checked = 0
    for _ in range(env.cases):
        cfg = random_config(rng, env.base, min(3, len(env.base.points)))
        rank_v = {x: rng.randint(1, 2) for x in cfg}
        rank_w = {x: rng.randint(1, 2) for x in cfg}
        table = hadamard_factor_bijection(rank_v, rank_w, cfg)
        dim_pair = 1
        dim_v = 1
        dim_w = 1
        for x in cfg:
            dim_pair *= rank_v[x] * rank_w[x]
            dim_v *= rank_v[x]
            dim_w *= rank_w[x]
        assert dim_pair == dim_v * dim_w
        assert len(table) == dim_pair
        keys = [k for k, _ in table]
        images = [v for _, v in table]
        assert len(set(keys)) == len(table)
        assert len(set(images)) == len(table)
        expected = set()
        for iv in product(*[range(rank_v[x]) for x in cfg]):
            for jw in product(*[range(rank_w[x]) for x in cfg]):
                expected.add((iv, jw))
        assert set(images) == expected
        checked += 1
    return checked


# ------------------------------------------------------------------ poisson


def _bracket_instance(rng, env, max_each=2):
    kernel = random_kernel(rng, env.base)
    x, y = disjoint_configs(rng, env.base, 2, max_each)
    a = random_element(rng, env.base, x, env.max_degree)
    b = random_element(rng, env.base, y, env.max_degree)
    return kernel, a, b


@law("bracket vanishes on units")
def _law_bracket_units(rng, env):
    checked = 0
    for _ in range(env.cases):
        kernel, a, b = _bracket_instance(rng, env)
        assert bracket_fibre(unit_hadamard(a.config), b, kernel).is_zero()
        assert bracket_fibre(a, unit_hadamard(b.config), kernel).is_zero()
        checked += 1
    return checked


@law("bracket on generators reads the kernel times a two-point unit")
def _law_bracket_generators(rng, env):
    checked = 0
    pts = env.base.points
    if len(pts) < 2:
        return 0
    for _ in range(env.cases):
        kernel = random_kernel(rng, env.base)
        x, y = rng.sample(list(pts), 2)
        i = rng.randrange(env.base.rank_of(x))
        j = rng.randrange(env.base.rank_of(y))
        u = embed_generator(env.base, x, i)
        v = embed_generator(env.base, y, j)
        got = bracket_fibre(u, v, kernel)
        expected = kernel.eval((x, i), (y, j)) * unit_hadamard(
            Configuration(tuple(sorted((x, y))))
        )
        assert got == expected
        others = [p for p in pts if p not in (x, y)]
        third = (
            embed_generator(env.base, others[0], 0)
            if others
            else random_element(rng, env.base, VACUUM, 0)
        )
        assert bracket_fibre(got, third, kernel).is_zero()
        checked += 1
    return checked


@law("bracket antisymmetry")
def _law_bracket_antisymmetry(rng, env):
    checked = 0
    for _ in range(env.cases):
        kernel, a, b = _bracket_instance(rng, env)
        assert bracket_fibre(a, b, kernel) == -bracket_fibre(b, a, kernel)
        checked += 1
    return checked


@law("bracket leibniz in the cauchy product")
def _law_bracket_leibniz_cauchy(rng, env):
    checked = 0
    for _ in range(env.cases):
        kernel = random_kernel(rng, env.base)
        x, y, z = disjoint_configs(rng, env.base, 3, 1)
        a = random_element(rng, env.base, x, env.max_degree)
        b = random_element(rng, env.base, y, env.max_degree)
        c = random_element(rng, env.base, z, env.max_degree)
        lhs = bracket_fibre(a, cauchy_mul(b, c), kernel)
        rhs = cauchy_mul(bracket_fibre(a, b, kernel), c) + cauchy_mul(
            b, bracket_fibre(a, c, kernel)
        )
        assert lhs == rhs
        checked += 1
    return checked


@law("bracket leibniz in the hadamard product")
def _law_bracket_leibniz_hadamard(rng, env):
    checked = 0
    for _ in range(env.cases):
        kernel = random_kernel(rng, env.base)
        x, y = _two_disjoint(rng, env, max_each=1)
        a = random_element(rng, env.base, x, env.max_degree)
        b = random_element(rng, env.base, x, env.max_degree)
        c = random_element(rng, env.base, y, env.max_degree)
        lhs = bracket_fibre(hadamard_mul(a, b), c, kernel)
        unit_y = unit_hadamard(y)
        rhs = hadamard_mul(
            bracket_fibre(a, c, kernel), cauchy_mul(b, unit_y)
        ) + hadamard_mul(cauchy_mul(a, unit_y), bracket_fibre(b, c, kernel))
        assert lhs == rhs
        checked += 1
    return checked


@law("bracket jacobi identity")
def _law_bracket_jacobi(rng, env):
    checked = 0
    for _ in range(env.cases):
        kernel = random_kernel(rng, env.base)
        x, y, z = disjoint_configs(rng, env.base, 3, 1)
        a = random_element(rng, env.base, x, env.max_degree)
        b = random_element(rng, env.base, y, env.max_degree)
        c = random_element(rng, env.base, z, env.max_degree)
        total = bracket_fibre(a, bracket_fibre(b, c, kernel), kernel)
        total = total + bracket_fibre(b, bracket_fibre(c, a, kernel), kernel)
        total = total + bracket_fibre(c, bracket_fibre(a, b, kernel), kernel)
        assert total.is_zero()
        checked += 1
    return checked


@law("recursive leibniz bracket equals the closed biderivation")
def _law_bracket_recursive(rng, env):
    checked = 0
    for _ in range(env.cases):
        kernel, a, b = _bracket_instance(rng, env)
        closed = bracket_fibre(a, b, kernel)
        peeled = bracket_fibre_recursive(a, b, kernel)
        assert closed == peeled
        assert bracket_fibre_recursive(b, a, kernel) == -peeled
        checked += 1
    return checked


@law("bracket lowers total degree by exactly two")
def _law_bracket_grading(rng, env):
    checked = 0
    for _ in range(env.cases):
        kernel = random_kernel(rng, env.base)
        x, y = _two_disjoint(rng, env)
        ma = random_monomial(rng, env.base, x, env.max_degree)
        mb = random_monomial(rng, env.base, y, env.max_degree)
        a = element(x, {ma: Fraction(1)})
        b = element(y, {mb: Fraction(1)})
        out = bracket_fibre(a, b, kernel)
        _, degs = degrees(out)
        assert all(d == ma.degree + mb.degree - 2 for d in degs)
        checked += 1
    return checked


@law("density factors ride along multiplicatively")
def _law_bracket_density(rng, env):
    checked = 0
    for _ in range(env.cases):
        kernel = random_kernel(rng, env.base)
        x, y, z = disjoint_configs(rng, env.base, 3, 1)
        a = random_element(rng, env.base, x, env.max_degree)
        b = random_element(rng, env.base, y, env.max_degree)
        c = random_element(rng, env.base, z, env.max_degree)
        alpha = Fraction(rng.randint(1, 4), rng.randint(1, 4))
        beta = Fraction(rng.randint(1, 4), rng.randint(1, 4))
        gamma = Fraction(rng.randint(1, 4), rng.randint(1, 4))
        got, dens = bracket_with_density(a, alpha, b, beta, kernel)
        assert got == bracket_fibre(a, b, kernel)
        assert dens == alpha * beta
        lhs_elem, lhs_dens = bracket_with_density(
            a, alpha, cauchy_mul(b, c), beta * gamma, kernel
        )
        rhs_elem = cauchy_mul(bracket_fibre(a, b, kernel), c) + cauchy_mul(
            b, bracket_fibre(a, c, kernel)
        )
        assert lhs_elem == rhs_elem and lhs_dens == alpha * beta * gamma
        checked += 1
    return checked


# ----------------------------------------------------------------- sections


def _section_instance(rng, plain_weights=True):
    base = random_base(rng, max_points=4, max_rank=2, plain_weights=plain_weights)
    kernel = random_kernel(rng, base)
    bound = len(base.points)
    mk = lambda: random_section(rng, base, 2, 2, bound=bound)
    return base, kernel, mk


@law("convolution: commutative, associative, unital")
def _law_convolution_monoid(rng, env):
    checked = 0
    for _ in range(env.cases):
        _, _, mk = _section_instance(rng)
        s, t, u = mk(), mk(), mk()
        assert convolve(unit_section(), s) == s
        assert convolve(s, t) == convolve(t, s)
        assert convolve(convolve(s, t), u) == convolve(s, convolve(t, u))
        checked += 1
    return checked


@law("section bracket: antisymmetric, leibniz over convolution")
def _law_section_bracket(rng, env):
    checked = 0
    for _ in range(env.cases):
        _, kernel, mk = _section_instance(rng)
        s, t, u = mk(), mk(), mk()
        assert section_bracket(s, t, kernel) == -section_bracket(t, s, kernel)
        lhs = section_bracket(s, convolve(t, u), kernel)
        rhs = convolve(section_bracket(s, t, kernel), u) + convolve(
            t, section_bracket(s, u, kernel)
        )
        assert lhs == rhs
        checked += 1
    return checked


@law("jacobiator of sections is the zero section")
def _law_jacobiator(rng, env):
    checked = 0
    for _ in range(env.cases):
        _, kernel, mk = _section_instance(rng)
        assert jacobiator(mk(), mk(), mk(), kernel).is_zero()
        checked += 1
    return checked


@law("convolution support sits inside disjoint unions of supports")
def _law_section_support(rng, env):
    checked = 0
    for _ in range(env.cases):
        _, kernel, mk = _section_instance(rng)
        s, t = mk(), mk()
        allowed = set()
        for cfg1 in s.support_configs():
            for cfg2 in t.support_configs():
                if cfg1.is_disjoint(cfg2):
                    allowed.add(cfg1.union(cfg2))
        for out in (convolve(s, t), section_bracket(s, t, kernel)):
            assert set(out.support_configs()) <= allowed
            assert not out.dropped
        checked += 1
    return checked


@law("truncation commutes with convolution at a shared bound")
def _law_truncation(rng, env):
    checked = 0
    for _ in range(env.cases):
        base, _, mk = _section_instance(rng)
        s, t = mk(), mk()
        bound = rng.randint(0, len(base.points) + 1)
        lhs = truncate(convolve(s, t), bound)
        rhs = truncate(convolve(truncate(s, bound), truncate(t, bound)), bound)
        assert lhs == rhs
        assert truncate(lhs, bound) == lhs
        checked += 1
    return checked


# -------------------------------------------------------------- functionals


@law("functional bracket oracle agrees on point-disjoint supports")
def _law_peierls_oracle(rng, env):
    checked = 0
    for _ in range(env.cases):
        base = random_base(rng, max_points=5, max_rank=2)
        kernel = random_kernel(rng, base)
        pts = list(base.points)
        rng.shuffle(pts)
        cut = rng.randint(1, len(pts) - 1)
        s = random_section(rng, base, 3, env.max_degree, pool=pts[:cut])
        t = random_section(rng, base, 3, env.max_degree, pool=pts[cut:])
        assert oracle_check(s, t, kernel, base)
        checked += 1
    return checked


@law("pairwise functional bracket matches the section bracket everywhere")
def _law_peierls_pairwise(rng, env):
    checked = 0
    for _ in range(env.cases):
        base = random_base(rng, max_points=4, max_rank=2)
        kernel = random_kernel(rng, base)
        s = random_section(rng, base, 2, 2)
        t = random_section(rng, base, 2, 2)
        lhs = to_functional(section_bracket(s, t, kernel), base)
        rhs = pairwise_functional_bracket(s, t, kernel, base)
        assert lhs == rhs
        checked += 1
    return checked


@law("functional bracket: antisymmetric, leibniz over products")
def _law_peierls_algebra(rng, env):
    checked = 0
    for _ in range(env.cases):
        base = random_base(rng, max_points=4, max_rank=2)
        kernel = random_kernel(rng, base)
        f = random_polynomial(rng, base)
        g = random_polynomial(rng, base)
        h = random_polynomial(rng, base)
        assert peierls_bracket(f, g, kernel, base) == -peierls_bracket(
            g, f, kernel, base
        )
        lhs = peierls_bracket(f, g * h, kernel, base)
        rhs = peierls_bracket(f, g, kernel, base) * h + g * peierls_bracket(
            f, h, kernel, base
        )
        assert lhs == rhs
        checked += 1
    return checked


@law("binomial shift expansion reproduces the symbolic derivative")
def _law_shift_derivative(rng, env):
    checked = 0
    for _ in range(env.cases):
        base = random_base(rng, max_points=4, max_rank=2)
        s = random_section(rng, base, 2, env.max_degree)
        f = to_functional(s, base)
        phi = random_field(rng, base)
        variables = f.variables()
        x = rng.choice(base.points)
        var = rng.choice(variables) if variables else (x, 0)
        coeffs = shift_coefficients(f, var, phi)
        assert coeffs[0] == evaluate(f, phi)
        deriv = evaluate(f.partial(var), phi)
        assert (coeffs[1] if len(coeffs) > 1 else Fraction(0)) == deriv
        h = Fraction(1, 2 ** 10)
        shifted = {p: list(vec) for p, vec in phi.values}
        shifted[var[0]][var[1]] += h
        quotient = (evaluate(f, Field.of(shifted)) - evaluate(f, phi)) / h
        tail = sum(
            (coeffs[n] * h ** (n - 2) for n in range(2, len(coeffs))), Fraction(0)
        )
        assert quotient == deriv + h * tail
        checked += 1
    return checked


@law("functionals of convolutions multiply on point-disjoint supports")
def _law_functional_convolution(rng, env):
    checked = 0
    for _ in range(env.cases):
        base = random_base(rng, max_points=4, max_rank=2)
        pts = list(base.points)
        rng.shuffle(pts)
        cut = rng.randint(1, len(pts) - 1)
        s = random_section(rng, base, 2, 2, pool=pts[:cut])
        t = random_section(rng, base, 2, 2, pool=pts[cut:])
        lhs = to_functional(convolve(s, t), base)
        rhs = to_functional(s, base) * to_functional(t, base)
        assert lhs == rhs
        phi = random_field(rng, base)
        assert evaluate(lhs, phi) == evaluate(rhs, phi)
        checked += 1
    return checked


# ------------------------------------------------------------------- parser


@law("expression text round-trips parse(render(e)) == e byte-stably")
def _law_roundtrip(rng, env):
    checked = 0
    for _ in range(env.cases):
        cfg = random_config(rng, env.base, min(3, len(env.base.points)))
        elem = random_element(rng, env.base, cfg, env.max_degree, max_terms=3)
        if rng.random() < 0.1:
            elem = zero(cfg)
        text = render(elem)
        back = parse_element(text, env.base)
        assert back == elem
        assert render(back) == text
        checked += 1
    return checked


_ERROR_BASE = BaseSpace.of([("p", 1, 1), ("q", 2, 1)])

_ERROR_FIXTURES = [
    ("e[p,", ExprSyntaxError, 4),
    ("2 * * e[p,0]", ExprSyntaxError, 4),
    ("e[z,0]", UnknownPoint, 2),
    ("e[q,5]", BasisOutOfRange, 4),
    ("e[p,0] . e[q,0]", ConfigMismatch, 7),
    ("e[p,0] + 1[q]", ConfigMismatch, 7),
    ("e[p,0] # e[p,0]", OverlappingConfigurations, 7),
    ("1[p,p]", OverlappingConfigurations, 4),
]


@law("parser raises all five error classes with byte positions")
def _law_parse_errors(rng, env):
    checked = 0
    for text, err_class, position in _ERROR_FIXTURES:
        try:
            parse_element(text, _ERROR_BASE)
        except err_class as err:
            assert err.position == position, (
                "%r raised %s at %r, expected %r"
                % (text, err_class.__name__, err.position, position)
            )
            checked += 1
        else:
            raise AssertionError("%r did not raise %s" % (text, err_class.__name__))
    return checked
