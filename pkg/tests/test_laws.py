from uconf import laws
from uconf.modelio import load_model


def test_all_suites_pass_on_bundled_model():
    base, kernel = load_model("m3")
    results = laws.run_suites(base, kernel, seed=0, cases=8)
    assert results
    failures = [r for r in results if not r.ok]
    assert failures == []
    assert all(r.cases > 0 for r in results)


def test_suites_are_seed_deterministic():
    base, kernel = load_model("m3")
    first = laws.run_suites(base, kernel, seed=11, cases=5)
    second = laws.run_suites(base, kernel, seed=11, cases=5)
    assert first == second


def test_runner_reports_failures_instead_of_crashing():
    base, kernel = load_model("m3")

    def bad_law(rng, env):
        assert False, "wired to fail"

    laws.LAWS.append(("always fails", bad_law))
    try:
        results = laws.run_suites(base, kernel, seed=0, cases=1)
    finally:
        laws.LAWS.pop()
    tail = results[-1]
    assert tail.name == "always fails"
    assert not tail.ok
    assert "wired to fail" in tail.detail
    assert all(r.ok for r in results[:-1])


def test_mixed_rank_model_passes_too():
    base, kernel = load_model("m3")
    from fractions import Fraction

    from uconf.configspace import BaseSpace
    from uconf.laws import random_kernel
    import random

    mixed = BaseSpace.of(
        [("a", 2, Fraction(1, 2)), ("b", 1, 2), ("c", 2, 1), ("d", 1, Fraction(3, 4))]
    )
    k = random_kernel(random.Random(5), mixed)
    results = laws.run_suites(mixed, k, seed=1, cases=6)
    assert [r.name for r in results if not r.ok] == []
