from padic_orbits.suites import (
    SUITES,
    suite_c2,
    suite_counts,
    suite_cubing,
    suite_cycle_lengths,
    suite_tail,
)


def test_registry():
    assert set(SUITES) == {"c2", "lemma54", "pezda", "tail", "counts"}


def test_counts():
    res = suite_counts()
    assert res.passed and [c.detail["count"] for c in res.cases] == [4, 7, 10]


def test_tail_small_sample():
    res = suite_tail(primes=(2, 3, 5), samples=30, k_max=7, seed=2)
    assert res.passed and len(res.cases) == 90


def test_cycle_length_suite_small_sample():
    res = suite_cycle_lengths(primes=(3, 5, 7), samples=30, k_max=6, seed=2)
    assert res.passed
    growth = {c.name: c.detail["growth"] for c in res.cases if "pcf" in c.name}
    assert growth["p=5 pcf (2,8) c=107"] == [4]


def test_cubing_suite_small_sample():
    res = suite_cubing(samples=5, seed=9)
    assert res.passed and len(res.cases) == 5


def test_c2_above_level_two():
    assert suite_c2(ks=(3, 4), samples=2, seed=1, i_max=4).passed


def test_c2_level_two_only_fails_the_disk_check():
    res = suite_c2(ks=(2,), samples=3, seed=1, i_max=4)
    assert not res.passed
    assert all(c.detail["orbit_ok"] and not c.detail["in_disk"] for c in res.cases)


def test_reports_are_deterministic():
    a = suite_tail(primes=(3,), samples=25, k_max=6, seed=11).to_dict()
    b = suite_tail(primes=(3,), samples=25, k_max=6, seed=11).to_dict()
    assert a == b and a["schema"] == "padic-orbits/1" and a["n_failed"] == 0


def test_summary_text():
    text = suite_counts(primes=(3,)).summary()
    assert text.splitlines() == ["p=3  pass", "counts: 1/1 passed"]
