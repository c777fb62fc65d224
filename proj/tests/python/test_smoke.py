from fractions import Fraction

import pytest

import stochlab


def test_rho_and_profile():
    a = stochlab.BitPrefix("1010")
    assert stochlab.rho(a, 4) == Fraction(1, 2)
    assert stochlab.rho(a, 3) == Fraction(2, 3)
    prof = stochlab.density_profile(a, 1)
    assert prof["max_rho"] == Fraction(1)
    assert [n for n, _ in prof["samples"]] == [1, 2, 3, 4]
    with pytest.raises(stochlab.OutOfRangeError):
        stochlab.rho(a, 5)


def test_join_and_selection():
    a = stochlab.BitPrefix("10")
    b = stochlab.BitPrefix("01")
    assert str(stochlab.join(a, b)) == "1001"
    picked = stochlab.select_monotone("linear(2)", stochlab.BitPrefix("101010"))
    assert str(picked) == "111"
    with pytest.raises(stochlab.ContractViolation):
        stochlab.select_monotone("random-increasing", a)


def test_skip_rule():
    trace, selected = stochlab.apply_skip_rule("skip(2)", stochlab.BitPrefix("110011"))
    assert [d for d, _ in trace] == [0, 2, 4]
    assert str(selected) == "101"


def test_count_big():
    assert stochlab.count_big(stochlab.FinitePermutation.identity(64), 3) == (2, Fraction(2283, 280))
    assert stochlab.count_big(stochlab.FinitePermutation.identity(16), 2) == (1, Fraction(25, 6))


def test_construct_h():
    h = stochlab.construct_h(1)
    assert h.total_len == 14
    assert h.audit() == {
        "bijection": True,
        "concatenation": True,
        "gap_filling": True,
        "largeness": True,
    }
    assert sorted(h(t) for t in range(14)) == list(range(14))
    assert all(h.inverse(h(t)) == t for t in range(14))
    with pytest.raises(stochlab.RangeError):
        stochlab.construct_h(2)
    fixed = stochlab.construct_h_fixed(3, 4)
    assert fixed.total_len == 444
    assert fixed.audit()["largeness"] is False


def test_build_x_greedy():
    prefix, chosen, failed = stochlab.build_x_greedy(["identity", "swap-pairs", "reversal"], 3, 6)
    assert failed is None
    assert [(b, e) for _, b, e, _ in chosen] == [(3, 5), (21, 29), (341, 373)]
    assert [s for *_, s in chosen] == [5, 85, 1365]
    assert prefix.popcount() == 2 + 8 + 32


def test_bitset_round_trip():
    a = stochlab.BitPrefix("0110001")
    text = stochlab.format_bitset(a)
    assert text == "#len 7\n0110001\n"
    assert stochlab.parse_bitset(text) == a
    with pytest.raises(stochlab.ParseError):
        stochlab.parse_bitset("#len 3\n01x\n")
    p = stochlab.FinitePermutation.random(20, 3)
    assert stochlab.parse_permutation(stochlab.format_permutation(p)).forward() == p.forward()


def test_run_experiment(tmp_path):
    ok, checks = stochlab.run_experiment({"kind": "count-big", "n": "3"}, tmp_path)
    assert ok
    assert ("bigness-bound[n=3]", True, "count=2 bound=2283/280") in checks
    assert (tmp_path / "big.csv").exists()
    assert (tmp_path / "report.txt").read_text().startswith("CHECK")
    with pytest.raises(stochlab.ParseError):
        stochlab.run_experiment({"kind": "count-big", "n": "three"})
