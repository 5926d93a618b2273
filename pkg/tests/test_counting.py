import math

import pytest

from auslander import counting

T_VALUES = [1, 1, 3, 19, 211, 3651, 90921, 3081513]


def test_t_recursive_values():
    assert [counting.t_recursive(n) for n in range(8)] == T_VALUES


def test_t_recursive_is_exact_beyond_table():
    # A000275 continues 136407699
    assert counting.t_recursive(8) == 136407699


@pytest.mark.parametrize("n", range(0, 7))
def test_t_by_pairs(n):
    assert counting.t_by_pairs(n) == T_VALUES[n]


@pytest.mark.parametrize("n", range(0, 6))
def test_t_by_pairs_naive_oracle(n):
    assert counting.t_by_pairs_naive(n) == counting.t_by_pairs(n)


def test_t_by_pairs_parallel():
    assert counting.t_by_pairs(5, workers=2) == 3651


def test_t_by_pairs_limit():
    with pytest.raises(ValueError):
        counting.t_by_pairs(8)


def test_descent_histogram_sums_to_factorial():
    assert sum(counting.descent_histogram(5)) == math.factorial(5)
    # Eulerian numbers by popcount
    by_k = [0] * 5
    for m, c in enumerate(counting.descent_histogram(5)):
        by_k[bin(m).count("1")] += c
    assert by_k == [1, 26, 66, 26, 1]


def test_report_n1():
    rep = counting.consistency_report(1)
    assert rep.ok and rep.c == 1 and rep.t_recursive == rep.t_pairs == rep.t_interval == rep.facets == 1


def test_report_n3():
    rep = counting.consistency_report(3)
    assert rep.ok
    assert rep.t_recursive == rep.t_pairs == rep.t_interval == rep.facets == 19


def test_report_n5():
    rep = counting.consistency_report(5)
    assert rep.ok
    assert rep.t_recursive == 3651
    assert rep.p == (31, 131, 131, 31, 1) and rep.p_total == 325
    assert rep.to_json()["p_total"] == 325


def test_csv_tables():
    assert "5,120,3651" in counting.counts_csv(5).splitlines()
    rows = counting.p_table_csv(3).splitlines()
    assert rows[1:] == ["1,1,-,-,1", "2,3,1,-,4", "3,7,7,1,15"]
