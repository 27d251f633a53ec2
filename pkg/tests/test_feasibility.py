import pytest
from hypothesis import given, strategies as st

from maxcurves import feasibility as fe
from maxcurves.covers import gsx_genus, profile_exists
from maxcurves.curves import genus_ggk, genus_xn


@pytest.mark.parametrize("Q,g,abk", [(27, 99, (8, 28, 3)), (27, 24, (2, 10, 3))])
def test_genus_class_examples(Q, g, abk):
    gc = fe.genus_class(Q, g)
    assert (gc.A, gc.B, gc.k) == abk


def test_genus_class_boundary():
    Q = 9
    g = (Q + 1 + 2) // 2  # 2g - 2 = Q + 1
    gc = fe.genus_class(Q, g)
    assert (gc.A, gc.B) == (2, Q + 1)


@given(st.sampled_from([4, 8, 9, 27, 32]), st.data())
def test_decomposition_unique(Q, data):
    g = data.draw(st.integers(0, Q * (Q - 1) // 2))
    gc = fe.genus_class(Q, g)
    assert 2 * g - 2 == gc.A * (Q + 1) - gc.B and 1 <= gc.B <= Q + 1
    assert gc.k >= 0 and gc.k * (gc.A + 1) < gc.B <= (gc.k + 1) * (gc.A + 1)


def test_hurwitz_upper():
    assert fe.hurwitz_upper(27, 99) == 3
    assert fe.hurwitz_upper(27, 24) == 15
    assert fe.hurwitz_upper(8, 28) == 1
    with pytest.raises(ValueError):
        fe.hurwitz_upper(8, 1)


def test_splitting_lower():
    assert fe.splitting_lower(8, 10) == 3
    assert fe.splitting_lower(32, 46) == 9
    assert fe.splitting_lower(8, 28) == 1


def test_lemcov_lower():
    assert fe.lemcov_lower(fe.genus_class(27, 99)) == 4
    gc = fe.GenusClass(Q=8, g=0, A=3, B=5, k=1)
    assert fe.lemcov_lower(gc) is None
    gc = fe.GenusClass(Q=8, g=0, A=2, B=1, k=0)
    assert fe.lemcov_lower(gc) == fe.ceil_div(8, 3)


def test_proplb_lower():
    assert fe.proplb_lower(fe.genus_class(27, 99)) == 4
    assert fe.proplb_lower(fe.genus_class(27, 24)) == 12
    assert fe.proplb_lower(fe.GenusClass(Q=8, g=0, A=3, B=5, k=1)) is None
    assert fe.lemcov_corollary(fe.genus_class(27, 24), 12) is True


def test_ramification_budget():
    b = fe.ramification_budget(fe.genus_class(32, 46), 11)
    assert b.degR == 0
    assert fe.ramification_budget(fe.genus_class(27, 24), 12).degR == 148
    gc = fe.genus_class(27, 351)
    assert fe.ramification_budget(gc, 1).degR == 0
    with pytest.raises(ValueError):
        fe.ramification_budget(gc, 0)


@pytest.mark.parametrize("Q", [8, 27, 32])
def test_budget_inequality_on_feasible(Q):
    for g in fe.maximal_genus_spectrum(Q):
        if g < 2:
            continue
        rep = fe.feasible_degrees(Q, g)
        gc = rep.genus_class
        for d in rep.feasible:
            assert fe.budget_inequality(gc, d)


@pytest.mark.parametrize("q", [3, 4, 5])
@pytest.mark.parametrize("n", [3, 5])
def test_ggk_has_no_degree_for_large_q(q, n):
    rep = fe.feasible_degrees(q=q, n=n, family="ggk")
    assert rep.feasible == [] and rep.theorem_tag == "1.1"


@pytest.mark.parametrize("n,d", [(5, 11), (7, 43)])
def test_ggk_q2_single_unramified_degree(n, d):
    rep = fe.feasible_degrees(q=2, n=n, family="ggk")
    assert rep.feasible == [d] == [(2**n + 1) // 3]
    assert fe.ramification_budget(rep.genus_class, d).degR == 0
    assert profile_exists(2**n, rep.g, d)


def test_x3_q3_window():
    rep = fe.feasible_degrees(q=3, n=3, family="xn")
    assert rep.feasible == [12, 13, 14]
    assert rep.eliminated == [{"d": 15, "reason": "group-order"}]
    assert rep.notes


@pytest.mark.parametrize("q", [3, 4])
@pytest.mark.parametrize("n", [3, 5])
def test_xn_window_lower_endpoint(q, n):
    rep = fe.feasible_degrees(q=q, n=n, family="xn")
    lo, hi = fe.theorem_interval("1.3", q, n)
    assert rep.lower == lo
    assert all(lo <= d <= hi for d in rep.feasible)


@pytest.mark.parametrize("n", [3, 5])
def test_xn_window_upper_endpoint_q4(n):
    rep = fe.feasible_degrees(q=4, n=n, family="xn")
    assert rep.upper == fe.theorem_interval("1.3", 4, n)[1]


@pytest.mark.xfail(strict=True, reason="closed-form upper bound is one below the Hurwitz floor at q = 3")
@pytest.mark.parametrize("n", [3, 5])
def test_xn_window_upper_endpoint_q3(n):
    rep = fe.feasible_degrees(q=3, n=n, family="xn")
    assert rep.upper == fe.theorem_interval("1.3", 3, n)[1]


def test_q3_hurwitz_gap_is_exactly_one():
    for n in (3, 5, 7):
        rep = fe.feasible_degrees(q=3, n=n, family="xn")
        assert rep.upper == fe.theorem_interval("1.3", 3, n)[1] + 1


@pytest.mark.parametrize("Q", [8, 27])
def test_sharp_genus_witness(Q):
    for d in (x for x in range(2, Q + 1) if Q % x == 0):
        with pytest.warns(UserWarning) if gsx_genus(Q, d) <= 1 else _nullcontext():
            rep = fe.feasible_degrees(Q, gsx_genus(Q, d))
        assert d in rep.feasible


class _nullcontext:
    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False


def test_bound_ordering_q8():
    assert fe.bound_ordering_violations(8) == []


@pytest.mark.parametrize("Q,count,max_g", [(27, 31, 71), (32, 30, 86)])
def test_bound_ordering_counterexamples_surfaced(Q, count, max_g):
    bad = fe.bound_ordering_violations(Q)
    assert len(bad) == count and max(b["g"] for b in bad) == max_g
    for b in bad:
        chain = [v for v in (b["proplb"], b["lemcov"], b["splitting"]) if v is not None]
        assert any(x < y for x, y in zip(chain, chain[1:]))
        assert b["lemcov"] is None or b["proplb"] is None or b["proplb"] <= b["lemcov"]


@pytest.mark.parametrize("q", [2, 3, 4, 5])
@pytest.mark.parametrize("n", [3, 5, 7])
def test_alternate_genus_expression_is_ggk(q, n):
    assert (q - 1) * (q ** (n + 1) + q**n - q * q) // 2 == genus_ggk(q, n)


def test_order_filter_is_stricter():
    loose = fe.feasible_degrees(q=3, n=3, family="xn")
    strict = fe.feasible_degrees(q=3, n=3, family="xn", order_filter=True)
    assert set(strict.feasible) <= set(loose.feasible)
    assert strict.feasible == [12, 14]


def test_low_genus_warns():
    with pytest.warns(UserWarning):
        rep = fe.feasible_degrees(8, 0)
    assert rep.upper is None and 8 in rep.feasible


def test_conflicting_parameters():
    with pytest.raises(ValueError):
        fe.feasible_degrees(9, q=3, n=3, family="xn")


def test_report_json_schema():
    js = fe.feasible_degrees(q=3, n=3, family="ggk").to_json()
    assert js["feasible"] == [] and set(js) >= {"A", "B", "k", "bounds", "feasible", "eliminated"}


def test_xn_genus_in_report():
    assert fe.feasible_degrees(q=3, n=5, family="xn").g == genus_xn(3, 5)
