import pytest

from maxcurves import curves as cv
from maxcurves.ff import galois_field


@pytest.mark.parametrize("Q,g", [(2, 1), (3, 3), (8, 28)])
def test_genus_hermitian(Q, g):
    assert cv.genus_hermitian(Q) == g


@pytest.mark.parametrize("q,n,g", [(3, 3, 99), (2, 3, 10), (2, 5, 46)])
def test_genus_ggk(q, n, g):
    assert cv.genus_ggk(q, n) == g


@pytest.mark.parametrize("q,n,g", [(3, 3, 24), (2, 3, 3), (2, 5, 15)])
def test_genus_xn(q, n, g):
    assert cv.genus_xn(q, n) == g


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_yrem_genus_equals_x3(q):
    assert cv.genus_yrem(q) == cv.genus_xn(q, 3)


@pytest.mark.parametrize("q,n", [(6, 3), (2, 4), (3, 1)])
def test_bad_parameters(q, n):
    with pytest.raises(ValueError):
        cv.xn(q, n)


@pytest.mark.parametrize("Q", [2, 3, 4, 5])
def test_hermitian_affine_is_cube(Q):
    pc = cv.check_maximal(cv.hermitian(Q))
    assert pc.affine == Q**3 and pc.total == Q**3 + 1 and pc.maximal


@pytest.mark.parametrize("family,q,n,affine", [
    ("hermitian", 2, None, 8), ("hermitian", 3, None, 27),
    ("xn", 2, 3, 112), ("ggk", 2, 3, 224), ("yrem", 2, None, 112),
])
def test_bruteforce_oracle(family, q, n, affine):
    model = cv.make_model(family, q=q, n=n, Q=q if family == "hermitian" else None)
    assert cv.count_affine_bruteforce(model) == affine
    assert cv.count_affine(model) == affine


@pytest.mark.parametrize("family,q,n", [
    ("xn", 2, 3), ("xn", 2, 5), ("xn", 3, 3), ("ggk", 2, 3), ("ggk", 2, 5), ("ggk", 3, 3),
    ("yrem", 2, None), ("yrem", 3, None),
])
def test_families_maximal(family, q, n):
    pc = cv.check_maximal(cv.make_model(family, q=q, n=n))
    assert pc.maximal, pc


def test_n_infinity_derived():
    # n_infinity = target - affine at the smallest parameters, then constant
    for family in ("xn", "ggk"):
        derived = {cv.make_model(family, q=q, n=n).hasse_weil_target - cv.count_affine(cv.make_model(family, q=q, n=n))
                   for q, n in [(2, 3), (2, 5), (3, 3)]}
        assert derived == {1}


def test_extension_count_monotone():
    model = cv.hermitian(2)
    assert cv.count_affine(model) <= cv.count_affine(model, spec=galois_field(2, 6))
    # over F_64 the Hermitian curve of F_4 is still counted exactly by brute force
    assert cv.count_affine(model, spec=galois_field(2, 6)) == cv.count_affine_bruteforce(
        model, spec=galois_field(2, 6), budget=cv.Budget(max_loops=10**4))


def test_workers_do_not_change_count():
    model = cv.xn(3, 3)
    assert cv.count_affine(model, workers=1) == cv.count_affine(model, workers=4)
    assert cv.count_affine(cv.ggk(2, 5), workers=3) == 3968


def test_budget_exceeded():
    with pytest.raises(cv.BudgetExceededError):
        cv.count_affine(cv.xn(3, 3), budget=cv.Budget(max_field=100))


def test_budget_env(monkeypatch):
    monkeypatch.setenv("MAXCURVES_BUDGET", "50")
    assert cv.Budget.from_env().max_field == 50
    with pytest.raises(cv.BudgetExceededError):
        cv.count_affine(cv.xn(2, 3))


def test_point_count_json():
    pc = cv.check_maximal(cv.hermitian(3))
    assert pc.to_json() == {"affine": 27, "at_infinity": 1, "total": 28, "target": 28, "maximal": True}
