import pytest

from maxcurves import autgroup as ag
from maxcurves import covers as cov


def _wild_order_two(Q):
    F = ag.quadratic_field(Q)
    c = next(v for v in cov.translation_kernel(Q) if not v.is_zero())
    return cov.SubgroupWitness.generate([ag.StabilizerElement(F.one, F.zero, c, Q)], Q)


def test_translation_kernel_size():
    for Q in (2, 3, 4, 8, 9):
        assert len(cov.translation_kernel(Q)) == Q


def test_order_two_wild_group():
    G = _wild_order_two(2)
    degR, prof = cov.ramification_degree(G)
    assert G.order == 2 and degR == 4 and prof.counts == {"Q+2": 1}
    assert cov.quotient_genus(G, 2) == 0


@pytest.mark.parametrize("Q", [2, 3, 4])
def test_diagonal_torus(Q):
    F = ag.quadratic_field(Q)
    gen = next(a for a in F.elements() if not a.is_zero() and a.multiplicative_order() == Q + 1)
    G = cov.SubgroupWitness.generate([ag.StabilizerElement(gen, F.zero, F.zero, Q)], Q)
    degR, _ = cov.ramification_degree(G)
    assert G.order == Q + 1 and degR == Q * (Q + 1)


def test_trivial_group():
    G = cov.SubgroupWitness((ag.identity(3),), 3)
    assert cov.ramification_degree(G)[0] == 0
    assert cov.quotient_genus(G, 3) == 3


@pytest.mark.parametrize("Q,d,g", [(8, 2, 12), (8, 8, 0), (8, 1, 28), (9, 3, 9)])
def test_gsx_genus(Q, d, g):
    assert cov.gsx_genus(Q, d) == g


def test_gsx_genus_bad_divisor():
    with pytest.raises(ValueError):
        cov.gsx_genus(8, 3)


def test_q8_order_two_quotient():
    G = cov.translation_subgroup(8, 2)
    degR, _ = cov.ramification_degree(G)
    assert degR == 10 and cov.quotient_genus(G, 8) == 12


@pytest.mark.parametrize("Q", [2, 3, 4, 8])
def test_all_translation_subgroups(Q):
    subs = cov.translation_subgroups(Q)
    for G in subs:
        degR, prof = cov.ramification_degree(G)
        assert degR == (G.order - 1) * (Q + 2)
        assert cov.quotient_genus(G, Q) == cov.gsx_genus(Q, G.order)
        assert prof.satisfies_bounds()


@pytest.mark.parametrize("Q", [2, 3])
def test_cyclic_subgroups_genus_and_soundness(Q):
    seen = set()
    for s in ag.enumerate_stabilizer(Q):
        G = cov.SubgroupWitness.generate([s], Q)
        key = frozenset(G.elements)
        if key in seen:
            continue
        seen.add(key)
        degR, prof = cov.ramification_degree(G)
        g = cov.quotient_genus(G, Q, degR)
        assert g >= 0 and prof.satisfies_bounds() and prof.d == G.order
        assert prof.vector in {p.vector for p in cov.profile_solutions(Q, g, G.order)}
        assert cov.hermitian_genus_check(Q, G)


def test_not_a_subgroup():
    elems = list(ag.enumerate_stabilizer(2))[:3]
    with pytest.raises(cov.NotASubgroupError):
        cov.SubgroupWitness(tuple(elems), 2).validate()


def test_generate_cap():
    with pytest.raises(ValueError):
        cov.SubgroupWitness.generate(list(ag.enumerate_stabilizer(3))[1:5], 3, cap=5)


def test_y_curve_profile():
    sols = cov.profile_solutions(8, 3, 6)
    assert cov.required_degR(8, 3, 6) == 30
    assert (0, 2, 0, 0, 2, 1) in {p.vector for p in sols}
    # frozen from full enumeration
    assert len(sols) == 6
    assert all(p.degR == 30 and p.d == 6 for p in sols)


def test_profile_unramified_and_empty():
    assert [p.vector for p in cov.profile_solutions(32, 46, 11)] == [(10, 0, 0, 0, 0, 0)]
    assert cov.profile_solutions(8, 3, 40) == []


def test_profile_bruteforce_agrees():
    import itertools
    Q, g, d = 4, 1, 4
    R = cov.required_degR(Q, g, d)
    vals = cov.category_values(Q)
    brute = {v for v in itertools.product(range(d), repeat=6)
             if sum(v) == d - 1 and sum(a * b for a, b in zip(v, vals)) == R}
    assert brute == {p.vector for p in cov.profile_solutions(Q, g, d)}


def test_profile_filters():
    all_ = {p.vector for p in cov.profile_solutions(8, 3, 6)}
    stab = {p.vector for p in cov.profile_solutions(8, 3, 6, in_stabilizer=True)}
    assert stab <= all_ and all(v[0] == v[3] == 0 for v in stab)


def test_profile_json():
    prof = cov.RamificationProfile.from_vector(8, (0, 2, 0, 0, 2, 1))
    assert prof.to_json() == {"n": [0, 2, 0, 0, 2, 1], "u": 2, "v": 3, "degR": 30}


def test_search_subgroup_y_curve():
    res = cov.search_subgroup(8, 6, (0, 2, 0, 0, 2, 1), 3)
    assert res.found and res.genus == 3 and res.subgroup.order == 6
    res.subgroup.validate()
    assert res.log
