import itertools

import pytest
from hypothesis import given, settings, strategies as st

from maxcurves.ff import (
    FieldMismatchError, enumerate_field, find_irreducible, galois_field, is_irreducible,
    poly_gcd, poly_powmod, poly_sub, prime_power, rel_norm, rel_trace,
)


def _no_root(f, p):
    return all(sum(c * pow(x, i, p) for i, c in enumerate(f)) % p for x in range(p))


def _smallest_by_roots(p, m):
    """Independent search for m <= 3: irreducible iff no root in F_p."""
    for tail in itertools.product(range(p), repeat=m):
        # constant term varies slowest, matching constant-term-first lexicographic order
        f = tail + (1,)
        if _no_root(f, p):
            return f


@pytest.mark.parametrize("p,m,expected", [(3, 1, (0, 1)), (3, 2, (1, 0, 1)), (2, 2, (1, 1, 1))])
def test_find_irreducible_examples(p, m, expected):
    assert find_irreducible(p, m) == expected


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (5, 3), (7, 3)])
def test_find_irreducible_matches_root_search(p, m):
    assert find_irreducible(p, m) == _smallest_by_roots(p, m)


@pytest.mark.parametrize("p,m", [(2, 4), (2, 6), (3, 4), (3, 6), (2, 12)])
def test_find_irreducible_gcd_test(p, m):
    f = list(find_irreducible(p, m))
    x = [0, 1]
    for k in range(1, m // 2 + 1):
        xp = poly_powmod(x, p**k, f, p)
        g = poly_gcd(f, poly_sub(xp, x, p), p)
        assert len(g) == 1, f"factor of degree dividing {k}"
    assert is_irreducible(f, p)


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(27) == (3, 3)
    assert prime_power(6) is None
    assert prime_power(1) is None


def test_f9_arithmetic():
    F = galois_field(3, 2)
    a = F([0, 1])
    assert F(2).inv() == F(2)
    assert a * a == F(2)
    assert a.frobenius(3) == F([0, 2])
    assert a.frobenius(9) == a
    assert F.zero.frobenius(3) == F.zero
    assert rel_norm(a, 3) == F(1)
    assert rel_trace(a, 3) == F.zero
    assert rel_norm(F.zero, 3) == F.zero and rel_trace(F.zero, 3) == F.zero
    for v in F.elements():
        if not v.is_zero():
            assert v**8 == F.one


def test_zero_power_and_errors():
    F = galois_field(2, 2)
    assert F.zero**0 == F.one
    with pytest.raises(ZeroDivisionError):
        F.zero.inv()
    with pytest.raises(FieldMismatchError):
        F.one + galois_field(3, 2).one


@pytest.mark.parametrize("p,m,size", [(2, 1, 2), (2, 2, 4), (3, 6, 729)])
def test_enumerate(p, m, size):
    F = galois_field(p, m)
    elems = list(enumerate_field(F))
    assert len(elems) == size == len({e.code for e in elems})
    assert [e.coeffs for e in elems] == sorted((e.coeffs for e in elems), key=lambda c: tuple(reversed(c)))


@pytest.mark.parametrize("Q", [2, 3, 4])
def test_trace_fibers(Q):
    p, k = prime_power(Q)
    F = galois_field(p, 2 * k)
    fibers = {}
    for v in F.elements():
        t = rel_trace(v, Q)
        assert t**Q == t
        nv = rel_norm(v, Q)
        assert nv**Q == nv
        fibers[t.code] = fibers.get(t.code, 0) + 1
    assert len(fibers) == Q and set(fibers.values()) == {Q}


def test_vectorised_ops_match_scalar():
    F = galois_field(3, 4)
    ops = F.ops
    import numpy as np
    codes = np.arange(F.order)
    a = [F.from_code(int(c)) for c in codes]
    b = [F.from_code(int((7 * c + 5) % F.order)) for c in codes]
    bc = np.array([x.code for x in b])
    assert [x.code for x in (u * v for u, v in zip(a, b))] == ops.mul(codes, bc).tolist()
    assert [x.code for x in (u + v for u, v in zip(a, b))] == ops.add(codes, bc).tolist()
    assert [x.code for x in (u**11 for u in a)] == ops.pow(codes, 11).tolist()


fields = st.sampled_from([(2, 3), (3, 2), (5, 2), (2, 5), (7, 1)])


@settings(max_examples=60, deadline=None)
@given(fields, st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 10**6))
def test_field_axioms(pm, i, j, k):
    F = galois_field(*pm)
    a, b, c = (F.from_code(t % F.order) for t in (i, j, k))
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == F.zero
    if not a.is_zero():
        assert a * a.inv() == F.one
        assert (a / a) == F.one
