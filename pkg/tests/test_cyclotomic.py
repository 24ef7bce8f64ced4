import random

import pytest
from hypothesis import given, settings, strategies as st

from mckaygraphs.cyclotomic import CycInt, cyc_sum, cyclotomic_polynomial, euler_phi


def poly_divides(num, den):
    """Exact division check over Z, lowest-degree-first coefficients."""
    num = list(num)
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c % den[-1]:
            return False
        q = c // den[-1]
        for j in range(dd + 1):
            num[i - dd + j] -= q * den[j]
    return all(v == 0 for v in num)


def test_cyclotomic_base_cases():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)


def test_cyclotomic_12_by_division():
    # divide x^12 - 1 by Phi_1 Phi_2 Phi_3 Phi_4 Phi_6 and compare
    num = [-1] + [0] * 11 + [1]
    for d in (1, 2, 3, 4, 6):
        den = list(cyclotomic_polynomial(d))
        dd = len(den) - 1
        quot = [0] * (len(num) - dd)
        for i in range(len(num) - 1, dd - 1, -1):
            c = num[i]
            quot[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
        assert all(v == 0 for v in num[:dd])
        num = quot
    assert tuple(num) == cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_cyclotomic_degree_and_divisibility_up_to_240():
    for e in range(1, 241):
        phi = cyclotomic_polynomial(e)
        assert len(phi) - 1 == euler_phi(e)
        assert phi[-1] == 1
        xe_minus_1 = [-1] + [0] * (e - 1) + [1]
        assert poly_divides(xe_minus_1, phi)


def test_root_arithmetic_examples():
    z4 = CycInt.root(4)
    assert z4 * z4 == -1
    z3 = CycInt.root(3)
    assert z3 + z3 * z3 == -1
    z8 = CycInt.root(8)
    assert (z8 + z8.conjugate()) ** 2 == 2


def test_as_integer():
    assert CycInt.integer(7).as_integer() == 7
    assert CycInt.root(3).as_integer() is None
    z3 = CycInt.root(3)
    assert (z3 + z3**2 + 5).as_integer() == 4


def test_galois_inverse_examples():
    z4 = CycInt.root(4)
    assert z4.conjugate() == -z4
    assert CycInt.integer(11).conjugate() == 11
    z5 = CycInt.root(5)
    real = z5 + z5**4
    assert real.conjugate() == real


def test_cross_order_equality_and_hash():
    a = CycInt.root(8, 2)
    b = CycInt.root(4)
    assert a == b
    assert hash(a) == hash(b)
    assert CycInt.root(6) == -CycInt.root(3, 2)
    assert CycInt(3, (-1, -1)) == CycInt.root(3, 2)


def test_reduced_minimizes_order():
    v = CycInt.root(12, 3)  # zeta_12^3 = i
    r = v.reduced()
    assert r.order == 4 and r == CycInt.root(4)
    assert (CycInt.root(3) + CycInt.root(3, 2)).reduced().order == 1


small_orders = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 9, 12, 15, 16, 20, 24])


@st.composite
def cyc_values(draw):
    e = draw(small_orders)
    length = draw(st.integers(min_value=1, max_value=euler_phi(e) + 2))
    coeffs = draw(
        st.lists(st.integers(-9, 9), min_size=length, max_size=length)
    )
    return CycInt(e, coeffs)


@settings(max_examples=200, deadline=None)
@given(cyc_values(), cyc_values(), cyc_values())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=200, deadline=None)
@given(cyc_values())
def test_galois_involution(a):
    assert a.conjugate().conjugate() == a


@settings(max_examples=100, deadline=None)
@given(cyc_values())
def test_reduced_is_equal_and_idempotent(a):
    r = a.reduced()
    assert r == a
    assert r.reduced().order == r.order


def test_bulk_random_triples_axioms():
    rng = random.Random(2024)
    orders = [1, 2, 3, 4, 6, 8, 12]
    for _ in range(2000):
        e = rng.choice(orders)
        phi = euler_phi(e)
        vals = [
            CycInt(e, [rng.randint(-5, 5) for _ in range(phi)]) for _ in range(3)
        ]
        a, b, c = vals
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c


def test_cyc_sum():
    zs = [CycInt.root(5, k) for k in range(5)]
    assert cyc_sum(zs).as_integer() == 0
