import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyperbound.errors import BudgetExceeded, PreconditionError
from hyperbound.gf import Elem, arith, extend, field_make, field_of_order, is_irreducible

SMALL_Q = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32]
ALL_Q = [q for q in range(2, 129)
         if len({p for p in range(2, q + 1) if q % p == 0 and all(p % r for r in range(2, p))}) == 1]


def test_f4_modulus_is_the_unique_irreducible_quadratic():
    assert field_make(2, 2).modulus == (1, 1, 1)


def test_f9_modulus_is_least_irreducible_by_root_check():
    # oracle: monic quadratics over F_3 with no root, in low-degree-first order
    rootless = [(c0, c1, 1) for c0, c1 in itertools.product(range(3), repeat=2)
                if all((c0 + c1 * x + x * x) % 3 for x in range(3))]
    assert field_make(3, 2).modulus == rootless[0] == (1, 0, 1)


def test_prime_field_tables_are_modular_arithmetic():
    F = field_make(7)
    a, b = np.meshgrid(np.arange(7), np.arange(7), indexing="ij")
    assert np.array_equal(F.add_table, (a + b) % 7)
    assert np.array_equal(F.mul_table, (a * b) % 7)


def test_small_arith_examples():
    F4 = field_of_order(4)
    w = F4(2)  # residue class of x
    assert w * (w * w) == F4(1)
    F3 = field_of_order(3)
    assert F3(2) + F3(2) == F3(1)
    F2 = field_of_order(2)
    assert arith(F2(1), F2(1), "div") == F2(1)


def test_division_by_zero_and_mixed_fields():
    F = field_of_order(5)
    with pytest.raises(ZeroDivisionError):
        F.div(3, 0)
    with pytest.raises(PreconditionError):
        F(1) + field_of_order(7)(1)


def test_construction_errors():
    with pytest.raises(PreconditionError):
        field_make(4, 1)
    with pytest.raises(BudgetExceeded):
        field_make(2, 8)
    with pytest.raises(PreconditionError):
        field_of_order(6)


def test_zero_to_the_zero_is_one():
    for q in (2, 9, 16):
        assert field_of_order(q).power(0, 0) == 1
        assert field_of_order(q).power(0, 3) == 0


def test_sqrt_q_power_examples():
    F4 = field_of_order(4)
    assert F4.sqrt_q_power(2) == F4.mul(2, 2)
    for a in F4.elements():
        assert F4.sqrt_q_power(F4.sqrt_q_power(a)) == a
    with pytest.raises(PreconditionError):
        field_of_order(8).sqrt_q


@pytest.mark.parametrize("q", ALL_Q)
def test_multiplicative_order_divides_q_minus_one(q):
    F = field_of_order(q)
    assert all(F.power(a, q - 1) == 1 for a in range(1, q))
    assert all(F.q_power(a) == a for a in range(q))


@pytest.mark.parametrize("q", ALL_Q)
def test_log_tables_agree_with_schoolbook(q):
    F = field_of_order(q)
    assert is_irreducible(F.modulus, F.p)
    for a in range(q):
        for b in range(q):
            assert F.schoolbook_mul(a, b) == F.mul(a, b)


@pytest.mark.parametrize("q", [4, 9, 16, 25, 49, 64, 81, 121])
def test_sqrt_q_power_is_involutive_automorphism(q):
    F = field_of_order(q)
    r = F.sqrt_q
    img = [F.sqrt_q_power(a) for a in range(q)]
    assert sorted(img) == list(range(q))
    assert all(img[img[a]] == a for a in range(q))
    for a in range(q):
        for b in range(q):
            assert img[F.mul(a, b)] == F.mul(img[a], img[b])
            assert img[F.add(a, b)] == F.add(img[a], img[b])
    assert sum(img[a] == a for a in range(q)) == r


@pytest.mark.parametrize("q,s", [(2, 2), (2, 3), (3, 2), (4, 2), (2, 6), (3, 4), (4, 3), (5, 3), (8, 2)])
def test_extension_embedding_is_ring_homomorphism(q, s):
    F = field_of_order(q)
    ext = extend(F, s)
    E, emb = ext.field, ext.embedding
    assert E.q == q**s
    assert ext.embed(0) == 0 and ext.embed(1) == 1
    for a in range(q):
        for b in range(q):
            assert emb[F.add(a, b)] == E.add(emb[a], emb[b])
            assert emb[F.mul(a, b)] == E.mul(emb[a], emb[b])
    # image is the fixed field of x -> x^q
    fixed = sorted(a for a in range(E.q) if E.power(a, q) == a)
    assert fixed == sorted(int(x) for x in emb)


def test_extend_f2_to_f4_fixes_prime_subfield():
    ext = extend(field_of_order(2), 2)
    assert list(ext.embedding) == [0, 1]
    assert sorted(a for a in range(4) if ext.field.mul(a, a) == a) == [0, 1]


def test_extend_degree_one_is_identity():
    F = field_of_order(9)
    ext = extend(F, 1)
    assert ext.field == F and list(ext.embedding) == list(range(9))


def test_tables_are_read_only():
    F = field_of_order(8)
    with pytest.raises(ValueError):
        F.mul_table[1, 1] = 0


@settings(max_examples=200, deadline=None)
@given(q=st.sampled_from(SMALL_Q), data=st.data())
def test_field_axioms(q, data):
    F = field_of_order(q)
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(F.add(a, b), b) == a
    if b:
        assert F.mul(F.div(a, b), b) == a
        assert F.mul(b, F.inv(b)) == 1


@settings(max_examples=100, deadline=None)
@given(q=st.sampled_from(SMALL_Q), data=st.data())
def test_frobenius_is_additive(q, data):
    F = field_of_order(q)
    a, b = data.draw(st.integers(0, q - 1)), data.draw(st.integers(0, q - 1))
    assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))


def test_elem_value_semantics():
    F = field_of_order(9)
    assert F(3) == F(3) and hash(F(3)) == hash(F(3))
    assert (F(3) ** 8) == F(1)
    assert int(F(5) - F(5)) == 0
