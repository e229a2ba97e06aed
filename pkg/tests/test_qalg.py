import pytest
from hypothesis import given, strategies as st

from exocoh.qalg import LaurentPoly, QCharacter

polys = st.dictionaries(st.integers(-6, 6), st.integers(-4, 4), max_size=5).map(LaurentPoly)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == LaurentPoly()


@given(polys, polys)
def test_eval_at_one_is_a_homomorphism(a, b):
    assert (a * b).eval_at_one() == a.eval_at_one() * b.eval_at_one()


@given(polys)
def test_json_round_trip(a):
    assert LaurentPoly.from_json(a.to_json()) == a


def test_formatting():
    assert str(LaurentPoly({4: 1, 1: -1})) == "q^4 - q"
    assert str(LaurentPoly({1: 2})) == "2*q"
    assert str(LaurentPoly({-1: 1})) == "q^-1"
    assert str(LaurentPoly()) == "0"
    assert LaurentPoly({2: 1, 0: -3}).latex() == "q^{2} - 3"


def test_powers_and_substitution():
    q = LaurentPoly.q()
    assert q ** -2 == LaurentPoly({-2: 1})
    assert (q + 1) ** 2 == LaurentPoly({2: 1, 1: 2, 0: 1})
    assert (q + 1).substitute_q_squared() == LaurentPoly({2: 1, 0: 1})
    with pytest.raises(Exception):
        (q + 1) ** -1


def test_character_twist_and_truncation():
    c = QCharacter({(0,): LaurentPoly({0: 1, 2: 1})}, trunc=2, rank=1)
    t = c.twist(1)
    assert t[(0,)] == LaurentPoly({-1: 1, 1: 1})
    assert t.trunc == 1
    assert c.restrict(1)[(0,)] == LaurentPoly(1)


def test_character_json_round_trip():
    c = QCharacter({(1, -1): LaurentPoly({0: 1, 3: -2})}, trunc=5, rank=2)
    assert QCharacter.from_json(c.to_json()) == c
