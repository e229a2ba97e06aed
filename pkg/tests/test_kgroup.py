import itertools
import random

import pytest

from exocoh.characters import aj_character, decompose_into_weyl_basis, weyl_character
from exocoh.kgroup import (
    KClassExpr, Term, class_character, decompose_into_ic_basis, ic_character,
    minuscule_multiplicity_aj, minuscule_multiplicity_costd, minuscule_multiplicity_exotic_costd,
)
from exocoh.qalg import LaurentPoly
from exocoh.rootdatum import build_root_datum

SL2 = build_root_datum("SL2")
A2 = build_root_datum("A2")


def test_term_validation():
    with pytest.raises(ValueError):
        Term("Nope", (0,))
    with pytest.raises(ValueError):
        class_character(SL2, [Term("ProperCostd", (-1,))], 6)
    with pytest.raises(ValueError):
        class_character(A2, [Term("SimpleIC", (1, 0))], 6)


def test_json_round_trip():
    expr = KClassExpr([Term("AJ", (2,), 1, -3), Term("WeylV", (1,), 0, 1, 1)])
    assert KClassExpr.from_json(expr.to_json()) == expr


def test_costd_zero_is_a0():
    assert class_character(SL2, [Term("ProperCostd", (0,))], 8) == aj_character(SL2, (0,), 8)


def test_bar_costd_two_degree_table():
    ch = class_character(SL2, [Term("ProperCostd", (2,))], 12)
    assert decompose_into_weyl_basis(SL2, ch) == {((2,), 1): 1, ((4,), 3): 1, ((6,), 5): 1, ((8,), 7): 1,
                                                  ((10,), 9): 1, ((12,), 11): 1}


@pytest.mark.parametrize("name", ["SL2", "A2", "B2"])
def test_proper_std_and_costd_relations(name):
    datum = build_root_datum(name)
    for lam in [(0,) * datum.rank, (1,) + (0,) * (datum.rank - 1), (1,) * datum.rank]:
        ds = datum.delta_star(lam)
        w0lam = datum.act(datum.w0, lam)
        std = class_character(datum, [Term("ProperStd", lam)], 8)
        costd = class_character(datum, [Term("ProperCostd", lam)], 8)
        assert std.agrees_with(aj_character(datum, w0lam, 8 + ds).twist(ds))
        assert costd.agrees_with(aj_character(datum, lam, 8).scale(LaurentPoly.q(ds)))


def test_weyl_v_has_the_character_of_h0():
    for lam in [(1, 0), (2, 1)]:
        ch = class_character(A2, [Term("WeylV", lam)], 0)
        assert ch.at_q_equals_one() == weyl_character(A2, lam).at_q_equals_one()


def test_shift_sign():
    plus = class_character(SL2, [Term("WeylChi", (2,))], 4)
    minus = class_character(SL2, [Term("WeylChi", (2,), shift=1)], 4)
    assert (plus + minus).is_zero()


def test_random_weyl_expression_round_trip():
    rng = random.Random(7)
    for _ in range(10):
        terms = [Term("WeylChi", (rng.randint(0, 2), rng.randint(0, 2)), rng.randint(-2, 2), rng.randint(-3, 3))
                 for _ in range(3)]
        expected: dict = {}
        for t in terms:
            key = (t.weight, -t.twist)
            expected[key] = expected.get(key, 0) + t.coeff
        expected = {k: v for k, v in expected.items() if v}
        assert decompose_into_weyl_basis(A2, class_character(A2, terms, 6)) == expected


def test_ic_characters():
    assert ic_character(SL2, 0, 6) == aj_character(SL2, (0,), 6)
    two = decompose_into_weyl_basis(SL2, ic_character(SL2, 2, 6))
    assert two == {((0,), -1): -1}


@pytest.mark.parametrize("lam", range(-12, 13))
def test_minuscule_aj_against_full_decomposition(lam):
    ic = decompose_into_ic_basis(SL2, aj_character(SL2, (lam,), 20))
    for mu in (0, 1):
        found = {(t, a) for (label, t), a in ic.items() if label == mu}
        hit = minuscule_multiplicity_aj(SL2, (lam,), (mu,))
        assert found == ({hit} if hit else set())


def test_minuscule_examples():
    assert minuscule_multiplicity_aj(SL2, (3,), (1,)) == (3, 1)
    assert minuscule_multiplicity_aj(SL2, (2,), (1,)) is None
    assert minuscule_multiplicity_exotic_costd(SL2, (2,), (0,)) == (2, 1)
    assert minuscule_multiplicity_exotic_costd(SL2, (-3,), (-1,)) == (2, 1)
    assert minuscule_multiplicity_costd(SL2, (1,), (1,)) == (0, 1)
    with pytest.raises(ValueError):
        minuscule_multiplicity_aj(SL2, (3,), (3,))


@pytest.mark.parametrize("name", ["SL2", "A2", "B2", "A3"])
def test_twist_bookkeeping_identity(name):
    datum = build_root_datum(name)
    lo, hi = (-6, 6) if datum.rank <= 2 else (-3, 3)
    for lam in itertools.product(range(lo, hi + 1), repeat=datum.rank):
        dom = datum.dom(lam)
        assert datum.delta_star(lam) - datum.delta_star(dom) == -datum.delta(lam)
