"""Grothendieck-group classes of perverse-coherent sheaves on the nilpotent cone.

A class is a formal integer combination of named basis objects.  Only its
character is ever computed: ``<m>`` contributes ``q**(-m)`` and a homological
shift ``[k]`` contributes ``(-1)**k``.

Basis tags
----------
``AJ``           A_lam, any weight
``ProperStd``    A_(w0 lam) <delta*_lam>
``ProperCostd``  A_lam <-delta*_lam>
``WeylChi``, ``DualWeylH0``   H^0(lam)
``WeylV``        V(lam), the dual of H^0(-w0 lam)
``SimpleIC``, ``TrueStd``, ``TrueCostd``, ``TiltingT``   rank 1 only
"""

from __future__ import annotations

from dataclasses import dataclass, asdict
from typing import Iterable, Mapping

from .characters import (
    DecompositionError, StabilizationError, aj_character, decompose_into_weyl_basis,
    weyl_character,
)
from .qalg import LaurentPoly, QCharacter
from .rootdatum import RootDatum, Weight

__all__ = [
    "BASIS_TAGS", "Term", "KClassExpr", "class_character", "decompose_into_weyl_basis",
    "decompose_into_ic_basis", "ic_character", "minuscule_multiplicity_aj",
    "minuscule_multiplicity_costd", "minuscule_multiplicity_exotic_costd",
]

BASIS_TAGS = (
    "AJ", "ProperStd", "ProperCostd", "SimpleIC", "TrueStd", "TrueCostd",
    "WeylChi", "DualWeylH0", "WeylV", "TiltingT",
)
_RANK_ONE_ONLY = {"SimpleIC", "TrueStd", "TrueCostd", "TiltingT"}


@dataclass(frozen=True)
class Term:
    basis: str
    weight: Weight
    twist: int = 0
    coeff: int = 1
    shift: int = 0

    def __post_init__(self):
        if self.basis not in BASIS_TAGS:
            raise ValueError(f"unknown basis tag {self.basis!r}")
        object.__setattr__(self, "weight", tuple(int(c) for c in self.weight))

    @property
    def sign(self) -> int:
        return -self.coeff if self.shift % 2 else self.coeff


class KClassExpr(tuple):
    """An immutable list of :class:`Term`."""

    def __new__(cls, terms: Iterable[Term] = ()):
        return super().__new__(cls, tuple(terms))

    def to_json(self) -> list[dict]:
        out = []
        for t in self:
            d = asdict(t)
            d["weight"] = list(t.weight)
            if not t.shift:
                d.pop("shift")
            out.append(d)
        return out

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "KClassExpr":
        return cls(
            Term(d["basis"], tuple(d["weight"]), int(d.get("twist", 0)),
                 int(d.get("coeff", 1)), int(d.get("shift", 0)))
            for d in data
        )

    def __add__(self, other: "KClassExpr") -> "KClassExpr":
        return KClassExpr(tuple(self) + tuple(other))


def _twisted_aj(datum: RootDatum, lam: Weight, twist: int, trunc: int) -> QCharacter:
    # A_lam lives in degrees >= 0, so A_lam<twist> lives in degrees >= -twist
    need = trunc + twist
    if need < 0:
        return QCharacter({}, trunc, datum.rank)
    return aj_character(datum, lam, need).twist(twist)


def _require_dominant(datum: RootDatum, t: Term) -> Weight:
    lam = datum.check_weight(t.weight)
    if not datum.is_dominant(lam):
        raise ValueError(f"{t.basis} needs a dominant weight, got {lam}")
    return lam


def _term_character(datum: RootDatum, t: Term, trunc: int) -> QCharacter:
    if t.basis in _RANK_ONE_ONLY and datum.rank != 1:
        raise ValueError(f"{t.basis} classes are only expandable in rank 1")
    if t.basis == "AJ":
        return _twisted_aj(datum, datum.check_weight(t.weight), t.twist, trunc)
    lam = _require_dominant(datum, t)
    if t.basis == "ProperStd":
        w0lam = datum.act(datum.w0, lam)
        return _twisted_aj(datum, w0lam, t.twist + datum.delta_star(lam), trunc)
    if t.basis == "ProperCostd":
        return _twisted_aj(datum, lam, t.twist - datum.delta_star(lam), trunc)
    if t.basis in ("WeylChi", "DualWeylH0"):
        return weyl_character(datum, lam).restrict(trunc + t.twist).twist(t.twist)
    if t.basis == "WeylV":
        dual = weyl_character(datum, [-c for c in datum.act(datum.w0, lam)])
        return dual.map_weights(lambda w: [-c for c in w]).restrict(trunc + t.twist).twist(t.twist)
    n = lam[0]
    if t.basis == "SimpleIC":
        return ic_character(datum, n, trunc + t.twist).twist(t.twist)
    if t.basis == "TrueCostd":
        base = _term_character(datum, Term("ProperCostd", lam), trunc + t.twist + 2)
        if n == 0:
            return base.restrict(trunc + t.twist).twist(t.twist)
        return (base + base.twist(2)).restrict(trunc + t.twist).twist(t.twist)
    if t.basis == "TrueStd":
        base = _term_character(datum, Term("ProperStd", lam), trunc + t.twist)
        if n == 0:
            return base.twist(t.twist)
        return (base + base.twist(-2)).twist(t.twist)
    if t.basis == "TiltingT":
        # characteristic 0: T(n) = H^0(n)
        return weyl_character(datum, lam).restrict(trunc + t.twist).twist(t.twist)
    raise AssertionError(t.basis)


def class_character(datum: RootDatum, expr: Iterable[Term], trunc: int) -> QCharacter:
    """Character of a K-class, exact up to ``q**trunc``."""
    total = QCharacter({}, trunc, datum.rank)
    for t in expr:
        total = total + _term_character(datum, t, trunc).scale(t.sign).restrict(trunc)
    return total.restrict(trunc)


def ic_character(datum: RootDatum, n: int, trunc: int) -> QCharacter:
    """Character of the simple perverse-coherent sheaf ``IC_n`` in rank 1.

    ``IC_0 = O_N``, ``IC_1 = nabla-bar_1`` and, for ``n >= 2``, the skyscraper
    ``L(n-2)<1>[-1]`` at the origin.
    """
    if datum.rank != 1 or n < 0:
        raise ValueError("IC characters are available for dominant weights in rank 1")
    if n == 0:
        return _twisted_aj(datum, (0,), 0, trunc)
    if n == 1:
        return _twisted_aj(datum, (1,), -1, trunc)
    return weyl_character(datum, (n - 2,)).twist(1).scale(-1).restrict(trunc)


def _ic_step(label: int, twist: int) -> dict[int, dict[int, int]]:
    """``c_mu - q**2 c_(mu-2)`` applied to the Weyl coefficients of ``IC_label<twist>``."""
    if label == 0:
        return {0: {-twist: 1}}
    if label == 1:
        return {1: {1 - twist: 1}}
    return {label: {1 - twist: 1}, label - 2: {-1 - twist: -1}}


def decompose_into_ic_basis(datum: RootDatum, c: QCharacter, margin: int = 4) -> dict[tuple[int, int], int]:
    """Multiplicities ``[X : IC_m<n>]`` of a rank-1 perverse-coherent class.

    The Weyl coefficients ``c_mu`` are replaced by ``c_mu - q**2 c_(mu-2)``,
    which is finitely supported for every class in the span of simples:
    ``IC_0<n>`` and ``IC_1<n>`` become single terms and ``IC_m<n>`` two
    terms.  Labels are then peeled from the largest weight down.  The
    transformed data must vanish within ``margin`` of the truncation bound.
    """
    if datum.rank != 1:
        raise ValueError("IC decomposition is implemented in rank 1 only")
    if c.trunc is None:
        raise ValueError("need a truncated character")
    trunc = c.trunc
    weyl = {}
    for (mu, e), a in decompose_into_weyl_basis(datum, c).items():
        weyl.setdefault(mu[0], {})[e] = a
    step: dict[int, dict[int, int]] = {}
    for mu in set(weyl) | {m + 2 for m in weyl}:
        acc = dict(weyl.get(mu, {}))
        for e, a in weyl.get(mu - 2, {}).items():
            acc[e + 2] = acc.get(e + 2, 0) - a
        acc = {e: a for e, a in acc.items() if a and e <= trunc}
        if acc:
            step[mu] = acc
    for mu, poly in step.items():
        if any(e > trunc - margin for e in poly):
            raise StabilizationError(f"truncation {trunc} too small to separate simple classes at chi({mu})")
    out: dict[tuple[int, int], int] = {}
    while step:
        top = max(step)
        poly = step[top]
        e, a = min(poly.items())
        twist = -e if top == 0 else 1 - e
        if a < 0:
            raise DecompositionError(f"negative multiplicity for IC_{top}<{twist}>")
        out[(top, twist)] = out.get((top, twist), 0) + a
        for mu, contrib in _ic_step(top, twist).items():
            slot = step.setdefault(mu, {})
            for ee, b in contrib.items():
                v = slot.get(ee, 0) - a * b
                if v:
                    slot[ee] = v
                else:
                    slot.pop(ee, None)
            if not slot:
                del step[mu]
    return out


def minuscule_multiplicity_aj(datum: RootDatum, lam, mu) -> tuple[int, int] | None:
    """``(n, 1)`` if ``[A_lam : IC_mu<n>] = 1``, else None; ``mu`` minuscule."""
    lam = datum.check_weight(lam)
    mu = datum.check_weight(mu)
    if not (datum.is_dominant(mu) and datum.is_minuscule(mu)):
        raise ValueError(f"{mu} is not minuscule")
    if datum.minuscule_shift_plus(lam) != mu:
        return None
    return datum.pairing_2rhovee(lam), 1


def minuscule_multiplicity_costd(datum: RootDatum, lam, mu) -> tuple[int, int] | None:
    """``[nabla-bar_lam : IC_mu<n>]`` for dominant ``lam`` and minuscule ``mu``."""
    lam = datum.check_weight(lam)
    mu = datum.check_weight(mu)
    if not datum.is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    if not (datum.is_dominant(mu) and datum.is_minuscule(mu)):
        raise ValueError(f"{mu} is not minuscule")
    if datum.minuscule_shift_plus(lam) != mu:
        return None
    return datum.pairing_2rhovee(lam) - datum.delta_star(lam), 1


def minuscule_multiplicity_exotic_costd(datum: RootDatum, lam, mu) -> tuple[int, int] | None:
    """``[nabla-hat_lam : E_mu<n>]`` for any ``lam`` and antiminuscule ``mu``."""
    lam = datum.check_weight(lam)
    mu = datum.check_weight(mu)
    anti = datum.act(datum.w0, mu)
    if not (datum.is_dominant(anti) and datum.is_minuscule(anti)):
        raise ValueError(f"{mu} is not antiminuscule")
    if datum.minuscule_shift_minus(lam) != mu:
        return None
    return datum.pairing_2rhovee(datum.dom(lam)) - datum.delta(lam), 1
