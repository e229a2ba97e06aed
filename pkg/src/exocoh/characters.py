"""
Character formulas: the q-analogue of Kostant's partition function, Lusztig's
q-analogue of weight multiplicity, Weyl characters, and truncated characters
of the graded G-modules ``A_lam`` (global sections of line bundles on the
Springer resolution).

Lusztig polynomials are returned in their own variable ``q_L``; characters of
graded modules use the grading variable ``q = sqrt(q_L)``.
"""

from __future__ import annotations

import itertools
import math
import threading
from functools import lru_cache
from typing import Mapping, Sequence

from .qalg import LaurentPoly, QCharacter
from .rootdatum import RootDatum, Weight

__all__ = [
    "PartitionTable", "partition_table", "partition_q", "partition_q_of_weight",
    "lusztig_q", "weyl_character", "weyl_dimension", "dominant_weights_below",
    "aj_weyl_coefficients", "aj_character", "decompose_into_weyl_basis",
    "weyl_basis_character", "alternating_aj_sum", "alternating_aj_identity",
    "good_filtration_multiplicities", "DecompositionError", "StabilizationError",
]

_ONE = LaurentPoly(1)
_ZERO = LaurentPoly()


class DecompositionError(ArithmeticError):
    """A character is not W-invariant or not in the span of Weyl characters."""


class StabilizationError(ArithmeticError):
    """The truncation bound is too small for the requested check."""


class PartitionTable:
    """Memoized ``P_nu(q)`` for one root datum.

    Keys are simple-root coordinate vectors.  Reads are lock-free; inserts
    take a lock so a table can be shared between threads.
    """

    def __init__(self, datum: RootDatum):
        self.datum = datum
        self._roots = datum.positive_roots
        self._memo: dict[tuple[int, Weight], LaurentPoly] = {}
        self._lock = threading.Lock()

    def __call__(self, nu: Sequence[int]) -> LaurentPoly:
        nu = tuple(nu)
        if len(nu) != self.datum.rank:
            raise ValueError(f"root-lattice vector {nu} has wrong length")
        if any(int(c) != c for c in nu):
            raise ValueError(f"{nu} is not in the root lattice")
        return self._p(len(self._roots), tuple(int(c) for c in nu))

    def _p(self, i: int, nu: Weight) -> LaurentPoly:
        if any(c < 0 for c in nu):
            return _ZERO
        if i == 0:
            return _ONE if not any(nu) else _ZERO
        key = (i, nu)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        beta = self._roots[i - 1]
        rest = tuple(a - b for a, b in zip(nu, beta))
        val = self._p(i - 1, nu) + self._p(i, rest).shift(1)
        with self._lock:
            self._memo[key] = val
        return val


@lru_cache(maxsize=None)
def partition_table(datum: RootDatum) -> PartitionTable:
    return PartitionTable(datum)


def partition_q(datum: RootDatum, nu: Sequence[int]) -> LaurentPoly:
    """``P_nu(q)`` for ``nu`` in simple-root coordinates.

    >>> from exocoh.rootdatum import build_root_datum
    >>> partition_q(build_root_datum("A2"), (1, 1))
    LaurentPoly('q^2 + q')
    """
    return partition_table(datum)(nu)


def partition_q_of_weight(datum: RootDatum, lam: Sequence[int]) -> LaurentPoly:
    """``P`` of a weight given in fundamental-weight coordinates; zero off the root lattice."""
    coords = datum.root_lattice_coords(lam)
    if coords is None:
        return _ZERO
    return partition_table(datum)(coords)


def lusztig_q(datum: RootDatum, lam: Sequence[int], mu: Sequence[int]) -> LaurentPoly:
    """``M_lam^mu(q_L) = sum_w (-1)^l(w) P(w(lam + rho) - (mu + rho))``."""
    lam = datum.check_weight(lam)
    mu = datum.check_weight(mu)
    if datum.root_lattice_coords([a - b for a, b in zip(lam, mu)]) is None:
        return _ZERO
    table = partition_table(datum)
    rho = datum.rho
    lr = tuple(a + r for a, r in zip(lam, rho))
    mr = tuple(a + r for a, r in zip(mu, rho))
    acc: dict[int, int] = {}
    for mat, length in datum.weyl_elements:
        image = tuple(sum(m * x for m, x in zip(row, lr)) for row in mat)
        coords = datum.root_lattice_coords([a - b for a, b in zip(image, mr)])
        if coords is None or any(c < 0 for c in coords):
            continue
        sign = -1 if length % 2 else 1
        for e, a in table(coords).items():
            acc[e] = acc.get(e, 0) + sign * a
    return LaurentPoly(acc)


def _require_dominant(datum: RootDatum, lam: Sequence[int]) -> Weight:
    lam = datum.check_weight(lam)
    if not datum.is_dominant(lam):
        raise ValueError(f"weight {lam} is not dominant")
    return lam


def dominant_weights_below(datum: RootDatum, lam: Sequence[int]) -> list[Weight]:
    """Dominant ``mu`` with ``mu <= lam`` in the dominance order (``lam`` dominant)."""
    lam = _require_dominant(datum, lam)
    top = datum.root_lattice_coords([a - b for a, b in zip(lam, datum.act(datum.w0, lam))])
    out = []
    for k in itertools.product(*(range(t + 1) for t in top)):
        shift = datum.root_to_weight(k)
        mu = tuple(a - b for a, b in zip(lam, shift))
        if datum.is_dominant(mu):
            out.append(mu)
    return out


@lru_cache(maxsize=4096)
def _weyl_multiplicities(datum: RootDatum, lam: Weight) -> tuple[tuple[Weight, int], ...]:
    mults: dict[Weight, int] = {}
    for mu in dominant_weights_below(datum, lam):
        m = lusztig_q(datum, lam, mu).eval_at_one()
        if m:
            for nu in datum.weyl_orbit(mu):
                mults[nu] = m
    return tuple(sorted(mults.items()))


def weyl_character(datum: RootDatum, lam: Sequence[int]) -> QCharacter:
    """Character of ``H^0(lam)`` via Kostant's multiplicity formula.

    >>> from exocoh.rootdatum import build_root_datum
    >>> sorted(weyl_character(build_root_datum("SL2"), (2,)).at_q_equals_one().items())
    [((-2,), 1), ((0,), 1), ((2,), 1)]
    """
    lam = _require_dominant(datum, lam)
    return QCharacter({w: LaurentPoly(m) for w, m in _weyl_multiplicities(datum, lam)}, None, datum.rank)


def weyl_dimension(datum: RootDatum, lam: Sequence[int]) -> int:
    lam = _require_dominant(datum, lam)
    num = den = 1
    for c in datum.positive_coroots:
        num *= datum.pair(lam, c) + sum(c)
        den *= sum(c)
    return num // den


def weyl_basis_character(datum: RootDatum, coeffs: Mapping[Weight, LaurentPoly],
                         trunc: int | None = None) -> QCharacter:
    """Expand ``sum_mu coeffs[mu] * chi(mu)`` into a weight-by-weight character."""
    acc: dict[Weight, dict[int, int]] = {}
    for mu, p in coeffs.items():
        p = p.truncate(trunc)
        if not p:
            continue
        pc = p.coeffs
        for nu, m in _weyl_multiplicities(datum, tuple(mu)):
            slot = acc.setdefault(nu, {})
            for e, a in pc.items():
                slot[e] = slot.get(e, 0) + m * a
    return QCharacter({w: LaurentPoly(c) for w, c in acc.items()}, trunc, datum.rank)


def _candidate_dominant(datum: RootDatum, lam: Weight, lusztig_degree: int) -> list[Weight]:
    """Dominant ``mu >= lam`` that can meet ``M_mu^lam`` in degree <= ``lusztig_degree``.

    A nonzero coefficient of ``q_L**k`` needs ``w(mu + rho) = lam + rho + nu``
    with ``nu`` a sum of ``k`` positive roots, so ``|mu + rho|`` is at most
    ``|lam + rho| + k * max|alpha|`` for any W-invariant norm.
    """
    rho = datum.rho
    lr = tuple(a + r for a, r in zip(lam, rho))
    longest = max(datum.norm2(datum.root_to_weight(b)) for b in datum.positive_roots)
    radius = math.sqrt(datum.norm2(lr)) + lusztig_degree * math.sqrt(longest)
    bound2 = radius * radius * (1 + 1e-12) + 1e-9
    g = datum.gram
    box = []
    for i in range(datum.rank):
        box.append(range(0, int(radius / math.sqrt(g[i][i])) + 1))
    out = []
    for mu in itertools.product(*box):
        if not datum.preceq(lam, mu):
            continue
        mr = tuple(a + r for a, r in zip(mu, rho))
        if datum.norm2(mr) <= bound2:
            out.append(mu)
    return out


def aj_weyl_coefficients(datum: RootDatum, lam: Sequence[int], trunc: int) -> dict[Weight, LaurentPoly]:
    """Coefficients of ``chi(mu)`` in ``ch A_lam``, grading variable, exact up to ``q**trunc``."""
    if trunc < 0:
        raise ValueError("truncation bound must be nonnegative")
    lam = datum.check_weight(lam)
    k_max = trunc // 2
    out = {}
    for mu in _candidate_dominant(datum, lam, k_max):
        p = lusztig_q(datum, mu, lam).truncate(k_max).substitute_q_squared()
        if p:
            out[mu] = p
    return out


def aj_character(datum: RootDatum, lam: Sequence[int], trunc: int) -> QCharacter:
    """Truncated character of ``A_lam = sum_mu M_mu^lam(q**2) chi(mu)``.

    >>> from exocoh.rootdatum import build_root_datum
    >>> c = aj_character(build_root_datum("SL2"), (0,), 4)
    >>> c[(0,)], c[(4,)]
    (LaurentPoly('q^4 + q^2 + 1'), LaurentPoly('q^4'))
    """
    return weyl_basis_character(datum, aj_weyl_coefficients(datum, lam, trunc), trunc)


def _order_key(datum: RootDatum, mu: Weight):
    return (datum.pairing_2rhovee(mu), mu)


def decompose_into_weyl_basis(datum: RootDatum, c: QCharacter) -> dict[tuple[Weight, int], int]:
    """Write a W-invariant character as ``sum n_(mu,e) q**e chi(mu)``.

    Elimination starts from a maximal dominant weight (largest pairing with
    ``2 rho^vee``, ties broken lexicographically), which is maximal for the
    dominance order.
    """
    for w, p in c.terms.items():
        d = datum.dom(w)
        if c[d] != p:
            raise DecompositionError(f"character is not W-invariant at weight {w}")
    remaining = {w: dict(p.coeffs) for w, p in c.terms.items()}
    out: dict[tuple[Weight, int], int] = {}
    while remaining:
        dominant = [w for w in remaining if datum.is_dominant(w)]
        if not dominant:
            raise DecompositionError("nonzero residual with no dominant weight")
        mu = max(dominant, key=lambda w: _order_key(datum, w))
        poly = dict(remaining[mu])
        for e, a in poly.items():
            out[(mu, e)] = out.get((mu, e), 0) + a
        for nu, m in _weyl_multiplicities(datum, mu):
            slot = remaining.setdefault(nu, {})
            for e, a in poly.items():
                v = slot.get(e, 0) - m * a
                if v:
                    slot[e] = v
                else:
                    slot.pop(e, None)
            if not slot:
                del remaining[nu]
    return {k: v for k, v in out.items() if v}


def alternating_aj_sum(datum: RootDatum, lam: Sequence[int], trunc: int
                       ) -> tuple[dict[Weight, LaurentPoly], set[Weight]]:
    """Weyl-basis coefficients of ``sum_w (-1)^l(w) ch A_(lam + rho - w rho)``.

    Returns the coefficients together with the set of dominant weights whose
    coefficient is complete at this truncation: every contributing Lusztig
    polynomial has degree at most the height of ``mu - source``, so ``mu``
    is complete once twice that height fits under ``trunc``.
    """
    lam = _require_dominant(datum, lam)
    rho = datum.rho
    sources = []
    for mat, length in datum.weyl_elements:
        w_rho = tuple(sum(m * x for m, x in zip(row, rho)) for row in mat)
        src = tuple(a + r - s for a, r, s in zip(lam, rho, w_rho))
        sources.append((src, -1 if length % 2 else 1))
    total: dict[Weight, LaurentPoly] = {}
    for src, sign in sources:
        for mu, p in aj_weyl_coefficients(datum, src, trunc).items():
            total[mu] = total.get(mu, _ZERO) + (p if sign > 0 else -p)

    def complete(mu: Weight) -> bool:
        for src, _ in sources:
            diff = datum.root_lattice_coords([a - b for a, b in zip(mu, src)])
            if diff is not None and all(x >= 0 for x in diff) and 2 * sum(diff) > trunc:
                return False
        return True

    stable = {mu for mu in set(total) | {lam} if complete(mu)}
    return {mu: p for mu, p in total.items() if p}, stable


def alternating_aj_identity(datum: RootDatum, lam: Sequence[int], trunc: int = 12) -> dict[Weight, int]:
    """Residual of ``chi(lam) = (sum_w (-1)^l(w) ch A_(lam + rho - w rho))|_(q=1)``.

    The evaluation at ``q = 1`` is taken coefficientwise in the basis of Weyl
    characters, on the dominant weights whose coefficients are complete at
    ``trunc``.  The same coefficients are recomputed at ``trunc + 4`` and must
    agree; otherwise :class:`StabilizationError` is raised.  An empty dict
    means the identity holds.
    """
    lam = _require_dominant(datum, lam)
    coeffs, stable = alternating_aj_sum(datum, lam, trunc)
    wider, _ = alternating_aj_sum(datum, lam, trunc + 4)
    for mu in stable:
        if coeffs.get(mu, _ZERO) != wider.get(mu, _ZERO):
            raise StabilizationError(f"coefficient of chi{mu} changed between truncations {trunc} and {trunc + 4}")
    residual = {}
    for mu in stable:
        v = coeffs.get(mu, _ZERO).eval_at_one() - (1 if mu == lam else 0)
        if v:
            residual[mu] = v
    return residual


def good_filtration_multiplicities(datum: RootDatum, lam: Sequence[int], mu: Sequence[int]) -> LaurentPoly:
    """``sum_n [A_lam : H^0(mu)<-2n>] q_L**n``, which equals ``M_mu^lam(q_L)``."""
    mu = _require_dominant(datum, mu)
    return lusztig_q(datum, mu, lam)
