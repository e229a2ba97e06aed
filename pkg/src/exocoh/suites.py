"""Bundled verification suites shared by the command line and the test-suite.

Each suite yields :class:`Case` records; a suite passes when every case does.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from . import sl2
from .characters import aj_character, lusztig_q, partition_q_of_weight
from .kgroup import (
    decompose_into_ic_basis, minuscule_multiplicity_aj, minuscule_multiplicity_costd,
    minuscule_multiplicity_exotic_costd,
)
from .qalg import LaurentPoly

__all__ = ["Case", "SUITES", "run_suite", "closed_form_partition", "closed_form_lusztig"]


@dataclass(frozen=True)
class Case:
    ident: str
    ok: bool
    detail: str = ""


def closed_form_partition(n: int) -> LaurentPoly:
    return LaurentPoly.q(n // 2) if n >= 0 and n % 2 == 0 else LaurentPoly()


def closed_form_lusztig(n: int, m: int) -> LaurentPoly:
    """Closed form of ``M_n^m`` for SL2; the last case applies when ``m <= -n - 2``."""
    if m > n or (n - m) % 2:
        return LaurentPoly()
    if m >= -n:
        return LaurentPoly.q((n - m) // 2)
    return LaurentPoly.q((n - m) // 2) - LaurentPoly.q((-n - m - 2) // 2)


def closed_forms_suite(n_max: int = 40, m_max: int = 60) -> Iterator[Case]:
    for n in range(0, n_max + 1):
        got = partition_q_of_weight(sl2.SL2, (n,))
        want = closed_form_partition(n)
        yield Case(f"P_{n}", got == want, f"{got} != {want}")
    for n in range(0, n_max + 1):
        for m in range(-m_max, m_max + 1):
            got = lusztig_q(sl2.SL2, (n,), (m,))
            want = closed_form_lusztig(n, m)
            yield Case(f"M_{n}^{m}", got == want, f"{got} != {want}")


def ses_suite(bound: int = 10, trunc: int = 12) -> Iterator[Case]:
    for name, in_range in sl2.SES_DOMAINS.items():
        for n in range(-bound, bound + 1):
            if in_range(n):
                residual = sl2.verify_ses(name, n, trunc)
                yield Case(f"{name} n={n}", residual.is_zero(), repr(residual))


def expected_costd_hom(m: int, n: int, k: int) -> int:
    return int(sl2.geq_x(m, n) and k == abs(m) - abs(n) - sl2.delta(m) + sl2.delta(n))


def homdim_suite(bound: int = 6, k_min: int = -2, k_max: int = 10, trunc: int = 28,
                 transform: Callable[[sl2.SL2Object], sl2.SL2Object] | None = None) -> Iterator[Case]:
    """Hom spaces between costandard objects against the closed formula."""
    objs = {n: sl2.costd(n, trunc) for n in range(-bound, bound + 1)}
    if transform is not None:
        objs = {n: transform(o) for n, o in objs.items()}
    for m in objs:
        for n in objs:
            for k in range(k_min, k_max + 1):
                res = sl2.hom_dim(objs[m], objs[n], k)
                want = expected_costd_hom(m, n, k)
                ok = res.dimension == want and (not want or res.surjective)
                yield Case(f"Hom(costd({m}), costd({n})<{k}>)", ok, f"{res} expected dimension {want}")
    for n in objs:
        target = sl2.simple(sl2.m_minus(n), trunc)
        if transform is not None:
            target = transform(target)
        res = sl2.hom_dim(objs[n], target, abs(n) - sl2.delta(n))
        yield Case(f"cosocle costd({n})", res.dimension == 1 and res.surjective, repr(res))


def tilting_positivity_suite(bound: int = 5, k_min: int = -6, trunc: int = 24) -> Iterator[Case]:
    objs = {n: sl2.tilting(n, trunc) for n in range(-bound, bound + 1)}
    for n in objs:
        for m in objs:
            for k in range(k_min, 0):
                res = sl2.hom_dim(objs[n], objs[m], k)
                yield Case(f"Hom(tilting({n}), tilting({m})<{k}>)", res.dimension == 0, repr(res))


def minuscule_suite(bound: int = 12, trunc: int = 20) -> Iterator[Case]:
    """Minuscule multiplicity formulas against full rank-1 decompositions."""
    datum = sl2.SL2
    for lam in range(-bound, bound + 1):
        ic = decompose_into_ic_basis(datum, aj_character(datum, (lam,), trunc))
        for mu in (0, 1):
            found = {(t, a) for (label, t), a in ic.items() if label == mu}
            hit = minuscule_multiplicity_aj(datum, (lam,), (mu,))
            yield Case(f"[A_{lam} : IC_{mu}]", found == ({hit} if hit else set()), f"{found} vs {hit}")
    for lam in range(0, bound + 1):
        ic = sl2.bar_composition_multiplicities(lam, trunc)
        for mu in (0, 1):
            found = {(t, a) for (label, t), a in ic.items() if label == mu}
            hit = minuscule_multiplicity_costd(datum, (lam,), (mu,))
            yield Case(f"[bar_costd({lam}) : IC_{mu}]", found == ({hit} if hit else set()), f"{found} vs {hit}")
    for lam in range(-bound, bound + 1):
        comp = sl2.composition_multiplicities(sl2.costd(lam, trunc))
        for mu in (0, -1):
            found = {(t, a) for (label, t), a in comp.items() if label == mu}
            hit = minuscule_multiplicity_exotic_costd(datum, (lam,), (mu,))
            yield Case(f"[costd({lam}) : E_{mu}]", found == ({hit} if hit else set()), f"{found} vs {hit}")


def rescaled_homdim_suite() -> Iterator[Case]:
    """The Hom suite with every structure constant multiplied by fixed units."""
    u_unit, f_unit = Fraction(-3), Fraction(5, 7)

    def basis_scale(p: tuple[int, int]) -> Fraction:
        d, w = p
        return Fraction(2 + (3 * d + 5 * w) % 7)

    return homdim_suite(transform=lambda o: sl2.rescaled(o, u_unit, f_unit, basis_scale))


SUITES: dict[str, Callable[[], Iterator[Case]]] = {
    "ses": ses_suite,
    "homdim": homdim_suite,
    "tilting-positivity": tilting_positivity_suite,
    "minuscule": minuscule_suite,
    "exercise1": closed_forms_suite,
}


def run_suite(name: str) -> list[Case]:
    if name == "all":
        return [c for key in SUITES for c in SUITES[key]()]
    try:
        suite = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}") from None
    return list(suite())
