"""
Explicit models of equivariant sheaves for SL2.

An :class:`SL2Object` is a bigraded vector space with one basis vector per
point ``(degree, weight)``, together with two operators:

* ``u``, multiplication by the coordinate function on the nilradical,
  sending ``(d, w)`` to ``(d + 2, w + 2)``;
* ``f``, the lowering operator of the Borel, sending ``(d, w)`` to
  ``(d, w - 2)``.

Sheaves on the Springer resolution become graded B-equivariant modules over
``k[u]`` this way.  Objects on the nilpotent cone are recorded at the level
of graded G-characters: their points are the torus weights of each graded
piece (``over_g=True``).

Simple G-modules are taken in characteristic 0, so ``L(m) = T(m) = H^0(m)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .characters import (
    DecompositionError, StabilizationError, weyl_basis_character, weyl_character,
)
from .kgroup import Term, class_character, decompose_into_ic_basis
from .qalg import LaurentPoly, QCharacter
from .rootdatum import build_root_datum

__all__ = [
    "SL2", "SL2Object", "HomResult", "HomInstabilityError",
    "line_bundle", "costd", "std", "psi_line_bundle", "simple", "tilting", "skyscraper",
    "bar_costd", "bar_std", "true_costd", "true_std", "mn_polynomial_model",
    "signed_character", "pi_star_class", "hom_dim", "rescaled",
    "SES_FAMILIES", "SES_DOMAINS", "verify_ses",
    "composition_multiplicities", "bar_composition_multiplicities",
    "delta", "delta_star", "m_plus", "m_minus", "geq_x",
]

SL2 = build_root_datum("SL2")

Point = tuple[int, int]


def delta(n: int) -> int:
    return 1 if n < 0 else 0


def delta_star(n: int) -> int:
    return 1 if n > 0 else 0


def m_plus(n: int) -> int:
    return n % 2


def m_minus(n: int) -> int:
    return -(n % 2)


def geq_x(m: int, n: int) -> bool:
    """``n <= m`` in the order used to index exotic sheaves.

    Weights in different root-lattice cosets are incomparable.
    """
    return SL2.le_order((n,), (m,))


class HomInstabilityError(ArithmeticError):
    """Hom dimension changed between two truncation windows."""


@dataclass
class SL2Object:
    label: str
    points: dict[Point, int]
    u: dict[Point, Fraction] = field(default_factory=dict)
    f: dict[Point, Fraction] = field(default_factory=dict)
    trunc: int = 0
    hom_degree: int = 0
    over_g: bool = False

    @property
    def sign(self) -> int:
        return -1 if self.hom_degree % 2 else 1

    def degrees(self) -> list[int]:
        return sorted({d for d, _ in self.points})

    def weights_at(self, d: int) -> list[int]:
        return sorted((w for (dd, w) in self.points if dd == d), reverse=True)

    def twist(self, m: int) -> "SL2Object":
        """``X<m>``: the piece in degree ``d + m`` moves to degree ``d``."""

        def mv(p: Point) -> Point:
            return (p[0] - m, p[1])

        return replace(
            self,
            label=f"{self.label}<{m}>" if m else self.label,
            points={mv(p): k for p, k in self.points.items()},
            u={mv(p): c for p, c in self.u.items()},
            f={mv(p): c for p, c in self.f.items()},
            trunc=self.trunc - m,
        )

    def shift(self, k: int) -> "SL2Object":
        """Homological shift ``X[k]``."""
        return replace(self, label=f"{self.label}[{k}]", hom_degree=self.hom_degree - k)

    def character(self) -> QCharacter:
        """Unsigned character ``sum q**d e**w`` up to the truncation."""
        acc: dict[tuple, dict[int, int]] = {}
        for (d, w), k in self.points.items():
            if d <= self.trunc:
                slot = acc.setdefault((w,), {})
                slot[d] = slot.get(d, 0) + k
        return QCharacter({w: LaurentPoly(c) for w, c in acc.items()}, self.trunc, 1)

    def check_commutation(self) -> bool:
        """``f u = u f`` on every square whose four corners exist."""
        for (d, w) in self.points:
            a, b = (d + 2, w + 2), (d, w - 2)
            c = (d + 2, w)
            if a in self.points and b in self.points and c in self.points:
                fu = self.u.get((d, w), 0) * self.f.get(a, 0)
                uf = self.f.get((d, w), 0) * self.u.get(b, 0)
                if fu != uf:
                    return False
        return True

    def to_json(self) -> dict:
        def rows(m: Mapping[Point, Fraction]) -> list[list[int]]:
            return [[d, w, Fraction(c).numerator, Fraction(c).denominator]
                    for (d, w), c in sorted(m.items()) if c]

        out = {
            "label": self.label,
            "points": [[d, w] for (d, w) in sorted(self.points)],
            "u": rows(self.u),
            "f": rows(self.f),
            "trunc": self.trunc,
            "hom_degree": self.hom_degree,
        }
        if any(k != 1 for k in self.points.values()):
            out["mult"] = [[d, w, k] for (d, w), k in sorted(self.points.items())]
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "SL2Object":
        points = {(d, w): 1 for d, w in data["points"]}
        for d, w, k in data.get("mult", []):
            points[(d, w)] = k
        return cls(
            label=data["label"],
            points=points,
            u={(d, w): Fraction(n, q) for d, w, n, q in data.get("u", [])},
            f={(d, w): Fraction(n, q) for d, w, n, q in data.get("f", [])},
            trunc=data.get("trunc", 0),
            hom_degree=data.get("hom_degree", 0),
        )


@dataclass(frozen=True)
class HomResult:
    dimension: int
    surjective: bool

    def to_json(self) -> dict:
        return {"dimension": self.dimension, "surjective": self.surjective}


# -- G-module factors --------------------------------------------------------

def _h0_lowering(m: int, w: int) -> Fraction:
    # x d/dy on x^a y^(m-a), weight m - 2a
    return Fraction(m + w, 2)


def _v_lowering(m: int, w: int) -> Fraction:
    # transpose of y d/dx on H^0(m)
    return Fraction(m - w + 2, 2)


_LOWERING: dict[str, Callable[[int, int], Fraction]] = {
    "H0": _h0_lowering, "L": _h0_lowering, "T": _h0_lowering, "V": _v_lowering,
}


def _module_string(kind: str, m: int) -> list[tuple[int, Fraction]]:
    """Weights of a simple-type G-module of highest weight ``m``, top down, with f-constants."""
    if m < 0:
        return []
    low = _LOWERING[kind]
    return [(w, low(m, w) if w > -m else Fraction(0)) for w in range(m, -m - 1, -2)]


def skyscraper(kind: str, m: int, c: int = 0, degree: int = 0, hom_degree: int = 0,
               trunc: int | None = None, label: str | None = None) -> SL2Object:
    """``i_*(M(m) k_c)`` placed in grading degree ``degree``; ``u`` acts by 0."""
    pts, f = {}, {}
    for w, coef in _module_string(kind, m):
        pts[(degree, w + c)] = 1
        if coef:
            f[(degree, w + c)] = coef
    return SL2Object(
        label=label or f"i_*{kind}({m})k_{c}",
        points=pts, f=f, trunc=degree + 12 if trunc is None else trunc, hom_degree=hom_degree,
    )


def _module_times_line(kind: str, m: int, n: int, first_degree: int, trunc: int, label: str) -> SL2Object:
    """``M(m) (x) O(n)`` with the bottom piece in ``first_degree``."""
    pts, u, f = {}, {}, {}
    string = _module_string(kind, m)
    j = 0
    while first_degree + 2 * j <= trunc:
        d = first_degree + 2 * j
        for w, coef in string:
            p = (d, w + n + 2 * j)
            pts[p] = 1
            u[p] = Fraction(1)
            if coef:
                f[p] = coef
        j += 1
    return SL2Object(label=label, points=pts, u=u, f=f, trunc=trunc)


# -- exotic sheaves ----------------------------------------------------------

def line_bundle(n: int, trunc: int = 12) -> SL2Object:
    """``O(n)``: one line of weight ``n + 2j`` in each degree ``2j``."""
    return _module_times_line("H0", 0, n, 0, trunc, f"O({n})")


def costd(n: int, trunc: int = 12) -> SL2Object:
    """Costandard exotic sheaf ``nabla-hat_n``."""
    if n >= 0:
        obj = line_bundle(n, trunc)
        obj.label = f"costd({n})"
        return obj
    m = -n - 1
    pts, u, f = {}, {}, {}
    for w, coef in _module_string("H0", m):
        p = (-1, w - 1)
        pts[p] = 1
        if coef:
            f[p] = coef
    # glue the top line of the degree -1 piece onto the tail
    u[(-1, -n - 2)] = Fraction(1)
    d = 1
    while d <= trunc:
        p = (d, -n + d - 1)
        pts[p] = 1
        u[p] = Fraction(1)
        d += 2
    return SL2Object(label=f"costd({n})", points=pts, u=u, f=f, trunc=trunc)


def std(n: int, trunc: int = 12) -> tuple[SL2Object, SL2Object | None]:
    """Standard exotic sheaf ``Delta-hat_n`` as ``(H^0, H^1)``."""
    if n == 0:
        obj = line_bundle(0, trunc)
        obj.label = "std(0)"
        return obj, None
    if n < 0:
        obj = line_bundle(n, trunc + 1).twist(1)
        obj.label = f"std({n})"
        return obj, None
    h0 = line_bundle(-n, trunc)
    h0.label = f"H0 std({n})"
    h1 = skyscraper("V", n - 1, -1, -2, hom_degree=1, trunc=trunc, label=f"H1 std({n})")
    return h0, h1


def psi_line_bundle(n: int, trunc: int = 12) -> tuple[SL2Object, int]:
    """``Psi(O(n))`` and its homological shift."""
    if n == 0:
        return SL2Object("0", {}, trunc=trunc), 0
    if n < 0:
        obj = skyscraper("V", -n - 1, -1, -1, hom_degree=1, trunc=trunc, label=f"Psi(O({n}))")
        return obj, 1
    return skyscraper("H0", n - 1, -1, -1, trunc=trunc, label=f"Psi(O({n}))"), 0


def simple(n: int, trunc: int = 12) -> SL2Object:
    """Simple exotic sheaf ``E_n``; the homological shift is in ``hom_degree``."""
    if n <= -2:
        return skyscraper("L", -n - 2, -2, -1, trunc=trunc, label=f"E({n})")
    if n == -1:
        obj = line_bundle(-1, trunc + 1).twist(1)
    elif n == 0:
        obj = line_bundle(0, trunc)
    else:
        return skyscraper("L", n - 1, -1, -2, hom_degree=1, trunc=trunc, label=f"E({n})")
    obj.label = f"E({n})"
    return obj


def tilting(n: int, trunc: int = 12) -> SL2Object:
    """Tilting exotic sheaf ``T(n) (x) O`` or ``T(-n-1) (x) O(-1)<1>``."""
    if n >= 0:
        return _module_times_line("T", n, 0, 0, trunc, f"tilting({n})")
    return _module_times_line("T", -n - 1, -1, -1, trunc, f"tilting({n})")


# -- perverse-coherent sheaves (G-characters) -------------------------------

def _g_object(label: str, rows: Iterable[tuple[int, int]], trunc: int, hom_degree: int = 0) -> SL2Object:
    """Points of ``H^0(mu)`` placed in degree ``d`` for each ``(d, mu)``."""
    pts, f = {}, {}
    for d, mu in rows:
        if d > trunc:
            continue
        for w, coef in _module_string("H0", mu):
            pts[(d, w)] = pts.get((d, w), 0) + 1
            if coef:
                f[(d, w)] = coef
    return SL2Object(label=label, points=pts, f=f, trunc=trunc, hom_degree=hom_degree, over_g=True)


def _require_dominant(n: int) -> None:
    if n < 0:
        raise ValueError(f"perverse-coherent objects are indexed by n >= 0, got {n}")


def bar_costd(n: int, trunc: int = 12) -> SL2Object:
    """``nabla-bar_n``: ``H^0(2j)`` in degree ``2j`` for n = 0, else ``H^0(n+2j)`` in degree ``1+2j``."""
    _require_dominant(n)
    first = 0 if n == 0 else 1
    rows = [(first + 2 * j, n + 2 * j) for j in range(max(0, trunc - first) // 2 + 1)]
    return _g_object(f"bar_costd({n})", rows, trunc)


def _euler_rows(obj: SL2Object) -> dict[tuple[int, int], int]:
    """Signed ``(degree, mu) -> multiplicity of H^0(mu)`` from the rank-1 Euler rule."""
    out: dict[tuple[int, int], int] = {}
    for (d, w), k in obj.points.items():
        if w == -1:
            continue
        mu, s = (w, 1) if w >= 0 else (-w - 2, -1)
        key = (d, mu)
        out[key] = out.get(key, 0) + s * k * obj.sign
    return {k: v for k, v in out.items() if v}


def bar_std(n: int, trunc: int = 12) -> tuple[SL2Object, SL2Object | None]:
    """``Delta-bar_n`` as ``(H^0, H^1)``, obtained by inducing ``Delta-hat_n<1>`` to G."""
    _require_dominant(n)
    if n in (0, 1):
        obj = bar_costd(n, trunc)
        obj.label = f"bar_std({n})"
        return obj, None
    rows: dict[tuple[int, int], int] = {}
    for part in std(n, trunc + 1):
        if part is not None:
            for key, v in _euler_rows(part.twist(1)).items():
                rows[key] = rows.get(key, 0) + v
    if any(abs(v) != 1 for v in rows.values()):
        raise AssertionError("unexpected multiplicity in induced standard object")
    h0 = _g_object(f"H0 bar_std({n})", [k for k, v in rows.items() if v > 0], trunc)
    h1 = _g_object(f"H1 bar_std({n})", [k for k, v in rows.items() if v < 0], trunc, hom_degree=1)
    return h0, h1


def true_costd(n: int, trunc: int = 12) -> SL2Object:
    """Character model of ``nabla_n``: ``nabla-bar_n`` stacked on ``nabla-bar_n<2>``."""
    _require_dominant(n)
    if n == 0:
        obj = bar_costd(0, trunc)
        obj.label = "true_costd(0)"
        return obj
    low = bar_costd(n, trunc)
    high = bar_costd(n, trunc + 2).twist(2)
    pts = dict(low.points)
    for p, k in high.points.items():
        pts[p] = pts.get(p, 0) + k
    return SL2Object(f"true_costd({n})", pts, trunc=trunc, over_g=True)


def true_std(n: int, trunc: int = 12) -> tuple[SL2Object, SL2Object | None]:
    """Character model of ``Delta_n`` as ``(H^0, H^1)``: ``Delta-bar_n<-2>`` stacked on ``Delta-bar_n``."""
    _require_dominant(n)
    if n == 0:
        obj = bar_costd(0, trunc)
        obj.label = "true_std(0)"
        return obj, None
    parts = []
    for a, b in zip(bar_std(n, trunc), bar_std(n, trunc - 2)):
        if a is None:
            parts.append(None)
            continue
        b = b.twist(-2)
        pts = dict(a.points)
        for p, k in b.points.items():
            pts[p] = pts.get(p, 0) + k
        parts.append(SL2Object(a.label.replace("bar_std", "true_std"), pts, trunc=trunc,
                               hom_degree=a.hom_degree, over_g=True))
    return parts[0], parts[1]


def mn_polynomial_model(n: int, trunc: int = 12) -> SL2Object:
    """``M_n<n - delta*_n>`` inside ``k[x, y]``.

    ``M_n`` is spanned by monomials ``x^a y^b`` with ``a + b >= n`` and
    ``a + b = n (mod 2)``; ``x^a y^b`` has weight ``b - a`` and degree
    ``a + b``.  ``f = x d/dy`` and ``u`` is multiplication by ``y^2``.
    """
    _require_dominant(n)
    shift = n - delta_star(n)
    pts, u, f = {}, {}, {}
    total = n
    while total - shift <= trunc:
        for a in range(total + 1):
            b = total - a
            p = (total - shift, b - a)
            pts[p] = 1
            u[p] = Fraction(1)
            if b:
                f[p] = Fraction(b)
        total += 2
    return SL2Object(f"M({n})<{shift}>", pts, u=u, f=f, trunc=trunc, over_g=True)


# -- characters --------------------------------------------------------------

def signed_character(objs: SL2Object | Iterable[SL2Object | None]) -> QCharacter:
    """K-class character: sum of the parts with sign ``(-1)^hom_degree``."""
    if isinstance(objs, SL2Object):
        objs = [objs]
    total = None
    for o in objs:
        if o is None:
            continue
        c = o.character().scale(o.sign)
        total = c if total is None else total + c
    return total if total is not None else QCharacter({}, None, 1)


def pi_star_class(objs: SL2Object | Iterable[SL2Object | None]) -> QCharacter:
    """G-character of the pushforward to the nilpotent cone (rank-1 Euler rule).

    A line ``k_m`` in degree ``d`` contributes ``q**d chi(m)`` for ``m >= 0``,
    ``-q**d chi(-m-2)`` for ``m <= -2`` and nothing for ``m = -1``.
    """
    if isinstance(objs, SL2Object):
        objs = [objs]
    coeffs: dict[tuple, dict[int, int]] = {}
    trunc = None
    for o in objs:
        if o is None:
            continue
        if o.over_g:
            raise ValueError("pi_star_class expects a B-equivariant model")
        trunc = o.trunc if trunc is None else min(trunc, o.trunc)
        for (d, mu), v in _euler_rows(o).items():
            slot = coeffs.setdefault((mu,), {})
            slot[d] = slot.get(d, 0) + v
    return weyl_basis_character(SL2, {mu: LaurentPoly(c) for mu, c in coeffs.items()}, trunc)


# -- Hom spaces --------------------------------------------------------------

def _nullspace(rows: list[dict[int, Fraction]], nvars: int) -> list[list[Fraction]]:
    """Basis of the solution space of a sparse homogeneous system."""
    pivots: dict[int, dict[int, Fraction]] = {}
    for row in rows:
        r = {k: v for k, v in row.items() if v}
        for col, prow in pivots.items():
            if col in r:
                c = r[col]
                for k, v in prow.items():
                    nv = r.get(k, 0) - c * v
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
        if not r:
            continue
        col = min(r)
        pv = r[col]
        r = {k: v / pv for k, v in r.items()}
        for other in pivots.values():
            if col in other:
                c = other[col]
                for k, v in r.items():
                    nv = other.get(k, 0) - c * v
                    if nv:
                        other[k] = nv
                    else:
                        other.pop(k, None)
        pivots[col] = r
    free = [k for k in range(nvars) if k not in pivots]
    basis = []
    for fv in free:
        vec = [Fraction(0)] * nvars
        vec[fv] = Fraction(1)
        for col, prow in pivots.items():
            vec[col] = -prow.get(fv, Fraction(0))
        basis.append(vec)
    return basis


def _hom_window(x: SL2Object, y: SL2Object, k: int, window: int) -> HomResult:
    # phi sends the point p of X to the point p + (k, 0) of Y<k>'s source, i.e. Y in degree d + k
    var: dict[Point, int] = {}
    for (d, w) in sorted(x.points):
        if d <= window and (d + k, w) in y.points:
            var[(d, w)] = len(var)
    rows: list[dict[int, Fraction]] = []

    def add(target: Point, src_x: Point | None, cx: Fraction, p: Point, cy: Fraction) -> None:
        if target not in y.points:
            return
        row: dict[int, Fraction] = {}
        if src_x is not None and src_x in var and cx:
            row[var[src_x]] = row.get(var[src_x], 0) + cx
        if p in var and cy:
            row[var[p]] = row.get(var[p], 0) - cy
        if row:
            rows.append(row)

    for (d, w) in x.points:
        if d > window:
            continue
        p = (d, w)
        up = (d + 2, w + 2)
        if d + 2 <= window:
            add((d + 2 + k, w + 2), up, x.u.get(p, Fraction(0)), p, y.u.get((d + k, w), Fraction(0)))
        down = (d, w - 2)
        add((d + k, w - 2), down, x.f.get(p, Fraction(0)), p, y.f.get((d + k, w), Fraction(0)))

    basis = _nullspace(rows, len(var))
    dim = len(basis)
    surjective = dim > 0 and _exotic_surjective(x, y, k, window, var, basis)
    return HomResult(dim, surjective)


def _exotic_surjective(x: SL2Object, y: SL2Object, k: int, window: int,
                       var: dict[Point, int], basis: list[list[Fraction]]) -> bool:
    """Whether a generic map is an epimorphism in the exotic heart.

    The module kernel must lie in the heart and the module cokernel in the
    heart shifted by one; both are tested on signed composition
    multiplicities of their characters.
    """
    rng = random.Random(0x5EED)
    weights = [rng.randint(1, 997) for _ in basis]
    value = {p: sum(c * vec[i] for c, vec in zip(weights, basis)) for p, i in var.items()}
    kernel = {p: 1 for p in x.points if p[0] <= window and not value.get(p)}
    hit = {(d + k, w) for (d, w), v in value.items() if v}
    cokernel = {(e - k, w): 1 for (e, w) in y.points if e - k <= window and (e, w) not in hit}
    try:
        if kernel:
            composition_multiplicities(SL2Object("ker", kernel, trunc=window))
        if cokernel:
            composition_multiplicities(SL2Object("coker", cokernel, trunc=window, hom_degree=1))
    except (DecompositionError, StabilizationError):
        return False
    return True


def hom_dim(x: SL2Object, y: SL2Object, k: int = 0, window: int | None = None) -> HomResult:
    """``Hom(X, Y<k>)`` in the category of graded B-equivariant ``k[u]``-modules.

    A morphism is a family of scalars, one per basis point of ``X``, that
    commutes with ``u`` and ``f``.  The system is solved on the points of
    degree at most ``window`` and again at ``window + 4``; the two answers
    must agree.  ``surjective`` refers to the exotic heart, where a map of
    modules with a cokernel in the heart shifted by one is an epimorphism.
    """
    if x.hom_degree or y.hom_degree:
        raise ValueError("hom_dim takes sheaves (homological degree 0)")
    if x.over_g or y.over_g:
        raise ValueError("hom_dim takes B-equivariant models")
    if any(v != 1 for v in (*x.points.values(), *y.points.values())):
        raise ValueError("hom_dim needs multiplicity-free models")
    limit = min(x.trunc, y.trunc - k - 2)
    if window is None:
        window = limit - 4
    if window + 4 > limit:
        raise StabilizationError(f"objects are truncated below the Hom window {window} + 4")
    small = _hom_window(x, y, k, window)
    large = _hom_window(x, y, k, window + 4)
    if small != large:
        raise HomInstabilityError(f"Hom dimension {small} at window {window} but {large} at {window + 4}")
    return large


def rescaled(obj: SL2Object, u_unit: Fraction, f_unit: Fraction,
             basis_scale: Callable[[Point], Fraction] | None = None) -> SL2Object:
    """Multiply all ``u`` constants by ``u_unit`` and all ``f`` constants by ``f_unit``.

    ``basis_scale`` optionally rescales each basis vector as well, which
    conjugates both operators.
    """
    s = basis_scale or (lambda p: Fraction(1))
    u = {}
    for (d, w), c in obj.u.items():
        if c:
            u[(d, w)] = c * u_unit * s((d, w)) / s((d + 2, w + 2))
    f = {}
    for (d, w), c in obj.f.items():
        if c:
            f[(d, w)] = c * f_unit * s((d, w)) / s((d, w - 2))
    return replace(obj, u=u, f=f)


# -- short exact sequences ---------------------------------------------------

SES_FAMILIES: dict[str, tuple[str, ...]] = {
    "new-costd": ("new-costd",),
    "new-std": ("new-std",),
    "braid": ("braid-std", "braid-costd"),
    "pcoh": ("pcoh-costd", "pcoh-std"),
    "true": ("true-costd", "true-std"),
}

SES_DOMAINS: dict[str, Callable[[int], bool]] = {
    "new-costd": lambda n: n <= -2,
    "new-std": lambda n: n <= -2,
    "braid-std": lambda n: n > 0,
    "braid-costd": lambda n: n > 0,
    "pcoh-costd": lambda n: n >= 2,
    "pcoh-std": lambda n: n >= 2,
    "true-costd": lambda n: n > 0,
    "true-std": lambda n: n > 0,
}


def _ses_terms(name: str, n: int, trunc: int):
    """``(middle, [outer terms])``; each entry is a list of parts, characters add."""
    big = trunc + 6
    if name == "new-costd":
        sub = skyscraper("H0", -n - 2, -2, 0, trunc=big).twist(1)
        quo = costd(-n - 2, big).twist(1)
        return [costd(n, trunc)], [[sub], [quo]]
    if name == "new-std":
        sub = [p.twist(-1) for p in std(-n - 2, big) if p is not None]
        # the cokernel sits in degree -1, next to the bottom of Delta-hat_n
        quo = skyscraper("V", -n - 2, -2, 0, trunc=big).twist(1)
        return list(std(n, trunc)), [sub, [quo]]
    if name == "braid-std":
        mid = [p.twist(1) for p in std(n, big) if p is not None]
        sub = list(std(-n, big))
        quo = skyscraper("V", n - 1, -1, 0, trunc=big).twist(3).shift(-1)
        return mid, [sub, [quo]]
    if name == "braid-costd":
        mid = [costd(n, big).twist(-1)]
        sub = skyscraper("H0", n - 1, -1, 0, trunc=big).twist(1).shift(-1)
        return mid, [[sub], [costd(-n, big)]]
    if name == "pcoh-costd":
        sub = _g_object("i_0*H0", [(0, n - 2)], big).twist(1).shift(-1)
        quo = bar_costd(n - 2, big).twist(1 + delta_star(n - 2))
        return [bar_costd(n, trunc)], [[sub], [quo]]
    if name == "pcoh-std":
        sub = [p.twist(-1 - delta_star(n - 2)) for p in bar_std(n - 2, big) if p is not None]
        quo = _g_object("i_0*V", [(0, n - 2)], big).twist(1).shift(-1)
        return list(bar_std(n, trunc)), [sub, [quo]]
    if name == "true-costd":
        return [true_costd(n, trunc)], [[bar_costd(n, big)], [bar_costd(n, big).twist(2)]]
    if name == "true-std":
        sub = [p.twist(-2) for p in bar_std(n, big) if p is not None]
        return list(true_std(n, trunc)), [sub, list(bar_std(n, big))]
    raise ValueError(f"unknown short exact sequence {name!r}")


def verify_ses(name: str, n: int, trunc: int = 12) -> QCharacter:
    """Middle term minus the outer terms of a short exact sequence, as a character.

    Sequences on the Springer resolution compare B-characters; sequences on
    the nilpotent cone compare G-characters.  Zero means the sequence is
    consistent at the level of Grothendieck groups.
    """
    if name in SES_FAMILIES and len(SES_FAMILIES[name]) == 1:
        name = SES_FAMILIES[name][0]
    if name not in SES_DOMAINS:
        raise ValueError(f"unknown short exact sequence {name!r}")
    if not SES_DOMAINS[name](n):
        raise ValueError(f"n = {n} is outside the range of {name}")
    mid, outer = _ses_terms(name, n, trunc)
    residual = signed_character(mid)
    for parts in outer:
        residual = residual - signed_character(parts)
    return residual.restrict(trunc)


# -- composition multiplicities ----------------------------------------------

def _numerator(c: QCharacter) -> dict[int, dict[int, int]]:
    """Coefficients of ``(1 - q^2 e^2) ch`` by weight, up to the truncation."""
    out: dict[int, dict[int, int]] = {}
    for (w,), p in c.terms.items():
        for e, a in p.coeffs.items():
            out.setdefault(w, {})[e] = out.get(w, {}).get(e, 0) + a
            if e + 2 <= c.trunc:
                slot = out.setdefault(w + 2, {})
                slot[e + 2] = slot.get(e + 2, 0) - a
    return {w: {e: a for e, a in s.items() if a} for w, s in out.items() if any(s.values())}


_SIMPLE_NUMERATORS: dict[int, dict[int, dict[int, int]]] = {}


def _simple_numerator(m: int) -> dict[int, dict[int, int]]:
    hit = _SIMPLE_NUMERATORS.get(m)
    if hit is None:
        trunc = 12
        hit = {w: {e: a for e, a in s.items() if e <= trunc - 4}
               for w, s in _numerator(signed_character(simple(m, trunc))).items()}
        hit = {w: s for w, s in hit.items() if s}
        _SIMPLE_NUMERATORS[m] = hit
    return hit


def composition_multiplicities(objs: SL2Object | Iterable[SL2Object | None],
                               margin: int = 4) -> dict[tuple[int, int], int]:
    """``[X : E_m<n>]`` for an exotic sheaf, by triangular solve on numerators.

    Multiplying a B-character by ``1 - q^2 e^2`` leaves a finite sum.  The
    weight of largest absolute value then identifies a simple label: ``+W``
    when ``e^W`` occurs (top term of ``E_W``), otherwise ``-W`` (bottom term
    of ``E_-W``).
    """
    c = signed_character(objs)
    if c.trunc is None:
        raise ValueError("need a truncated character")
    trunc = c.trunc
    num = _numerator(c)
    for w, s in num.items():
        if any(e > trunc - margin for e in s):
            raise StabilizationError(f"truncation {trunc} too small at weight {w}")
    out: dict[tuple[int, int], int] = {}
    guard = 0
    while num:
        guard += 1
        if guard > 10_000:
            raise DecompositionError("composition solve did not terminate")
        top = max(abs(w) for w in num)
        if top in num:
            label = top
            e, a = min(num[top].items())
            twist = -e
        else:
            label = -top
            e, a = min(num[-top].items())
            twist = -e - 1 if top >= 1 else -e
        if a < 0:
            raise DecompositionError(f"negative multiplicity for E_{label}<{twist}>")
        out[(label, twist)] = out.get((label, twist), 0) + a
        for w, s in _simple_numerator(label).items():
            slot = num.setdefault(w, {})
            for ee, b in s.items():
                ee -= twist
                if ee > trunc:
                    continue
                v = slot.get(ee, 0) - a * b
                if v:
                    slot[ee] = v
                else:
                    slot.pop(ee, None)
            if not slot:
                del num[w]
    return out


def bar_composition_multiplicities(n: int, trunc: int = 12) -> dict[tuple[int, int], int]:
    """``[nabla-bar_n : IC_m<k>]`` from the explicit G-character of ``nabla-bar_n``."""
    _require_dominant(n)
    return decompose_into_ic_basis(SL2, bar_costd(n, trunc).character())


def ic_class(n: int, trunc: int = 12) -> QCharacter:
    return class_character(SL2, [Term("SimpleIC", (n,))], trunc)
