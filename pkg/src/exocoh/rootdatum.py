"""
Finite root data for simply connected groups, with weights in
fundamental-weight coordinates and roots in simple-root coordinates.

Conventions
-----------
``cartan[i][j] = <alpha_i, alpha_j^vee>``, so row ``i`` of the Cartan matrix
is the simple root ``alpha_i`` written in fundamental weights.  A weight is a
tuple of integers ``lam`` with ``lam[i] = <lam, alpha_i^vee>``; it is dominant
when every entry is nonnegative.

>>> A2 = build_root_datum("A2")
>>> len(A2.positive_roots), A2.weyl_order, A2.length(A2.w0)
(3, 6, 3)
>>> A2.dominant_representative((-1, 2))[0]
(1, 1)
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "Weight", "Matrix", "RootDatum", "RootDatumError",
    "build_root_datum", "named_cartan", "NAMED_TYPES", "DEFAULT_WEYL_CAP",
]

Weight = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

DEFAULT_WEYL_CAP = 10**6


class RootDatumError(ValueError):
    """Raised for a malformed or non-finite Cartan matrix."""


def _type_a(r: int) -> list[list[int]]:
    return [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(r)] for i in range(r)]


def _type_b(r: int) -> list[list[int]]:
    # alpha_r short
    m = _type_a(r)
    m[r - 2][r - 1] = -2
    return m


def _type_c(r: int) -> list[list[int]]:
    # alpha_r long
    m = _type_a(r)
    m[r - 1][r - 2] = -2
    return m


def _type_d4() -> list[list[int]]:
    m = _type_a(4)
    m[2][3] = m[3][2] = 0
    m[1][3] = m[3][1] = -1
    return m


NAMED_TYPES: dict[str, list[list[int]]] = {
    "A1": _type_a(1),
    "A2": _type_a(2),
    "A3": _type_a(3),
    "A4": _type_a(4),
    "B2": _type_b(2),
    "B3": _type_b(3),
    "B4": _type_b(4),
    "C2": _type_c(2),
    "C3": _type_c(3),
    "C4": _type_c(4),
    "D4": _type_d4(),
    # alpha_1 short
    "G2": [[2, -1], [-3, 2]],
    "F4": [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]],
}
NAMED_TYPES["SL2"] = NAMED_TYPES["A1"]


def named_cartan(name: str) -> list[list[int]]:
    key = name.strip().upper()
    if key not in NAMED_TYPES:
        raise RootDatumError(f"unknown root system type {name!r}; known: {sorted(NAMED_TYPES)}")
    return [row[:] for row in NAMED_TYPES[key]]


def _check_cartan(cartan: Sequence[Sequence[int]]) -> Matrix:
    r = len(cartan)
    if r == 0:
        raise RootDatumError("Cartan matrix must have positive rank")
    rows = []
    for i, row in enumerate(cartan):
        if len(row) != r:
            raise RootDatumError("Cartan matrix must be square")
        out = []
        for j, a in enumerate(row):
            if int(a) != a:
                raise RootDatumError("Cartan matrix entries must be integers")
            a = int(a)
            if i == j and a != 2:
                raise RootDatumError(f"diagonal entry ({i},{j}) is {a}, expected 2")
            if i != j and a > 0:
                raise RootDatumError(f"off-diagonal entry ({i},{j}) is positive")
            out.append(a)
        rows.append(tuple(out))
    for i in range(r):
        for j in range(r):
            if (rows[i][j] == 0) != (rows[j][i] == 0):
                raise RootDatumError(f"zero pattern not symmetric at ({i},{j})")
    _check_finite_type(rows)
    return tuple(rows)


def _check_finite_type(rows: list[tuple[int, ...]]) -> None:
    """Symmetrize and require a positive definite form."""
    r = len(rows)
    scale: list[Fraction | None] = [None] * r
    for start in range(r):
        if scale[start] is not None:
            continue
        scale[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(r):
                if j == i or rows[i][j] == 0:
                    continue
                # d_i a_ij = d_j a_ji
                want = scale[i] * rows[i][j] / rows[j][i]
                if scale[j] is None:
                    scale[j] = want
                    stack.append(j)
                elif scale[j] != want:
                    raise RootDatumError("Cartan matrix is not symmetrizable")
    form = [[scale[i] * rows[i][j] for j in range(r)] for i in range(r)]
    for col in range(r):
        pivot = form[col][col]
        if pivot <= 0:
            raise RootDatumError("Cartan matrix is not of finite type")
        for row in range(col + 1, r):
            f = form[row][col] / pivot
            if f:
                form[row] = [x - f * y for x, y in zip(form[row], form[col])]


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _mat_vec(a: Matrix, v: Sequence[int]) -> Weight:
    return tuple(sum(a_ij * v_j for a_ij, v_j in zip(row, v)) for row in a)


def _inverse(m: Matrix) -> tuple[tuple[Fraction, ...], ...]:
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


@dataclass(frozen=True, eq=False)
class RootDatum:
    """Immutable combinatorial data of a finite root system.

    Attributes
    ----------
    cartan : Matrix
        ``cartan[i][j] = <alpha_i, alpha_j^vee>``.
    positive_roots : list of tuple
        Positive roots in simple-root coordinates.
    positive_coroots : list of tuple
        The matching coroots in simple-coroot coordinates.
    weyl_elements : list of (Matrix, int)
        Every Weyl group element as an integer matrix acting on
        fundamental-weight coordinates, with its length.
    two_rho : Weight
        ``2 rho`` in fundamental-weight coordinates.
    two_rho_check : tuple
        ``2 rho^vee`` in simple-coroot coordinates.
    """

    name: str
    cartan: Matrix
    positive_roots: tuple[Weight, ...]
    positive_coroots: tuple[Weight, ...]
    weyl_elements: tuple[tuple[Matrix, int], ...]
    w0: int
    two_rho: Weight
    rho_in_lattice: bool
    two_rho_check: Weight
    minuscule_weights: tuple[Weight, ...]
    _index: dict = field(repr=False)
    _to_simple: tuple = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def weyl_order(self) -> int:
        return len(self.weyl_elements)

    @property
    def rho(self) -> Weight:
        return tuple(c // 2 for c in self.two_rho)

    def __repr__(self) -> str:
        return f"RootDatum({self.name})"

    # -- basic conversions ---------------------------------------------

    def check_weight(self, lam: Iterable[int]) -> Weight:
        lam = tuple(int(c) for c in lam)
        if len(lam) != self.rank:
            raise ValueError(f"weight {lam} has length {len(lam)}, expected {self.rank}")
        return lam

    def root_to_weight(self, beta: Sequence[int]) -> Weight:
        """Fundamental-weight coordinates of a simple-root-coordinate vector."""
        r = self.rank
        return tuple(sum(beta[i] * self.cartan[i][j] for i in range(r)) for j in range(r))

    def weight_to_root(self, lam: Sequence[int]) -> tuple[Fraction, ...]:
        """Simple-root coordinates (rational) of a weight."""
        inv = self._to_simple
        return tuple(sum(inv[i][j] * lam[j] for j in range(self.rank)) for i in range(self.rank))

    def root_lattice_coords(self, lam: Sequence[int]) -> Weight | None:
        """Integral simple-root coordinates of ``lam``, or None off the root lattice."""
        den, adj = self._to_simple_int
        out = []
        for row in adj:
            num = sum(a * b for a, b in zip(row, lam))
            if num % den:
                return None
            out.append(num // den)
        return tuple(out)

    def pair(self, lam: Sequence[int], coroot: Sequence[int]) -> int:
        """``<lam, beta^vee>`` for a coroot given in simple-coroot coordinates."""
        return sum(a * b for a, b in zip(lam, coroot))

    def pairing_2rhovee(self, lam: Sequence[int]) -> int:
        return self.pair(lam, self.two_rho_check)

    def height(self, beta: Sequence[int]) -> int:
        """``<beta, rho^vee>`` for a simple-root-coordinate vector."""
        return sum(beta)

    # -- Weyl group ----------------------------------------------------

    def act(self, w: int, lam: Sequence[int]) -> Weight:
        return _mat_vec(self.weyl_elements[w][0], lam)

    def length(self, w: int) -> int:
        return self.weyl_elements[w][1]

    def reflect(self, i: int, lam: Sequence[int]) -> Weight:
        c = lam[i]
        return tuple(x - c * a for x, a in zip(lam, self.cartan[i]))

    def element_index(self, mat: Matrix) -> int:
        return self._index[mat]

    def is_dominant(self, lam: Sequence[int]) -> bool:
        return all(c >= 0 for c in lam)

    def dominant_representative(self, lam: Sequence[int]) -> tuple[Weight, int]:
        """Return ``(dom(lam), w)`` with ``w . lam = dom(lam)``."""
        lam = tuple(lam)
        r = self.rank
        mat: Matrix = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
        while True:
            i = next((k for k, c in enumerate(lam) if c < 0), None)
            if i is None:
                return lam, self._index[mat]
            lam = self.reflect(i, lam)
            mat = _mat_mul(self._simple_matrices[i], mat)

    def dom(self, lam: Sequence[int]) -> Weight:
        return self.dominant_representative(lam)[0]

    def weyl_orbit(self, lam: Sequence[int]) -> set[Weight]:
        start = tuple(lam)
        seen = {start}
        queue = deque([start])
        while queue:
            mu = queue.popleft()
            for i in range(self.rank):
                nu = self.reflect(i, mu)
                if nu not in seen:
                    seen.add(nu)
                    queue.append(nu)
        return seen

    def enumerate_weyl(self) -> list[tuple[Matrix, int]]:
        return list(self.weyl_elements)

    # -- statistics and orders -----------------------------------------

    def delta(self, lam: Sequence[int]) -> int:
        """Minimal length of ``w`` with ``w . lam`` dominant."""
        return sum(1 for c in self.positive_coroots if self.pair(lam, c) < 0)

    def delta_star(self, lam: Sequence[int]) -> int:
        return self.delta(self.act(self.w0, lam))

    def preceq(self, lam: Sequence[int], mu: Sequence[int]) -> bool:
        """True iff ``mu - lam`` is a sum of positive roots."""
        diff = self.root_lattice_coords([b - a for a, b in zip(lam, mu)])
        return diff is not None and all(c >= 0 for c in diff)

    def le_order(self, lam: Sequence[int], mu: Sequence[int]) -> bool:
        dl, dm = self.dom(lam), self.dom(mu)
        if dl != dm:
            return self.preceq(dl, dm)
        return self.preceq(lam, mu)

    def is_minuscule(self, lam: Sequence[int]) -> bool:
        return all(self.pair(lam, c) in (0, 1) for c in self.positive_coroots)

    def minuscule_shift_plus(self, lam: Sequence[int]) -> Weight:
        """The unique minuscule weight in the root-lattice coset of ``lam``."""
        for mu in self.minuscule_weights:
            if self.root_lattice_coords([a - b for a, b in zip(lam, mu)]) is not None:
                return mu
        raise AssertionError("every coset contains a minuscule weight")

    def minuscule_shift_minus(self, lam: Sequence[int]) -> Weight:
        return self.act(self.w0, self.minuscule_shift_plus(lam))

    # -- inner product --------------------------------------------------

    @property
    def gram(self) -> tuple[tuple[int, ...], ...]:
        """A positive definite W-invariant integer form on weight coordinates."""
        g = self._gram_cache
        if not g:
            r = self.rank
            acc = [[0] * r for _ in range(r)]
            for mat, _ in self.weyl_elements:
                for i in range(r):
                    for j in range(r):
                        acc[i][j] += sum(mat[k][i] * mat[k][j] for k in range(r))
            g.append(tuple(tuple(row) for row in acc))
        return g[0]

    def norm2(self, lam: Sequence[int]) -> int:
        g = self.gram
        return sum(lam[i] * g[i][j] * lam[j] for i in range(self.rank) for j in range(self.rank))

    _simple_matrices: tuple = field(default=(), repr=False)
    _to_simple_int: tuple = field(default=(), repr=False)
    _gram_cache: list = field(default_factory=list, repr=False)


def _root_closure(cartan: Matrix, cap: int) -> tuple[list[Weight], list[Weight]]:
    """All positive roots with matching coroots, via reflections of simple ones."""
    r = len(cartan)
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    seen: dict[Weight, Weight] = {}
    queue = deque()
    for s in simple:
        seen[s] = s
        queue.append((s, s))
    while queue:
        beta, coroot = queue.popleft()
        # <beta, alpha_i^vee> and <alpha_i, beta^vee>
        for i in range(r):
            b_i = sum(beta[k] * cartan[k][i] for k in range(r))
            c_i = sum(cartan[i][k] * coroot[k] for k in range(r))
            nb = tuple(x - b_i * int(k == i) for k, x in enumerate(beta))
            nc = tuple(x - c_i * int(k == i) for k, x in enumerate(coroot))
            if all(x <= 0 for x in nb):
                continue
            if nb not in seen:
                if len(seen) > cap:
                    raise RootDatumError("root closure exceeds cap; Cartan matrix is not of finite type")
                seen[nb] = nc
                queue.append((nb, nc))
    roots = sorted(seen, key=lambda b: (sum(b), b))
    return roots, [seen[b] for b in roots]


def _build(name: str, cartan: Matrix, cap: int) -> RootDatum:
    r = len(cartan)
    roots, coroots = _root_closure(cartan, cap)

    def reflect(i: int, v: Weight) -> Weight:
        c = v[i]
        return tuple(x - c * a for x, a in zip(v, cartan[i]))

    simple_mats = []
    for i in range(r):
        cols = [reflect(i, tuple(int(k == j) for k in range(r))) for j in range(r)]
        simple_mats.append(tuple(tuple(cols[j][k] for j in range(r)) for k in range(r)))

    ident: Matrix = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
    elements: list[tuple[Matrix, int]] = [(ident, 0)]
    index = {ident: 0}
    queue = deque([(ident, 0)])
    while queue:
        mat, depth = queue.popleft()
        for s in simple_mats:
            new = _mat_mul(s, mat)
            if new not in index:
                if len(elements) >= cap:
                    raise RootDatumError(f"Weyl group exceeds {cap} elements; not of finite type")
                index[new] = len(elements)
                elements.append((new, depth + 1))
                queue.append((new, depth + 1))

    w0 = max(range(len(elements)), key=lambda k: elements[k][1])
    two_rho_check = tuple(sum(c[i] for c in coroots) for i in range(r))
    two_rho = (2,) * r
    minuscule = []
    for bits in range(2**r):
        lam = tuple((bits >> i) & 1 for i in range(r))
        if all(sum(a * b for a, b in zip(lam, c)) <= 1 for c in coroots):
            minuscule.append(lam)
    minuscule.sort(key=lambda lam: (sum(lam), lam))

    to_simple = _inverse(tuple(tuple(cartan[j][i] for j in range(r)) for i in range(r)))
    den = 1
    for row in to_simple:
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)

    return RootDatum(
        name=name,
        cartan=cartan,
        positive_roots=tuple(roots),
        positive_coroots=tuple(coroots),
        weyl_elements=tuple(elements),
        w0=w0,
        two_rho=two_rho,
        rho_in_lattice=True,
        two_rho_check=two_rho_check,
        minuscule_weights=tuple(minuscule),
        _index=index,
        _to_simple=to_simple,
        _simple_matrices=tuple(simple_mats),
        _to_simple_int=(den, tuple(tuple(int(x * den) for x in row) for row in to_simple)),
    )


@lru_cache(maxsize=None)
def _build_cached(name: str, cartan: Matrix, cap: int) -> RootDatum:
    return _build(name, cartan, cap)


def build_root_datum(spec, cap: int = DEFAULT_WEYL_CAP) -> RootDatum:
    """Build a root datum from a type name, a Cartan matrix, or a JSON-style dict.

    >>> build_root_datum("G2").weyl_order
    12
    >>> build_root_datum({"cartan": [[2, -1], [-1, 2]]}).weyl_order
    6
    """
    if isinstance(spec, RootDatum):
        return spec
    if isinstance(spec, dict):
        if "type" in spec:
            spec = spec["type"]
        elif "cartan" in spec:
            spec = spec["cartan"]
        else:
            raise RootDatumError("root datum dict needs a 'type' or 'cartan' key")
    if isinstance(spec, str):
        key = spec.strip().upper()
        name = "A1" if key == "SL2" else key
        cartan = _check_cartan(named_cartan(key))
    else:
        cartan = _check_cartan(spec)
        name = "cartan" + str([list(row) for row in cartan]).replace(" ", "")
    return _build_cached(name, cartan, cap)
