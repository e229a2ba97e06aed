"""Exact Laurent polynomials in q and truncated q-characters.

The variable ``q`` of a :class:`QCharacter` records the internal grading
degree, in which linear functions on the Lie algebra sit in degree 2.  A Tate
twist ``<m>`` multiplies a character by ``q**(-m)``.  Lusztig-type
polynomials use a separate variable equal to ``q**2``; :func:`substitute_q_squared`
is the only conversion between the two.
"""

from __future__ import annotations

from typing import Iterable, Mapping

__all__ = [
    "LaurentPoly", "QCharacter", "substitute_q_squared",
    "poly_add", "poly_mul", "poly_shift", "poly_eval_at_one",
    "char_add", "char_scale", "char_twist",
]


class LaurentPoly:
    """Immutable sparse Laurent polynomial with integer coefficients.

    >>> q = LaurentPoly.q()
    >>> (q - 1) * (q + 1)
    LaurentPoly('q^2 - 1')
    >>> LaurentPoly({2: 1}).shift(-3)
    LaurentPoly('q^-1')
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | int | None = None):
        if coeffs is None:
            c = {}
        elif isinstance(coeffs, int):
            c = {0: coeffs} if coeffs else {}
        else:
            c = {int(e): int(a) for e, a in coeffs.items() if a}
        self._c = c
        self._hash = None

    @classmethod
    def q(cls, exponent: int = 1) -> "LaurentPoly":
        return cls({exponent: 1})

    @classmethod
    def _raw(cls, c: dict) -> "LaurentPoly":
        p = cls.__new__(cls)
        p._c = c
        p._hash = None
        return p

    # -- inspection -----------------------------------------------------

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def __getitem__(self, e: int) -> int:
        return self._c.get(e, 0)

    def items(self):
        return sorted(self._c.items())

    def __bool__(self) -> bool:
        return bool(self._c)

    def is_zero(self) -> bool:
        return not self._c

    @property
    def min_exp(self) -> int | None:
        return min(self._c) if self._c else None

    @property
    def max_exp(self) -> int | None:
        return max(self._c) if self._c else None

    def eval_at_one(self) -> int:
        return sum(self._c.values())

    def __call__(self, x):
        return sum(a * x**e for e, a in self._c.items())

    # -- arithmetic -----------------------------------------------------

    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for e, a in other._c.items():
            v = c.get(e, 0) + a
            if v:
                c[e] = v
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -a for e, a in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c: dict[int, int] = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + a1 * a2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, a), = self._c.items()
            if a not in (1, -1):
                raise ValueError("monomial coefficient is not a unit")
            return LaurentPoly({e * n: a ** (-n)})
        out = LaurentPoly(1)
        for _ in range(n):
            out = out * self
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``q**k``."""
        return LaurentPoly._raw({e + k: a for e, a in self._c.items()})

    def truncate(self, n: int | None) -> "LaurentPoly":
        """Drop every term of exponent above ``n``."""
        if n is None:
            return self
        return LaurentPoly._raw({e: a for e, a in self._c.items() if e <= n})

    def substitute_q_squared(self) -> "LaurentPoly":
        return LaurentPoly._raw({2 * e: a for e, a in self._c.items()})

    # -- comparison and display -----------------------------------------

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e, a in sorted(self._c.items(), reverse=True):
            mag = abs(a)
            if e == 0:
                mono = str(mag)
            else:
                base = "q" if e == 1 else f"q^{e}"
                mono = base if mag == 1 else f"{mag}*{base}"
            sign = "-" if a < 0 else "+"
            parts.append((sign, mono))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out

    def latex(self, var: str = "q") -> str:
        if not self._c:
            return "0"
        out = ""
        for e, a in sorted(self._c.items(), reverse=True):
            mag = abs(a)
            mono = "" if e == 0 else (var if e == 1 else f"{var}^{{{e}}}")
            coef = str(mag) if (mag != 1 or e == 0) else ""
            sign = "-" if a < 0 else "+"
            term = coef + mono
            out += (("-" if sign == "-" else "") + term) if not out else f" {sign} {term}"
        return out

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict[str, int]:
        return {str(e): a for e, a in sorted(self._c.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "LaurentPoly":
        return cls({int(e): int(a) for e, a in data.items()})


def poly_add(p: LaurentPoly, r: LaurentPoly) -> LaurentPoly:
    return p + r


def poly_mul(p: LaurentPoly, r: LaurentPoly) -> LaurentPoly:
    return p * r


def poly_shift(p: LaurentPoly, k: int) -> LaurentPoly:
    return p.shift(k)


def poly_eval_at_one(p: LaurentPoly) -> int:
    return p.eval_at_one()


def substitute_q_squared(p: LaurentPoly) -> LaurentPoly:
    """Convert a polynomial in ``q_L = q**2`` to the grading variable."""
    return p.substitute_q_squared()


def _min_trunc(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class QCharacter:
    """A finitely supported map weight -> LaurentPoly, known up to ``q**trunc``.

    ``trunc=None`` means the character is exact in every degree.  All stored
    exponents are at most ``trunc``.
    """

    __slots__ = ("terms", "trunc", "rank")

    def __init__(self, terms: Mapping[tuple, LaurentPoly] | None = None,
                 trunc: int | None = None, rank: int | None = None):
        self.trunc = trunc
        clean: dict[tuple, LaurentPoly] = {}
        for w, p in (terms or {}).items():
            w = tuple(w)
            if rank is None:
                rank = len(w)
            elif len(w) != rank:
                raise ValueError(f"weight {w} has length {len(w)}, expected {rank}")
            if not isinstance(p, LaurentPoly):
                p = LaurentPoly(p)
            p = p.truncate(trunc)
            if p:
                clean[w] = p
        self.terms = clean
        self.rank = rank

    @classmethod
    def from_weights(cls, weights: Iterable[tuple], degree: int = 0, trunc: int | None = None) -> "QCharacter":
        acc: dict[tuple, LaurentPoly] = {}
        for w in weights:
            acc[tuple(w)] = acc.get(tuple(w), LaurentPoly()) + LaurentPoly.q(degree)
        return cls(acc, trunc)

    def _check_rank(self, other: "QCharacter") -> None:
        if self.rank is not None and other.rank is not None and self.rank != other.rank:
            raise ValueError(f"weight length mismatch: {self.rank} vs {other.rank}")

    def __getitem__(self, w) -> LaurentPoly:
        return self.terms.get(tuple(w), LaurentPoly())

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "QCharacter") -> "QCharacter":
        self._check_rank(other)
        t = _min_trunc(self.trunc, other.trunc)
        acc = dict(self.terms)
        for w, p in other.terms.items():
            acc[w] = acc.get(w, LaurentPoly()) + p
        return QCharacter(acc, t, self.rank if self.rank is not None else other.rank)

    def __neg__(self) -> "QCharacter":
        return QCharacter({w: -p for w, p in self.terms.items()}, self.trunc, self.rank)

    def __sub__(self, other: "QCharacter") -> "QCharacter":
        return self + (-other)

    def scale(self, p: LaurentPoly | int) -> "QCharacter":
        """Multiply by a Laurent polynomial; the known range moves by its lowest exponent."""
        p = LaurentPoly._coerce(p)
        if not p:
            return QCharacter({}, self.trunc, self.rank)
        t = None if self.trunc is None else self.trunc + p.min_exp
        return QCharacter({w: c * p for w, c in self.terms.items()}, t, self.rank)

    def twist(self, m: int) -> "QCharacter":
        """Character of ``V<m>``, i.e. multiplication by ``q**(-m)``."""
        return self.scale(LaurentPoly.q(-m))

    def __mul__(self, other: "QCharacter") -> "QCharacter":
        """Product of characters (tensor product of graded modules)."""
        self._check_rank(other)
        if self.terms and other.terms:
            lo_a = min(p.min_exp for p in self.terms.values())
            lo_b = min(p.min_exp for p in other.terms.values())
        else:
            lo_a = lo_b = 0
        ta = None if self.trunc is None else self.trunc + lo_b
        tb = None if other.trunc is None else other.trunc + lo_a
        t = _min_trunc(ta, tb)
        acc: dict[tuple, LaurentPoly] = {}
        for w1, p1 in self.terms.items():
            for w2, p2 in other.terms.items():
                w = tuple(a + b for a, b in zip(w1, w2))
                acc[w] = acc.get(w, LaurentPoly()) + (p1 * p2).truncate(t)
        return QCharacter(acc, t, self.rank)

    def restrict(self, n: int | None) -> "QCharacter":
        return QCharacter(self.terms, _min_trunc(self.trunc, n), self.rank)

    def map_weights(self, fn) -> "QCharacter":
        acc: dict[tuple, LaurentPoly] = {}
        for w, p in self.terms.items():
            nw = tuple(fn(w))
            acc[nw] = acc.get(nw, LaurentPoly()) + p
        return QCharacter(acc, self.trunc, self.rank)

    def at_q_equals_one(self) -> dict[tuple, int]:
        out = {}
        for w, p in self.terms.items():
            v = p.eval_at_one()
            if v:
                out[w] = v
        return out

    def agrees_with(self, other: "QCharacter") -> bool:
        """Equality up to the smaller of the two truncations."""
        t = _min_trunc(self.trunc, other.trunc)
        return (self.restrict(t) - other.restrict(t)).is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, QCharacter):
            return NotImplemented
        return self.trunc == other.trunc and self.terms == other.terms

    def __repr__(self) -> str:
        body = ", ".join(f"{w}: {p}" for w, p in sorted(self.terms.items()))
        return f"QCharacter({{{body}}}, trunc={self.trunc})"

    def to_json(self) -> dict:
        return {
            "terms": [{"weight": list(w), "poly": p.to_json()} for w, p in sorted(self.terms.items())],
            "trunc": self.trunc,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "QCharacter":
        terms = {tuple(t["weight"]): LaurentPoly.from_json(t["poly"]) for t in data["terms"]}
        return cls(terms, data.get("trunc"))


def char_add(a: QCharacter, b: QCharacter) -> QCharacter:
    return a + b


def char_scale(c: QCharacter, p: LaurentPoly) -> QCharacter:
    return c.scale(p)


def char_twist(c: QCharacter, m: int) -> QCharacter:
    return c.twist(m)
