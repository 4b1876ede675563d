"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

Monomial = tuple


class VariableMismatchError(ValueError):
    pass


def _grevlex_key(e: Monomial):
    return (sum(e), tuple(-x for x in reversed(e)))


def _lex_key(e: Monomial):
    return e


def _deglex_key(e: Monomial):
    return (sum(e), e)


ORDERS = {"grevlex": _grevlex_key, "lex": _lex_key, "deglex": _deglex_key}


class Ring:
    """Polynomial ring over Q with a fixed variable order and monomial order.

    The first variable is the largest one in every order.
    """

    def __init__(self, variables: Iterable[str], order: str = "grevlex"):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        if order not in ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        self.order = order
        self.key = ORDERS[order]
        self.nvars = len(self.variables)
        self._zero_exp = (0,) * self.nvars

    def __eq__(self, other):
        return (isinstance(other, Ring) and self.variables == other.variables
                and self.order == other.order)

    def __hash__(self):
        return hash((self.variables, self.order))

    def __repr__(self):
        return f"Ring({list(self.variables)}, {self.order!r})"

    def gens(self) -> tuple["MultiPoly", ...]:
        return tuple(self.var(v) for v in self.variables)

    def var(self, name: str) -> "MultiPoly":
        i = self.variables.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return MultiPoly(self, {tuple(e): Fraction(1)})

    def const(self, c) -> "MultiPoly":
        c = Fraction(c)
        return MultiPoly(self, {self._zero_exp: c} if c else {})

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def monomial(self, exp: Monomial, coeff=1) -> "MultiPoly":
        return MultiPoly(self, {tuple(exp): Fraction(coeff)})

    def extend(self, *names: str, order: str | None = None) -> "Ring":
        """New ring with extra variables appended (smallest in the order)."""
        return Ring(self.variables + tuple(names), order or self.order)


def _coerce(ring: Ring, x) -> "MultiPoly":
    if isinstance(x, MultiPoly):
        if x.ring != ring:
            raise VariableMismatchError(f"{x.ring!r} vs {ring!r}")
        return x
    if isinstance(x, (int, Rational)):
        return ring.const(x)
    raise TypeError(f"cannot combine a polynomial with {type(x).__name__}")


class MultiPoly:
    """Immutable polynomial; ``terms`` maps exponent tuples to nonzero Fractions."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, Fraction]):
        self.ring = ring
        self._terms = {e: Fraction(c) for e, c in terms.items() if c}
        self._hash = None

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get(self.ring._zero_exp, Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    # ---- ordering ----------------------------------------------------------
    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms, key=self.ring.key)

    def leading_coefficient(self) -> Fraction:
        return self._terms[self.leading_monomial()]

    def monic(self) -> "MultiPoly":
        return self * (1 / self.leading_coefficient())

    # ---- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = _coerce(self.ring, other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(self.ring, other))

    def __rsub__(self, other):
        return _coerce(self.ring, other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, MultiPoly):
            c = Fraction(other)
            return MultiPoly(self.ring, {e: v * c for e, v in self._terms.items()} if c else {})
        other = _coerce(self.ring, other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return MultiPoly(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, MultiPoly):
            return self * (1 / Fraction(other))
        raise TypeError("only division by rational constants is supported")

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result, base = self.ring.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_term(self, exp: Monomial, coeff: Fraction) -> "MultiPoly":
        return MultiPoly(self.ring, {tuple(a + b for a, b in zip(e, exp)): c * coeff
                                     for e, c in self._terms.items()})

    # ---- comparisons and evaluation ---------------------------------------
    def __eq__(self, other):
        try:
            other = _coerce(self.ring, other)
        except (TypeError, VariableMismatchError):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def evaluate(self, point) -> Fraction:
        """Exact value at ``point`` (mapping name -> rational, or a sequence)."""
        if isinstance(point, Mapping):
            vals = [Fraction(point[v]) for v in self.ring.variables]
        else:
            vals = [Fraction(v) for v in point]
        if len(vals) != self.ring.nvars:
            raise VariableMismatchError("point has the wrong number of coordinates")
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term *= v ** k
            total += term
        return total

    def substitute(self, values: Mapping[str, object]) -> "MultiPoly":
        """Replace some variables by rationals or polynomials of the same ring."""
        gens = [values.get(v, g) for v, g in zip(self.ring.variables, self.ring.gens())]
        gens = [_coerce(self.ring, g) for g in gens]
        out = self.ring.zero()
        for e, c in self._terms.items():
            term = self.ring.const(c)
            for g, k in zip(gens, e):
                if k:
                    term = term * g ** k
            out = out + term
        return out

    def to_ring(self, ring: Ring) -> "MultiPoly":
        """Embed into a ring whose variables include all of ours."""
        idx = [ring.variables.index(v) for v in self.ring.variables]
        out = {}
        for e, c in self._terms.items():
            ne = [0] * ring.nvars
            for i, k in zip(idx, e):
                ne[i] = k
            out[tuple(ne)] = c
        return MultiPoly(ring, out)

    # ---- display ------------------------------------------------------------
    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(v if k == 1 else f"{v}^{k}"
                            for v, k in zip(self.ring.variables, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def term_strings(self) -> list[str]:
        """One string per term, leading term first (used in JSON reports)."""
        return [str(MultiPoly(self.ring, {e: c})) for e, c in self.sorted_terms()]


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def quotient(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))
