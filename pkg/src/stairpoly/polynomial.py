"""Exact bivariate polynomials in the fugacities ``a`` (visits) and ``y`` (height).

Terms are keyed by exponent pairs ``(v, h)`` and carry arbitrary-precision
integer coefficients. The class behaves like a number so the counting code can
be written once and run on ints, Fractions, floats or polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterator, Mapping


class BivariatePolynomial:
    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        clean: dict[tuple[int, int], int] = {}
        if terms:
            for (v, h), c in terms.items():
                if c:
                    clean[(int(v), int(h))] = c
        self._terms = clean

    @classmethod
    def constant(cls, c) -> BivariatePolynomial:
        return cls({(0, 0): c})

    @classmethod
    def a(cls) -> BivariatePolynomial:
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> BivariatePolynomial:
        return cls({(0, 1): 1})

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[tuple[int, int], int]]:
        return iter(sorted(self._terms.items()))

    def coefficient(self, v: int, h: int = 0) -> int:
        return self._terms.get((v, h), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    def total(self):
        """Sum of coefficients, i.e. the value at a = y = 1."""
        return sum(self._terms.values())

    def evaluate(self, a, y=1):
        return sum(c * a**v * y**h for (v, h), c in self._terms.items())

    __call__ = evaluate

    def mean_exponents(self) -> tuple[Fraction, Fraction]:
        """Weighted means of v and h at a = y = 1."""
        z = self.total()
        if not z:
            raise ZeroDivisionError("empty polynomial has no ensemble")
        mv = sum(v * c for (v, _), c in self._terms.items())
        mh = sum(h * c for (_, h), c in self._terms.items())
        return Fraction(mv, z), Fraction(mh, z)

    def divide_monomial(self, dv: int, dh: int = 0) -> BivariatePolynomial:
        out = {}
        for (v, h), c in self._terms.items():
            if v < dv or h < dh:
                raise ArithmeticError(f"term a^{v} y^{h} not divisible by a^{dv} y^{dh}")
            out[(v - dv, h - dh)] = c
        return BivariatePolynomial(out)

    @staticmethod
    def _coerce(other) -> BivariatePolynomial | None:
        if isinstance(other, BivariatePolynomial):
            return other
        if isinstance(other, (int, Rational)):
            return BivariatePolynomial.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for k, c in o._terms.items():
            out[k] = out.get(k, 0) + c
        return BivariatePolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return BivariatePolynomial({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[tuple[int, int], int] = {}
        for (v1, h1), c1 in self._terms.items():
            for (v2, h2), c2 in o._terms.items():
                k = (v1 + v2, h1 + h2)
                out[k] = out.get(k, 0) + c1 * c2
        return BivariatePolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = BivariatePolynomial.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, other):
        # exact division by a monomial (e.g. the 1/a double-count correction)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if len(o._terms) != 1:
            raise ArithmeticError("only division by a monomial is supported")
        ((dv, dh), c), = o._terms.items()
        q = self.divide_monomial(dv, dh)
        return BivariatePolynomial({k: _exact_div(v, c) for k, v in q._terms.items()})

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for (v, h), c in sorted(self._terms.items()):
            mono = "*".join(
                s for s in (f"a^{v}" if v > 1 else "a" if v else "", f"y^{h}" if h > 1 else "y" if h else "") if s
            )
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


def _exact_div(x, c):
    if isinstance(x, int) and isinstance(c, int):
        q, r = divmod(x, c)
        return q if r == 0 else Fraction(x, c)
    return x / c


A = BivariatePolynomial.a()
Y = BivariatePolynomial.y()
