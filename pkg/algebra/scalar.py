"""Scalars: polynomials in the inverse deformation constants over the Gaussian rationals.

Arithmetic runs in a sympy sparse polynomial ring over QQ_I; `Scalar` adds the
inverse-parameter vocabulary, exact division by constants and canonical text.
"""
from __future__ import annotations

from numbers import Integral, Rational
from typing import Dict, Iterable, List, Tuple

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.rings import PolyElement, ring

# Surface name -> symbol. Every symbol stands for the INVERSE of the named constant.
PARAMETERS: Dict[str, str] = {
    "alpha": "inv_alpha",
    "kappa": "inv_kappa",
    "lambda": "inv_lambda",
    "rho": "inv_rho",
    "sigma": "inv_sigma",
}

SYMBOLS: Tuple[str, ...] = tuple(sorted(PARAMETERS.values()))
SCALAR_RING, *SYMBOL_GENERATORS = ring(",".join(SYMBOLS), QQ_I)
_INDEX = {symbol: k for k, symbol in enumerate(SYMBOLS)}
_ZERO_MONOM = (0,) * len(SYMBOLS)

Monomial = Tuple[Tuple[str, int], ...]


class ScalarDivisionError(ValueError):
    pass


def surface_name(symbol: str) -> str:
    return symbol[4:] if symbol.startswith("inv_") else symbol


def _rational(value):
    if isinstance(value, Integral):
        return QQ(int(value))
    if not isinstance(value, Rational):
        raise TypeError(f"cannot use {type(value).__name__} as a rational number")
    return QQ(int(value.numerator), int(value.denominator))


def gaussian(re=0, im=0):
    """An element of QQ_I from two Python rationals."""
    return QQ_I.new(_rational(re), _rational(im))


def _parts(q) -> Tuple[int, int]:
    return int(q.numerator), int(q.denominator)


def _named(mono: Tuple[int, ...]) -> Monomial:
    return tuple((SYMBOLS[k], power) for k, power in enumerate(mono) if power)


IMAG = gaussian(0, 1)


class Scalar:
    """Polynomial in inverse deformation parameters with Gaussian-rational coefficients."""

    __slots__ = ("_poly",)

    def __init__(self, poly: PolyElement | None = None):
        self._poly: PolyElement = SCALAR_RING.zero if poly is None else poly

    @classmethod
    def zero(cls) -> "Scalar":
        return cls()

    @classmethod
    def one(cls) -> "Scalar":
        return cls(SCALAR_RING.one)

    @classmethod
    def constant(cls, re=0, im=0) -> "Scalar":
        return cls(SCALAR_RING.ground_new(gaussian(re, im)))

    @classmethod
    def imaginary(cls) -> "Scalar":
        return cls(SCALAR_RING.ground_new(IMAG))

    @classmethod
    def param(cls, symbol: str, power: int = 1) -> "Scalar":
        symbol = PARAMETERS.get(symbol, symbol)
        if symbol not in _INDEX:
            raise ValueError(f"unknown parameter symbol: {symbol}")
        return cls(SYMBOL_GENERATORS[_INDEX[symbol]] ** power)

    @classmethod
    def coerce(cls, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, Rational):
            return cls.constant(value)
        if QQ_I.of_type(value):
            return cls(SCALAR_RING.ground_new(value))
        raise TypeError(f"cannot use {type(value).__name__} as a scalar")

    def items(self) -> Iterable[Tuple[Monomial, object]]:
        return ((_named(mono), coef) for mono, coef in self._poly.items())

    def is_zero(self) -> bool:
        return not self._poly

    def __bool__(self) -> bool:
        return bool(self._poly)

    def is_constant(self) -> bool:
        return all(not any(mono) for mono in self._poly.keys())

    def constant_value(self):
        if not self.is_constant():
            raise ScalarDivisionError(f"scalar is not a constant: {self.to_text()}")
        return self._poly.get(_ZERO_MONOM, QQ_I.zero)

    def parameters(self) -> set:
        return {SYMBOLS[k] for mono in self._poly.keys() for k, power in enumerate(mono) if power}

    def degree(self) -> int:
        return max((sum(mono) for mono in self._poly.keys()), default=0)

    def __add__(self, other) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(self._poly + other._poly)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(-self._poly)

    def __sub__(self, other) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(self._poly - other._poly)

    def __rsub__(self, other) -> "Scalar":
        return Scalar.coerce(other) - self

    def __mul__(self, other) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(self._poly * other._poly)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "Scalar":
        if power < 0:
            raise ScalarDivisionError("negative powers are not polynomial")
        return Scalar(self._poly ** power)

    def __truediv__(self, other) -> "Scalar":
        other = Scalar.coerce(other)
        if not other.is_constant():
            raise ScalarDivisionError(f"division by a parameter-dependent scalar: {other.to_text()}")
        value = other.constant_value()
        if value == QQ_I.zero:
            raise ScalarDivisionError("division by zero")
        return Scalar(self._poly.quo_ground(value))

    def __eq__(self, other) -> bool:
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self._poly == other._poly

    def __hash__(self) -> int:
        return hash(frozenset((mono, coef.x, coef.y) for mono, coef in self._poly.items()))

    def __repr__(self) -> str:
        return f"Scalar({self.to_text()})"

    def _mapped(self, fn) -> "Scalar":
        return Scalar(SCALAR_RING.from_dict({mono: fn(mono, coef) for mono, coef in self._poly.items()}))

    def conj(self) -> "Scalar":
        return self._mapped(lambda mono, coef: QQ_I.new(coef.x, -coef.y))

    def limit(self, symbol: str) -> "Scalar":
        """Sends the named constant to infinity, i.e. its inverse symbol to zero."""
        index = _INDEX[PARAMETERS.get(symbol, symbol)]
        return self._mapped(lambda mono, coef: QQ_I.zero if mono[index] else coef)

    def reflect(self, symbol: str) -> "Scalar":
        """Substitutes symbol -> -symbol."""
        index = _INDEX[PARAMETERS.get(symbol, symbol)]
        return self._mapped(lambda mono, coef: -coef if mono[index] % 2 else coef)

    def sorted_terms(self) -> List[Tuple[Monomial, object]]:
        return sorted(self.items(), key=lambda item: (sum(p for _, p in item[0]), item[0]))

    def factors(self) -> Tuple[bool, List[str]]:
        """Sign and multiplicative factors for a single-term scalar, used when printing products."""
        if len(self._poly) != 1:
            return False, [f"({self.to_text()})"]
        ((mono, coef),) = self.items()
        negative, body = _number_text(coef)
        factors = [body] if body else []
        factors.extend(_param_text(name, power) for name, power in mono)
        return negative, factors

    def to_text(self) -> str:
        if not self._poly:
            return "0"
        parts: List[str] = []
        for index, (mono, coef) in enumerate(self.sorted_terms()):
            negative, body = _number_text(coef)
            factors = ([body] if body else []) + [_param_text(name, power) for name, power in mono]
            body = "*".join(factors) or "1"
            if index == 0:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f" - {body}" if negative else f" + {body}")
        return "".join(parts)


def _fraction_text(num: int, den: int) -> str:
    return str(num) if den == 1 else f"{num}/{den}"


def _number_text(coef) -> Tuple[bool, str]:
    re_num, re_den = _parts(coef.x)
    im_num, im_den = _parts(coef.y)
    if im_num == 0:
        if abs(re_num) == 1 and re_den == 1:
            return re_num < 0, ""
        text = _fraction_text(abs(re_num), re_den)
        return re_num < 0, text if re_den == 1 else f"({text})"
    num = abs(im_num)
    if re_num == 0:
        if num == 1 and im_den == 1:
            text = "i"
        elif im_den == 1:
            text = f"{num}*i"
        elif num == 1:
            text = f"(i/{im_den})"
        else:
            text = f"({num}*i/{im_den})"
        return im_num < 0, text
    imag_text = "i" if num == 1 and im_den == 1 else f"{num}*i" if im_den == 1 else f"{num}*i/{im_den}"
    sign = "-" if im_num < 0 else "+"
    return False, f"({_fraction_text(re_num, re_den)} {sign} {imag_text})"


def _param_text(symbol: str, power: int) -> str:
    base = f"(1/{surface_name(symbol)})"
    return base if power == 1 else f"{base}^{power}"


def scalar_add(x: Scalar, y: Scalar) -> Scalar:
    return x + y


def scalar_mul(x: Scalar, y: Scalar) -> Scalar:
    return x * y


def scalar_conj(x: Scalar) -> Scalar:
    return x.conj()


def scalar_limit(x: Scalar, symbol: str) -> Scalar:
    return x.limit(symbol)
