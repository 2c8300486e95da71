from __future__ import annotations

from math import factorial
from typing import Mapping, Sequence, Union

from algebra.freealg import ArityError, NCPoly, TensorPoly, UniverseMismatchError
from algebra.normalize import Presentation
from algebra.scalar import PARAMETERS, Scalar, ScalarDivisionError
from utils.parsing import (
    Call,
    Commutator,
    Expr,
    Name,
    Number,
    Power,
    Product,
    ResolutionError,
    Sum,
    Tensor,
    parse,
)

Value = Union[Scalar, NCPoly, TensorPoly]


class Interpreter:
    """Evaluates parsed expressions to Scalars, normal-ordered NCPolys or TensorPolys.

    Without a presentation products stay in the free algebra over `generators`.
    `hopf` supplies S, Sinv, Delta, eps and star; it only needs the matching methods.
    """

    def __init__(
        self,
        presentation: Presentation | None = None,
        degree: int | None = None,
        hopf=None,
        generators: Sequence[str] | None = None,
        grades: Mapping[str, int] | None = None,
    ):
        self.presentation = presentation
        self.degree = degree
        self.hopf = hopf
        if presentation is not None:
            self.generators = presentation.generators
            self.grades = presentation.grades
        elif generators is not None:
            self.generators = tuple(generators)
            self.grades = dict(grades) if grades else None
        else:
            raise ValueError("an interpreter needs a presentation or a generator list")

    def evaluate_text(self, text: str) -> Value:
        return self.evaluate(parse(text))

    def evaluate(self, node: Expr) -> Value:
        try:
            value = self._eval(node)
        except (ArityError, UniverseMismatchError, ScalarDivisionError) as exc:
            raise ResolutionError(str(exc), node.offset) from exc
        return self._finish(value)

    def as_poly(self, value: Value) -> NCPoly:
        if isinstance(value, TensorPoly):
            return value.as_poly()
        if isinstance(value, Scalar):
            return NCPoly.constant(value, self.generators)
        return value

    def _finish(self, value: Value) -> Value:
        if self.degree is not None and not isinstance(value, Scalar):
            value = value.truncate(self.degree, self.grades)
        return value

    def _order(self, value: Value) -> Value:
        if self.presentation is None:
            return self._finish(value)
        if isinstance(value, NCPoly):
            return self.presentation.normal_order(value, self.degree)
        if isinstance(value, TensorPoly):
            return self.presentation.normal_tensor(value, self.degree)
        return value

    def _eval(self, node: Expr) -> Value:
        if isinstance(node, Number):
            return Scalar.coerce(node.value)
        if isinstance(node, Name):
            return self._name(node)
        if isinstance(node, Sum):
            total: Value = Scalar.zero()
            for sign, term in node.terms:
                value = self._eval(term)
                total = total + (-value if sign == "-" else value)
            return total
        if isinstance(node, Product):
            result: Value = Scalar.one()
            for op, factor in node.factors:
                if op == "/":
                    result = result * self._reciprocal(factor)
                else:
                    result = self._multiply(result, self._eval(factor))
            return result
        if isinstance(node, Tensor):
            legs = []
            for leg in node.legs:
                value = self._eval(leg)
                if isinstance(value, TensorPoly):
                    raise ResolutionError("tensor legs must be single-leg elements", leg.offset)
                legs.append(self.as_poly(value))
            return TensorPoly.pure(*legs)
        if isinstance(node, Power):
            base = self._eval(node.base)
            result = Scalar.one()
            for _ in range(node.exponent):
                result = self._multiply(result, base)
            return result
        if isinstance(node, Commutator):
            left, right = self._eval(node.left), self._eval(node.right)
            return self._multiply(left, right) - self._multiply(right, left)
        if isinstance(node, Call):
            return self._call(node)
        raise TypeError(f"not an expression node: {node!r}")

    def _name(self, node: Name) -> Value:
        if node.name == "i":
            return Scalar.imaginary()
        if node.name == "I":
            return NCPoly.one(self.generators)
        if node.name in self.generators:
            return NCPoly.generator(node.name, self.generators)
        if node.name == "x":
            raise ResolutionError("'x' is reserved for the tensor sign (x)", node.offset)
        if node.name in PARAMETERS:
            raise ResolutionError(f"parameter {node.name} may only appear as 1/{node.name}", node.offset)
        raise ResolutionError(f"unknown name {node.name!r}", node.offset)

    def _reciprocal(self, node: Expr) -> Scalar:
        if isinstance(node, Name) and node.name in PARAMETERS:
            return Scalar.param(node.name)
        if isinstance(node, Power) and isinstance(node.base, Name) and node.base.name in PARAMETERS:
            return Scalar.param(node.base.name, node.exponent)
        if isinstance(node, Product) and all(op == "*" for op, _ in node.factors):
            result = Scalar.one()
            for _, factor in node.factors:
                result = result * self._reciprocal(factor)
            return result
        value = self._eval(node)
        if not isinstance(value, Scalar):
            raise ResolutionError("only scalars can divide", node.offset)
        if value.is_zero():
            raise ResolutionError("division by zero", node.offset)
        return Scalar.one() / value

    def _multiply(self, left: Value, right: Value) -> Value:
        if isinstance(left, Scalar) or isinstance(right, Scalar):
            return left * right
        if isinstance(left, TensorPoly) != isinstance(right, TensorPoly):
            raise ArityError("cannot multiply a tensor by a single-leg element")
        return self._order(left * right)

    def _series(self, node: Call, x: Value, scale: Scalar, parity: int | None) -> NCPoly:
        if self.degree is None:
            raise ResolutionError(f"{node.func} needs a truncation degree", node.offset)
        if isinstance(x, Scalar):
            x = NCPoly.constant(x, self.generators)
        if not isinstance(x, NCPoly):
            raise ResolutionError(f"{node.func} takes a single-leg argument", node.offset)
        if x.constant_term():
            raise ResolutionError(f"{node.func} argument must have zero constant term", node.offset)
        total = NCPoly.one(self.generators) if parity != 1 else NCPoly.zero(self.generators)
        power: Value = NCPoly.one(self.generators)
        n = 0
        while True:
            n += 1
            power = self._multiply(power, x)
            power = power.truncate(self.degree, self.grades)
            if power.is_zero() or n > self.degree:
                break
            if parity is not None and n % 2 != parity:
                continue
            weight = scale ** (n // 2) if parity is not None else Scalar.one()
            total = total + power * (weight / factorial(n))
        return total

    def _call(self, node: Call) -> Value:
        func = node.func
        if func in ("exp", "cosh", "sinh"):
            parity = {"exp": None, "cosh": 0, "sinh": 1}[func]
            return self._series(node, self._eval(node.args[0]), Scalar.one(), parity)
        if func in ("cosh_sq", "sinh_sq"):
            scale = self._eval(node.args[0])
            if not isinstance(scale, Scalar):
                raise ResolutionError(f"first argument of {func} must be a scalar", node.args[0].offset)
            return self._series(node, self._eval(node.args[1]), scale, 0 if func == "cosh_sq" else 1)

        if self.hopf is None:
            raise ResolutionError(f"{func}(...) needs a Hopf structure", node.offset)
        argument = self._eval(node.args[0])
        if isinstance(argument, TensorPoly):
            raise ResolutionError(f"{func} takes a single-leg argument", node.args[0].offset)
        poly = self.as_poly(argument)
        if func == "S":
            return self.hopf.antipode(poly, self.degree)
        if func == "Sinv":
            return self.hopf.inverse_antipode(poly, self.degree)
        if func == "Delta":
            return self.hopf.coproduct(poly, self.degree)
        if func == "eps":
            return self.hopf.counit(poly)
        return self.hopf.star(poly, self.degree)


def evaluate(text: str, presentation: Presentation, degree: int | None = None, hopf=None) -> Value:
    return Interpreter(presentation, degree, hopf).evaluate_text(text)
