from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import List, Tuple, Union

# Function name -> number of arguments.
FUNCTIONS = {
    "exp": 1,
    "cosh": 1,
    "sinh": 1,
    "cosh_sq": 2,
    "sinh_sq": 2,
    "S": 1,
    "Sinv": 1,
    "Delta": 1,
    "eps": 1,
    "star": 1,
}
RESERVED_NAMES = {"i", "I", "x"} | set(FUNCTIONS)

TOKEN_RE = re.compile(
    r"(?P<tensor>\(\s*x\s*\))|(?P<number>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()\[\],])"
)


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class ResolutionError(ParseError):
    pass


@dataclass(frozen=True)
class Number:
    value: int
    offset: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class Name:
    name: str
    offset: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class Sum:
    terms: Tuple[Tuple[str, "Expr"], ...]
    offset: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class Product:
    factors: Tuple[Tuple[str, "Expr"], ...]
    offset: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class Tensor:
    legs: Tuple["Expr", ...]
    offset: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class Power:
    base: "Expr"
    exponent: int
    offset: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class Commutator:
    left: "Expr"
    right: "Expr"
    offset: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class Call:
    func: str
    args: Tuple["Expr", ...]
    offset: int = field(default=0, compare=False, repr=False)


Expr = Union[Number, Name, Sum, Product, Tensor, Power, Commutator, Call]


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), pos))
        pos = match.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


class Parser:
    """Recursive descent over

        expr   := ['+'|'-'] tterm (('+'|'-') tterm)*
        tterm  := term ('(x)' term)*
        term   := factor (('*'|'/') factor)*
        factor := atom ('^' nat)?
        atom   := nat | name | '[' expr ',' expr ']' | func '(' args ')' | '(' expr ')'
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        if token.kind != "eof":
            self.index += 1
        return token

    def accept(self, text: str) -> bool:
        if self.current.kind == "op" and self.current.text == text:
            self.advance()
            return True
        return False

    def expect(self, text: str) -> Token:
        token = self.current
        if token.kind != "op" or token.text != text:
            found = "end of input" if token.kind == "eof" else repr(token.text)
            raise ParseError(f"expected {text!r}, found {found}", token.offset)
        return self.advance()

    def parse(self) -> Expr:
        node = self.expr()
        if self.current.kind != "eof":
            raise ParseError(f"unexpected {self.current.text!r}", self.current.offset)
        return node

    def expr(self) -> Expr:
        start = self.current.offset
        terms: List[Tuple[str, Expr]] = []
        sign = "+"
        if self.current.kind == "op" and self.current.text in "+-":
            sign = self.advance().text
        terms.append((sign, self.tensor_term()))
        while self.current.kind == "op" and self.current.text in "+-":
            sign = self.advance().text
            terms.append((sign, self.tensor_term()))
        if len(terms) == 1 and terms[0][0] == "+":
            return terms[0][1]
        return Sum(tuple(terms), start)

    def tensor_term(self) -> Expr:
        start = self.current.offset
        legs = [self.term()]
        while self.current.kind == "tensor":
            self.advance()
            legs.append(self.term())
        return legs[0] if len(legs) == 1 else Tensor(tuple(legs), start)

    def term(self) -> Expr:
        start = self.current.offset
        factors: List[Tuple[str, Expr]] = [("*", self.factor())]
        while self.current.kind == "op" and self.current.text in "*/":
            op = self.advance().text
            factors.append((op, self.factor()))
        return factors[0][1] if len(factors) == 1 else Product(tuple(factors), start)

    def factor(self) -> Expr:
        start = self.current.offset
        base = self.atom()
        if self.accept("^"):
            token = self.current
            if token.kind != "number":
                raise ParseError("exponent must be a natural number", token.offset)
            self.advance()
            return Power(base, int(token.text), start)
        return base

    def atom(self) -> Expr:
        token = self.current
        if token.kind == "number":
            self.advance()
            return Number(int(token.text), token.offset)
        if token.kind == "name":
            self.advance()
            if token.text in FUNCTIONS:
                return self.call(token)
            return Name(token.text, token.offset)
        if self.accept("["):
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect("]")
            return Commutator(left, right, token.offset)
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return inner
        if token.kind == "eof":
            raise ParseError("unexpected end of input", token.offset)
        raise ParseError(f"unexpected {token.text!r}", token.offset)

    def call(self, name: Token) -> Call:
        self.expect("(")
        args = [self.expr()]
        while self.accept(","):
            args.append(self.expr())
        self.expect(")")
        if len(args) != FUNCTIONS[name.text]:
            raise ParseError(f"{name.text} takes {FUNCTIONS[name.text]} argument(s), got {len(args)}", name.offset)
        return Call(name.text, tuple(args), name.offset)


def parse(text: str) -> Expr:
    return Parser(text).parse()


def _wrap(node: Expr, *kinds) -> str:
    text = to_text(node)
    return f"({text})" if isinstance(node, kinds) else text


def to_text(node: Expr) -> str:
    """Prints an expression so that parsing the output gives back the same tree."""
    if isinstance(node, Number):
        return str(node.value)
    if isinstance(node, Name):
        return node.name
    if isinstance(node, Sum):
        parts = []
        for index, (sign, term) in enumerate(node.terms):
            body = _wrap(term, Sum)
            if index == 0:
                parts.append(f"-{body}" if sign == "-" else body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)
    if isinstance(node, Tensor):
        return " (x) ".join(_wrap(leg, Sum, Tensor) for leg in node.legs)
    if isinstance(node, Product):
        parts = []
        for index, (op, factor) in enumerate(node.factors):
            body = _wrap(factor, Sum, Tensor, Product)
            parts.append(body if index == 0 else f"{op}{body}")
        return "".join(parts)
    if isinstance(node, Power):
        return f"{_wrap(node.base, Sum, Tensor, Product, Power)}^{node.exponent}"
    if isinstance(node, Commutator):
        return f"[{to_text(node.left)}, {to_text(node.right)}]"
    if isinstance(node, Call):
        return f"{node.func}({', '.join(to_text(arg) for arg in node.args)})"
    raise TypeError(f"not an expression node: {node!r}")
