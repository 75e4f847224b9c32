"""Sparse multivariate polynomial arithmetic with class-group grading.

Monomials are exponent tuples of fixed length (one slot per declared
variable).  Coefficients are exact rationals; zero coefficients are never
stored.  The text format is the grammar

    expr   := ('+'|'-')? term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' nat)?
    base   := rational | variable | '(' expr ')'

where ``rational`` is an integer or ``a/b`` literal.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    DegreeMismatch,
    NotHomogeneous,
    PolySyntaxError,
    UnknownVariable,
)

Monomial = tuple[int, ...]

MAX_EXPONENT = 2**31 - 1


def grlex_key(mono: Monomial) -> tuple:
    """Graded-lexicographic sort key (total degree, then lex)."""
    return (sum(mono), mono)


class GradedPolynomial:
    """Sparse exact-rational polynomial over a declared variable list.

    ``degree`` is the class-group degree stamped by ``check_homogeneous`` or
    by degree-aware constructors; ``None`` means unknown/unstamped.
    """

    __slots__ = ("variables", "terms", "degree")

    def __init__(
        self,
        variables: Sequence[str],
        terms: Mapping[Monomial, Fraction | int] | None = None,
        degree: tuple[int, ...] | None = None,
    ):
        self.variables = tuple(variables)
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            if len(mono) != len(self.variables):
                raise ValueError("monomial length does not match variable count")
            if any(e < 0 or e > MAX_EXPONENT for e in mono):
                raise ValueError(f"exponent out of range in {mono}")
            clean[tuple(mono)] = coeff
        self.terms = clean
        self.degree = degree

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "GradedPolynomial":
        return cls(variables, {})

    @classmethod
    def constant(cls, variables: Sequence[str], value) -> "GradedPolynomial":
        n = len(variables)
        return cls(variables, {(0,) * n: Fraction(value)})

    @classmethod
    def monomial(cls, variables: Sequence[str], mono: Monomial, coeff=1) -> "GradedPolynomial":
        return cls(variables, {tuple(mono): Fraction(coeff)})

    @classmethod
    def variable(cls, variables: Sequence[str], index: int) -> "GradedPolynomial":
        mono = tuple(1 if i == index else 0 for i in range(len(variables)))
        return cls(variables, {mono: Fraction(1)})

    # -- basic structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedPolynomial)
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __repr__(self):
        return f"GradedPolynomial({self.to_text()!r})"

    def _check_compatible(self, other: "GradedPolynomial"):
        if self.variables != other.variables:
            raise ValueError("polynomials over different variable lists")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        self._check_compatible(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            cur = terms.get(mono, Fraction(0)) + coeff
            if cur:
                terms[mono] = cur
            elif mono in terms:
                del terms[mono]
        return GradedPolynomial(self.variables, terms)

    def __neg__(self) -> "GradedPolynomial":
        return GradedPolynomial(
            self.variables, {m: -c for m, c in self.terms.items()}, self.degree
        )

    def __sub__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        return self + (-other)

    def scale(self, value) -> "GradedPolynomial":
        value = Fraction(value)
        if value == 0:
            return GradedPolynomial.zero(self.variables)
        return GradedPolynomial(
            self.variables, {m: c * value for m, c in self.terms.items()}, self.degree
        )

    def __mul__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        self._check_compatible(other)
        terms: dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mono = tuple(x + y for x, y in zip(ma, mb))
                cur = terms.get(mono, Fraction(0)) + ca * cb
                if cur:
                    terms[mono] = cur
                elif mono in terms:
                    del terms[mono]
        degree = None
        if self.degree is not None and other.degree is not None:
            degree = tuple(x + y for x, y in zip(self.degree, other.degree))
        return GradedPolynomial(self.variables, terms, degree)

    def mul_monomial(self, mono: Monomial, coeff=1) -> "GradedPolynomial":
        coeff = Fraction(coeff)
        return GradedPolynomial(
            self.variables,
            {
                tuple(x + y for x, y in zip(m, mono)): c * coeff
                for m, c in self.terms.items()
            },
        )

    def partial_derivative(self, index: int) -> "GradedPolynomial":
        terms: dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            e = mono[index]
            if e == 0:
                continue
            new = list(mono)
            new[index] = e - 1
            key = tuple(new)
            cur = terms.get(key, Fraction(0)) + coeff * e
            if cur:
                terms[key] = cur
            elif key in terms:
                del terms[key]
        return GradedPolynomial(self.variables, terms)

    def restrict_to_zero(self, var_names: Iterable[str]) -> "GradedPolynomial":
        """Substitute 0 for each named variable."""
        indices = set()
        for name in var_names:
            if name not in self.variables:
                raise UnknownVariable(name)
            indices.add(self.variables.index(name))
        terms = {
            mono: coeff
            for mono, coeff in self.terms.items()
            if all(mono[i] == 0 for i in indices)
        }
        return GradedPolynomial(self.variables, terms)

    # -- printing -----------------------------------------------------------

    def sorted_monomials(self) -> list[Monomial]:
        return sorted(self.terms, key=grlex_key, reverse=True)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for mono in self.sorted_monomials():
            coeff = self.terms[mono]
            factors = []
            for name, e in zip(self.variables, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(coeff)
            if not factors or mag != 1:
                factors.insert(0, _format_rational(mag))
            body = "*".join(factors)
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(parts)


def _format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# ---------------------------------------------------------------------------
# grading


def monomial_degree(mono: Monomial, degrees: Sequence[tuple[int, ...]]) -> tuple[int, ...]:
    rank = len(degrees[0]) if degrees else 0
    out = [0] * rank
    for e, deg in zip(mono, degrees):
        if e:
            for k in range(rank):
                out[k] += e * deg[k]
    return tuple(out)


def check_homogeneous(poly: GradedPolynomial, grading) -> tuple[int, ...]:
    """Return the common class-group degree of all terms and stamp the
    polynomial; raises NotHomogeneous with a two-monomial witness."""
    if not poly.terms:
        raise DegreeMismatch("the zero polynomial has no well-defined degree")
    degrees = grading.degrees
    if len(degrees) != len(poly.variables):
        raise DegreeMismatch("grading map does not cover all variables")
    first_mono = None
    first_deg = None
    for mono in poly.terms:
        deg = monomial_degree(mono, degrees)
        if first_deg is None:
            first_mono, first_deg = mono, deg
        elif deg != first_deg:
            raise NotHomogeneous(first_mono, first_deg, mono, deg)
    poly.degree = first_deg
    return first_deg


# ---------------------------------------------------------------------------
# parser


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip_ws()
        if self.pos >= len(self.text):
            return ("end", "", self.pos)
        ch = self.text[self.pos]
        start = self.pos
        if ch.isdigit():
            end = start
            while end < len(self.text) and self.text[end].isdigit():
                end += 1
            return ("number", self.text[start:end], start)
        if ch.isalpha() or ch == "_":
            end = start
            while end < len(self.text) and (
                self.text[end].isalnum() or self.text[end] == "_"
            ):
                end += 1
            return ("name", self.text[start:end], start)
        if ch in "+-*^()/":
            return (ch, ch, start)
        raise PolySyntaxError(f"unexpected character {ch!r}", start)

    def take(self):
        kind, value, start = self.peek()
        self.pos = start + len(value) if kind != "end" else self.pos
        return kind, value, start


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.tok = _Tokenizer(text)
        self.variables = tuple(variables)
        self.index = {name: i for i, name in enumerate(self.variables)}

    def parse(self) -> GradedPolynomial:
        poly = self.expr()
        kind, value, pos = self.tok.peek()
        if kind != "end":
            raise PolySyntaxError(f"unexpected token {value!r}", pos)
        return poly

    def expr(self) -> GradedPolynomial:
        kind, _, _ = self.tok.peek()
        negate = False
        if kind in ("+", "-"):
            self.tok.take()
            negate = kind == "-"
        poly = self.term()
        if negate:
            poly = -poly
        while True:
            kind, _, _ = self.tok.peek()
            if kind not in ("+", "-"):
                return poly
            self.tok.take()
            rhs = self.term()
            poly = poly - rhs if kind == "-" else poly + rhs

    def term(self) -> GradedPolynomial:
        poly = self.factor()
        while True:
            kind, _, _ = self.tok.peek()
            if kind != "*":
                return poly
            self.tok.take()
            poly = poly * self.factor()

    def factor(self) -> GradedPolynomial:
        base = self.base()
        kind, _, _ = self.tok.peek()
        if kind != "^":
            return base
        self.tok.take()
        kind, value, pos = self.tok.peek()
        if kind != "number":
            raise PolySyntaxError("expected exponent after '^'", pos)
        self.tok.take()
        exponent = int(value)
        result = GradedPolynomial.constant(self.variables, 1)
        for _ in range(exponent):
            result = result * base
        return result

    def base(self) -> GradedPolynomial:
        kind, value, pos = self.tok.take()
        if kind == "number":
            numerator = int(value)
            nxt, _, _ = self.tok.peek()
            if nxt == "/":
                self.tok.take()
                kind2, value2, pos2 = self.tok.peek()
                if kind2 != "number":
                    raise PolySyntaxError("expected denominator after '/'", pos2)
                self.tok.take()
                denominator = int(value2)
                if denominator == 0:
                    raise PolySyntaxError("zero denominator", pos2)
                return GradedPolynomial.constant(
                    self.variables, Fraction(numerator, denominator)
                )
            return GradedPolynomial.constant(self.variables, numerator)
        if kind == "name":
            if value not in self.index:
                raise UnknownVariable(value, pos)
            return GradedPolynomial.variable(self.variables, self.index[value])
        if kind == "(":
            poly = self.expr()
            kind2, _, pos2 = self.tok.peek()
            if kind2 != ")":
                raise PolySyntaxError("expected ')'", pos2)
            self.tok.take()
            return poly
        raise PolySyntaxError(
            f"expected number, variable or '(' but found {value!r}"
            if kind != "end"
            else "unexpected end of input",
            pos,
        )


def parse_polynomial(text: str, variables: Sequence[str]) -> GradedPolynomial:
    """Parse polynomial text over the declared (ordered) variable names."""
    return _Parser(text, variables).parse()
