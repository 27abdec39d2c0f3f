"""Sparse weighted-homogeneous polynomials over exact coefficient fields.

Coefficients live in Q (``fractions.Fraction``) or in a prime field F_p with
p < 2^16.  Polynomials are immutable maps from exponent vectors to nonzero
coefficients; every stored term has the same weighted degree.  The text
grammar is::

    expression := ['-'] term (('+'|'-') term)*
    term       := factor ('*' factor)*
    factor     := variable ['^' positive-integer] | integer
    variable   := 'x' decimal-index

Whitespace is insignificant.  The canonical printer emits the same grammar
with terms sorted by exponent vector.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .weights import Weights, as_weights

# Per-equation seed separation for generic systems.
SEED_STRIDE = 1_000_003


class PolyError(ValueError):
    """Base class for polynomial input errors."""


class ParseError(PolyError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DegreeMismatchError(PolyError):
    """Two monomials of a would-be homogeneous polynomial disagree in degree."""

    def __init__(self, mono_a: str, deg_a: int, mono_b: str, deg_b: int):
        super().__init__(
            f"mixed weighted degrees: {mono_a or '1'} has degree {deg_a}"
            f" but {mono_b or '1'} has degree {deg_b}"
        )
        self.monomials = (mono_a, mono_b)
        self.degrees = (deg_a, deg_b)


class RationalField:
    """Exact rational coefficients."""

    name = "QQ"

    def coerce(self, x):
        if isinstance(x, bool):
            raise PolyError(f"cannot use {x!r} as a rational coefficient")
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise PolyError(f"cannot use {x!r} as a rational coefficient")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1) / a

    def mul_int(self, a, n: int):
        return a * n

    def pow(self, a, e: int):
        return a**e

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")


QQ = RationalField()


def _is_small_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """Integers modulo a prime p, with p < 2^16."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise ValueError(f"prime field characteristic {self.p!r} is not an integer")
        if self.p >= 2**16 or not _is_small_prime(self.p):
            raise ValueError(f"{self.p} is not a prime below 2^16")

    @property
    def name(self) -> str:
        return f"GF({self.p})"

    def coerce(self, x):
        if isinstance(x, bool):
            raise PolyError(f"cannot use {x!r} as a coefficient mod {self.p}")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise PolyError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(den, -1, self.p) % self.p
        raise PolyError(f"cannot use {x!r} as a coefficient mod {self.p}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero mod {self.p}")
        return pow(a, -1, self.p)

    def mul_int(self, a, n: int):
        return (a * n) % self.p

    def pow(self, a, e: int):
        return pow(a, e, self.p)

    def __repr__(self):
        return self.name


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def weighted_degree(exponents, weights) -> int:
    w = as_weights(weights)
    return sum(e * a for e, a in zip(exponents, w.entries))


def _format_monomial(exponents) -> str:
    parts = [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exponents) if e]
    return "*".join(parts)


@dataclass(frozen=True)
class SparsePoly:
    """Weighted-homogeneous polynomial as sorted (exponent vector, coefficient) pairs.

    The zero polynomial has no terms but still carries a declared degree.
    """

    field: object
    weights: Weights
    degree: int
    terms: tuple

    @classmethod
    def from_terms(cls, field, weights, terms, degree: int | None = None) -> "SparsePoly":
        """Build from a mapping or iterable of (exponents, coefficient) pairs.

        Coefficients are coerced into the field and like terms combined; zero
        coefficients drop out.  Every monomial must have the same weighted
        degree; a zero polynomial needs an explicit ``degree``.
        """
        w = as_weights(weights)
        n = len(w)
        items = terms.items() if hasattr(terms, "items") else terms
        combined: dict[tuple[int, ...], object] = {}
        common_degree = None
        first_mono = None
        for exps, coeff in items:
            exps = tuple(exps)
            if len(exps) != n:
                raise PolyError(f"exponent vector {exps} does not match {n} coordinates")
            if any((not isinstance(e, int)) or isinstance(e, bool) or e < 0 for e in exps):
                raise PolyError(f"exponents must be non-negative integers: {exps}")
            d = weighted_degree(exps, w)
            if common_degree is None:
                common_degree, first_mono = d, exps
            elif d != common_degree:
                raise DegreeMismatchError(
                    _format_monomial(first_mono), common_degree, _format_monomial(exps), d
                )
            c = field.coerce(coeff)
            if exps in combined:
                c = field.add(combined[exps], c)
            combined[exps] = c
        combined = {e: c for e, c in combined.items() if c}
        if degree is None:
            if common_degree is None:
                raise PolyError("a zero polynomial needs an explicit degree")
            degree = common_degree
        elif common_degree is not None and common_degree != degree:
            raise PolyError(
                f"declared degree {degree} does not match monomial degree {common_degree}"
            )
        if degree < 0:
            raise PolyError(f"degree must be non-negative, got {degree}")
        return cls(field, w, degree, tuple(sorted(combined.items())))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def num_terms(self) -> int:
        return len(self.terms)

    def coefficient(self, exponents):
        exps = tuple(exponents)
        for e, c in self.terms:
            if e == exps:
                return c
        return self.field.coerce(0)

    def constant_term(self):
        return self.coefficient((0,) * len(self.weights))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for exps, coeff in self.terms:
            mono = _format_monomial(exps)
            if isinstance(coeff, Fraction):
                if coeff.denominator != 1:
                    raise PolyError(
                        f"coefficient {coeff} is not representable in the integer grammar"
                    )
                value = coeff.numerator
            else:
                value = coeff
            negative = value < 0
            mag = -value if negative else value
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            if not chunks:
                chunks.append(f"-{body}" if negative else body)
            else:
                chunks.append(f" - {body}" if negative else f" + {body}")
        return "".join(chunks)

    def evaluate(self, point):
        return evaluate(self, point)


def monomials_of_degree(weights, degree: int):
    """Yield all exponent vectors of the given weighted degree, lexicographically ascending."""
    w = as_weights(weights).entries
    if degree < 0:
        return

    def rec(i, remaining, prefix):
        if i == len(w) - 1:
            q, r = divmod(remaining, w[i])
            if r == 0:
                yield prefix + (q,)
            return
        for e in range(remaining // w[i] + 1):
            yield from rec(i + 1, remaining - e * w[i], prefix + (e,))

    yield from rec(0, degree, ())


def generic_poly(weights, degree: int, field: PrimeField, seed: int) -> SparsePoly:
    """Polynomial with every monomial of the degree present, each with an
    independent pseudo-random nonzero coefficient from a generator seeded by
    ``seed``.  Returns the zero polynomial when no monomial of that degree
    exists."""
    if not isinstance(field, PrimeField):
        raise ValueError("generic polynomials are drawn over prime fields")
    if degree < 1:
        raise ValueError(f"degree must be positive, got {degree}")
    rng = random.Random(seed)
    terms = {m: rng.randrange(1, field.p) for m in monomials_of_degree(weights, degree)}
    return SparsePoly.from_terms(field, weights, terms, degree=degree)


def parse_poly(text: str, weights, field) -> SparsePoly:
    """Parse the module grammar into a weighted-homogeneous polynomial.

    Raises ParseError with a position for syntax problems and unknown
    variables, DegreeMismatchError when two monomials disagree in weighted
    degree.
    """
    w = as_weights(weights)
    n = len(w)
    tokens = _tokenize(text)
    state = {"i": 0}

    def peek():
        return tokens[state["i"]]

    def advance():
        state["i"] += 1

    def parse_term():
        coeff = 1
        exps = [0] * n
        saw_factor = False
        while True:
            kind, value, pos = peek()
            if kind == "int":
                coeff *= value
                advance()
            elif kind == "var":
                if value >= n:
                    raise ParseError(f"unknown variable x{value}: only {n} coordinates", pos)
                advance()
                exp = 1
                if peek()[0] == "^":
                    advance()
                    ekind, evalue, epos = peek()
                    if ekind != "int" or evalue < 1:
                        raise ParseError("exponent must be a positive integer", epos)
                    exp = evalue
                    advance()
                exps[value] += exp
            else:
                raise ParseError("expected a variable or integer", pos)
            saw_factor = True
            if peek()[0] == "*":
                advance()
                continue
            break
        if not saw_factor:
            raise ParseError("empty term", peek()[2])
        return coeff, tuple(exps)

    raw_terms = []
    sign = 1
    if peek()[0] == "-":
        sign = -1
        advance()
    if peek()[0] == "end":
        raise ParseError("empty polynomial", peek()[2])
    while True:
        coeff, exps = parse_term()
        raw_terms.append((exps, sign * coeff))
        kind, _, pos = peek()
        if kind == "end":
            break
        if kind == "+":
            sign = 1
        elif kind == "-":
            sign = -1
        else:
            raise ParseError("expected '+', '-', or end of input", pos)
        advance()

    common_degree = None
    first_mono = None
    for exps, _ in raw_terms:
        d = weighted_degree(exps, w)
        if common_degree is None:
            common_degree, first_mono = d, exps
        elif d != common_degree:
            raise DegreeMismatchError(
                _format_monomial(first_mono), common_degree, _format_monomial(exps), d
            )
    return SparsePoly.from_terms(field, w, raw_terms, degree=common_degree)


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*^":
            tokens.append((ch, None, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch == "x":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError("variable needs a decimal index", i)
            tokens.append(("var", int(text[i + 1 : j]), i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, len(text)))
    return tokens


def partial_derivative(f: SparsePoly, index: int) -> SparsePoly:
    """Formal partial derivative; over F_p the exponent multiplier reduces mod p,
    so terms whose exponent is divisible by p vanish."""
    if index < 0 or index > f.weights.dim:
        raise ValueError(f"coordinate index {index} out of range")
    terms = {}
    for exps, coeff in f.terms:
        e = exps[index]
        if e == 0:
            continue
        c = f.field.mul_int(coeff, e)
        if not c:
            continue
        terms[exps[:index] + (e - 1,) + exps[index + 1 :]] = c
    degree = f.degree - f.weights[index]
    if not terms:
        degree = max(degree, 0)
    return SparsePoly.from_terms(f.field, f.weights, terms, degree=degree)


def restrict(f: SparsePoly, indices) -> SparsePoly:
    """Set every coordinate outside ``indices`` to zero: terms with a positive
    exponent there drop; the result lives in the same ambient ring."""
    keep = set(indices)
    if keep and (min(keep) < 0 or max(keep) > f.weights.dim):
        raise ValueError(f"stratum indices {sorted(keep)} out of range")
    terms = {
        exps: coeff
        for exps, coeff in f.terms
        if all(e == 0 for i, e in enumerate(exps) if i not in keep)
    }
    return SparsePoly.from_terms(f.field, f.weights, terms, degree=f.degree)


def evaluate(f: SparsePoly, point):
    """Evaluate at a point given as a tuple of field elements (exact)."""
    pt = tuple(point)
    if len(pt) != len(f.weights):
        raise PolyError(f"point has {len(pt)} coordinates, expected {len(f.weights)}")
    values = tuple(f.field.coerce(x) for x in pt)
    total = f.field.coerce(0)
    for exps, coeff in f.terms:
        v = coeff
        for x, e in zip(values, exps):
            if e:
                if not x:
                    v = f.field.coerce(0)
                    break
                v = f.field.mul(v, f.field.pow(x, e))
        if v:
            total = f.field.add(total, v)
    return total


def to_prime_field(f: SparsePoly, p: int) -> SparsePoly:
    """Reduce a rational-coefficient polynomial mod p (terms vanishing mod p drop)."""
    field = GF(p)
    if f.field == field:
        return f
    if isinstance(f.field, PrimeField):
        raise ValueError(f"cannot move a {f.field.name} polynomial to GF({p})")
    terms = {exps: field.coerce(coeff) for exps, coeff in f.terms}
    return SparsePoly.from_terms(field, f.weights, terms, degree=f.degree)


@dataclass(frozen=True)
class PolySystem:
    """Ordered tuple of polynomials sharing one ambient ring and coefficient field."""

    polys: tuple[SparsePoly, ...]

    def __post_init__(self):
        polys = tuple(self.polys)
        object.__setattr__(self, "polys", polys)
        if not polys:
            raise ValueError("a polynomial system needs at least one polynomial")
        first = polys[0]
        for f in polys[1:]:
            if f.weights != first.weights:
                raise ValueError("all system polynomials must share the same weights")
            if f.field != first.field:
                raise ValueError("all system polynomials must share the same coefficient field")

    @property
    def field(self):
        return self.polys[0].field

    @property
    def weights(self) -> Weights:
        return self.polys[0].weights

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(f.degree for f in self.polys)

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    @classmethod
    def generic(cls, weights, degrees, field: PrimeField, seed: int) -> "PolySystem":
        """Generic member of the family: equation j is seeded with
        ``seed * SEED_STRIDE + j`` so the equations draw independent streams."""
        return cls(
            tuple(
                generic_poly(weights, d, field, seed * SEED_STRIDE + j)
                for j, d in enumerate(degrees)
            )
        )

    def reduce_mod(self, p: int) -> "PolySystem":
        return PolySystem(tuple(to_prime_field(f, p) for f in self.polys))

    def to_json(self) -> list[str]:
        return [str(f) for f in self.polys]
