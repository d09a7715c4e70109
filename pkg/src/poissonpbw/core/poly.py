"""Exact sparse multivariate polynomials over the rationals.

Monomials are dense exponent tuples, coefficients are fractions.Fraction.
All arithmetic is exact; there is no floating point anywhere in this package.
"""

from __future__ import annotations

import re
from fractions import Fraction

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

_ZERO = Fraction(0)
_ONE = Fraction(1)


class ContextMismatchError(ValueError):
    """Raised when operands belong to different variable contexts."""


class ParseError(ValueError):
    """Malformed textual input; carries the 0-based offset of the problem."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _is_identifier(name):
    return bool(_NAME_RE.fullmatch(name))


class VarContext:
    """Ordered variable names with positive integer weights.

    The weights define the weighted degree used by graded term orders and
    by all degree bookkeeping; they default to all ones.
    """

    __slots__ = ("names", "weights", "_index")

    def __init__(self, names, weights=None):
        names = tuple(str(n) for n in names)
        if not names:
            raise ValueError("need at least one variable")
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        for name in names:
            if not _is_identifier(name):
                raise ValueError(f"invalid variable name {name!r}")
        if weights is None:
            weights = (1,) * len(names)
        weights = tuple(int(w) for w in weights)
        if len(weights) != len(names):
            raise ValueError("weights must match variables")
        if any(w <= 0 for w in weights):
            raise ValueError("weights must be positive integers")
        self.names = names
        self.weights = weights
        self._index = {nm: i for i, nm in enumerate(names)}

    @property
    def n(self):
        return len(self.names)

    def __len__(self):
        return len(self.names)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def wdeg(self, mono):
        """Weighted degree of an exponent tuple."""
        return sum(w * e for w, e in zip(self.weights, mono))

    def zero_mono(self):
        return (0,) * len(self.names)

    def unit_mono(self, i):
        return tuple(1 if j == i else 0 for j in range(len(self.names)))

    def __eq__(self, other):
        return (
            isinstance(other, VarContext)
            and self.names == other.names
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.names, self.weights))

    def __repr__(self):
        if all(w == 1 for w in self.weights):
            return f"VarContext({list(self.names)})"
        return f"VarContext({list(self.names)}, weights={list(self.weights)})"


# ---------------------------------------------------------------------------
# monomial helpers: monomials are plain exponent tuples

def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True if a divides b componentwise."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_deg(m):
    return sum(m)


def iter_monomials(n, degree):
    """All exponent tuples of length n with plain total degree == degree."""
    if n == 1:
        yield (degree,)
        return
    for head in range(degree, -1, -1):
        for tail in iter_monomials(n - 1, degree - head):
            yield (head,) + tail


def iter_weighted_monomials(weights, degree):
    """All exponent tuples with weighted degree exactly == degree."""
    if not weights:
        if degree == 0:
            yield ()
        return
    w = weights[0]
    for head in range(degree // w, -1, -1):
        for tail in iter_weighted_monomials(weights[1:], degree - w * head):
            yield (head,) + tail


# ---------------------------------------------------------------------------

class Polynomial:
    """Immutable-by-convention sparse polynomial over Q.

    terms maps exponent tuples to nonzero Fractions; the zero polynomial
    has an empty dict.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms=None):
        self.ctx = ctx
        clean = {}
        if terms:
            n = len(ctx.names)
            for mono, coeff in terms.items():
                if len(mono) != n or any(e < 0 for e in mono):
                    raise ValueError(f"bad exponent tuple {mono!r}")
                if not isinstance(coeff, Fraction):
                    coeff = Fraction(coeff)
                if coeff:
                    clean[tuple(mono)] = coeff
        self.terms = clean

    # -- constructors

    @classmethod
    def zero(cls, ctx):
        return cls(ctx)

    @classmethod
    def constant(cls, ctx, value):
        value = Fraction(value)
        if not value:
            return cls(ctx)
        return cls(ctx, {ctx.zero_mono(): value})

    @classmethod
    def one(cls, ctx):
        return cls.constant(ctx, 1)

    @classmethod
    def variable(cls, ctx, i):
        return cls(ctx, {ctx.unit_mono(i): _ONE})

    @classmethod
    def monomial(cls, ctx, mono, coeff=1):
        return cls(ctx, {tuple(mono): Fraction(coeff)})

    # -- queries

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or set(self.terms) == {self.ctx.zero_mono()}

    def constant_coefficient(self):
        return self.terms.get(self.ctx.zero_mono(), _ZERO)

    def degree(self):
        """Weighted total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.ctx.wdeg(m) for m in self.terms)

    def is_homogeneous(self):
        if not self.terms:
            return True
        degs = {self.ctx.wdeg(m) for m in self.terms}
        return len(degs) == 1

    def homogeneous_component(self, d):
        ctx = self.ctx
        return Polynomial(ctx, {m: c for m, c in self.terms.items() if ctx.wdeg(m) == d})

    def homogeneous_components(self):
        """Dict weighted degree -> component, nonzero components only."""
        out = {}
        for m, c in self.terms.items():
            out.setdefault(self.ctx.wdeg(m), {})[m] = c
        return {d: Polynomial(self.ctx, t) for d, t in sorted(out.items())}

    # -- arithmetic

    def _check(self, other):
        if self.ctx != other.ctx:
            raise ContextMismatchError("polynomials from different contexts")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.ctx, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, _ZERO) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        out = Polynomial.__new__(Polynomial)
        out.ctx = self.ctx
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Polynomial.__new__(Polynomial)
        out.ctx = self.ctx
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.ctx, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Polynomial(self.ctx)
            out = Polynomial.__new__(Polynomial)
            out.ctx = self.ctx
            out.terms = {m: c * v for m, v in self.terms.items()}
            return out
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        terms = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = mono_mul(ma, mb)
                s = terms.get(m, _ZERO) + ca * cb
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        out = Polynomial.__new__(Polynomial)
        out.ctx = self.ctx
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = Polynomial.one(self.ctx)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def partial(self, i):
        """Partial derivative with respect to variable i."""
        terms = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                dm = list(m)
                dm[i] = e - 1
                terms[tuple(dm)] = c * e
        return Polynomial(self.ctx, terms)

    # -- comparison / hashing

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.ctx, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx, tuple(sorted(self.terms.items()))))

    # -- printing

    def __str__(self):
        return poly_to_string(self)

    def __repr__(self):
        return f"Polynomial({poly_to_string(self)})"


# ---------------------------------------------------------------------------
# canonical printing: plain-grevlex descending, round-trips through parse_poly

def _print_key(m):
    return (sum(m), tuple(-e for e in reversed(m)))


def _mono_string(ctx, m):
    parts = []
    for name, e in zip(ctx.names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def poly_to_string(p):
    if not p.terms:
        return "0"
    chunks = []
    for m in sorted(p.terms, key=_print_key, reverse=True):
        c = p.terms[m]
        body = _mono_string(p.ctx, m)
        mag = abs(c)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        if not chunks:
            chunks.append(text if c > 0 else f"-{text}")
        else:
            chunks.append(f"+ {text}" if c > 0 else f"- {text}")
    return " ".join(chunks)


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()/]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            bad = len(text) - len(stripped)
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        if m.lastgroup == "int":
            tokens.append(("int", int(m.group("int")), m.start("int")))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    """Recursive-descent parser for the polynomial expression grammar.

    expr   := term { ('+'|'-') term }
    term   := factor { '*' factor }
    factor := ['-'] base { '^' int }
    base   := int [ '/' int ] | name | '(' expr ')'

    Division appears only inside rational literals; '2X' without an explicit
    '*' is rejected.
    """

    def __init__(self, ctx, text):
        self.ctx = ctx
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def parse(self):
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return p

    def expr(self):
        p = self.term()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                q = self.term()
                p = p + q if val == "+" else p - q
            else:
                return p

    def term(self):
        p = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.take()
                p = p * self.factor()
            else:
                return p

    def factor(self):
        kind, val, pos = self.peek()
        negate = False
        if kind == "op" and val == "-":
            self.take()
            negate = True
        p = self.base()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "^":
                self.take()
                kind, val, pos = self.take()
                if kind != "int":
                    raise ParseError("exponent must be a nonnegative integer", pos)
                p = p ** val
            else:
                break
        return -p if negate else p

    def base(self):
        kind, val, pos = self.take()
        if kind == "int":
            num = val
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "/":
                self.take()
                k3, v3, p3 = self.take()
                if k3 != "int":
                    raise ParseError("expected integer denominator", p3)
                if v3 == 0:
                    raise ParseError("zero denominator", p3)
                return Polynomial.constant(self.ctx, Fraction(num, v3))
            return Polynomial.constant(self.ctx, num)
        if kind == "name":
            try:
                idx = self.ctx.index(val)
            except KeyError:
                raise ParseError(f"unknown variable {val!r}", pos) from None
            return Polynomial.variable(self.ctx, idx)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        raise ParseError(f"unexpected {val!r}" if val is not None else "unexpected end of input", pos)


def parse_polynomial(text, ctx):
    """Parse a polynomial expression in the variables of ctx."""
    return _Parser(ctx, text).parse()


def partial_derivative(p, var):
    """Formal partial derivative of p with respect to variable index var."""
    if not 0 <= var < len(p.ctx.names):
        raise IndexError(f"variable index {var} out of range")
    return p.partial(var)


# ---------------------------------------------------------------------------

def random_polynomial(ctx, rng, max_degree, n_terms=4, coeff_bound=6):
    """Random test polynomial: up to n_terms terms of plain degree <= max_degree."""
    n = len(ctx.names)
    terms = {}
    for _ in range(n_terms):
        d = rng.randint(0, max_degree)
        mono = [0] * n
        for _ in range(d):
            mono[rng.randrange(n)] += 1
        c = Fraction(rng.randint(-coeff_bound, coeff_bound))
        if c:
            m = tuple(mono)
            terms[m] = terms.get(m, _ZERO) + c
    return Polynomial(ctx, {m: c for m, c in terms.items() if c})
