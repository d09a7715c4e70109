"""Enveloping algebra of a polynomial Poisson structure on its ordered basis.

Elements are kept in the normal form  sum  coeff * b1^m1 ... bn^mn  with all
polynomial coefficients on the left and the b-factors sorted by generator
index.  Products are computed by the rewriting rules

    R1:  b_i * f      ->  f * b_i + {X_i, f}
    R2:  b_j * b_i    ->  b_i * b_j + u_beta({X_j, X_i})   (j > i)

which terminate because correction terms drop the b-degree and swaps reduce
the inversion count.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from .core import Polynomial, poly_to_string, random_polynomial
from .poisson import bracket, bracket_var

_MINUS_INF = float("-inf")


class UElement:
    """Normal-form element of the enveloping algebra.

    terms maps a b-exponent tuple m (length n) to a nonzero Polynomial
    coefficient; the zero element has an empty dict.
    """

    __slots__ = ("ps", "terms")

    def __init__(self, ps, terms=None):
        self.ps = ps
        n = len(ps.ctx.names)
        clean = {}
        if terms:
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != n or any(e < 0 for e in m):
                    raise ValueError(f"bad b-exponent tuple {m!r}")
                if isinstance(c, (int, Fraction)):
                    c = Polynomial.constant(ps.ctx, c)
                if c.ctx != ps.ctx:
                    raise ValueError("coefficient from a different context")
                if c:
                    clean[m] = c
        self.terms = clean

    @classmethod
    def _make(cls, ps, terms):
        """Internal constructor: terms already clean."""
        out = cls.__new__(cls)
        out.ps = ps
        out.terms = terms
        return out

    # -- queries

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if self.ps != other.ps:
            raise ValueError("elements of different enveloping algebras")

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = u_alpha(self.ps, Polynomial.constant(self.ps.ctx, other))
        if not isinstance(other, UElement):
            return NotImplemented
        return self.ps == other.ps and self.terms == other.terms

    __hash__ = None

    # -- arithmetic sugar delegating to the module-level operations

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = u_alpha(self.ps, Polynomial.constant(self.ps.ctx, other))
        if not isinstance(other, UElement):
            return NotImplemented
        return u_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return UElement._make(self.ps, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = u_alpha(self.ps, Polynomial.constant(self.ps.ctx, other))
        if not isinstance(other, UElement):
            return NotImplemented
        return u_add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            return u_scale(self, other)
        if not isinstance(other, UElement):
            return NotImplemented
        return u_mul(self, other)

    def __rmul__(self, other):
        # scalars and polynomial coefficients act from the left on normal forms
        if isinstance(other, (int, Fraction, Polynomial)):
            return u_scale(self, other)
        return NotImplemented

    def __str__(self):
        return u_to_string(self)

    def __repr__(self):
        return f"UElement({u_to_string(self)})"


def _beta_string(m):
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"b{i + 1}")
        elif e > 1:
            parts.append(f"b{i + 1}^{e}")
    return "*".join(parts)


def u_to_string(u):
    """Canonical display: terms by descending (b-degree, exponent)."""
    if not u.terms:
        return "0"
    chunks = []
    for m in sorted(u.terms, key=lambda m: (sum(m), m), reverse=True):
        c = u.terms[m]
        body = _beta_string(m)
        if not body:
            text = poly_to_string(c)
        elif len(c.terms) > 1:
            text = f"({poly_to_string(c)})*{body}"
        elif c == Polynomial.one(c.ctx):
            text = body
        elif c == Polynomial.constant(c.ctx, -1):
            text = f"-{body}"
        else:
            text = f"{poly_to_string(c)}*{body}"
        if not chunks:
            chunks.append(text)
        elif text.startswith("-"):
            chunks.append(f"- {text[1:]}")
        else:
            chunks.append(f"+ {text}")
    return " ".join(chunks)


# ---------------------------------------------------------------------------
# constructors and linear operations

def u_zero(ps):
    return UElement._make(ps, {})


def u_one(ps):
    ctx = ps.ctx
    return UElement._make(ps, {ctx.zero_mono(): Polynomial.one(ctx)})


def u_alpha(ps, f):
    """Image of a polynomial under the algebra map into the envelope."""
    if f.ctx != ps.ctx:
        raise ValueError("context mismatch")
    if not f:
        return u_zero(ps)
    return UElement._make(ps, {ps.ctx.zero_mono(): f})


def u_beta_gen(ps, i):
    """The generator b_i itself."""
    ctx = ps.ctx
    if not 0 <= i < len(ctx.names):
        raise IndexError(f"generator index {i} out of range")
    return UElement._make(ps, {ctx.unit_mono(i): Polynomial.one(ctx)})


def u_beta(ps, f):
    """Derivation-style lift: sum_i alpha(df/dX_i) * b_i."""
    if f.ctx != ps.ctx:
        raise ValueError("context mismatch")
    ctx = ps.ctx
    terms = {}
    for i in range(len(ctx.names)):
        df = f.partial(i)
        if df:
            terms[ctx.unit_mono(i)] = df
    return UElement._make(ps, terms)


def u_add(u, v):
    u._check(v)
    terms = dict(u.terms)
    for m, c in v.terms.items():
        s = terms.get(m)
        s = c if s is None else s + c
        if s:
            terms[m] = s
        else:
            terms.pop(m, None)
    return UElement._make(u.ps, terms)


def u_scale(u, c):
    """Scale by a rational or multiply every coefficient by a polynomial.

    Polynomial factors act on the left of the normal form, which is plain
    coefficient multiplication; right multiplication must go through u_mul.
    """
    if isinstance(c, (int, Fraction)):
        c = Polynomial.constant(u.ps.ctx, c)
    if c.ctx != u.ps.ctx:
        raise ValueError("context mismatch")
    if not c:
        return u_zero(u.ps)
    terms = {}
    for m, q in u.terms.items():
        p = c * q
        if p:
            terms[m] = p
    return UElement._make(u.ps, terms)


# ---------------------------------------------------------------------------
# multiplication by rewriting

def _accumulate(terms, m, c):
    s = terms.get(m)
    s = c if s is None else s + c
    if s:
        terms[m] = s
    else:
        terms.pop(m, None)


def _insert(ps, i, m, memo):
    """Normal form of b_i * b^m as a dict of terms; b^m already normal."""
    key = (i, m)
    hit = memo.get(key)
    if hit is not None:
        return hit
    j = next((idx for idx, e in enumerate(m) if e), None)
    if j is None or i <= j:
        bumped = list(m)
        bumped[i] += 1
        out = {tuple(bumped): Polynomial.one(ps.ctx)}
        memo[key] = out
        return out
    rest = list(m)
    rest[j] -= 1
    rest = tuple(rest)
    # R2: b_i b_j = b_j b_i + u_beta({X_i, X_j}) applied against b^rest
    out = _beta_times_terms(ps, j, _insert(ps, i, rest, memo), memo)
    p = ps.matrix[i][j]
    for l in range(len(ps.ctx.names)):
        dp = p.partial(l)
        if dp:
            for mm, cc in _insert(ps, l, rest, memo).items():
                _accumulate(out, mm, dp * cc)
    memo[key] = out
    return out


def _beta_times_terms(ps, i, terms, memo):
    """Normal form of b_i * (sum of terms) as a fresh dict."""
    out = {}
    for m, c in terms.items():
        br = bracket_var(ps, i, c)  # R1 correction {X_i, c}
        if br:
            _accumulate(out, m, br)
        for mm, cc in _insert(ps, i, m, memo).items():
            _accumulate(out, mm, c * cc)
    return out


def u_mul(u, v):
    """Associative product in the envelope, result in normal form."""
    u._check(v)
    ps = u.ps
    memo = {}
    out = {}
    for m, c in u.terms.items():
        work = v.terms
        for i in range(len(m) - 1, -1, -1):
            for _ in range(m[i]):
                work = _beta_times_terms(ps, i, work, memo)
        for mm, cc in work.items():
            _accumulate(out, mm, c * cc)
    return UElement._make(u.ps, out)


def u_commutator(u, v):
    return u_add(u_mul(u, v), -u_mul(v, u))


# ---------------------------------------------------------------------------
# filtration

def filtration_degree(u):
    """Largest b-degree among the terms; -inf sentinel on the zero element."""
    if not u.terms:
        return _MINUS_INF
    return max(sum(m) for m in u.terms)


def gr_project(u, k):
    """Class of u in the k-th graded slice: keep the b-degree-k terms."""
    d = filtration_degree(u)
    if d > k:
        raise ValueError(f"filtration degree {d} exceeds requested level {k}")
    return UElement._make(u.ps, {m: c for m, c in u.terms.items() if sum(m) == k})


# ---------------------------------------------------------------------------
# the symmetric side: polynomial coefficients times dX-monomials

class SymElement:
    """Element of the free symmetric algebra on the dX_i over the coefficients.

    terms maps a dX-exponent tuple to a nonzero Polynomial coefficient.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms=None):
        self.ctx = ctx
        n = len(ctx.names)
        clean = {}
        if terms:
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != n or any(e < 0 for e in m):
                    raise ValueError(f"bad dX-exponent tuple {m!r}")
                if isinstance(c, (int, Fraction)):
                    c = Polynomial.constant(ctx, c)
                if c.ctx != ctx:
                    raise ValueError("coefficient from a different context")
                if c:
                    clean[m] = c
        self.terms = clean

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SymElement):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, SymElement):
            return NotImplemented
        return sym_add(self, other)

    def __neg__(self):
        return SymElement(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SymElement):
            return NotImplemented
        return sym_add(self, -other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            return sym_scale(self, other)
        if not isinstance(other, SymElement):
            return NotImplemented
        return sym_mul(self, other)

    __rmul__ = __mul__

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for m in sorted(self.terms, key=lambda m: (sum(m), m), reverse=True):
            c = self.terms[m]
            parts = []
            for name, e in zip(self.ctx.names, m):
                if e == 1:
                    parts.append(f"d{name}")
                elif e > 1:
                    parts.append(f"d{name}^{e}")
            body = "*".join(parts)
            if not body:
                text = poly_to_string(c)
            elif len(c.terms) > 1:
                text = f"({poly_to_string(c)})*{body}"
            elif c == Polynomial.one(self.ctx):
                text = body
            elif c == Polynomial.constant(self.ctx, -1):
                text = f"-{body}"
            else:
                text = f"{poly_to_string(c)}*{body}"
            if not chunks:
                chunks.append(text)
            elif text.startswith("-"):
                chunks.append(f"- {text[1:]}")
            else:
                chunks.append(f"+ {text}")
        return " ".join(chunks)

    def __repr__(self):
        return f"SymElement({self})"


def sym_monomial(ctx, coeff, dxm):
    return SymElement(ctx, {tuple(dxm): coeff})


def sym_add(s, t):
    if s.ctx != t.ctx:
        raise ValueError("context mismatch")
    terms = dict(s.terms)
    for m, c in t.terms.items():
        q = terms.get(m)
        q = c if q is None else q + c
        if q:
            terms[m] = q
        else:
            terms.pop(m, None)
    out = SymElement.__new__(SymElement)
    out.ctx = s.ctx
    out.terms = terms
    return out


def sym_scale(s, c):
    if isinstance(c, (int, Fraction)):
        c = Polynomial.constant(s.ctx, c)
    terms = {}
    for m, q in s.terms.items():
        p = c * q
        if p:
            terms[m] = p
    out = SymElement.__new__(SymElement)
    out.ctx = s.ctx
    out.terms = terms
    return out


def sym_mul(s, t):
    """Commutative product: coefficients multiply, dX-exponents add."""
    if s.ctx != t.ctx:
        raise ValueError("context mismatch")
    terms = {}
    for ma, ca in s.terms.items():
        for mb, cb in t.terms.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            c = ca * cb
            q = terms.get(m)
            q = c if q is None else q + c
            if q:
                terms[m] = q
            else:
                terms.pop(m, None)
    out = SymElement.__new__(SymElement)
    out.ctx = s.ctx
    out.terms = terms
    return out


def sym_degree(s):
    """Largest dX-degree among the terms; -inf on zero."""
    if not s.terms:
        return _MINUS_INF
    return max(sum(m) for m in s.terms)


def pbw_map_smooth(ps, s):
    """Relabel dX-exponents as b-exponents; input must be dX-homogeneous."""
    if s.ctx != ps.ctx:
        raise ValueError("context mismatch")
    degs = {sum(m) for m in s.terms}
    if len(degs) > 1:
        raise ValueError(f"input mixes dX-degrees {sorted(degs)}")
    return UElement._make(ps, dict(s.terms))


def symmetrize(ps, s):
    """Average the products of the b-factors over all orderings.

    Requires rational coefficients (divides by k!); linear in s, and
    gr_project(symmetrize(s), k) recovers the dX-degree-k relabeling.
    """
    if s.ctx != ps.ctx:
        raise ValueError("context mismatch")
    memo = {}
    total = {}
    for m, c in s.terms.items():
        word = []
        for i, e in enumerate(m):
            word.extend([i] * e)
        k = len(word)
        acc = {}
        for perm in itertools.permutations(word):
            prod = {ps.ctx.zero_mono(): Polynomial.one(ps.ctx)}
            for i in reversed(perm):
                prod = _beta_times_terms(ps, i, prod, memo)
            for mm, cc in prod.items():
                _accumulate(acc, mm, cc)
        scale = c * Fraction(1, math.factorial(k))
        for mm, cc in acc.items():
            _accumulate(total, mm, scale * cc)
    return UElement._make(ps, total)


# ---------------------------------------------------------------------------
# randomized identity checking

def random_u_element(ps, rng, max_beta_deg=2, max_coeff_deg=2, n_terms=3):
    """Random envelope element for identity tests."""
    n = len(ps.ctx.names)
    terms = {}
    for _ in range(n_terms):
        k = rng.randint(0, max_beta_deg)
        m = [0] * n
        for _ in range(k):
            m[rng.randrange(n)] += 1
        c = random_polynomial(ps.ctx, rng, max_coeff_deg, n_terms=2)
        if c:
            m = tuple(m)
            prev = terms.get(m)
            c = c if prev is None else prev + c
            if c:
                terms[m] = c
            else:
                terms.pop(m, None)
    return UElement._make(ps, terms)


def envelope_relations_check(ps, trials=200, max_deg=3, seed=0):
    """Check the four defining identities on random polynomial pairs.

    Returns a list of failure records; an empty list means every sampled
    instance of every identity held exactly.
    """
    rng = random.Random(seed)
    ctx = ps.ctx
    failures = []

    def record(trial, name, f, g):
        failures.append({
            "trial": trial,
            "identity": name,
            "f": poly_to_string(f),
            "g": poly_to_string(g),
        })

    for trial in range(trials):
        f = random_polynomial(ctx, rng, max_deg)
        g = random_polynomial(ctx, rng, max_deg)
        af, ag = u_alpha(ps, f), u_alpha(ps, g)
        bf, bg = u_beta(ps, f), u_beta(ps, g)
        if u_mul(af, ag) != u_alpha(ps, f * g):
            record(trial, "alpha multiplicative", f, g)
        if u_commutator(bf, bg) != u_beta(ps, bracket(ps, f, g)):
            record(trial, "beta Lie morphism", f, g)
        if u_commutator(af, bg) != -u_alpha(ps, bracket(ps, g, f)):
            record(trial, "mixed commutator", f, g)
        if u_beta(ps, f * g) != u_add(u_mul(af, bg), u_mul(ag, bf)):
            record(trial, "beta derivation", f, g)
    return failures
