"""Smash products over linear Poisson structures and the doubled-algebra
normal-form realization they both embed into.

A SmashElement is a sum of coefficient-polynomial # PBW-word terms over a
Lie algebra with an optional 2-cocycle.  Multiplication moves generators
across coefficients with the affine bracket (cocycle included) while the
word factor straightens with the structure constants only.  The doubled
algebra carries one commuting copy (level 0) and one copy of the original
bracket (level 1), tied together by the level-mixing bracket and a cocycle
that pairs the levels; its normal-form algebra multiplies with a central
cocycle correction.  gamma relabels one basis onto the other, and being an
algebra morphism is the content of the cross-checks.
"""

from __future__ import annotations

from fractions import Fraction

from .core import Polynomial, VarContext, poly_to_string
from .envelope import u_mul
from .poisson import LieData, bracket_var, lie_poisson_structure

# ---------------------------------------------------------------------------
# built-in Lie algebra catalog


def abelian_lie(n):
    """The abelian Lie algebra on n generators."""
    zero = [[[0] * n for _ in range(n)] for _ in range(n)]
    return LieData([f"e{i + 1}" for i in range(n)], zero)


def heisenberg_lie():
    """[e1, e2] = e3, e3 central."""
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    c[0][1][2] = 1
    c[1][0][2] = -1
    return LieData(["e1", "e2", "e3"], c)


def so3_lie():
    """[e1, e2] = e3, [e2, e3] = e1, [e3, e1] = e2."""
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        c[i][j][k] = 1
        c[j][i][k] = -1
    return LieData(["e1", "e2", "e3"], c)


def sl2_lie():
    """[h, e] = 2e, [h, f] = -2f, [e, f] = h."""
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    c[0][1][1] = 2
    c[1][0][1] = -2
    c[0][2][2] = -2
    c[2][0][2] = 2
    c[1][2][0] = 1
    c[2][1][0] = -1
    return LieData(["h", "e", "f"], c)


def symplectic_cocycle(n):
    """2n x 2n skew matrix pairing generator i with generator n+i."""
    sigma = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        sigma[i][n + i] = 1
        sigma[n + i][i] = -1
    return sigma


# ---------------------------------------------------------------------------
# smash elements


class SmashElement:
    """Sum of coefficient # word terms; words in PBW order over the basis."""

    __slots__ = ("lie", "ctx", "terms")

    def __init__(self, lie, terms=None):
        self.lie = lie
        self.ctx = VarContext(lie.names)
        n = lie.dim
        clean = {}
        if terms:
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != n or any(e < 0 for e in m):
                    raise ValueError(f"bad word exponent tuple {m!r}")
                if isinstance(c, (int, Fraction)):
                    c = Polynomial.constant(self.ctx, c)
                if c.ctx != self.ctx:
                    raise ValueError("coefficient context mismatch")
                if c:
                    clean[m] = c
        self.terms = clean

    @classmethod
    def _make(cls, lie, ctx, terms):
        out = cls.__new__(cls)
        out.lie = lie
        out.ctx = ctx
        out.terms = terms
        return out

    def _check(self, other):
        if self.lie != other.lie:
            raise ValueError("elements over different Lie data")

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SmashElement):
            return NotImplemented
        return self.lie == other.lie and self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, SmashElement):
            return NotImplemented
        return smash_add(self, other)

    def __neg__(self):
        return SmashElement._make(
            self.lie, self.ctx, {m: -c for m, c in self.terms.items()}
        )

    def __sub__(self, other):
        if not isinstance(other, SmashElement):
            return NotImplemented
        return smash_add(self, -other)

    def __mul__(self, other):
        if not isinstance(other, SmashElement):
            return NotImplemented
        return smash_mul(self, other)

    def __str__(self):
        return smash_to_string(self)

    def __repr__(self):
        return f"SmashElement({self})"


def _word_string(names, m):
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def smash_to_string(u):
    if not u.terms:
        return "0"
    chunks = []
    for m in sorted(u.terms, key=lambda m: (sum(m), m), reverse=True):
        c = poly_to_string(u.terms[m])
        if " + " in c or " - " in c:
            c = f"({c})"
        chunks.append(f"{c}#{_word_string(u.lie.names, m)}")
    return " + ".join(chunks)


def smash_alpha(lie, p):
    """p # 1."""
    ctx = VarContext(lie.names)
    if p.ctx != ctx:
        raise ValueError("coefficient context mismatch")
    if not p:
        return SmashElement._make(lie, ctx, {})
    return SmashElement._make(lie, ctx, {ctx.zero_mono(): p})


def smash_gen(lie, i):
    """1 # x_i."""
    ctx = VarContext(lie.names)
    return SmashElement._make(
        lie, ctx, {ctx.unit_mono(i): Polynomial.one(ctx)}
    )


def smash_beta(lie, p):
    """sum_i (dp/dX_i) # x_i, mirroring the derivation-valued generator map."""
    ctx = VarContext(lie.names)
    if p.ctx != ctx:
        raise ValueError("coefficient context mismatch")
    terms = {}
    for i in range(lie.dim):
        d = p.partial(i)
        if d:
            terms[ctx.unit_mono(i)] = d
    return SmashElement._make(lie, ctx, terms)


def smash_add(u, v):
    u._check(v)
    terms = dict(u.terms)
    for m, c in v.terms.items():
        s = terms.get(m)
        s = c if s is None else s + c
        if s:
            terms[m] = s
        else:
            terms.pop(m, None)
    return SmashElement._make(u.lie, u.ctx, terms)


def smash_scale(u, c):
    if isinstance(c, (int, Fraction)):
        c = Polynomial.constant(u.ctx, c)
    terms = {}
    for m, q in u.terms.items():
        p = c * q
        if p:
            terms[m] = p
    return SmashElement._make(u.lie, u.ctx, terms)


def _accumulate(store, key, value):
    s = store.get(key)
    s = value if s is None else s + value
    if s:
        store[key] = s
    else:
        store.pop(key, None)


def _lie_insert(lie, i, m, memo):
    """Normal form of x_i * x^m in the word algebra, constants only."""
    key = (i, m)
    hit = memo.get(key)
    if hit is not None:
        return hit
    j = next((idx for idx, e in enumerate(m) if e), None)
    if j is None or i <= j:
        bumped = list(m)
        bumped[i] += 1
        out = {tuple(bumped): Fraction(1)}
        memo[key] = out
        return out
    rest = list(m)
    rest[j] -= 1
    rest = tuple(rest)
    out = {}
    for mm, cc in _lie_insert(lie, i, rest, memo).items():
        for mmm, ccc in _lie_insert(lie, j, mm, memo).items():
            _accumulate(out, mmm, cc * ccc)
    for k, coeff in enumerate(lie.c[i][j]):
        if coeff:
            for mm, cc in _lie_insert(lie, k, rest, memo).items():
                _accumulate(out, mm, coeff * cc)
    memo[key] = out
    return out


def _smash_gen_times(lie, ps, i, terms, memo):
    """(1 # x_i) times a term dict: word insertion plus the bracket action."""
    out = {}
    for m, c in terms.items():
        br = bracket_var(ps, i, c)
        if br:
            _accumulate(out, m, br)
        for mm, cc in _lie_insert(lie, i, m, memo).items():
            _accumulate(out, mm, c * cc)
    return out


def smash_mul(u, v):
    u._check(v)
    lie = u.lie
    ps = lie_poisson_structure(lie, u.ctx)
    memo = {}
    out = {}
    for m, c in u.terms.items():
        work = v.terms
        for i in range(len(m) - 1, -1, -1):
            for _ in range(m[i]):
                work = _smash_gen_times(lie, ps, i, work, memo)
        for mm, cc in work.items():
            _accumulate(out, mm, c * cc)
    return SmashElement._make(u.lie, u.ctx, out)


def smash_commutator(u, v):
    return smash_add(smash_mul(u, v), -smash_mul(v, u))


def random_smash_element(lie, rng, max_word_deg=2, max_coeff_deg=2, n_terms=3):
    """Small random element; deterministic for a seeded rng."""
    from .core import random_polynomial

    ctx = VarContext(lie.names)
    n = lie.dim
    terms = {}
    for _ in range(n_terms):
        deg = rng.randrange(max_word_deg + 1)
        m = [0] * n
        for _ in range(deg):
            m[rng.randrange(n)] += 1
        c = random_polynomial(ctx, rng, max_degree=max_coeff_deg, n_terms=2)
        if c:
            _accumulate(terms, tuple(m), c)
    return SmashElement._make(lie, ctx, terms)


# ---------------------------------------------------------------------------
# the doubled algebra


def takiff_double(lie):
    """Double with a commuting level-0 copy, level-mixing brackets, and the
    cocycle moved onto mixed-level pairs."""
    n = lie.dim
    names = [f"{x}_0" for x in lie.names] + [f"{x}_1" for x in lie.names]
    c = [[[Fraction(0)] * (2 * n) for _ in range(2 * n)] for _ in range(2 * n)]
    sigma = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                v = lie.c[i][j][k]
                if v:
                    c[i][n + j][k] = v
                    c[n + i][j][k] = v
                    c[n + i][n + j][n + k] = v
            sigma[i][n + j] = lie.sigma[i][j]
            sigma[n + i][j] = lie.sigma[i][j]
    return LieData(names, c, sigma)


class SridharanElement:
    """Normal-form element of the doubled algebra with central cocycle."""

    __slots__ = ("base", "double", "terms")

    def __init__(self, base, terms=None, double=None):
        self.base = base
        self.double = takiff_double(base) if double is None else double
        n2 = self.double.dim
        clean = {}
        if terms:
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != n2 or any(e < 0 for e in m):
                    raise ValueError(f"bad exponent tuple {m!r}")
                c = Fraction(c)
                if c:
                    clean[m] = c
        self.terms = clean

    @classmethod
    def _make(cls, base, double, terms):
        out = cls.__new__(cls)
        out.base = base
        out.double = double
        out.terms = terms
        return out

    def _check(self, other):
        if self.base != other.base:
            raise ValueError("elements over different Lie data")

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SridharanElement):
            return NotImplemented
        return self.base == other.base and self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, SridharanElement):
            return NotImplemented
        return sridharan_add(self, other)

    def __neg__(self):
        return SridharanElement._make(
            self.base, self.double, {m: -c for m, c in self.terms.items()}
        )

    def __sub__(self, other):
        if not isinstance(other, SridharanElement):
            return NotImplemented
        return sridharan_add(self, -other)

    def __mul__(self, other):
        if not isinstance(other, SridharanElement):
            return NotImplemented
        return sridharan_mul(self, other)

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for m in sorted(self.terms, key=lambda m: (sum(m), m), reverse=True):
            c = self.terms[m]
            word = _word_string(self.double.names, m)
            if word == "1":
                chunks.append(str(c))
            elif c == 1:
                chunks.append(word)
            elif c == -1:
                chunks.append(f"-{word}")
            else:
                chunks.append(f"{c}*{word}")
        return " + ".join(chunks)

    def __repr__(self):
        return f"SridharanElement({self})"


def sridharan_gen(base, i, level, double=None):
    """Generator x_i at level 0 or 1."""
    if level not in (0, 1):
        raise ValueError("level must be 0 or 1")
    double = takiff_double(base) if double is None else double
    n = base.dim
    m = [0] * (2 * n)
    m[i + level * n] = 1
    return SridharanElement._make(base, double, {tuple(m): Fraction(1)})


def sridharan_one(base, double=None):
    double = takiff_double(base) if double is None else double
    return SridharanElement._make(
        base, double, {(0,) * double.dim: Fraction(1)}
    )


def sridharan_add(u, v):
    u._check(v)
    terms = dict(u.terms)
    for m, c in v.terms.items():
        _accumulate(terms, m, c)
    return SridharanElement._make(u.base, u.double, terms)


def sridharan_scale(u, c):
    c = Fraction(c)
    if not c:
        return SridharanElement._make(u.base, u.double, {})
    return SridharanElement._make(
        u.base, u.double, {m: c * q for m, q in u.terms.items()}
    )


def _sri_insert(double, i, m, memo):
    """Normal form of x_i * x^m with commutator and central corrections."""
    key = (i, m)
    hit = memo.get(key)
    if hit is not None:
        return hit
    j = next((idx for idx, e in enumerate(m) if e), None)
    if j is None or i <= j:
        bumped = list(m)
        bumped[i] += 1
        out = {tuple(bumped): Fraction(1)}
        memo[key] = out
        return out
    rest = list(m)
    rest[j] -= 1
    rest = tuple(rest)
    out = {}
    for mm, cc in _sri_insert(double, i, rest, memo).items():
        for mmm, ccc in _sri_insert(double, j, mm, memo).items():
            _accumulate(out, mmm, cc * ccc)
    for k, coeff in enumerate(double.c[i][j]):
        if coeff:
            for mm, cc in _sri_insert(double, k, rest, memo).items():
                _accumulate(out, mm, coeff * cc)
    s = double.sigma[i][j]
    if s:
        _accumulate(out, rest, s)
    memo[key] = out
    return out


def sridharan_mul(u, v):
    u._check(v)
    double = u.double
    memo = {}
    out = {}
    for m, c in u.terms.items():
        work = v.terms
        for i in range(len(m) - 1, -1, -1):
            for _ in range(m[i]):
                nxt = {}
                for mm, cc in work.items():
                    for mmm, ccc in _sri_insert(double, i, mm, memo).items():
                        _accumulate(nxt, mmm, cc * ccc)
                work = nxt
        for mm, cc in work.items():
            _accumulate(out, mm, c * cc)
    return SridharanElement._make(u.base, double, out)


def sridharan_commutator(u, v):
    return sridharan_add(sridharan_mul(u, v), -sridharan_mul(v, u))


def pe_filtration_degree(v):
    """Count only level-1 generators, the filtration the envelope carries."""
    if not v.terms:
        return float("-inf")
    n = v.base.dim
    return max(sum(m[n:]) for m in v.terms)


def lie_filtration_degree(v):
    """Total word length, the filtration of the doubled word algebra."""
    if not v.terms:
        return float("-inf")
    return max(sum(m) for m in v.terms)


# ---------------------------------------------------------------------------
# the relabel isomorphism


def gamma(u):
    """Coefficient monomials onto level 0, word exponents onto level 1."""
    base = u.lie
    double = takiff_double(base)
    terms = {}
    for m, poly in u.terms.items():
        for a, coeff in poly.terms.items():
            _accumulate(terms, a + m, coeff)
    return SridharanElement._make(base, double, terms)


def gamma_inv(v):
    """Split each doubled exponent back into coefficient and word parts."""
    base = v.base
    ctx = VarContext(base.names)
    n = base.dim
    terms = {}
    for m, coeff in v.terms.items():
        a, word = m[:n], m[n:]
        _accumulate(terms, word, Polynomial.monomial(ctx, a, coeff))
    return SmashElement._make(base, ctx, terms)


def crosscheck_with_envelope(lie, trials=100, max_deg=3, seed=0):
    """Products on both presentations agree under the exponent identification."""
    import random

    from .envelope import random_u_element

    ps = lie_poisson_structure(lie)
    rng = random.Random(seed)
    failures = []
    for trial in range(trials):
        a = random_u_element(ps, rng, max_beta_deg=max_deg, max_coeff_deg=max_deg, n_terms=2)
        b = random_u_element(ps, rng, max_beta_deg=max_deg, max_coeff_deg=max_deg, n_terms=2)
        sa = SmashElement._make(lie, VarContext(lie.names), dict(a.terms))
        sb = SmashElement._make(lie, VarContext(lie.names), dict(b.terms))
        if u_mul(a, b).terms != smash_mul(sa, sb).terms:
            failures.append({"trial": trial, "left": str(a), "right": str(b)})
    return failures
