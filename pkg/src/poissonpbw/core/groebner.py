"""Buchberger's algorithm, reduced Groebner bases, normal forms, and
standard-monomial counting for quotient rings.

Desk-scale implementation: normal-strategy pair selection, the coprime
leading-term criterion, full inter-reduction at the end.  No F4/F5.
"""

from __future__ import annotations

from fractions import Fraction

from .orders import DEFAULT_ORDER
from .poly import (
    Polynomial,
    iter_weighted_monomials,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


def leading_term(p, order):
    """(monomial, coefficient) of the order-leading term of a nonzero p."""
    if not p.terms:
        raise ValueError("zero polynomial has no leading term")
    ctx = p.ctx
    m = max(p.terms, key=lambda mo: order.key(ctx, mo))
    return m, p.terms[m]


def _reduce_terms(terms, reducers, ctx, order):
    """Full division remainder of a term dict against (lt, coeff, poly) reducers."""
    work = dict(terms)
    rem = {}
    keyf = lambda mo: order.key(ctx, mo)
    while work:
        m = max(work, key=keyf)
        c = work.pop(m)
        for lt, lc, g in reducers:
            if mono_divides(lt, m):
                q = mono_div(m, lt)
                scale = c / lc
                for mg, cg in g.terms.items():
                    if mg == lt:
                        continue
                    mm = mono_mul(q, mg)
                    s = work.get(mm, Fraction(0)) - scale * cg
                    if s:
                        work[mm] = s
                    else:
                        work.pop(mm, None)
                break
        else:
            rem[m] = c
    return rem


class GroebnerBasis:
    """Reduced Groebner basis of an ideal, with the originating generators.

    generators are monic, pairwise fully reduced, sorted descending by
    leading term.  The zero ideal is represented by an empty generator tuple.
    """

    __slots__ = ("ctx", "order", "generators", "original_generators", "_lts")

    def __init__(self, ctx, order, generators, original_generators):
        self.ctx = ctx
        self.order = order
        self.generators = tuple(generators)
        self.original_generators = tuple(original_generators)
        self._lts = tuple(leading_term(g, order)[0] for g in self.generators)

    @property
    def leading_terms(self):
        return self._lts

    def is_zero_ideal(self):
        return not self.generators

    def __repr__(self):
        return f"GroebnerBasis({len(self.generators)} generators, {self.order!r})"


def _spoly(f, g, order):
    ctx = f.ctx
    mf, cf = leading_term(f, order)
    mg, cg = leading_term(g, order)
    l = mono_lcm(mf, mg)
    a = Polynomial.monomial(ctx, mono_div(l, mf), Fraction(1, 1) / cf)
    b = Polynomial.monomial(ctx, mono_div(l, mg), Fraction(1, 1) / cg)
    return a * f - b * g


def groebner(gens, order=DEFAULT_ORDER):
    """Reduced Groebner basis of the ideal generated by gens."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator (possibly zero)")
    ctx = gens[0].ctx
    for g in gens:
        if g.ctx != ctx:
            raise ValueError("generators from different contexts")
    order.validate(ctx)
    basis = [g * (Fraction(1, 1) / leading_term(g, order)[1]) for g in gens if g]
    if not basis:
        return GroebnerBasis(ctx, order, (), tuple(gens))

    keyf = lambda mo: order.key(ctx, mo)
    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    while pairs:
        # normal strategy: smallest lcm of leading terms first
        i, j = min(
            pairs,
            key=lambda ij: keyf(
                mono_lcm(
                    leading_term(basis[ij[0]], order)[0],
                    leading_term(basis[ij[1]], order)[0],
                )
            ),
        )
        pairs.discard((i, j))
        mi = leading_term(basis[i], order)[0]
        mj = leading_term(basis[j], order)[0]
        if all(a == 0 or b == 0 for a, b in zip(mi, mj)):
            continue  # coprime criterion
        s = _spoly(basis[i], basis[j], order)
        reducers = [(leading_term(g, order)[0], leading_term(g, order)[1], g) for g in basis]
        rem = _reduce_terms(s.terms, reducers, ctx, order)
        if rem:
            r = Polynomial(ctx, rem)
            r = r * (Fraction(1, 1) / leading_term(r, order)[1])
            basis.append(r)
            new = len(basis) - 1
            pairs.update((k, new) for k in range(new))

    # inter-reduce to the unique reduced basis
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            g = basis[i]
            if g is None:
                continue
            others = [
                (leading_term(h, order)[0], leading_term(h, order)[1], h)
                for k, h in enumerate(basis)
                if k != i and h is not None
            ]
            rem = _reduce_terms(g.terms, others, ctx, order)
            r = Polynomial(ctx, rem)
            if r != g:
                changed = True
            basis[i] = None if not r else r * (Fraction(1, 1) / leading_term(r, order)[1])
    final = [g for g in basis if g is not None]
    final.sort(key=lambda g: keyf(leading_term(g, order)[0]), reverse=True)
    return GroebnerBasis(ctx, order, final, tuple(gens))


def normal_form(p, gb):
    """Remainder of p modulo gb; zero iff p lies in the ideal."""
    if p.ctx != gb.ctx:
        raise ValueError("context mismatch")
    if not gb.generators or not p.terms:
        return p
    reducers = [(lt, Fraction(1), g) for lt, g in zip(gb._lts, gb.generators)]
    return Polynomial(p.ctx, _reduce_terms(p.terms, reducers, p.ctx, gb.order))


def is_standard(gb, mono):
    """True if mono is not divisible by any leading term of gb."""
    return not any(mono_divides(lt, mono) for lt in gb._lts)


def iter_standard_monomials(gb, degree):
    """Standard monomials of exact weighted degree."""
    for m in iter_weighted_monomials(gb.ctx.weights, degree):
        if is_standard(gb, m):
            yield m


def standard_monomial_count(gb, degree_bound, restrict_to_homogeneous=True):
    """Counts of standard monomials per weighted degree 0..degree_bound.

    With the flag on, entry i counts monomials of degree exactly i;
    off gives cumulative counts (degree <= i).
    """
    if degree_bound < 0:
        raise ValueError("degree bound must be >= 0")
    per = [sum(1 for _ in iter_standard_monomials(gb, d)) for d in range(degree_bound + 1)]
    if restrict_to_homogeneous:
        return per
    out = []
    total = 0
    for c in per:
        total += c
        out.append(total)
    return out
