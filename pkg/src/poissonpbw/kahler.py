"""Differentials of polynomial quotients and the commutative counting oracle.

For B = Q[X]/I the module of differentials is presented by the Jacobian rows
of the ideal generators, and Sym_B of it is the commutative quotient

    Q[X, Y] / ( I,  E_1..E_r ),    E_l = sum_i (dg_l/dX_i) * Y_i,

whose standard monomials are counted per (Y-count, coefficient-degree) cell.
This module deliberately depends on core only, so its counts stay an
independent oracle for the enveloping-algebra side.
"""

from __future__ import annotations

from .core import (
    Polynomial,
    RowSpace,
    TermOrder,
    VarContext,
    groebner,
    is_standard,
    iter_monomials,
    iter_weighted_monomials,
    normal_form,
)


class OmegaPresentation:
    """Free module of rank n modulo the Jacobian rows of the ideal generators."""

    __slots__ = ("ctx", "rank", "relations")

    def __init__(self, ctx, relations):
        self.ctx = ctx
        self.rank = len(ctx.names)
        rows = []
        for row in relations:
            row = tuple(row)
            if len(row) != self.rank:
                raise ValueError("relation row has wrong length")
            if any(p.ctx != ctx for p in row):
                raise ValueError("relation entry from a different context")
            rows.append(row)
        self.relations = tuple(rows)

    def is_free(self):
        return not self.relations

    def __repr__(self):
        return f"OmegaPresentation(rank={self.rank}, relations={len(self.relations)})"


def omega_of_quotient(gb):
    """Presentation of the differentials of Q[X]/I from the original generators."""
    n = len(gb.ctx.names)
    rows = []
    for g in gb.original_generators:
        if not g:
            continue
        rows.append(tuple(g.partial(i) for i in range(n)))
    return OmegaPresentation(gb.ctx, rows)


class SymOracle:
    """Groebner data for Q[X,Y]/(I, E_*) with a block order, X before Y.

    The block order keeps normal forms from raising the X-part weighted
    degree, so per-cell standard-monomial counts are exact for homogeneous
    input and honest filtration counts otherwise.
    """

    __slots__ = (
        "base_ctx",
        "dctx",
        "n",
        "presentation",
        "contractions",
        "gb",
        "y_weight_shift",
        "clamped",
    )

    def __init__(self, base_ctx, dctx, presentation, contractions, gb, y_weight_shift, clamped):
        self.base_ctx = base_ctx
        self.dctx = dctx
        self.n = len(base_ctx.names)
        self.presentation = presentation
        self.contractions = contractions
        self.gb = gb
        self.y_weight_shift = y_weight_shift
        self.clamped = clamped

    def embed(self, p):
        """Move a coefficient polynomial into the doubled ring."""
        if p.ctx != self.base_ctx:
            raise ValueError("context mismatch")
        pad = (0,) * self.n
        return Polynomial(self.dctx, {m + pad: c for m, c in p.terms.items()})

    def __repr__(self):
        return f"SymOracle({self.dctx!r}, {len(self.contractions)} contractions)"


def _doubled_context(ctx, y_weight_shift):
    prefix = "d"
    while any(prefix + nm in ctx.names for nm in ctx.names):
        prefix = "d" + prefix
    names = ctx.names + tuple(prefix + nm for nm in ctx.names)
    y_weights = tuple(max(w + y_weight_shift, 1) for w in ctx.weights)
    clamped = any(w + y_weight_shift < 1 for w in ctx.weights)
    return VarContext(names, ctx.weights + y_weights), clamped


def build_sym_oracle(gb, y_weight_shift=0):
    """Oracle for Sym_B(Omega(B)) where B = ctx-ring modulo gb.

    y_weight_shift adjusts the order-weights of the Y variables (clamped to
    stay positive) so that total-weight cells match a weighted bracket's
    grading; it does not change which monomials are counted per cell.
    """
    ctx = gb.ctx
    n = len(ctx.names)
    dctx, clamped = _doubled_context(ctx, y_weight_shift)
    presentation = omega_of_quotient(gb)
    order = TermOrder("block-grevlex", split=n)

    def embed(p):
        pad = (0,) * n
        return Polynomial(dctx, {m + pad: c for m, c in p.terms.items()})

    gens = [embed(g) for g in gb.original_generators if g]
    contractions = []
    for row in presentation.relations:
        e = Polynomial.zero(dctx)
        for i, p in enumerate(row):
            if p:
                e = e + embed(p) * Polynomial.variable(dctx, n + i)
        if e:
            contractions.append(e)
    gens.extend(contractions)
    if not gens:
        gens = [Polynomial.zero(dctx)]
    gb2 = groebner(gens, order)
    return SymOracle(ctx, dctx, presentation, tuple(contractions), gb2, y_weight_shift, clamped)


def _iter_cell_monomials(oracle, k, d, homogeneous):
    """Doubled-ring monomials with Y-count k and X-part weighted degree d or <= d."""
    weights = oracle.base_ctx.weights
    n = oracle.n
    degrees = (d,) if homogeneous else tuple(range(d + 1))
    for ym in iter_monomials(n, k):
        for xd in degrees:
            for xm in iter_weighted_monomials(weights, xd):
                yield xm + ym


def sym_standard_monomials(oracle, k, d, homogeneous=True):
    """Standard monomials of the oracle quotient in the (k, d) cell."""
    return [m for m in _iter_cell_monomials(oracle, k, d, homogeneous) if is_standard(oracle.gb, m)]


def sym_bigraded_dim(oracle, k, d, homogeneous=True):
    """Dimension of Sym^k in coefficient degree d (or <= d with the flag off)."""
    if k < 0 or d < 0:
        raise ValueError("cell indices must be >= 0")
    return len(sym_standard_monomials(oracle, k, d, homogeneous))


def sym_cell_dim_total(oracle, k, s):
    """Dimension of the Y-count-k slice in total weighted degree s.

    Total weight uses the doubled context's weights, i.e. Y_i carries
    weight w_i + y_weight_shift; exact for weight-homogeneous input.
    """
    if k < 0 or s < 0:
        raise ValueError("cell indices must be >= 0")
    n = oracle.n
    x_weights = oracle.base_ctx.weights
    y_weights = oracle.dctx.weights[n:]
    count = 0
    for ym in iter_monomials(n, k):
        rem = s - sum(w * e for w, e in zip(y_weights, ym))
        if rem < 0:
            continue
        for xm in iter_weighted_monomials(x_weights, rem):
            if is_standard(oracle.gb, xm + ym):
                count += 1
    return count


def conormal_exactness_check(gb, bound, kmax=2, y_weight_shift=0):
    """Cross-check the oracle's two counting routes cell by cell.

    Route A counts standard monomials of Q[X,Y]/(I,E).  Route B counts the
    quotient Q[X,Y]/I at the cell and subtracts the rank of the span of the
    contraction multiples reduced into it.  Requires homogeneous generators
    over uniform weights so that both routes slice exactly; returns a list
    of cell records with a `consistent` flag.
    """
    ctx = gb.ctx
    n = len(ctx.names)
    if len(set(ctx.weights)) != 1:
        raise ValueError("exactness check needs uniform variable weights")
    live = [g for g in gb.original_generators if g]
    if any(not g.is_homogeneous() for g in live):
        raise ValueError("exactness check needs homogeneous ideal generators")

    oracle = build_sym_oracle(gb, y_weight_shift)
    order = TermOrder("block-grevlex", split=n)
    embedded = [oracle.embed(g) for g in live]
    gb_i = groebner(embedded if embedded else [Polynomial.zero(oracle.dctx)], order)

    report = []
    for k in range(kmax + 1):
        for d in range(bound + 1):
            quotient_cell = [
                m for m in _iter_cell_monomials(oracle, k, d, True) if is_standard(gb_i, m)
            ]
            space = RowSpace()
            if k >= 1:
                for e_l, row in zip(oracle.contractions, oracle.presentation.relations):
                    edeg = next(p.degree() for p in row if p)  # = deg(g) - w
                    wd = d - edeg
                    if wd < 0:
                        continue
                    for wm in _iter_cell_monomials(oracle, k - 1, wd, True):
                        if not is_standard(gb_i, wm):
                            continue
                        prod = Polynomial.monomial(oracle.dctx, wm) * e_l
                        space.add(dict(normal_form(prod, gb_i).terms))
            dim_conormal = len(quotient_cell) - space.rank
            dim_oracle = sym_bigraded_dim(oracle, k, d, homogeneous=True)
            report.append(
                {
                    "k": k,
                    "d": d,
                    "dim_oracle": dim_oracle,
                    "dim_conormal": dim_conormal,
                    "consistent": dim_oracle == dim_conormal,
                }
            )
    return report
