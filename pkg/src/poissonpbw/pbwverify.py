"""Bigraded dimension comparison between gr of the quotient envelope and
the commutative oracle.

For B = Q[X]/I with a Poisson ideal I, the quotient envelope is the span of
X^a b^m with standard X^a and coefficients reduced modulo I, modulo the left
ideal generated by the lifted generators E_l = sum_i NF(dg_l/dX_i) b_i.  Each
(b-degree, coefficient-degree) cell of gr is counted as

    #standard slots  -  rank of the relation rows landing in the cell,

and compared against the independent commutative count of the same cell.
Degree bookkeeping comes in three flavors picked from the structure:

- "coefficient": uniform variable weights and weight-homogeneous data; cells
  are exact bigraded slices indexed by coefficient degree.
- "total_weight": non-uniform weights with b_i carrying weight w_i + shift;
  cells are indexed by total weight and remain exact.
- "filtered": anything else; cells are <=d windows, margin escalation does
  real work, and results are flagged approximate.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .core import (
    Polynomial,
    RowSpace,
    iter_monomials,
    iter_standard_monomials,
    normal_form,
)
from .envelope import UElement, u_beta, u_mul, u_to_string
from .kahler import build_sym_oracle, omega_of_quotient, sym_bigraded_dim, sym_cell_dim_total
from .poisson import is_poisson_ideal

SCHEMA_VERSION = 1


class NotPoissonIdealError(ValueError):
    """The ideal is not closed under the bracket, so no quotient envelope exists."""


def _irreducibility_advisory(live_generators):
    """Cheap screen for principal generators; advisory only, never enforced."""
    if len(live_generators) != 1:
        return {"checked": False, "irreducible": None, "note": "non-principal ideal"}
    g = live_generators[0]
    monos = list(g.terms)
    if len(monos) == 1:
        if sum(monos[0]) >= 2:
            return {
                "checked": True,
                "irreducible": False,
                "note": "monomial of plain degree >= 2",
            }
        return {"checked": True, "irreducible": True, "note": "linear monomial"}
    common = [min(m[i] for m in monos) for i in range(len(monos[0]))]
    if any(common):
        return {"checked": True, "irreducible": False, "note": "proper monomial factor"}
    if max(sum(m) for m in monos) == 1:
        return {"checked": True, "irreducible": True, "note": "affine-linear"}
    return {
        "checked": True,
        "irreducible": None,
        "note": "not determined by the monomial-factor screen",
    }


class QuotientContext:
    """Everything needed to compute in the envelope of B = Q[X]/I."""

    __slots__ = (
        "structure",
        "gb",
        "omega",
        "ideal_betas",
        "oracle",
        "degree_convention",
        "weight_shift",
        "live_generators",
        "exploratory",
        "irreducibility",
    )

    def __init__(self, structure, gb):
        if gb.ctx != structure.ctx:
            raise ValueError("ideal and structure use different contexts")
        if not is_poisson_ideal(structure, gb):
            raise NotPoissonIdealError(
                "bracket of a generator with the ideal does not reduce to zero"
            )
        self.structure = structure
        self.gb = gb
        self.omega = omega_of_quotient(gb)
        self.live_generators = tuple(g for g in gb.original_generators if g)

        shift = structure.weight_shift()
        homogeneous = all(g.is_homogeneous() for g in self.live_generators)
        weights = structure.ctx.weights
        if shift is None or not homogeneous:
            self.degree_convention = "filtered"
        elif len(set(weights)) == 1:
            self.degree_convention = "coefficient"
        elif all(w + shift >= 1 for w in weights):
            self.degree_convention = "total_weight"
        else:
            self.degree_convention = "filtered"
        self.weight_shift = shift

        self.oracle = build_sym_oracle(gb, y_weight_shift=shift if shift is not None else 0)
        self.ideal_betas = tuple(
            q_reduce(self, u_beta(structure, g)) for g in self.live_generators
        )
        self.exploratory = len(self.live_generators) > 1
        self.irreducibility = _irreducibility_advisory(self.live_generators)

    def nf(self, p):
        return normal_form(p, self.gb)

    def __repr__(self):
        return (
            f"QuotientContext({len(self.live_generators)} generators, "
            f"{self.degree_convention})"
        )


class QElement:
    """Envelope element with every coefficient reduced modulo the ideal."""

    __slots__ = ("qc", "terms")

    def __init__(self, qc, terms=None):
        self.qc = qc
        n = len(qc.structure.ctx.names)
        clean = {}
        if terms:
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != n or any(e < 0 for e in m):
                    raise ValueError(f"bad b-exponent tuple {m!r}")
                if isinstance(c, (int, Fraction)):
                    c = Polynomial.constant(qc.structure.ctx, c)
                c = qc.nf(c)
                if c:
                    clean[m] = c
        self.terms = clean

    @classmethod
    def _make(cls, qc, terms):
        out = cls.__new__(cls)
        out.qc = qc
        out.terms = terms
        return out

    def to_u(self):
        return UElement._make(self.qc.structure, dict(self.terms))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, QElement):
            return NotImplemented
        return self.qc is other.qc and self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, QElement):
            return NotImplemented
        return q_add(self, other)

    def __neg__(self):
        return QElement._make(self.qc, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, QElement):
            return NotImplemented
        return q_add(self, -other)

    def __mul__(self, other):
        if not isinstance(other, QElement):
            return NotImplemented
        return q_mul(self, other)

    def __str__(self):
        return u_to_string(self.to_u())

    def __repr__(self):
        return f"QElement({self})"


def q_reduce(qc, u):
    """Project a UElement to the quotient by reducing every coefficient."""
    terms = {}
    for m, c in u.terms.items():
        r = qc.nf(c)
        if r:
            terms[m] = r
    return QElement._make(qc, terms)


def q_alpha(qc, f):
    r = qc.nf(f)
    if not r:
        return QElement._make(qc, {})
    return QElement._make(qc, {qc.structure.ctx.zero_mono(): r})


def q_beta(qc, f):
    return q_reduce(qc, u_beta(qc.structure, f))


def q_add(a, b):
    if a.qc is not b.qc:
        raise ValueError("elements from different quotient contexts")
    terms = dict(a.terms)
    for m, c in b.terms.items():
        s = terms.get(m)
        s = c if s is None else s + c
        if s:
            terms[m] = s
        else:
            terms.pop(m, None)
    return QElement._make(a.qc, terms)


def q_scale(a, c):
    if isinstance(c, (int, Fraction)):
        c = Polynomial.constant(a.qc.structure.ctx, c)
    terms = {}
    for m, q in a.terms.items():
        p = a.qc.nf(c * q)
        if p:
            terms[m] = p
    return QElement._make(a.qc, terms)


def q_mul(a, b):
    """Multiply in the ambient envelope, then reduce the coefficients."""
    if a.qc is not b.qc:
        raise ValueError("elements from different quotient contexts")
    return q_reduce(a.qc, u_mul(a.to_u(), b.to_u()))


def q_commutator(a, b):
    return q_add(q_mul(a, b), -q_mul(b, a))


def envelope_quotient_map(qc, u):
    """The induced map from the ambient envelope: reduce every coefficient."""
    if u.ps != qc.structure:
        raise ValueError("element from a different structure")
    return q_reduce(qc, u)


def pbw_map_apply(qc, s):
    """Normalized representative of the graded basis-relabel of s."""
    if s.ctx != qc.structure.ctx:
        raise ValueError("context mismatch")
    degs = {sum(m) for m in s.terms}
    if len(degs) > 1:
        raise ValueError(f"input mixes dX-degrees {sorted(degs)}")
    return QElement(qc, dict(s.terms))


# ---------------------------------------------------------------------------
# window linear algebra

def _beta_weights(qc):
    shift = qc.weight_shift if qc.weight_shift is not None else 0
    return tuple(w + shift for w in qc.structure.ctx.weights)


def _std(qc, wd, cache):
    got = cache.get(wd)
    if got is None:
        got = tuple(iter_standard_monomials(qc.gb, wd)) if wd >= 0 else ()
        cache[wd] = got
    return got


def _slice_slots(qc, k, d, cache):
    """Basis slots (m, a) of the b-degree-k slice of the (k, d) cell."""
    n = len(qc.structure.ctx.names)
    conv = qc.degree_convention
    slots = []
    if conv == "coefficient":
        axs = _std(qc, d, cache)
        for m in iter_monomials(n, k):
            slots.extend((m, a) for a in axs)
    elif conv == "total_weight":
        bw = _beta_weights(qc)
        for m in iter_monomials(n, k):
            da = d - sum(w * e for w, e in zip(bw, m))
            slots.extend((m, a) for a in _std(qc, da, cache))
    else:
        for m in iter_monomials(n, k):
            for wd in range(d + 1):
                slots.extend((m, a) for a in _std(qc, wd, cache))
    return slots


def _expand_row(qe, k):
    """Sparse coordinates of the b-degree-k slice of a reduced element."""
    row = {}
    for m, c in qe.terms.items():
        if sum(m) != k:
            continue
        for mono, coeff in c.terms.items():
            row[(m, mono)] = coeff
    return row


def _relation_products(qc, k, d, margin, cache):
    """Left multiples of the lifted generators with slice-k parts in the cell.

    For the exact conventions the total weight of X^a b^m' E_l is conserved
    by normalization, so only weight-matched left factors can meet the cell
    and the margin changes nothing; the filtered fallback enumerates left
    factors up to d + margin.
    """
    ctx = qc.structure.ctx
    n = len(ctx.names)
    conv = qc.degree_convention
    bw = _beta_weights(qc)
    products = []
    if k == 0:
        return products
    for g, e_l in zip(qc.live_generators, qc.ideal_betas):
        eweight = g.degree() + (qc.weight_shift if qc.weight_shift is not None else 0)
        e_u = e_l.to_u()
        for mp in iter_monomials(n, k - 1):
            if conv == "coefficient":
                degrees = (d + ctx.weights[0] - g.degree(),)
            elif conv == "total_weight":
                degrees = (d - sum(w * e for w, e in zip(bw, mp)) - eweight,)
            else:
                degrees = range(d + margin + 1)
            for da in degrees:
                for a in _std(qc, da, cache):
                    left = UElement._make(qc.structure, {mp: Polynomial.monomial(ctx, a)})
                    products.append(q_reduce(qc, u_mul(left, e_u)))
    return products


def gr_dimension(qc, k, d, margin=0):
    """Dimension of the (k, d) cell of gr of the quotient envelope.

    Counts standard slots in the slice and subtracts the rank of the
    discovered relation rows; missed relations can only inflate the result.
    """
    if k < 0 or d < 0:
        raise ValueError("cell indices must be >= 0")
    cache = {}
    slots = _slice_slots(qc, k, d, cache)
    rows = [_expand_row(p, k) for p in _relation_products(qc, k, d, margin, cache)]
    rows = [r for r in rows if r]
    if qc.degree_convention == "filtered":
        # relations must lie inside the <=d window: intersect the row space
        # with the low-degree coordinate block
        ctx = qc.structure.ctx
        full = RowSpace()
        outside = RowSpace()
        for r in rows:
            full.add(r)
            high = {col: v for col, v in r.items() if ctx.wdeg(col[1]) > d}
            outside.add(high)
        rank = full.rank - outside.rank
    else:
        space = RowSpace()
        for r in rows:
            space.add(r)
        rank = space.rank
    return len(slots) - rank


def ideal_window_basis(qc, k, d, margin=0):
    """Row space of the discovered relation slice at the (k, d) cell."""
    if k < 0:
        raise ValueError("k must be >= 0")
    cache = {}
    space = RowSpace()
    for p in _relation_products(qc, k, d, margin, cache):
        row = _expand_row(p, k)
        if row:
            space.add(row)
    return space


class IdealMembershipSpace:
    """Reusable untruncated relation row space for membership questions.

    Rows are genuine elements of the left ideal, so a positive answer is
    exact; a negative answer only means the element was not found within
    the enumerated window.
    """

    __slots__ = ("qc", "kmax", "space")

    def __init__(self, qc, kmax, dmax, degree_margin=2):
        self.qc = qc
        self.kmax = kmax
        self.space = RowSpace()
        ctx = qc.structure.ctx
        n = len(ctx.names)
        cache = {}
        bound = dmax + degree_margin
        for e_l in qc.ideal_betas:
            e_u = e_l.to_u()
            for t in range(max(kmax, 1)):
                for mp in iter_monomials(n, t):
                    for da in range(bound + 1):
                        for a in _std(qc, da, cache):
                            left = UElement._make(
                                qc.structure, {mp: Polynomial.monomial(ctx, a)}
                            )
                            prod = q_reduce(qc, u_mul(left, e_u))
                            row = _full_row(prod)
                            if row:
                                self.space.add(row)

    def contains(self, qe):
        if qe.qc is not self.qc:
            raise ValueError("element from a different quotient context")
        return self.space.contains(_full_row(qe))


def _full_row(qe):
    row = {}
    for m, c in qe.terms.items():
        for mono, coeff in c.terms.items():
            row[(m, mono)] = coeff
    return row


def ideal_membership(qc, qe, degree_margin=2):
    """One-shot membership test; builds a fresh window sized from qe."""
    if qe.is_zero():
        return True
    kmax = max(sum(m) for m in qe.terms)
    dmax = max(c.degree() for c in qe.terms.values())
    return IdealMembershipSpace(qc, kmax, dmax, degree_margin).contains(qe)


# ---------------------------------------------------------------------------
# the verification table

class DimTable:
    """Cell-by-cell comparison of the two graded dimension counts."""

    __slots__ = ("cells", "meta")

    def __init__(self, cells, meta):
        self.cells = list(cells)
        self.meta = dict(meta)

    @property
    def all_pass(self):
        return all(c["status"] == "PASS" for c in self.cells)

    @property
    def has_fail(self):
        return any(c["status"] == "FAIL" for c in self.cells)

    @property
    def has_unstable(self):
        return any(c["status"] == "UNSTABLE" for c in self.cells)

    def cell(self, k, d):
        for c in self.cells:
            if c["k"] == k and c["d"] == d:
                return c
        raise KeyError((k, d))

    def to_json(self, indent=None):
        return json.dumps(
            {"schema_version": SCHEMA_VERSION, "meta": self.meta, "cells": self.cells},
            indent=indent,
            sort_keys=True,
        )

    def to_csv(self):
        lines = ["k,d,dim_sym,dim_gr,margin,status"]
        for c in self.cells:
            lines.append(
                f"{c['k']},{c['d']},{c['dim_sym']},{c['dim_gr']},"
                f"{c['margin_used']},{c['status']}"
            )
        return "\n".join(lines) + "\n"

    def pretty(self):
        head = f"{'k':>3} {'d':>4} {'dim_sym':>8} {'dim_gr':>8} {'margin':>7} status"
        lines = [head, "-" * len(head)]
        for c in self.cells:
            lines.append(
                f"{c['k']:>3} {c['d']:>4} {c['dim_sym']:>8} {c['dim_gr']:>8} "
                f"{c['margin_used']:>7} {c['status']}"
            )
        notes = []
        if self.meta.get("convention") == "total_weight":
            notes.append("d column is total weight")
        if self.meta.get("approximate"):
            notes.append("filtered windows: counts are <=d and approximate")
        if self.meta.get("exploratory"):
            notes.append("multi-generator ideal: EXPLORATORY")
        adv = self.meta.get("irreducibility", {})
        if adv.get("irreducible") is False:
            notes.append("advisory: generator is reducible")
        for n in notes:
            lines.append(f"# {n}")
        return "\n".join(lines) + "\n"


def _witness_strings(qc, k, d):
    """A few printable relation products whose slice rows fill the cell."""
    cache = {}
    out = []
    for p in _relation_products(qc, k, d, 0, cache):
        if _expand_row(p, k):
            out.append(str(p))
        if len(out) == 3:
            break
    return out


def table_meta(qc, margin_budget):
    """The context summary attached to every emitted table."""
    return {
        "convention": qc.degree_convention,
        "weight_shift": qc.weight_shift,
        "exploratory": qc.exploratory,
        "irreducibility": qc.irreducibility,
        "margin_budget": margin_budget,
        "approximate": qc.degree_convention == "filtered",
        "generators": [str(g) for g in qc.live_generators],
    }


def verify_cell(qc, k, d, margin_budget=4):
    """One (k, d) comparison; returns (cell dict, witness dict or None)."""
    conv = qc.degree_convention
    if conv == "coefficient":
        dim_sym = sym_bigraded_dim(qc.oracle, k, d, homogeneous=True)
    elif conv == "total_weight":
        dim_sym = sym_cell_dim_total(qc.oracle, k, d)
    else:
        dim_sym = sym_bigraded_dim(qc.oracle, k, d, homogeneous=False)

    if conv == "filtered":
        dims = [gr_dimension(qc, k, d, margin=0)]
        margin_used = None
        for m in range(1, margin_budget + 1):
            dims.append(gr_dimension(qc, k, d, margin=m))
            if dims[-1] == dims[-2]:
                margin_used = m - 1
                break
        dim_gr = dims[-1]
        if margin_used is None:
            status = "UNSTABLE"
            margin_used = margin_budget
        else:
            status = "PASS" if dim_gr == dim_sym else "FAIL"
    else:
        # weight conservation makes the cell exact at margin 0
        dim_gr = gr_dimension(qc, k, d, margin=0)
        margin_used = 0
        status = "PASS" if dim_gr == dim_sym else "FAIL"

    witness = None
    if status == "FAIL" and dim_gr < dim_sym:
        witness = {"k": k, "d": d, "rows": _witness_strings(qc, k, d)}
    cell = {
        "k": k,
        "d": d,
        "dim_sym": dim_sym,
        "dim_gr": dim_gr,
        "margin_used": margin_used,
        "status": status,
    }
    return cell, witness


def pbw_verify(qc, kmax, dmax, margin_budget=4):
    """Compare gr and oracle dimensions on every cell up to the bounds."""
    if kmax < 0 or dmax < 0:
        raise ValueError("bounds must be >= 0")
    cells = []
    witnesses = []
    for k in range(kmax + 1):
        for d in range(dmax + 1):
            cell, witness = verify_cell(qc, k, d, margin_budget)
            if witness is not None:
                witnesses.append(witness)
            cells.append(cell)
    meta = table_meta(qc, margin_budget)
    if witnesses:
        meta["witnesses"] = witnesses
    return DimTable(cells, meta)
