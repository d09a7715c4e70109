"""Monomial term orders.

An order object provides key(ctx, mono) returning a tuple that sorts
ascending in the order; max() of keys picks the leading monomial.  Graded
kinds use the context's weighted degree.
"""

from __future__ import annotations

_KIND_ALIASES = {
    "lex": "lex",
    "grlex": "grlex",
    "graded-lex": "grlex",
    "grevlex": "grevlex",
    "graded-reverse-lex": "grevlex",
    "block-grevlex": "block-grevlex",
}


class TermOrder:
    """lex / grlex / grevlex with an optional significance permutation.

    permutation[0] is the most significant variable index; grevlex breaks
    degree ties against the last variable in the permutation.

    block-grevlex splits the variables at index `split` and compares the
    front block (weighted grevlex) before the back block, so leading terms
    maximize the front-block weighted degree first.
    """

    __slots__ = ("kind", "permutation", "split")

    def __init__(self, kind="grevlex", permutation=None, split=None):
        try:
            self.kind = _KIND_ALIASES[kind]
        except KeyError:
            raise ValueError(f"unknown term order kind {kind!r}") from None
        self.permutation = tuple(permutation) if permutation is not None else None
        self.split = split
        if (self.kind == "block-grevlex") != (split is not None):
            raise ValueError("split is required for block orders and only for them")
        if self.kind == "block-grevlex" and permutation is not None:
            raise ValueError("block orders do not take a permutation")

    def _permuted(self, mono):
        if self.permutation is None:
            return mono
        return tuple(mono[p] for p in self.permutation)

    def validate(self, ctx):
        if self.permutation is not None and sorted(self.permutation) != list(range(len(ctx.names))):
            raise ValueError("permutation does not match context")
        if self.split is not None and not 0 < self.split < len(ctx.names):
            raise ValueError("split does not match context")

    def key(self, ctx, mono):
        if self.kind == "block-grevlex":
            s = self.split
            front, back = mono[:s], mono[s:]
            wf = sum(w * e for w, e in zip(ctx.weights[:s], front))
            wb = sum(w * e for w, e in zip(ctx.weights[s:], back))
            return (
                (wf,)
                + tuple(-e for e in reversed(front))
                + (wb,)
                + tuple(-e for e in reversed(back))
            )
        pm = self._permuted(mono)
        if self.kind == "lex":
            return pm
        d = ctx.wdeg(mono)
        if self.kind == "grlex":
            return (d,) + pm
        # grevlex: smaller trailing exponent wins a degree tie
        return (d,) + tuple(-e for e in reversed(pm))

    def __eq__(self, other):
        return (
            isinstance(other, TermOrder)
            and self.kind == other.kind
            and self.permutation == other.permutation
            and self.split == other.split
        )

    def __hash__(self):
        return hash((self.kind, self.permutation, self.split))

    def __repr__(self):
        if self.split is not None:
            return f"TermOrder({self.kind!r}, split={self.split})"
        if self.permutation is None:
            return f"TermOrder({self.kind!r})"
        return f"TermOrder({self.kind!r}, permutation={self.permutation})"


DEFAULT_ORDER = TermOrder("grevlex")
