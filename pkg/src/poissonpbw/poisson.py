"""Poisson structures on polynomial algebras.

A structure is the matrix p_ij = {X_i, X_j}; brackets of arbitrary
polynomials extend by the biderivation contraction
{f,g} = sum_ij p_ij (df/dXi)(dg/dXj).  Jacobi is enforced at construction.
"""

from __future__ import annotations

from fractions import Fraction

from .core import Polynomial, VarContext, normal_form


class JacobiError(ValueError):
    """Jacobi identity fails; carries the offending triple and residual."""

    def __init__(self, witness, residual):
        i, j, k = witness
        super().__init__(
            f"Jacobi identity fails on generators ({i + 1},{j + 1},{k + 1}): "
            f"residual {residual}"
        )
        self.witness = witness
        self.residual = residual


def _matrix_bracket_var(matrix, i, g):
    """{X_i, g} computed from a raw matrix row."""
    out = Polynomial.zero(g.ctx)
    for j, p in enumerate(matrix[i]):
        if p:
            dg = g.partial(j)
            if dg:
                out = out + p * dg
    return out


def check_jacobi(ctx, matrix):
    """(ok, witness, residual) for a raw skew matrix of Polynomials."""
    n = len(ctx.names)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                res = (
                    _matrix_bracket_var(matrix, i, matrix[j][k])
                    + _matrix_bracket_var(matrix, j, matrix[k][i])
                    + _matrix_bracket_var(matrix, k, matrix[i][j])
                )
                if res:
                    return False, (i, j, k), res
    return True, None, None


class PoissonStructure:
    """Skew matrix of generator brackets with Jacobi validated up front."""

    __slots__ = ("ctx", "matrix")

    def __init__(self, ctx, matrix):
        n = len(ctx.names)
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise ValueError("matrix must be n x n")
        for i in range(n):
            for j in range(n):
                p = matrix[i][j]
                if p.ctx != ctx:
                    raise ValueError("matrix entry from wrong context")
                if i == j and p:
                    raise ValueError("diagonal entries must vanish")
                if matrix[i][j] != -matrix[j][i]:
                    raise ValueError(f"matrix not skew at ({i + 1},{j + 1})")
        ok, witness, residual = check_jacobi(ctx, matrix)
        if not ok:
            raise JacobiError(witness, residual)
        self.ctx = ctx
        self.matrix = tuple(tuple(row) for row in matrix)

    @classmethod
    def zero(cls, ctx):
        z = Polynomial.zero(ctx)
        n = len(ctx.names)
        return cls(ctx, [[z] * n for _ in range(n)])

    @classmethod
    def from_upper_entries(cls, ctx, entries):
        """Build from {(i,j): p} with i<j 0-based; skew completion implied."""
        n = len(ctx.names)
        z = Polynomial.zero(ctx)
        matrix = [[z for _ in range(n)] for _ in range(n)]
        for (i, j), p in entries.items():
            if not 0 <= i < j < n:
                raise ValueError(f"bad entry position ({i}, {j})")
            matrix[i][j] = p
            matrix[j][i] = -p
        return cls(ctx, matrix)

    def weight_shift(self):
        """Common s with deg{X_i,X_j} = w_i + w_j + s, or None if not weight-graded.

        The all-zero structure returns 0.
        """
        shift = None
        w = self.ctx.weights
        for i in range(len(w)):
            for j in range(i + 1, len(w)):
                p = self.matrix[i][j]
                if not p:
                    continue
                if not p.is_homogeneous():
                    return None
                s = p.degree() - w[i] - w[j]
                if shift is None:
                    shift = s
                elif shift != s:
                    return None
        return 0 if shift is None else shift

    def __eq__(self, other):
        return (
            isinstance(other, PoissonStructure)
            and self.ctx == other.ctx
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((self.ctx, self.matrix))

    def __repr__(self):
        nonzero = sum(1 for i, row in enumerate(self.matrix) for j, p in enumerate(row) if p and i < j)
        return f"PoissonStructure({self.ctx!r}, {nonzero} nonzero brackets)"


def bracket(ps, f, g):
    """{f, g} by the contraction formula."""
    if f.ctx != ps.ctx or g.ctx != ps.ctx:
        raise ValueError("context mismatch")
    df = [f.partial(i) for i in range(len(ps.ctx.names))]
    dg = [g.partial(j) for j in range(len(ps.ctx.names))]
    out = Polynomial.zero(ps.ctx)
    for i, row in enumerate(ps.matrix):
        if not df[i]:
            continue
        for j, p in enumerate(row):
            if p and dg[j]:
                out = out + p * df[i] * dg[j]
    return out


def bracket_var(ps, i, g):
    """{X_i, g} for a single generator; cheaper than bracket(X_i, g)."""
    if g.ctx != ps.ctx:
        raise ValueError("context mismatch")
    return _matrix_bracket_var(ps.matrix, i, g)


def jacobi_check(ps):
    """(ok, witness, residual); always ok for a constructed structure."""
    return check_jacobi(ps.ctx, ps.matrix)


def nambu_structure(P, Q=None):
    """Three-variable structure {X1,X2} = Q dP/dX3 and cyclic; P is a Casimir."""
    ctx = P.ctx
    if len(ctx.names) != 3:
        raise ValueError("nambu structure needs exactly 3 variables")
    if Q is None:
        Q = Polynomial.one(ctx)
    if Q.ctx != ctx:
        raise ValueError("context mismatch")
    return PoissonStructure.from_upper_entries(
        ctx,
        {
            (0, 1): Q * P.partial(2),
            (1, 2): Q * P.partial(0),
            (0, 2): -(Q * P.partial(1)),  # {X3,X1} = Q dP/dX2
        },
    )


class LieData:
    """Structure constants c[i][j][k] and a 2-cocycle sigma, both validated."""

    __slots__ = ("names", "c", "sigma")

    def __init__(self, names, c, sigma=None):
        names = tuple(names)
        n = len(names)
        c = tuple(
            tuple(tuple(Fraction(c[i][j][k]) for k in range(n)) for j in range(n))
            for i in range(n)
        )
        if sigma is None:
            sigma = [[Fraction(0)] * n for _ in range(n)]
        sigma = tuple(tuple(Fraction(sigma[i][j]) for j in range(n)) for i in range(n))
        for i in range(n):
            for j in range(n):
                if sigma[i][j] != -sigma[j][i]:
                    raise ValueError(f"cocycle matrix not skew at ({i + 1},{j + 1})")
                for k in range(n):
                    if c[i][j][k] != -c[j][i][k]:
                        raise ValueError(f"structure constants not skew at ({i + 1},{j + 1},{k + 1})")
        # Lie-Jacobi on structure constants
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    for l in range(n):
                        s = sum(
                            c[i][j][m] * c[m][k][l]
                            + c[j][k][m] * c[m][i][l]
                            + c[k][i][m] * c[m][j][l]
                            for m in range(n)
                        )
                        if s:
                            raise ValueError(
                                f"Jacobi fails on basis triple ({i + 1},{j + 1},{k + 1})"
                            )
        # cocycle identity sigma([x,y],z) + cyclic = 0
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    s = sum(
                        c[i][j][m] * sigma[m][k]
                        + c[j][k][m] * sigma[m][i]
                        + c[k][i][m] * sigma[m][j]
                        for m in range(n)
                    )
                    if s:
                        raise ValueError(
                            f"cocycle identity fails on basis triple ({i + 1},{j + 1},{k + 1})"
                        )
        self.names = names
        self.c = c
        self.sigma = sigma

    @property
    def dim(self):
        return len(self.names)

    def bracket_constants(self, i, j):
        """[x_i, x_j] as a coefficient vector over the basis."""
        return self.c[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, LieData)
            and self.names == other.names
            and self.c == other.c
            and self.sigma == other.sigma
        )

    def __hash__(self):
        return hash((self.names, self.c, self.sigma))

    def __repr__(self):
        return f"LieData({list(self.names)})"


def lie_poisson_structure(L, ctx=None):
    """Affine structure matrix[i][j] = sum_k c[i][j][k] X_k + sigma[i][j]."""
    if ctx is None:
        ctx = VarContext(L.names)
    n = L.dim
    if len(ctx.names) != n:
        raise ValueError("context size must match Lie dimension")
    entries = {}
    for i in range(n):
        for j in range(i + 1, n):
            p = Polynomial.constant(ctx, L.sigma[i][j])
            for k in range(n):
                if L.c[i][j][k]:
                    p = p + Polynomial.monomial(ctx, ctx.unit_mono(k), L.c[i][j][k])
            entries[(i, j)] = p
    return PoissonStructure.from_upper_entries(ctx, entries)


def symplectic_structure(ctx):
    """{X_i, X_{n+i}} = 1 on 2n variables, pairing first and second halves."""
    n2 = len(ctx.names)
    if n2 % 2:
        raise ValueError("symplectic structure needs an even variable count")
    n = n2 // 2
    one = Polynomial.one(ctx)
    return PoissonStructure.from_upper_entries(ctx, {(i, n + i): one for i in range(n)})


def is_casimir(ps, p):
    """True iff {X_i, p} = 0 for every generator (hence {f,p} = 0 for all f)."""
    if p.ctx != ps.ctx:
        raise ValueError("context mismatch")
    return all(not _matrix_bracket_var(ps.matrix, i, p) for i in range(len(ps.ctx.names)))


def is_poisson_ideal(ps, gb):
    """True iff {X_i, g} lies in the ideal for every variable and original generator."""
    if gb.ctx != ps.ctx:
        raise ValueError("context mismatch")
    for g in gb.original_generators:
        for i in range(len(ps.ctx.names)):
            if normal_form(_matrix_bracket_var(ps.matrix, i, g), gb):
                return False
    return True
