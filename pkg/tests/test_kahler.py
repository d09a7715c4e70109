"""Tests for the differentials presentation and the commutative counting oracle."""

import math

import pytest

from poissonpbw.core import (
    Polynomial,
    VarContext,
    groebner,
    iter_monomials,
    iter_weighted_monomials,
    parse_polynomial,
)
from poissonpbw.kahler import (
    OmegaPresentation,
    build_sym_oracle,
    conormal_exactness_check,
    omega_of_quotient,
    sym_bigraded_dim,
    sym_cell_dim_total,
    sym_standard_monomials,
)

CTX3 = VarContext(["X1", "X2", "X3"])


def P(text, ctx=CTX3):
    return parse_polynomial(text, ctx)


def _free_count(k, d, n=3):
    return math.comb(n + d - 1, d) * math.comb(n + k - 1, k)


def _bigraded_free(k, d):
    if k < 0 or d < 0:
        return 0
    return math.comb(d + 2, 2) * math.comb(k + 2, 2)


def cone_expected(k, d):
    """Inclusion-exclusion for the regular sequence at bigrades (0,2), (1,1)."""
    return (
        _bigraded_free(k, d)
        - _bigraded_free(k, d - 2)
        - _bigraded_free(k - 1, d - 1)
        + _bigraded_free(k - 1, d - 3)
    )


def cube_expected(k, d):
    """Same scheme for X1*X2*X3 at bigrades (0,3), (1,2)."""
    return (
        _bigraded_free(k, d)
        - _bigraded_free(k, d - 3)
        - _bigraded_free(k - 1, d - 2)
        + _bigraded_free(k - 1, d - 5)
    )


def test_omega_rows_come_from_original_generators():
    gb = groebner([P("X1^2 + X2^2 + X3^2")])
    pres = omega_of_quotient(gb)
    assert pres.rank == 3
    assert [str(p) for p in pres.relations[0]] == ["2*X1", "2*X2", "2*X3"]

    gb = groebner([P("X1*X2*X3")])
    pres = omega_of_quotient(gb)
    assert [str(p) for p in pres.relations[0]] == ["X2*X3", "X1*X3", "X1*X2"]

    free = omega_of_quotient(groebner([Polynomial.zero(CTX3)]))
    assert free.is_free()
    assert free.relations == ()


def test_oracle_context_doubles_without_collisions():
    gb = groebner([P("X1^2 + X2^2 + X3^2")])
    oracle = build_sym_oracle(gb)
    assert oracle.dctx.names == ("X1", "X2", "X3", "dX1", "dX2", "dX3")
    assert len(oracle.contractions) == 1
    assert str(oracle.contractions[0]) == "2*X1*dX1 + 2*X2*dX2 + 2*X3*dX3"

    tricky = VarContext(["a", "da"])
    gb2 = groebner([parse_polynomial("a^2 + da^2", tricky)])
    oracle2 = build_sym_oracle(gb2)
    assert len(set(oracle2.dctx.names)) == 4


def test_cone_cells_match_regular_sequence_counts():
    oracle = build_sym_oracle(groebner([P("X1^2 + X2^2 + X3^2")]))
    assert sym_bigraded_dim(oracle, 1, 1) == 8
    assert sym_bigraded_dim(oracle, 1, 2) == 12
    assert sym_bigraded_dim(oracle, 1, 3) == 16
    assert sym_bigraded_dim(oracle, 2, 2) == 21
    for k in range(4):
        for d in range(5):
            assert sym_bigraded_dim(oracle, k, d) == cone_expected(k, d), (k, d)
    # k=1 closed form: 3*h_d - h_{d-1} with h_d = 2d+1 on the quadric
    for d in range(1, 5):
        assert sym_bigraded_dim(oracle, 1, d) == 3 * (2 * d + 1) - (2 * (d - 1) + 1)
    # cumulative flag sums the homogeneous cells
    assert sym_bigraded_dim(oracle, 1, 3, homogeneous=False) == sum(
        sym_bigraded_dim(oracle, 1, d) for d in range(4)
    )


def test_free_cells_are_products_of_binomials():
    oracle = build_sym_oracle(groebner([Polynomial.zero(CTX3)]))
    assert sym_bigraded_dim(oracle, 2, 2) == 36
    for k in range(5):
        for d in range(5):
            assert sym_bigraded_dim(oracle, k, d) == _free_count(k, d), (k, d)


def test_cube_cells_match_regular_sequence_counts():
    oracle = build_sym_oracle(groebner([P("X1*X2*X3")]))
    for k in range(3):
        for d in range(6):
            assert sym_bigraded_dim(oracle, k, d) == cube_expected(k, d), (k, d)


def test_klein_total_weight_cells():
    kctx = VarContext(["X1", "X2", "X3"], (15, 10, 6))
    gb = groebner([parse_polynomial("X1^2 + X2^3 + X3^5", kctx)])
    oracle = build_sym_oracle(gb, y_weight_shift=-1)
    assert not oracle.clamped
    assert oracle.dctx.weights == (15, 10, 6, 14, 9, 5)

    def free(k, s):
        if k < 0 or s < 0:
            return 0
        total = 0
        for ym in iter_monomials(3, k):
            rem = s - sum(w * e for w, e in zip((14, 9, 5), ym))
            if rem < 0:
                continue
            total += sum(1 for _ in iter_weighted_monomials((15, 10, 6), rem))
        return total

    def expected(k, s):
        return free(k, s) - free(k, s - 30) - free(k - 1, s - 29) + free(k - 1, s - 59)

    for k in range(3):
        for s in range(41):
            assert sym_cell_dim_total(oracle, k, s) == expected(k, s), (k, s)
    assert sym_cell_dim_total(oracle, 1, 14) == 1


def test_standard_monomials_are_standard():
    oracle = build_sym_oracle(groebner([P("X1^2 + X2^2 + X3^2")]))
    cell = sym_standard_monomials(oracle, 1, 2)
    assert len(cell) == 12
    assert all(sum(m[3:]) == 1 and sum(m[:3]) == 2 for m in cell)


def test_conormal_exactness_two_routes_agree():
    for gens in ([P("X1^2 + X2^2 + X3^2")], [P("X1*X2*X3")], [Polynomial.zero(CTX3)]):
        report = conormal_exactness_check(groebner(gens), 3, kmax=2)
        assert len(report) == 12
        assert all(cell["consistent"] for cell in report), gens


def test_exactness_check_rejects_unsupported_input():
    with pytest.raises(ValueError):
        conormal_exactness_check(groebner([P("X1^2 + X2")]), 2)
    kctx = VarContext(["X1", "X2", "X3"], (15, 10, 6))
    with pytest.raises(ValueError):
        conormal_exactness_check(groebner([parse_polynomial("X1^2 + X2^3 + X3^5", kctx)]), 2)


def test_presentation_validates_rows():
    with pytest.raises(ValueError):
        OmegaPresentation(CTX3, [(P("X1"), P("X2"))])


def test_kahler_does_not_import_envelope_side():
    import poissonpbw.kahler as mod

    source = open(mod.__file__).read()
    assert "envelope" not in source
    assert "pbwverify" not in source
    assert "poisson" not in source.replace("poissonpbw", "")
