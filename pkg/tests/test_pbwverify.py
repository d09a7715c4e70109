"""Tests for the graded dimension comparison on quotients."""

import json
import random
from math import comb

import pytest

from poissonpbw.core import (
    Polynomial,
    VarContext,
    groebner,
    iter_monomials,
    parse_polynomial,
    random_polynomial,
)
from poissonpbw.envelope import SymElement, random_u_element, u_mul
from poissonpbw.kahler import build_sym_oracle
from poissonpbw.pbwverify import (
    IdealMembershipSpace,
    NotPoissonIdealError,
    QuotientContext,
    envelope_quotient_map,
    gr_dimension,
    ideal_membership,
    ideal_window_basis,
    pbw_map_apply,
    pbw_verify,
    q_alpha,
    q_beta,
    q_commutator,
    q_mul,
)
from poissonpbw.poisson import PoissonStructure, bracket, nambu_structure, symplectic_structure


def cone_qc():
    ctx = VarContext(["X1", "X2", "X3"])
    ps = PoissonStructure.from_upper_entries(ctx, {
        (0, 1): parse_polynomial("X3", ctx),
        (1, 2): parse_polynomial("X1", ctx),
        (0, 2): parse_polynomial("-X2", ctx),
    })
    q = parse_polynomial("X1^2 + X2^2 + X3^2", ctx)
    return QuotientContext(ps, groebner([q])), q


def _free(k, d):
    if k < 0 or d < 0:
        return 0
    return comb(d + 2, 2) * comb(k + 2, 2)


def cone_expected(k, d):
    return _free(k, d) - _free(k, d - 2) - _free(k - 1, d - 1) + _free(k - 1, d - 3)


def cube_expected(k, d):
    return _free(k, d) - _free(k, d - 3) - _free(k - 1, d - 2) + _free(k - 1, d - 5)


def test_cone_anchors_and_window_ranks():
    qc, _ = cone_qc()
    assert qc.degree_convention == "coefficient"
    assert qc.weight_shift == -1
    assert ideal_window_basis(qc, 0, 3).rank == 0
    assert ideal_window_basis(qc, 1, 1).rank == 1
    assert ideal_window_basis(qc, 2, 2).rank == 9
    assert gr_dimension(qc, 1, 1) == 8
    assert gr_dimension(qc, 1, 2) == 12
    assert gr_dimension(qc, 1, 3) == 16
    assert gr_dimension(qc, 2, 2) == 21


def test_cone_table_matches_closed_form():
    qc, _ = cone_qc()
    table = pbw_verify(qc, 3, 4)
    assert table.all_pass
    for c in table.cells:
        want = cone_expected(c["k"], c["d"])
        assert c["dim_sym"] == want
        assert c["dim_gr"] == want
        assert c["margin_used"] == 0
        assert c["status"] == "PASS"


def test_cube_table_and_reducible_advisory():
    ctx = VarContext(["X1", "X2", "X3"])
    p = parse_polynomial("X1*X2*X3", ctx)
    qc = QuotientContext(nambu_structure(p), groebner([p]))
    assert qc.degree_convention == "coefficient"
    assert qc.weight_shift == 0
    assert qc.irreducibility["irreducible"] is False
    table = pbw_verify(qc, 2, 4)
    assert table.all_pass
    for c in table.cells:
        assert c["dim_gr"] == cube_expected(c["k"], c["d"])
        assert c["margin_used"] == 0


def _klein_free(k, s):
    yw = (14, 9, 5)
    if k < 0 or s < 0:
        return 0
    count = 0
    for b in iter_monomials(3, k):
        rem = s - sum(w * e for w, e in zip(yw, b))
        if rem < 0:
            continue
        for a1 in range(rem // 15 + 1):
            for a2 in range((rem - 15 * a1) // 10 + 1):
                if (rem - 15 * a1 - 10 * a2) % 6 == 0:
                    count += 1
    return count


def klein_expected(k, s):
    return (
        _klein_free(k, s)
        - _klein_free(k, s - 30)
        - _klein_free(k - 1, s - 29)
        + _klein_free(k - 1, s - 59)
    )


def test_klein_weighted_table():
    ctx = VarContext(["X1", "X2", "X3"], weights=(15, 10, 6))
    p = parse_polynomial("X1^2 + X2^3 + X3^5", ctx)
    qc = QuotientContext(nambu_structure(p), groebner([p]))
    assert qc.degree_convention == "total_weight"
    assert qc.weight_shift == -1
    table = pbw_verify(qc, 2, 40)
    assert table.all_pass
    for c in table.cells:
        assert c["dim_gr"] == klein_expected(c["k"], c["d"])
        assert c["margin_used"] == 0
    assert sum(1 for c in table.cells if c["dim_sym"]) > 40


def test_smooth_free_counts():
    for n in (2, 3):
        ctx = VarContext([f"X{i + 1}" for i in range(n)])
        qc = QuotientContext(PoissonStructure.zero(ctx), groebner([Polynomial.zero(ctx)]))
        table = pbw_verify(qc, 3, 3)
        assert table.all_pass
        for c in table.cells:
            want = comb(n + c["d"] - 1, c["d"]) * comb(n + c["k"] - 1, c["k"])
            assert c["dim_gr"] == want == c["dim_sym"]
    ctx = VarContext(["X1", "X2", "X3", "X4"])
    qc = QuotientContext(symplectic_structure(ctx), groebner([Polynomial.zero(ctx)]))
    assert qc.degree_convention == "coefficient"
    assert qc.weight_shift == -2
    table = pbw_verify(qc, 2, 2)
    assert table.all_pass
    for c in table.cells:
        assert c["dim_gr"] == comb(4 + c["d"] - 1, c["d"]) * comb(4 + c["k"] - 1, c["k"])


def test_quotient_algebra_ops():
    qc, q = cone_qc()
    ctx = qc.structure.ctx
    a = q_alpha(qc, parse_polynomial("X1^2", ctx))
    assert str(a) == "-X2^2 - X3^2"
    e = q_beta(qc, q)
    assert e == qc.ideal_betas[0]
    assert str(e) == "2*X1*b1 + 2*X2*b2 + 2*X3*b3"
    assert ideal_membership(qc, e)
    assert not ideal_membership(qc, q_alpha(qc, parse_polynomial("X1", ctx)))
    s = SymElement(ctx, {
        (1, 0, 0): parse_polynomial("2*X1", ctx),
        (0, 1, 0): parse_polynomial("2*X2", ctx),
        (0, 0, 1): parse_polynomial("2*X3", ctx),
    })
    assert pbw_map_apply(qc, s) == e
    with pytest.raises(ValueError):
        pbw_map_apply(qc, SymElement(ctx, {
            (1, 0, 0): Polynomial.one(ctx),
            (2, 0, 0): Polynomial.one(ctx),
        }))


def test_quotient_map_multiplicative_mod_ideal():
    qc, _ = cone_qc()
    ps = qc.structure
    rng = random.Random(7)
    space = IdealMembershipSpace(qc, kmax=3, dmax=6, degree_margin=2)
    for _ in range(30):
        u = random_u_element(ps, rng, max_beta_deg=1, max_coeff_deg=2, n_terms=2)
        v = random_u_element(ps, rng, max_beta_deg=1, max_coeff_deg=2, n_terms=2)
        diff = envelope_quotient_map(qc, u_mul(u, v)) - q_mul(
            envelope_quotient_map(qc, u), envelope_quotient_map(qc, v)
        )
        assert diff.is_zero() or space.contains(diff)


def test_q_beta_lie_map_mod_ideal():
    qc, _ = cone_qc()
    ps = qc.structure
    ctx = ps.ctx
    rng = random.Random(11)
    space = IdealMembershipSpace(qc, kmax=3, dmax=6, degree_margin=2)
    for _ in range(20):
        f = random_polynomial(ctx, rng, max_degree=2, n_terms=3)
        g = random_polynomial(ctx, rng, max_degree=2, n_terms=3)
        diff = q_commutator(q_beta(qc, f), q_beta(qc, g)) - q_beta(qc, bracket(ps, f, g))
        assert diff.is_zero() or space.contains(diff)


def test_not_poisson_ideal_rejected():
    qc, _ = cone_qc()
    ps = qc.structure
    ctx = ps.ctx
    with pytest.raises(NotPoissonIdealError):
        QuotientContext(ps, groebner([parse_polynomial("X1", ctx)]))
    other = VarContext(["Y1", "Y2"])
    with pytest.raises(ValueError):
        QuotientContext(ps, groebner([Polynomial.zero(other)]))


def test_filtered_fallback_inhomogeneous():
    ctx = VarContext(["X1", "X2", "X3"])
    g = parse_polynomial("X2 + X1^2", ctx)
    qc = QuotientContext(PoissonStructure.zero(ctx), groebner([g]))
    assert qc.degree_convention == "filtered"
    table = pbw_verify(qc, 2, 3)
    assert table.all_pass
    assert table.meta["approximate"]
    # B is a polynomial ring in two variables, so filtered counts are squares
    assert [table.cell(0, d)["dim_gr"] for d in range(4)] == [1, 4, 9, 16]


def test_exploratory_multigenerator():
    ctx = VarContext(["X1", "X2", "X3"])
    gens = [parse_polynomial("X1", ctx), parse_polynomial("X2", ctx)]
    qc = QuotientContext(PoissonStructure.zero(ctx), groebner(gens))
    assert qc.exploratory
    assert qc.irreducibility == {
        "checked": False,
        "irreducible": None,
        "note": "non-principal ideal",
    }
    table = pbw_verify(qc, 2, 2)
    assert table.meta["exploratory"]
    assert table.all_pass
    assert all(c["dim_gr"] == 1 == c["dim_sym"] for c in table.cells)


def test_fault_injection_emits_witness():
    # swap in the oracle of the full polynomial ring: dim_sym inflates,
    # dim_gr < dim_sym must FAIL and surface witness relation rows
    qc, _ = cone_qc()
    ctx = qc.structure.ctx
    qc.oracle = build_sym_oracle(groebner([Polynomial.zero(ctx)]), y_weight_shift=-1)
    table = pbw_verify(qc, 1, 1)
    assert table.has_fail
    bad = table.cell(1, 1)
    assert bad["dim_gr"] == 8 and bad["dim_sym"] == 9
    wit = table.meta["witnesses"][0]
    assert wit["k"] == 1 and wit["d"] == 1
    assert "2*X1*b1 + 2*X2*b2 + 2*X3*b3" in wit["rows"]


def test_table_serialization():
    qc, _ = cone_qc()
    table = pbw_verify(qc, 1, 2)
    blob = json.loads(table.to_json())
    assert blob["schema_version"] == 1
    assert blob["meta"]["convention"] == "coefficient"
    assert len(blob["cells"]) == 6
    csv = table.to_csv()
    lines = csv.splitlines()
    assert lines[0] == "k,d,dim_sym,dim_gr,margin,status"
    assert len(lines) == 7
    assert lines[1] == "0,0,1,1,0,PASS"
    text = table.pretty()
    assert "PASS" in text and "dim_sym" in text
    with pytest.raises(KeyError):
        table.cell(9, 9)


def test_cell_index_validation():
    qc, _ = cone_qc()
    with pytest.raises(ValueError):
        gr_dimension(qc, -1, 0)
    with pytest.raises(ValueError):
        pbw_verify(qc, -1, 2)
