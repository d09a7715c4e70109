import random
from fractions import Fraction

import pytest

from poissonpbw.core import (
    Polynomial,
    VarContext,
    groebner,
    parse_polynomial,
    random_polynomial,
)
from poissonpbw.poisson import (
    JacobiError,
    LieData,
    PoissonStructure,
    bracket,
    check_jacobi,
    is_casimir,
    is_poisson_ideal,
    jacobi_check,
    lie_poisson_structure,
    nambu_structure,
    symplectic_structure,
)

CTX3 = VarContext(["X1", "X2", "X3"])


def cone_structure():
    half = Fraction(1, 2)
    P = parse_polynomial("X1^2+X2^2+X3^2", CTX3) * half
    return nambu_structure(P)


SO3_C = [
    [[0, 0, 0], [0, 0, 1], [0, -1, 0]],
    [[0, 0, -1], [0, 0, 0], [1, 0, 0]],
    [[0, 1, 0], [-1, 0, 0], [0, 0, 0]],
]


def test_cone_entries():
    cone = cone_structure()
    assert str(cone.matrix[0][1]) == "X3"
    assert str(cone.matrix[1][2]) == "X1"
    assert str(cone.matrix[2][0]) == "X2"
    assert bracket(cone, parse_polynomial("X1", CTX3), parse_polynomial("X2", CTX3)) == parse_polynomial("X3", CTX3)


def test_bracket_skew_and_leibniz():
    cone = cone_structure()
    rng = random.Random(41)
    for _ in range(60):
        f = random_polynomial(CTX3, rng, 3)
        g = random_polynomial(CTX3, rng, 3)
        h = random_polynomial(CTX3, rng, 3)
        assert bracket(cone, f, f).is_zero()
        assert bracket(cone, f, g) == -bracket(cone, g, f)
        assert bracket(cone, f * g, h) == f * bracket(cone, g, h) + g * bracket(cone, f, h)
        # Jacobi for arbitrary polynomials, not just generators
        s = (
            bracket(cone, f, bracket(cone, g, h))
            + bracket(cone, g, bracket(cone, h, f))
            + bracket(cone, h, bracket(cone, f, g))
        )
        assert s.is_zero()


def test_symplectic():
    ctx = VarContext(["X", "Y"])
    sp = symplectic_structure(ctx)
    assert str(sp.matrix[0][1]) == "1"
    assert str(bracket(sp, parse_polynomial("X^2", ctx), parse_polynomial("Y", ctx))) == "2*X"
    with pytest.raises(ValueError):
        symplectic_structure(CTX3)


def test_jacobi_broken_matrix():
    # {X1,X2}=X1, {X2,X3}=0, {X3,X1}=X2 has Jacobiator residual X2
    entries = {
        (0, 1): parse_polynomial("X1", CTX3),
        (0, 2): -parse_polynomial("X2", CTX3),
    }
    with pytest.raises(JacobiError) as ei:
        PoissonStructure.from_upper_entries(CTX3, entries)
    assert ei.value.witness == (0, 1, 2)
    assert str(ei.value.residual) == "X2"

    z = Polynomial.zero(CTX3)
    raw = [[z, parse_polynomial("X1", CTX3), -parse_polynomial("X2", CTX3)],
           [-parse_polynomial("X1", CTX3), z, z],
           [parse_polynomial("X2", CTX3), z, z]]
    ok, witness, residual = check_jacobi(CTX3, raw)
    assert not ok and witness == (0, 1, 2) and str(residual) == "X2"


def test_jacobi_valid_structures():
    assert jacobi_check(cone_structure()) == (True, None, None)
    assert jacobi_check(PoissonStructure.zero(CTX3)) == (True, None, None)
    # bracket of the zero structure vanishes identically
    rng = random.Random(5)
    zero = PoissonStructure.zero(CTX3)
    for _ in range(10):
        f = random_polynomial(CTX3, rng, 3)
        g = random_polynomial(CTX3, rng, 3)
        assert bracket(zero, f, g).is_zero()


def test_skew_validation():
    x3 = parse_polynomial("X3", CTX3)
    z = Polynomial.zero(CTX3)
    bad = [[z, x3, z], [x3, z, z], [z, z, z]]  # not skew
    with pytest.raises(ValueError):
        PoissonStructure(CTX3, bad)
    baddiag = [[x3, z, z], [z, z, z], [z, z, z]]
    with pytest.raises(ValueError):
        PoissonStructure(CTX3, baddiag)


def test_nambu_random_properties():
    rng = random.Random(63)
    for _ in range(50):
        P = random_polynomial(CTX3, rng, 3)
        Q = random_polynomial(CTX3, rng, 2, n_terms=2)
        ps = nambu_structure(P, Q)  # constructor runs jacobi_check
        assert is_casimir(ps, P)
    with pytest.raises(ValueError):
        nambu_structure(parse_polynomial("X", VarContext(["X"])))
    # P = 0 gives the zero structure
    assert nambu_structure(Polynomial.zero(CTX3)) == PoissonStructure.zero(CTX3)


def test_nambu_cube():
    cube = nambu_structure(parse_polynomial("X1*X2*X3", CTX3))
    assert str(cube.matrix[0][1]) == "X1*X2"
    assert str(cube.matrix[1][2]) == "X2*X3"
    assert str(cube.matrix[2][0]) == "X1*X3"
    gb = groebner([parse_polynomial("X1*X2*X3", CTX3)])
    assert is_poisson_ideal(cube, gb)


def test_lie_poisson_so3_is_cone():
    L = LieData(["e1", "e2", "e3"], SO3_C)
    lp = lie_poisson_structure(L, CTX3)
    assert lp == cone_structure()


def test_lie_poisson_symplectic_sigma():
    # abelian with standard symplectic cocycle gives the constant structure
    n = 2
    zeros = [[[0] * 2 * n for _ in range(2 * n)] for _ in range(2 * n)]
    sigma = [[0] * 2 * n for _ in range(2 * n)]
    for i in range(n):
        sigma[i][n + i] = 1
        sigma[n + i][i] = -1
    L = LieData(["q1", "q2", "p1", "p2"], zeros, sigma)
    lp = lie_poisson_structure(L)
    assert lp == symplectic_structure(VarContext(["q1", "q2", "p1", "p2"]))
    # abelian with zero cocycle is the zero structure
    L0 = LieData(["q1", "q2", "p1", "p2"], zeros)
    assert lie_poisson_structure(L0) == PoissonStructure.zero(VarContext(["q1", "q2", "p1", "p2"]))


def test_liedata_validation():
    bad = [
        [[0, 0, 0], [0, 0, 1], [0, 0, 0]],
        [[0, 0, 1], [0, 0, 0], [1, 0, 0]],
        [[0, 0, 0], [-1, 0, 0], [0, 0, 0]],
    ]
    with pytest.raises(ValueError):
        LieData(["a", "b", "c"], bad)  # c[0][1] = c[1][0], not skew
    # Jacobi failure: [e1,e2]=e1, [e2,e3]=0, [e3,e1]=e2 (the broken-matrix companion)
    nonjac = [
        [[0, 0, 0], [1, 0, 0], [0, -1, 0]],
        [[-1, 0, 0], [0, 0, 0], [0, 0, 0]],
        [[0, 1, 0], [0, 0, 0], [0, 0, 0]],
    ]
    with pytest.raises(ValueError):
        LieData(["e1", "e2", "e3"], nonjac)
    # cocycle identity failure needs a non-semisimple algebra:
    # [e1,e2]=e3, [e2,e3]=e3, [e3,e1]=e3 with sigma(e3,e1)=1
    solv = [
        [[0, 0, 0], [0, 0, 1], [0, 0, -1]],
        [[0, 0, -1], [0, 0, 0], [0, 0, 1]],
        [[0, 0, 1], [0, 0, -1], [0, 0, 0]],
    ]
    LieData(["e1", "e2", "e3"], solv)  # valid without cocycle
    sigma = [[0, 0, -1], [0, 0, 0], [1, 0, 0]]
    with pytest.raises(ValueError):
        LieData(["e1", "e2", "e3"], solv, sigma)


def test_is_casimir():
    cone = cone_structure()
    assert is_casimir(cone, parse_polynomial("X1^2+X2^2+X3^2", CTX3))
    assert not is_casimir(cone, parse_polynomial("X1", CTX3))


def test_is_poisson_ideal():
    cone = cone_structure()
    assert is_poisson_ideal(cone, groebner([parse_polynomial("X1^2+X2^2+X3^2", CTX3)]))
    assert not is_poisson_ideal(cone, groebner([parse_polynomial("X1", CTX3)]))


def test_weight_shift():
    assert cone_structure().weight_shift() == -1
    kctx = VarContext(["X1", "X2", "X3"], weights=(15, 10, 6))
    klein = nambu_structure(parse_polynomial("X1^2+X2^3+X3^5", kctx))
    assert klein.weight_shift() == -1
    cube = nambu_structure(parse_polynomial("X1*X2*X3", CTX3))
    assert cube.weight_shift() == 0
    assert symplectic_structure(VarContext(["X", "Y"])).weight_shift() == -2
    assert PoissonStructure.zero(CTX3).weight_shift() == 0
    # inhomogeneous bracket entry: no consistent shift
    mixed = PoissonStructure.from_upper_entries(
        CTX3, {(0, 1): parse_polynomial("X3 + X3^2", CTX3)}
    )
    assert mixed.weight_shift() is None
