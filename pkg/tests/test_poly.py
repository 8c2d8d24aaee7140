"""Graded rings, polynomial arithmetic, and the linear action."""

import random
from fractions import Fraction

import pytest

from invring.domains import GF, QQ, ZZ, Z_local
from invring.poly import (
    GradedRing,
    Polynomial,
    act,
    action_matrix,
    format_polynomial,
    graded_piece_basis,
    parse_polynomial,
    polynomial_from_vector,
    series_dimensions,
)

R2 = GradedRing(2, ZZ)
R3 = GradedRing(3, ZZ)
SWAP = ((0, 1), (1, 0))
MINUS_I = ((-1, 0), (0, -1))


def test_piece_basis_small():
    assert graded_piece_basis(R2, 1).monomials == ((1, 0), (0, 1))
    assert graded_piece_basis(R2, 2).monomials == ((2, 0), (1, 1), (0, 2))
    assert graded_piece_basis(R3, 2).dim == 6


def test_piece_basis_weighted():
    W = GradedRing(2, ZZ, weights=(1, 2))
    assert graded_piece_basis(W, 2).monomials == ((2, 0), (0, 1))
    assert graded_piece_basis(W, 3).monomials == ((3, 0), (1, 1))


def test_piece_dims_match_series():
    for ring in (R2, R3, GradedRing(2, ZZ, weights=(1, 2))):
        dims = series_dimensions(ring, 8)
        for d in range(9):
            assert graded_piece_basis(ring, d).dim == dims[d]


def test_multiply():
    X, Y = R2.variable(0), R2.variable(1)
    assert (X + Y) * (X + Y) == X * X + (X * Y).scale(2) + Y * Y
    assert (X - Y) * (X + Y) == X * X - Y * Y
    assert (X * Y) * R2.zero_poly == R2.zero_poly


def test_act_examples():
    X, Y = R2.variable(0), R2.variable(1)
    assert act(SWAP, X) == Y
    f = X * X + X * Y
    ident = ((1, 0), (0, 1))
    assert act(ident, f) == f
    assert act(MINUS_I, f) == f  # even degree is fixed by -I


def test_act_ring_homomorphism():
    X, Y = R2.variable(0), R2.variable(1)
    f = X * X - Y
    g = X + Y.scale(3)
    m = ((1, 2), (0, 1))
    assert act(m, f * g) == act(m, f) * act(m, g)
    assert act(m, f + g) == act(m, f) + act(m, g)


def test_action_matrix_examples():
    a = action_matrix(R2, SWAP, 2)
    assert a == ((0, 0, 1), (0, 1, 0), (1, 0, 0))
    assert action_matrix(R2, ((1, 0), (0, 1)), 3) == tuple(
        tuple(int(i == j) for j in range(4)) for i in range(4)
    )
    assert action_matrix(R2, MINUS_I, 1) == ((-1, 0), (0, -1))


def test_action_matrix_functorial():
    from invring.domains import mat_mul
    from invring.groups import enumerate_group

    rng = random.Random(5)
    s3 = enumerate_group(
        [
            [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
            [[0, 0, 1], [1, 0, 0], [0, 1, 0]],
        ],
        ZZ,
    )
    for _ in range(50):
        g = rng.choice(s3.elements)
        h = rng.choice(s3.elements)
        d = rng.randint(0, 6)
        lhs = action_matrix(R3, mat_mul(ZZ, g, h), d)
        rhs_g = action_matrix(R3, g, d)
        rhs_h = action_matrix(R3, h, d)
        assert lhs == mat_mul(ZZ, rhs_g, rhs_h)


def test_act_preserves_degree():
    rng = random.Random(9)
    for _ in range(20):
        d = rng.randint(1, 6)
        piece = graded_piece_basis(R2, d)
        vec = [rng.randint(-3, 3) for _ in range(piece.dim)]
        f = polynomial_from_vector(R2, piece, vec)
        g = act(((1, 1), (0, 1)), f)  # any integer matrix works here
        if not g.is_zero():
            assert g.degree() == f.degree()
            assert g.is_homogeneous()


@pytest.mark.parametrize(
    "text, back",
    [
        ("3*X^2*Y - 1/2*Z", "3*X^2*Y - 1/2*Z"),
        ("X + Y", "X + Y"),
        ("-X^3", "-X^3"),
        ("2", "2"),
    ],
)
def test_parse_format_roundtrip(text, back):
    ring = GradedRing(3, QQ)
    f = parse_polynomial(ring, text)
    assert format_polynomial(f) == back
    assert parse_polynomial(ring, format_polynomial(f)) == f


def test_parse_x1_names():
    ring = GradedRing(4, QQ)
    f = parse_polynomial(ring, "X1^2*X2 - X4")
    assert f.degree() == 3


def test_parse_rejects_unknown_symbol():
    with pytest.raises(ValueError):
        parse_polynomial(R2, "X + Q")


def test_zlocal_coefficients_enforced():
    ring = GradedRing(2, Z_local(3))
    f = parse_polynomial(ring, "1/2*X")
    assert f.terms[(1, 0)] == Fraction(1, 2)
    with pytest.raises(ValueError):
        parse_polynomial(ring, "1/3*X")


def test_fp_coefficients_reduce():
    ring = GradedRing(2, GF(5))
    f = parse_polynomial(ring, "7*X + 5*Y")
    assert f.terms == {(1, 0): 2}
