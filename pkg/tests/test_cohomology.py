"""Cyclic group cohomology through the periodic trace complex."""

import random
from fractions import Fraction

import pytest

from invring.cohomology import (
    CohomologyGroup,
    CyclicModule,
    EigenvaluesNotInField,
    PreconditionViolated,
    cohomology,
    diagonalize_over_fraction_field,
    graded_cohomology,
    trace_matrix,
    verify_h1_degree0,
    verify_h2_trivial_mod_pi,
    verify_pi_annihilates_h1,
)
from invring.domains import ZZ, Z_local, mat_mul
from invring.fixtures import random_order_p_module, random_trivial_mod_p_module
from invring.groups import enumerate_group
from invring.poly import GradedRing


def test_trace_matrix_examples():
    assert trace_matrix(CyclicModule(ZZ, ((1,),), 3)) == ((3,),)
    assert trace_matrix(CyclicModule(ZZ, ((-1,),), 2)) == ((0,),)
    assert trace_matrix(CyclicModule(ZZ, ((0, 1), (1, 0)), 2)) == ((1, 1), (1, 1))


def test_trace_composes_to_zero_with_sigma_minus_1():
    rng = random.Random(2)
    from invring.domains import mat_identity, mat_sub

    for p in (2, 3):
        for _ in range(20):
            M = random_order_p_module(rng, p)
            tr = trace_matrix(M)
            sm1 = mat_sub(ZZ, M.sigma, mat_identity(ZZ, M.rank))
            zero = tuple(tuple(0 for _ in range(M.rank)) for _ in range(M.rank))
            assert mat_mul(ZZ, tr, sm1) == zero
            assert mat_mul(ZZ, sm1, tr) == zero


def test_cohomology_trivial_action():
    M = CyclicModule(ZZ, ((1,),), 5)
    assert cohomology(M, 0) == CohomologyGroup(1, ())
    assert cohomology(M, 1) == CohomologyGroup(0, ())
    assert cohomology(M, 2) == CohomologyGroup(0, (5,))


def test_cohomology_sign_action():
    M = CyclicModule(ZZ, ((-1,),), 2)
    assert cohomology(M, 1) == CohomologyGroup(0, (2,))
    assert cohomology(M, 2) == CohomologyGroup(0, ())


def test_cohomology_diag_over_zlocal():
    M = CyclicModule(Z_local(2), ((1, 0), (0, -1)), 2)
    assert cohomology(M, 2) == CohomologyGroup(0, (2,))


def test_cohomology_trivial_action_rank_r():
    M = CyclicModule(ZZ, tuple(tuple(int(i == j) for j in range(3)) for i in range(3)), 4)
    assert cohomology(M, 2) == CohomologyGroup(0, (4, 4, 4))
    assert cohomology(M, 1) == CohomologyGroup(0, ())
    assert cohomology(M, 3) == CohomologyGroup(0, ())


def test_periodicity_random():
    rng = random.Random(0)
    for p in (2, 3):
        for _ in range(100):
            M = random_order_p_module(rng, p)
            for i in (1, 2, 3, 4):
                assert cohomology(M, i) == cohomology(M, i + 2)


def test_torsion_annihilated_by_order():
    rng = random.Random(1)
    for p in (2, 3):
        for _ in range(50):
            M = random_order_p_module(rng, p)
            for i in (1, 2):
                h = cohomology(M, i)
                assert h.free_rank == 0
                assert all(p % t == 0 for t in h.torsion)


@pytest.mark.parametrize(
    "sigma, expect_both",
    [
        (((1, 0), (0, 1)), (2, 2)),
        (((1, 0), (0, -1)), (2,)),
        (((-1, 0), (0, -1)), ()),
    ],
)
def test_lemma_h2_equals_fixed_mod_p(sigma, expect_both):
    M = CyclicModule(Z_local(2), sigma, 2)
    rep = verify_h2_trivial_mod_pi(M)
    assert rep.holds
    assert rep.lhs.torsion == expect_both


def test_lemma_h2_precondition():
    with pytest.raises(PreconditionViolated):
        verify_h2_trivial_mod_pi(CyclicModule(Z_local(2), ((0, 1), (1, 0)), 2))
    with pytest.raises(PreconditionViolated):
        verify_h2_trivial_mod_pi(CyclicModule(ZZ, ((1,),), 3))


def test_lemma_h2_fuzz():
    rng = random.Random(3)
    for p in (2, 3, 5):
        for _ in range(100):
            M = random_trivial_mod_p_module(rng, p)
            assert verify_h2_trivial_mod_pi(M).holds


def test_h1_degree0():
    for gens, ring in [
        ([[[-1]]], GradedRing(1, ZZ)),
        ([[[-1, 0], [0, -1]]], GradedRing(2, ZZ)),
        ([[[0, -1], [1, -1]]], GradedRing(2, Z_local(3))),
    ]:
        G = enumerate_group(gens, ring.coeff)
        assert verify_h1_degree0(G, ring)


def test_pi_annihilates_h1():
    assert verify_pi_annihilates_h1(CyclicModule(Z_local(2), ((-1,),), 2))
    ident3 = tuple(tuple(int(i == j) for j in range(3)) for i in range(3))
    assert verify_pi_annihilates_h1(CyclicModule(Z_local(5), ident3, 5))
    rng = random.Random(4)
    for _ in range(50):
        M = random_trivial_mod_p_module(rng, 2, max_rank=3)
        assert verify_pi_annihilates_h1(M)


def test_diagonalize_examples():
    assert diagonalize_over_fraction_field(CyclicModule(ZZ, ((-1,),), 2)) == {
        Fraction(-1): 1
    }
    assert diagonalize_over_fraction_field(CyclicModule(ZZ, ((0, 1), (1, 0)), 2)) == {
        Fraction(1): 1,
        Fraction(-1): 1,
    }
    ident = tuple(tuple(int(i == j) for j in range(3)) for i in range(3))
    assert diagonalize_over_fraction_field(CyclicModule(ZZ, ident, 2)) == {
        Fraction(1): 3
    }


def test_diagonalize_fixed_multiplicity_matches_kernel_rank():
    rng = random.Random(6)
    from invring.linalg import IntegerMatrix, integer_kernel_basis

    for _ in range(30):
        M = random_order_p_module(rng, 2)
        mult = diagonalize_over_fraction_field(M)
        sm1 = [[int(x) - int(i == j) for j, x in enumerate(row)] for i, row in enumerate(M.sigma)]
        fixed = integer_kernel_basis(IntegerMatrix(sm1, cols=M.rank)).rows
        assert mult.get(Fraction(1), 0) == fixed
        assert sum(mult.values()) == M.rank


def test_diagonalize_raises_outside_field():
    with pytest.raises(EigenvaluesNotInField):
        diagonalize_over_fraction_field(CyclicModule(ZZ, ((0, -1), (1, -1)), 3))


def test_graded_cohomology_minus_identity():
    G = enumerate_group([[[-1, 0], [0, -1]]], ZZ)
    ring = GradedRing(2, ZZ)
    # odd degree pieces: sigma acts by -1, H^1 = (Z/2)^dim
    h1 = graded_cohomology(G, ring, 1, 3)
    assert h1 == CohomologyGroup(0, (2, 2, 2, 2))
    # even degree pieces are fixed: H^1 vanishes, H^2 = (Z/2)^dim
    assert graded_cohomology(G, ring, 1, 2) == CohomologyGroup(0, ())
    assert graded_cohomology(G, ring, 2, 2) == CohomologyGroup(0, (2, 2, 2))
