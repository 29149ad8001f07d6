import itertools
import random
from fractions import Fraction

import pytest

from nablakit import (
    barycentric,
    boundary_matrices,
    cell_homology_q,
    enumerate_cells,
    homology,
    make_complex,
    point_profile,
)
from nablakit.catalog import (
    dunce_hat,
    projective_plane,
    random_complex,
    torus,
)
from nablakit.homology import (
    boundary_compose_is_zero,
    cell_homology,
    smith_invariants,
)


def gf2_rank(boundary):
    """Independent oracle: rank over the 2-element field via bit rows."""
    rows = [0] * len(boundary.rows)
    for j, col in enumerate(boundary.columns):
        for r, _sign in col:
            rows[r] ^= 1 << j
    rank = 0
    for pivot_bit in range(len(boundary.cols)):
        mask = 1 << pivot_bit
        pivot_row = None
        for i in range(rank, len(rows)):
            if rows[i] & mask:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i] & mask:
                rows[i] ^= rows[rank]
        rank += 1
    return rank


def det_fraction(matrix):
    """Independent oracle: determinant by fraction Gaussian elimination."""
    n = len(matrix)
    m = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for i in range(col + 1, n):
            f = m[i][col] / m[col][col]
            for j in range(col, n):
                m[i][j] -= f * m[col][j]
    return det


def test_edge_boundary_column():
    [b1] = boundary_matrices(make_complex([[0, 1]]))
    assert b1.rows == ((0,), (1,))
    assert b1.cols == ((0, 1),)
    assert b1.columns == (((0, -1), (1, 1)),)


def test_boundary_composition_vanishes():
    rng = random.Random(2)
    complexes = [
        make_complex([[0, 1, 2]]),
        make_complex([[0, 1, 2, 3]]),
        projective_plane(),
    ] + [random_complex(rng, 7, 3, 4) for _ in range(5)]
    for K in complexes:
        bs = boundary_matrices(K)
        for low, high in zip(bs, bs[1:]):
            assert boundary_compose_is_zero(low, high)


def test_hollow_triangle_rank():
    [b1] = boundary_matrices(make_complex([[0, 1], [1, 2], [0, 2]]))
    entries = [(r, j, s) for j, col in enumerate(b1.columns) for r, s in col]
    rank, factors = smith_invariants(3, 3, entries)
    assert rank == 2
    assert factors == [1, 1]


def test_sphere_homology():
    sphere = make_complex([[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])
    assert homology(sphere).groups == ((1, ()), (0, ()), (1, ()))


def test_projective_plane_homology_and_mod2_crosscheck():
    K = projective_plane()
    profile = homology(K)
    assert profile.groups == ((1, ()), (0, (2,)), (0, ()))
    # over the 2-element field the middle Betti number jumps to 1,
    # confirming the order-2 torsion independently
    b1, b2 = boundary_matrices(K)
    f = K.f_vector()
    betti1_mod2 = f[1] - gf2_rank(b1) - gf2_rank(b2)
    assert betti1_mod2 == 1


def test_torus_homology():
    assert homology(torus()).groups == ((1, ()), (2, ()), (1, ()))


def test_dunce_hat_is_a_homology_point():
    profile = homology(dunce_hat())
    assert profile == point_profile(profile.dim)


def test_homology_invariant_under_subdivision():
    rng = random.Random(31)
    for _ in range(6):
        K = random_complex(rng, max_vertices=6, max_dim=2, generators=4)
        assert homology(K) == homology(barycentric(K).complex)


def test_euler_characteristic_equals_alternating_betti_sum():
    rng = random.Random(37)
    complexes = [projective_plane(), torus(), dunce_hat()] + [
        random_complex(rng, 7, 3, 4) for _ in range(5)
    ]
    for K in complexes:
        profile = homology(K)
        assert K.euler_characteristic() == sum(
            (-1) ** k * b for k, b in enumerate(profile.betti_vector())
        )


def test_smith_invariants_known_matrices():
    rank, factors = smith_invariants(2, 2, [(0, 0, 2), (1, 1, 3)])
    assert rank == 2 and factors == [1, 6]
    rank, factors = smith_invariants(2, 2, [(0, 0, 2), (1, 1, 4)])
    assert rank == 2 and factors == [2, 4]
    rank, factors = smith_invariants(3, 3, [])
    assert rank == 0 and factors == []


def test_smith_determinant_agrees_with_fraction_elimination():
    rng = random.Random(41)
    for _ in range(10):
        n = rng.randint(2, 4)
        matrix = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        det = det_fraction(matrix)
        entries = [
            (i, j, matrix[i][j]) for i in range(n) for j in range(n)
        ]
        rank, factors = smith_invariants(n, n, entries)
        if det == 0:
            assert rank < n
        else:
            product = 1
            for x in factors:
                product *= x
            assert rank == n and product == abs(det)
        # divisibility chain
        for a, b in zip(factors, factors[1:]):
            assert b % a == 0


def test_cell_homology_is_a_point():
    profile = cell_homology_q(0, 3)
    assert profile.groups == ((1, ()), (0, ()), (0, ()), (0, ()))
    profile = cell_homology_q(1, 2)
    assert profile == point_profile(profile.dim)


def test_weak_staircase_subdivision_is_a_simplex():
    profile = cell_homology(enumerate_cells(1, 2, "r"))
    assert profile.groups == ((1, ()), (0, ()), (0, ()))


def test_homology_of_empty_complex():
    assert homology(make_complex([])).groups == ()


def test_profile_formatting():
    lines = homology(projective_plane()).format_lines()
    assert lines == [
        "H_0: betti=1 torsion=",
        "H_1: betti=0 torsion=2",
        "H_2: betti=0 torsion=",
    ]
