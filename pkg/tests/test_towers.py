import itertools

import pytest

from nablakit import (
    InputError,
    SimplicialMap,
    SubcomplexFamily,
    Tower,
    check_family,
    example_tower,
    factor_surjection,
    homology,
    identity_map,
    image_subcomplex,
    induced_bary_map,
    is_nondegenerate,
    lift,
    make_complex,
    resolve,
    resolve_tower,
    skeleton_tower,
    surjectivize,
    trace_simplex,
)
from nablakit.towers import compose_surjections, path_complex


def identity_tower(K, length):
    return Tower(
        levels=tuple([K] * length),
        bonds=tuple(identity_map(K) for _ in range(length - 1)),
    )


def test_example_nested_intervals():
    T = example_tower("nested_intervals", 3)
    assert [len(K.by_dim()[1]) for K in T.levels] == [1, 2, 3]
    assert not is_nondegenerate(T.bonds[0])


def test_example_solenoid_nondegenerate():
    T = example_tower("solenoid", 3, p=2)
    assert [K.vertex_count for K in T.levels] == [3, 6, 12]
    assert all(is_nondegenerate(p) for p in T.bonds)


def test_example_hawaiian_degenerate_on_last_sphere():
    T = example_tower("hawaiian", 3, sphere_dim=1)
    assert [homology(K).betti(1) for K in T.levels] == [1, 2, 3]
    assert all(not is_nondegenerate(p) for p in T.bonds)


def test_example_sine_and_comb_are_nondegenerate():
    for name in ("sine_curve", "comb_flea"):
        T = example_tower(name, 4)
        assert all(is_nondegenerate(p) for p in T.bonds)


def test_example_null_sequence():
    T = example_tower("null_sequence", 3)
    assert [K.dim for K in T.levels] == [1, 2, 3]
    # each level is a point plus simplexes of dimensions 1..t
    assert [homology(K).betti(0) for K in T.levels] == [2, 3, 4]
    assert all(not is_nondegenerate(p) for p in T.bonds)


def test_example_tower_rejects_unknown():
    with pytest.raises(InputError):
        example_tower("klein_bottle", 3)
    with pytest.raises(InputError):
        example_tower("solenoid", 0)


def test_surjectivize_no_op_on_surjective_tower():
    T = example_tower("nested_intervals", 4)
    S = surjectivize(T)
    assert S.levels == T.levels


def test_surjectivize_shrinks_constant_bonds():
    K = make_complex([[0, 1, 2]])
    const = SimplicialMap(K, K, {v: 0 for v in K.vertices})
    T = Tower(levels=(K, K, K), bonds=(const, const))
    S = surjectivize(T)
    assert S.levels[2] == K
    assert S.levels[0] == make_complex([[0]])
    assert all(
        image_subcomplex(p) == S.levels[i] for i, p in enumerate(S.bonds)
    )
    again = surjectivize(S)
    assert again.levels == S.levels


def test_trace_simplex():
    T = identity_tower(make_complex([[0, 1]]), 3)
    assert trace_simplex(T, 2, (0, 1)) == [(0, 1), (0, 1)]

    N = example_tower("nested_intervals", 3)
    assert trace_simplex(N, 1, (0, 1)) == [(0,)]

    S = example_tower("solenoid", 3, p=2)
    assert trace_simplex(S, 2, (10, 11)) == [(4, 5), (1, 2)]

    with pytest.raises(InputError):
        trace_simplex(T, 1, (5, 6))


def test_skeleton_tower():
    T = example_tower("null_sequence", 3)
    Z = skeleton_tower(T, 0)
    assert all(K.dim == 0 for K in Z.levels)
    full = skeleton_tower(T, 9)
    assert full.levels == T.levels


def test_check_family_full_and_empty():
    T = example_tower("nested_intervals", 3)
    full = SubcomplexFamily(members=T.levels)
    empty = SubcomplexFamily(members=tuple(make_complex([]) for _ in T.levels))
    for mode in ("lfd", "decomposable"):
        assert check_family(T, full, mode).ok
        assert check_family(T, empty, mode).ok


def test_check_family_rightmost_edges_decomposable():
    size = 4
    T = example_tower("nested_intervals", size)
    members = []
    for t in range(1, size + 1):
        # rightmost t-1 edges of the path with t edges (all but the leftmost)
        gens = [[v, v + 1] for v in range(1, t)] or [[t]]
        members.append(make_complex(gens))
    F = SubcomplexFamily(members=tuple(members))
    assert check_family(T, F, "decomposable").ok


def test_check_family_reports_first_violation():
    T = example_tower("nested_intervals", 2)
    # the leftmost edge of level 1 maps onto a vertex outside the empty level-0 part
    F = SubcomplexFamily(
        members=(make_complex([[1]]), make_complex([[0, 1]]))
    )
    report = check_family(T, F, "lfd")
    assert not report.ok
    assert report.level == 1
    assert report.simplex == (0,)


def test_check_family_mismatch_rejected():
    T = example_tower("nested_intervals", 2)
    F = SubcomplexFamily(members=(make_complex([[9]]), make_complex([[0]])))
    with pytest.raises(InputError):
        check_family(T, F, "lfd")


def test_factor_surjection_examples():
    assert factor_surjection((0, 1, 2)) == []
    assert factor_surjection((0,)) == []
    assert factor_surjection((0, 0)) == [(0, 0)]
    steps = factor_surjection((0, 0, 0))
    assert len(steps) == 2
    assert compose_surjections(steps, 3) == (0, 0, 0)


def test_factor_surjection_all_small_maps():
    for dom in range(1, 6):
        for cod in range(1, dom + 1):
            for values in itertools.product(range(cod), repeat=dom):
                if set(values) != set(range(cod)):
                    continue
                factors = factor_surjection(values)
                assert compose_surjections(factors, dom) == values
                merge_factors = factors if dom > cod else []
                assert len(merge_factors) == dom - cod
                for f in merge_factors:
                    # each merge factor identifies exactly one pair
                    assert len(f) - len(set(f)) == 1


def test_factor_surjection_rejects_non_surjective():
    with pytest.raises(InputError):
        factor_surjection((0, 2))


def test_resolve_tower_identity():
    K = make_complex([[0, 1]])
    T = identity_tower(K, 3)
    RT = resolve_tower(T, 1)
    hat = resolve(K, 1).hat
    assert all(H == hat for H in RT.levels)
    assert all(p == identity_map(hat) for p in RT.bonds)


def test_resolve_tower_removes_degeneracy():
    T = example_tower("nested_intervals", 4)
    RT = resolve_tower(T, 1)
    assert all(is_nondegenerate(p) for p in RT.bonds)
    for K, H in zip(T.levels, RT.levels):
        assert homology(K) == homology(H)


def test_resolve_tower_commuting_squares():
    T = example_tower("hawaiian", 3, sphere_dim=1)
    RT = resolve_tower(T, 1)
    for i, p in enumerate(T.bonds):
        rs = resolve(T.levels[i + 1], 1)
        rt = resolve(T.levels[i], 1)
        assert rt.project.compose(RT.bonds[i]) == induced_bary_map(p).compose(
            rs.project
        )


def test_skeleton_families_of_resolved_towers_are_decomposable():
    T = resolve_tower(example_tower("solenoid", 3, p=2), 1)
    for k in range(2):
        F = SubcomplexFamily(members=tuple(K.skeleton(k) for K in T.levels))
        assert check_family(T, F, "decomposable").ok


def test_tower_validation():
    K = make_complex([[0, 1]])
    L = make_complex([[0]])
    with pytest.raises(InputError):
        Tower(levels=(K, L), bonds=())
    with pytest.raises(InputError):
        Tower(levels=(K, L), bonds=(identity_map(K),))


def test_path_complex_edge_cases():
    assert path_complex(0).f_vector() == (1,)
    assert path_complex(2).f_vector() == (3, 2)
