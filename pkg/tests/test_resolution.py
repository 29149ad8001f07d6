import itertools
import random

import pytest

from nablakit import (
    ParameterError,
    SimplicialMap,
    barycentric,
    boxtimes,
    homology,
    identity_map,
    induced_bary_map,
    is_nondegenerate,
    lift,
    make_complex,
    resolve,
)
from nablakit.catalog import random_complex, random_quotient_map


def test_boxtimes_point_is_full_simplex():
    for n in range(4):
        box = boxtimes(make_complex([[0]]), n)
        assert box == make_complex([list(range(n + 1))])


def test_boxtimes_edge_top_simplexes_match_brute_force():
    K = make_complex([[0, 1]])
    box = boxtimes(K, 1)
    assert box.vertex_count == 6
    # independent count: chains in the product of the 3-element face poset
    # with a 2-chain, filtered over all subsets
    sets = {s: frozenset(s) for s in K.simplexes}
    elements = [(s, j) for s in K.sorted_simplexes() for j in (0, 1)]

    def leq(a, b):
        return sets[a[0]] <= sets[b[0]] and a[1] <= b[1]

    chains = []
    for size in range(1, len(elements) + 1):
        for combo in itertools.combinations(elements, size):
            if all(leq(a, b) or leq(b, a) for a, b in itertools.combinations(combo, 2)):
                chains.append(combo)
    by_size = {}
    for c in chains:
        by_size[len(c)] = by_size.get(len(c), 0) + 1
    assert box.f_vector() == tuple(
        by_size.get(k + 1, 0) for k in range(box.dim + 1)
    )
    assert len(box.by_dim()[2]) == by_size[3]


def test_boxtimes_at_level_zero_is_the_subdivision():
    K = make_complex([[0, 1, 2], [2, 3]])
    assert boxtimes(K, 0) == barycentric(K).complex


def test_resolve_point():
    res = resolve(make_complex([[0]]), 3)
    assert res.hat == make_complex([[0, 1, 2, 3]])
    assert res.embed.assignment == {0: 0}


def test_resolve_edge_exact_structure():
    K = make_complex([[0, 1]])
    res = resolve(K, 1)
    labels = {res.label_of(v) for v in range(len(res.labels))}
    assert labels == {(s, j) for s in K.simplexes for j in (0, 1)}
    assert res.hat.dim == 1
    edges = {
        frozenset(res.label_simplex(s)) for s in res.hat.by_dim()[1]
    }
    expected = {
        frozenset({((0,), 0), ((0,), 1)}),
        frozenset({((1,), 0), ((1,), 1)}),
        frozenset({((0, 1), 0), ((0, 1), 1)}),
        frozenset({((0,), 0), ((0, 1), 1)}),
        frozenset({((1,), 0), ((0, 1), 1)}),
    }
    assert edges == expected


def test_embed_is_a_section_of_project():
    rng = random.Random(5)
    for _ in range(6):
        K = random_complex(rng, max_vertices=6, max_dim=2, generators=3)
        res = resolve(K, max(K.dim, 0))
        composite = res.project.compose(res.embed)
        assert composite == identity_map(res.bary.complex)


def test_levels_strictly_increase_along_hat_simplexes():
    K = make_complex([[0, 1, 2]])
    res = resolve(K, 2)
    for s in res.hat.simplexes:
        levels = [level for _, level in res.label_simplex(s)]
        assert levels == sorted(levels)
        assert len(set(levels)) == len(levels)


def test_resolve_requires_enough_levels():
    K = make_complex([[0, 1, 2]])
    with pytest.raises(ParameterError):
        resolve(K, 1)
    with pytest.raises(ParameterError):
        resolve(K, -1)


def test_half_edge_count_for_one_dimensional_complexes():
    for gens in ([[0, 1]], [[0, 1], [1, 2]], [[0, 1], [1, 2], [0, 2]]):
        K = make_complex(gens)
        res = resolve(K, 1)
        bary_cplx = barycentric(K).complex
        hat_edges = len(res.hat.by_dim()[1])
        bary_edges = len(bary_cplx.by_dim()[1])
        assert hat_edges == bary_edges + bary_cplx.vertex_count


def test_lift_identity():
    K = make_complex([[0, 1]])
    assert lift(identity_map(K), 1) == identity_map(resolve(K, 1).hat)


def test_lift_constant_edge_to_vertex():
    K = make_complex([[0, 1]])
    L = make_complex([[0]])
    f = SimplicialMap(K, L, {0: 0, 1: 0})
    lifted = lift(f, 1)
    assert is_nondegenerate(lifted)
    rt = resolve(L, 1)
    half_edge = rt.int_simplex((((0,), 0), ((0,), 1)))
    rs = resolve(K, 1)
    images = {lifted.apply(s) for s in rs.hat.by_dim()[1]}
    assert images == {half_edge}


def test_lift_makes_random_degenerate_maps_nondegenerate():
    rng = random.Random(9)
    for _ in range(10):
        K = random_complex(rng, max_vertices=6, max_dim=2, generators=3)
        f = random_quotient_map(rng, K, merge_prob=0.6)
        n = max(K.dim, 0)
        assert is_nondegenerate(lift(f, n))


def test_lift_commutes_with_projections_and_sections():
    rng = random.Random(13)
    for _ in range(6):
        K = random_complex(rng, max_vertices=5, max_dim=2, generators=3)
        f = random_quotient_map(rng, K)
        n = max(K.dim, 0)
        lifted = lift(f, n)
        rs, rt = resolve(K, n), resolve(f.target, n)
        assert rt.project.compose(lifted) == induced_bary_map(f).compose(rs.project)
        assert rt.project.compose(lifted).compose(rs.embed) == induced_bary_map(f)


def test_lift_is_functorial():
    rng = random.Random(17)
    for _ in range(6):
        K = random_complex(rng, max_vertices=5, max_dim=2, generators=3)
        f = random_quotient_map(rng, K)
        g = random_quotient_map(rng, f.target)
        n = max(K.dim, 0)
        assert lift(g.compose(f), n) == lift(g, n).compose(lift(f, n))


def test_lift_dimension_guard():
    K = make_complex([[0, 1, 2]])
    with pytest.raises(ParameterError):
        lift(identity_map(K), 1)


def test_resolution_preserves_homology_small():
    for gens in ([[0, 1], [1, 2], [0, 2]], [[0, 1, 2], [2, 3]], [[0]]):
        K = make_complex(gens)
        res = resolve(K, max(K.dim, 0))
        assert homology(res.hat) == homology(K)


def test_boxtimes_vertex_order_matches_resolution_labels():
    K = make_complex([[0, 1], [1, 2]])
    res = resolve(K, 2)
    box = res.boxtimes
    assert box.vertex_count == len(res.labels)
    assert res.hat.simplexes <= box.simplexes
