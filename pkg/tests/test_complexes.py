import itertools
import random

import pytest

from nablakit import (
    InputError,
    SimplicialComplex,
    SimplicialMap,
    barycentric,
    dim_map,
    face_poset,
    identity_map,
    image_subcomplex,
    induced_bary_map,
    is_nondegenerate,
    make_complex,
    order_complex,
    skeleton,
)
from nablakit.catalog import random_complex
from nablakit.complexes import Poset, chain_poset, product_poset


def brute_chain_sets(elements, leq):
    """Independent oracle: all non-empty totally ordered subsets."""
    chains = []
    for size in range(1, len(elements) + 1):
        for combo in itertools.combinations(elements, size):
            if all(
                leq(a, b) or leq(b, a)
                for a, b in itertools.combinations(combo, 2)
            ):
                chains.append(frozenset(combo))
    return chains


def test_make_complex_triangle_closure():
    K = make_complex([[0, 1, 2]])
    assert set(K.simplexes) == {
        (0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2),
    }
    assert K.dim == 2 and len(K) == 7


def test_make_complex_empty():
    K = make_complex([])
    assert K.dim == -1
    assert len(K) == 0
    assert K.euler_characteristic() == 0


def test_make_complex_hollow_triangle():
    K = make_complex([[0, 1], [1, 2], [0, 2]])
    assert len(K) == 6 and K.dim == 1


@pytest.mark.parametrize("bad", [[1, 0], [0, 0], [-1, 2], []])
def test_make_complex_rejects_malformed(bad):
    with pytest.raises(InputError):
        make_complex([bad])


def test_skeleton():
    K = make_complex([[0, 1, 2]])
    assert skeleton(K, 1) == make_complex([[0, 1], [1, 2], [0, 2]])
    assert skeleton(K, 2) == K
    assert skeleton(K, 5) == K
    tetra = make_complex([[0, 1, 2, 3]])
    assert skeleton(tetra, 0) == make_complex([[0], [1], [2], [3]])
    assert skeleton(K, -1) == make_complex([])


def test_face_poset_edge():
    P = face_poset(make_complex([[0, 1]]))
    assert len(P) == 3
    assert P.leq((0,), (0, 1)) and P.leq((1,), (0, 1))
    assert not P.leq((0, 1), (0,))
    assert P.is_valid_order()


def test_face_poset_single_vertex():
    P = face_poset(make_complex([[0]]))
    assert len(P) == 1


def test_face_poset_empty_rejected():
    with pytest.raises(InputError):
        face_poset(make_complex([]))


def test_face_poset_triangle_maximal_chains():
    K = make_complex([[0, 1, 2]])
    P = face_poset(K)
    sets = {s: frozenset(s) for s in K.simplexes}
    chains = brute_chain_sets(P.elements, lambda a, b: sets[a] <= sets[b])
    maximal3 = [c for c in chains if len(c) == 3]
    assert len(maximal3) == 6


def test_order_complex_of_chain_is_full_simplex():
    for n in range(4):
        oc = order_complex(chain_poset(n))
        counts = oc.f_vector()
        expected = tuple(
            len(list(itertools.combinations(range(n + 1), k + 1)))
            for k in range(n + 1)
        )
        assert counts == expected


def test_order_complex_of_antichain():
    P = Poset(range(4), lambda a, b: a == b)
    oc = order_complex(P)
    assert oc.f_vector() == (4,)


def test_order_complex_counts_match_brute_force():
    K = make_complex([[0, 1, 2]])
    P = face_poset(K)
    oc = order_complex(P)
    sets = {s: frozenset(s) for s in K.simplexes}
    chains = brute_chain_sets(P.elements, lambda a, b: sets[a] <= sets[b])
    assert len(oc) == len(chains)
    assert len(oc.by_dim()[2]) == 6  # six top triangles in the subdivision


def test_barycentric_edge_and_point():
    b = barycentric(make_complex([[0, 1]]))
    assert b.complex.f_vector() == (3, 2)
    b = barycentric(make_complex([[0]]))
    assert b.complex.f_vector() == (1,)


def test_barycentric_triangle_counts():
    b = barycentric(make_complex([[0, 1, 2]]))
    assert b.complex.f_vector() == (7, 12, 6)


def test_barycentric_counts_equal_chain_counts():
    rng = random.Random(7)
    for _ in range(5):
        K = random_complex(rng, max_vertices=5, max_dim=2, generators=3)
        b = barycentric(K)
        sets = {s: frozenset(s) for s in K.simplexes}
        chains = brute_chain_sets(
            list(K.simplexes), lambda a, b_: sets[a] <= sets[b_]
        )
        by_size = {}
        for c in chains:
            by_size[len(c)] = by_size.get(len(c), 0) + 1
        assert b.complex.f_vector() == tuple(
            by_size.get(k + 1, 0) for k in range(b.complex.dim + 1)
        )


def test_barycentric_label_table_roundtrip():
    K = make_complex([[0, 1, 2]])
    b = barycentric(K)
    for i, label in enumerate(b.labels):
        assert b.vertex_of(label) == i
        assert b.label_of(i) == label


def test_induced_bary_map_identity():
    K = make_complex([[0, 1, 2]])
    assert induced_bary_map(identity_map(K)) == identity_map(barycentric(K).complex)


def test_induced_bary_map_edge_collapse():
    K = make_complex([[0, 1]])
    L = make_complex([[0]])
    f = SimplicialMap(K, L, {0: 0, 1: 0})
    fb = induced_bary_map(f)
    target_vertex = barycentric(L).vertex_of((0,))
    assert set(fb.assignment.values()) == {target_vertex}
    assert len(fb.assignment) == 3


def test_induced_bary_map_triangle_to_edge():
    K = make_complex([[0, 1, 2]])
    L = make_complex([[0, 1]])
    f = SimplicialMap(K, L, {0: 0, 1: 0, 2: 1})
    fb = induced_bary_map(f)
    bk, bl = barycentric(K), barycentric(L)
    assert fb.assignment[bk.vertex_of((0, 1, 2))] == bl.vertex_of((0, 1))
    assert fb.assignment[bk.vertex_of((0, 1))] == bl.vertex_of((0,))


def test_induced_bary_map_functorial_on_random_pairs():
    rng = random.Random(11)
    from nablakit.catalog import random_quotient_map

    for _ in range(10):
        K = random_complex(rng, max_vertices=6, max_dim=2, generators=3)
        f = random_quotient_map(rng, K)
        g = random_quotient_map(rng, f.target)
        assert induced_bary_map(g.compose(f)) == induced_bary_map(g).compose(
            induced_bary_map(f)
        )


def test_is_nondegenerate():
    K = make_complex([[0, 1]])
    assert is_nondegenerate(identity_map(K))
    const = SimplicialMap(K, make_complex([[0]]), {0: 0, 1: 0})
    assert not is_nondegenerate(const)
    # double cover of a 3-cycle by a 6-cycle
    six = make_complex([[i, i + 1] for i in range(5)] + [[0, 5]])
    three = make_complex([[0, 1], [1, 2], [0, 2]])
    cover = SimplicialMap(six, three, {v: v % 3 for v in range(6)})
    assert is_nondegenerate(cover)


def test_nondegenerate_maps_subdivide_nondegenerately():
    six = make_complex([[i, i + 1] for i in range(5)] + [[0, 5]])
    three = make_complex([[0, 1], [1, 2], [0, 2]])
    cover = SimplicialMap(six, three, {v: v % 3 for v in range(6)})
    assert is_nondegenerate(induced_bary_map(cover))
    assert is_nondegenerate(induced_bary_map(identity_map(six)))


def test_image_subcomplex():
    K = make_complex([[0, 1]])
    L = make_complex([[0, 1, 2]])
    inclusion = SimplicialMap(K, L, {0: 0, 1: 1})
    assert image_subcomplex(inclusion) == make_complex([[0, 1]])
    const = SimplicialMap(K, L, {0: 2, 1: 2})
    assert image_subcomplex(const) == make_complex([[2]])
    onto = identity_map(L)
    assert image_subcomplex(onto) == L


def test_dim_map_values_and_monotonicity():
    K = make_complex([[0, 1, 2], [3]])
    D = dim_map(K)
    assert D.apply((3,)) == 0
    assert D.apply((0, 1, 2)) == 2
    P = D.source
    for a in P.elements:
        for b in P.elements:
            if a != b and P.leq(a, b):
                assert D.apply(a) < D.apply(b)


def test_downward_closure_random():
    rng = random.Random(3)
    for _ in range(10):
        K = random_complex(rng, max_vertices=7, max_dim=3, generators=4)
        for s in K.simplexes:
            for size in range(1, len(s)):
                for sub in itertools.combinations(s, size):
                    assert sub in K


def test_product_poset_axioms():
    P = face_poset(make_complex([[0, 1]]))
    Q = chain_poset(2)
    assert product_poset(P, Q).is_valid_order()


def test_simplicial_map_validation():
    K = make_complex([[0, 1]])
    L = make_complex([[0], [1]])
    with pytest.raises(InputError):
        SimplicialMap(K, L, {0: 0, 1: 1})  # image of the edge is not a simplex
    with pytest.raises(InputError):
        SimplicialMap(K, L, {0: 0})  # not total


def test_complex_equality_and_hash():
    a = make_complex([[0, 1], [1, 2]])
    b = make_complex([[1, 2], [0, 1]])
    assert a == b and hash(a) == hash(b)
    assert a != make_complex([[0, 1]])
    assert SimplicialComplex([[0, 1]]) == make_complex([[0, 1]])
