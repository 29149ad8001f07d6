"""Named small complexes and deterministic test corpora."""

from __future__ import annotations

import itertools
import random

from .complexes import SimplicialComplex, SimplicialMap, make_complex
from .towers import (
    cycle_complex,
    path_complex,
    simplex_boundary,
    simplex_closure,
)


def hollow_triangle() -> SimplicialComplex:
    return make_complex([[0, 1], [1, 2], [0, 2]])


def projective_plane() -> SimplicialComplex:
    """The 6-vertex triangulation of the projective plane."""
    return make_complex(
        [
            [0, 1, 2], [0, 1, 3], [0, 2, 4], [0, 3, 5], [0, 4, 5],
            [1, 2, 5], [1, 3, 4], [1, 4, 5], [2, 3, 4], [2, 3, 5],
        ]
    )


def torus() -> SimplicialComplex:
    """The 7-vertex torus: two triangle orbits under the cyclic shift."""
    gens = []
    for orbit in ((0, 1, 3), (0, 2, 3)):
        for t in range(7):
            gens.append(sorted((v + t) % 7 for v in orbit))
    return make_complex(gens)


def dunce_hat() -> SimplicialComplex:
    """A contractible 2-complex with no free face, so no collapse can start.

    Cone over a 9-cycle (a disk) whose rim is glued onto a 3-cycle winding
    forward twice and back once; vertex 0 is the disk apex, 1..9 the rim,
    10..12 the core cycle.
    """
    stations = [1, 2, 3, 1, 2, 3, 1, 3, 2]
    core = [9 + s for s in stations]
    gens = []
    for i in range(9):
        j = (i + 1) % 9
        gens.append(sorted((0, 1 + i, 1 + j)))
        gens.append(sorted((1 + i, 1 + j, core[j])))
        gens.append(sorted((1 + i, core[i], core[j])))
    return make_complex(gens)


def cone_over(K: SimplicialComplex) -> SimplicialComplex:
    """Cone with a fresh apex over every simplex of K."""
    apex = (max(K.vertices) + 1) if len(K) else 0
    gens = [list(s) + [apex] for s in K.maximal_simplexes()]
    gens.append([apex])
    return make_complex(gens)


# ---------------------------------------------------------------------------
# corpora


def canonical_form(K: SimplicialComplex) -> tuple:
    """Isomorphism invariant: least relabeled simplex list over all bijections."""
    verts = K.vertices
    best = None
    for perm in itertools.permutations(range(len(verts))):
        relabel = {v: perm[i] for i, v in enumerate(verts)}
        form = tuple(
            sorted(tuple(sorted(relabel[v] for v in s)) for s in K.simplexes)
        )
        if best is None or form < best:
            best = form
    return best


def iso_classes_up_to_4_vertices() -> list[SimplicialComplex]:
    """All non-empty complexes on at most 4 vertices, one per isomorphism class."""
    faces = [
        tuple(c)
        for k in range(1, 5)
        for c in itertools.combinations(range(4), k)
    ]
    face_sets = {f: frozenset(f) for f in faces}
    seen = {}
    for mask in range(1, 1 << len(faces)):
        chosen = [faces[i] for i in range(len(faces)) if mask >> i & 1]
        family = set(chosen)
        if any(
            face_sets[g] < face_sets[f] and g not in family
            for f in family
            for g in faces
        ):
            continue  # not downward closed
        K = SimplicialComplex._from_closed(frozenset(family))
        seen.setdefault(canonical_form(K), K)
    return [seen[k] for k in sorted(seen)]


def five_vertex_selection() -> list[SimplicialComplex]:
    """Hand-picked 5-vertex complexes of assorted shapes and dimensions."""
    return [
        path_complex(4),
        cycle_complex(5),
        make_complex([[0, 1], [1, 2], [2, 3], [3, 4], [0, 4], [0, 2], [1, 3]]),
        make_complex([[0, 1, 2], [2, 3], [3, 4]]),
        make_complex([[0, 1, 2], [0, 1, 3], [0, 1, 4]]),
        make_complex([[0, 1, 2], [2, 3, 4], [0, 4]]),
        cone_over(cycle_complex(4)),
        simplex_closure(4).skeleton(1),
        make_complex([[0, 1, 2, 3], [1, 2, 3, 4]]),
        simplex_boundary(3),
        simplex_closure(4),
    ]


def random_complex(rng: random.Random, max_vertices: int = 8,
                   max_dim: int = 3, generators: int = 4) -> SimplicialComplex:
    """A random complex from a few random generator simplexes."""
    gens = []
    for _ in range(generators):
        size = rng.randint(1, max_dim + 1)
        gens.append(sorted(rng.sample(range(max_vertices), size)))
    return make_complex(gens)


def random_subcomplex(rng: random.Random, K: SimplicialComplex) -> SimplicialComplex:
    """A random non-empty subcomplex: closure of a random simplex subset."""
    simplexes = K.sorted_simplexes()
    count = rng.randint(1, len(simplexes))
    picked = rng.sample(simplexes, count)
    return make_complex(picked)


def random_quotient_map(rng: random.Random, K: SimplicialComplex,
                        merge_prob: float = 0.5) -> SimplicialMap:
    """A random vertex-merging map out of K; simplicial by construction."""
    verts = list(K.vertices)
    classes: list[list[int]] = []
    for v in verts:
        if classes and rng.random() < merge_prob:
            rng.choice(classes).append(v)
        else:
            classes.append([v])
    label = {}
    for i, cls in enumerate(classes):
        for v in cls:
            label[v] = i
    target = SimplicialComplex(
        [sorted({label[v] for v in s}) for s in K.simplexes]
    )
    return SimplicialMap(K, target, label)


def standard_corpus() -> list[SimplicialComplex]:
    """The fixed collapse-test corpus: small isomorphism classes plus extras."""
    rng = random.Random(20240901)
    corpus = iso_classes_up_to_4_vertices()
    corpus.extend(five_vertex_selection())
    corpus.append(hollow_triangle())
    corpus.append(simplex_boundary(3))
    corpus.append(random_complex(rng, max_vertices=8, max_dim=3, generators=5))
    corpus.append(random_complex(rng, max_vertices=8, max_dim=3, generators=6))
    return corpus
