"""The non-degenerate resolution of a simplicial complex.

For a complex K and a level bound n, the product complex is the order
complex of (face poset of K) x {0..n}.  The resolution ("hat") keeps the
chains whose level coordinates are pairwise distinct; forgetting levels
projects it onto the barycentric subdivision, and sending each base
simplex s to the pair (s, dim s) embeds the subdivision back as a section
of that projection.  Any simplicial map K -> L lifts to the resolutions by
acting on the base coordinate alone, and the lift never collapses a
simplex because levels are preserved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .complexes import (
    SimplicialComplex,
    SimplicialMap,
    Subdivision,
    barycentric,
    chain_poset,
    face_poset,
    order_complex,
    product_poset,
    simplex_key,
)
from .errors import ParameterError

# A resolution vertex label: (base simplex of K, level).  Label simplexes
# are tuples of such pairs sorted by (level, base).
Label = tuple[tuple[int, ...], int]
LabelSimplex = tuple[Label, ...]


def sort_label_simplex(vertices) -> LabelSimplex:
    verts = sorted((level, base) for base, level in vertices)
    return tuple((base, level) for level, base in verts)


@dataclass(frozen=True)
class Resolution:
    """The resolution of `base` at level bound n, with section and projection."""

    base: SimplicialComplex
    n: int
    bary: Subdivision
    labels: tuple[Label, ...]  # product vertex id -> (base simplex, level)
    hat: SimplicialComplex  # on product vertex ids
    embed: SimplicialMap  # bary.complex -> hat
    project: SimplicialMap  # hat -> bary.complex
    label_index: dict = field(compare=False, repr=False)

    @property
    def boxtimes(self) -> SimplicialComplex:
        """The full product complex (computed on demand; hat is a subcomplex)."""
        return boxtimes(self.base, self.n)

    def label_of(self, vertex: int) -> Label:
        return self.labels[vertex]

    def vertex_of(self, label: Label) -> int:
        return self.label_index[label]

    def label_simplex(self, s) -> LabelSimplex:
        return sort_label_simplex(self.labels[v] for v in s)

    def int_simplex(self, ls: LabelSimplex) -> tuple[int, ...]:
        return tuple(sorted(self.label_index[lab] for lab in ls))

    def hat_labels(self) -> frozenset:
        return frozenset(self.label_simplex(s) for s in self.hat.simplexes)

    def embed_image_labels(self) -> frozenset:
        e = self.embed
        out = set()
        for s in self.bary.complex.simplexes:
            out.add(self.label_simplex(e.apply(s)))
        return frozenset(out)


def _product_elements(K: SimplicialComplex, n: int):
    """Vertices of the product complex in canonical (dim, lex, level) order."""
    simplexes = sorted(K.simplexes, key=simplex_key)
    return [(s, j) for s in simplexes for j in range(n + 1)]


def boxtimes(K: SimplicialComplex, n: int) -> SimplicialComplex:
    """Order complex of (face poset of K) x {0..n}."""
    if n < 0:
        raise ParameterError(f"level bound must be >= 0, got {n}")
    P = product_poset(face_poset(K), chain_poset(n))
    return order_complex(P)


@lru_cache(maxsize=128)
def resolve(K: SimplicialComplex, n: int) -> Resolution:
    """Build the resolution of K at level bound n (requires dim K <= n)."""
    if n < 0:
        raise ParameterError(f"level bound must be >= 0, got {n}")
    if K.dim > n:
        raise ParameterError(
            f"level bound {n} is below the complex dimension {K.dim}"
        )
    bary = barycentric(K)
    elements = _product_elements(K, n)
    index = {lab: i for i, lab in enumerate(elements)}
    sets = {s: frozenset(s) for s in K.simplexes}

    # A hat simplex is a set of labels that is totally ordered under
    # "base contained in base AND level strictly below level".
    count = len(elements)
    above: list[list[int]] = [[] for _ in range(count)]
    for i, (s, j) in enumerate(elements):
        fs = sets[s]
        for k, (t, l) in enumerate(elements):
            if l > j and fs <= sets[t]:
                above[i].append(k)

    chains: list[tuple[int, ...]] = []
    stack: list[int] = []

    def extend(i: int):
        stack.append(i)
        chains.append(tuple(sorted(stack)))
        for k in above[i]:
            extend(k)
        stack.pop()

    for i in range(count):
        extend(i)

    hat = SimplicialComplex._from_closed(frozenset(chains))
    embed = SimplicialMap(
        bary.complex,
        hat,
        {i: index[(s, len(s) - 1)] for i, s in enumerate(bary.labels)},
        check=False,
    )
    project = SimplicialMap(
        hat,
        bary.complex,
        {i: bary.vertex_of(s) for i, (s, _) in enumerate(elements)},
        check=False,
    )
    return Resolution(
        base=K,
        n=n,
        bary=bary,
        labels=tuple(elements),
        hat=hat,
        embed=embed,
        project=project,
        label_index=index,
    )


def lift(f: SimplicialMap, n: int) -> SimplicialMap:
    """Lift a simplicial map to the resolutions: (s, j) goes to (f(s), j)."""
    if f.source.dim > n or f.target.dim > n:
        raise ParameterError(
            f"level bound {n} is below a complex dimension "
            f"({f.source.dim} or {f.target.dim})"
        )
    rs = resolve(f.source, n)
    rt = resolve(f.target, n)
    assignment = {
        i: rt.vertex_of((f.apply(s), j)) for i, (s, j) in enumerate(rs.labels)
    }
    return SimplicialMap(rs.hat, rt.hat, assignment, check=False)
