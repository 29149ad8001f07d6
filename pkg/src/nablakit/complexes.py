"""Simplicial complexes, simplicial maps, finite posets and order complexes.

Vertices are non-negative integers.  A simplex is a strictly increasing
tuple of vertices; a complex stores its complete downward-closed simplex
set.  Order complexes relabel poset elements to integer vertices in a
fixed canonical order and keep the label table, so that derived complexes
(barycentric subdivisions, resolutions) stay traceable and reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import InputError, ParameterError

Simplex = tuple[int, ...]


def as_simplex(vertices) -> Simplex:
    """Validate and canonicalize one simplex (strictly increasing int tuple)."""
    s = tuple(vertices)
    if not s:
        raise InputError("a simplex must have at least one vertex")
    for v in s:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise InputError(f"vertex {v!r} is not a non-negative integer")
    if any(a >= b for a, b in zip(s, s[1:])):
        raise InputError(f"vertex list not strictly increasing: {list(s)}")
    return s


def simplex_key(s: Simplex):
    """Canonical sort key: dimension first, then lexicographic."""
    return (len(s), s)


class SimplicialComplex:
    """A finite abstract simplicial complex.

    The constructor closes its argument downward, so any iterable of valid
    simplexes produces a complex.  Instances are immutable and hashable;
    equality is equality of simplex sets.  The empty complex is allowed and
    has dimension -1.
    """

    def __init__(self, simplexes=()):
        closed: set[Simplex] = set()
        for s in simplexes:
            s = as_simplex(s)
            if s in closed:
                continue
            for k in range(1, len(s) + 1):
                closed.update(itertools.combinations(s, k))
        self._simplexes = frozenset(closed)
        self._sorted = None
        self._dim = None
        self._vertices = None

    @classmethod
    def _from_closed(cls, simplexes: frozenset) -> "SimplicialComplex":
        # fast path for internally built, already downward-closed sets
        obj = cls.__new__(cls)
        obj._simplexes = simplexes
        obj._sorted = None
        obj._dim = None
        obj._vertices = None
        return obj

    @property
    def simplexes(self) -> frozenset:
        return self._simplexes

    def sorted_simplexes(self) -> tuple[Simplex, ...]:
        if self._sorted is None:
            self._sorted = tuple(sorted(self._simplexes, key=simplex_key))
        return self._sorted

    def __iter__(self):
        return iter(self.sorted_simplexes())

    def __len__(self):
        return len(self._simplexes)

    def __contains__(self, s) -> bool:
        return tuple(s) in self._simplexes

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._simplexes == other._simplexes

    def __hash__(self):
        return hash(self._simplexes)

    def __repr__(self):
        return f"SimplicialComplex({len(self)} simplexes, dim {self.dim})"

    @property
    def dim(self) -> int:
        if self._dim is None:
            self._dim = max((len(s) for s in self._simplexes), default=0) - 1
        return self._dim

    @property
    def vertices(self) -> tuple[int, ...]:
        if self._vertices is None:
            self._vertices = tuple(sorted(v for (v,) in self.by_dim().get(0, ())))
        return self._vertices

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def by_dim(self) -> dict[int, tuple[Simplex, ...]]:
        out: dict[int, list[Simplex]] = {}
        for s in self.sorted_simplexes():
            out.setdefault(len(s) - 1, []).append(s)
        return {k: tuple(v) for k, v in out.items()}

    def f_vector(self) -> tuple[int, ...]:
        """Counts of k-simplexes for k = 0..dim."""
        by_dim = self.by_dim()
        return tuple(len(by_dim.get(k, ())) for k in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** (len(s) - 1) for s in self._simplexes)

    def skeleton(self, n: int) -> "SimplicialComplex":
        if n < -1:
            raise ParameterError(f"skeleton dimension must be >= -1, got {n}")
        return SimplicialComplex._from_closed(
            frozenset(s for s in self._simplexes if len(s) - 1 <= n)
        )

    def maximal_simplexes(self) -> tuple[Simplex, ...]:
        sets = {s: frozenset(s) for s in self._simplexes}
        maximal = []
        for s, fs in sets.items():
            if not any(fs < other for other in sets.values()):
                maximal.append(s)
        return tuple(sorted(maximal, key=simplex_key))

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return self._simplexes <= other._simplexes


def make_complex(generators) -> SimplicialComplex:
    """Downward closure of the given generator simplexes."""
    return SimplicialComplex(generators)


def skeleton(K: SimplicialComplex, n: int) -> SimplicialComplex:
    return K.skeleton(n)


class Poset:
    """A finite poset: a canonical element order plus a <= predicate.

    The element order fixes the vertex numbering of the order complex, so
    it is part of the data, not an implementation detail.
    """

    def __init__(self, elements, leq):
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise InputError("poset elements must be distinct")
        self._index = {e: i for i, e in enumerate(self.elements)}
        self._leq = leq
        self._above = None

    def __len__(self):
        return len(self.elements)

    def index(self, element) -> int:
        return self._index[element]

    def leq(self, a, b) -> bool:
        return bool(self._leq(a, b))

    def strict_above(self) -> tuple[tuple[int, ...], ...]:
        """For each element index, indices of strictly greater elements."""
        if self._above is None:
            els = self.elements
            n = len(els)
            above = []
            for i in range(n):
                row = tuple(
                    j for j in range(n) if j != i and self._leq(els[i], els[j])
                )
                above.append(row)
            self._above = tuple(above)
        return self._above

    def is_valid_order(self) -> bool:
        """Exhaustively check reflexivity, antisymmetry and transitivity."""
        els = self.elements
        for a in els:
            if not self._leq(a, a):
                return False
        for a in els:
            for b in els:
                if a != b and self._leq(a, b) and self._leq(b, a):
                    return False
        for a in els:
            for b in els:
                if not self._leq(a, b):
                    continue
                for c in els:
                    if self._leq(b, c) and not self._leq(a, c):
                        return False
        return True


def chain_poset(n: int) -> Poset:
    """The linearly ordered poset {0, ..., n}."""
    if n < 0:
        raise ParameterError(f"chain poset needs n >= 0, got {n}")
    return Poset(range(n + 1), lambda a, b: a <= b)


def product_poset(P: Poset, Q: Poset) -> Poset:
    """Componentwise order on pairs; element order is P-major, Q-minor."""
    elements = [(p, q) for p in P.elements for q in Q.elements]
    return Poset(
        elements,
        lambda a, b: P.leq(a[0], b[0]) and Q.leq(a[1], b[1]),
    )


def face_poset(K: SimplicialComplex) -> Poset:
    """All simplexes of K ordered by inclusion; canonical (dim, lex) order."""
    if len(K) == 0:
        raise InputError("the face poset of the empty complex is not defined")
    sets = {s: frozenset(s) for s in K.sorted_simplexes()}
    return Poset(K.sorted_simplexes(), lambda a, b: sets[a] <= sets[b])


def poset_chains(P: Poset) -> list[tuple[int, ...]]:
    """All non-empty chains of P, as sorted tuples of element indices."""
    above = P.strict_above()
    chains: list[tuple[int, ...]] = []
    stack: list[int] = []

    def extend(i: int):
        stack.append(i)
        chains.append(tuple(sorted(stack)))
        for j in above[i]:
            extend(j)
        stack.pop()

    for i in range(len(P)):
        extend(i)
    return chains


def order_complex(P: Poset) -> SimplicialComplex:
    """The complex of chains of P; vertex i is P.elements[i]."""
    return SimplicialComplex._from_closed(frozenset(poset_chains(P)))


@dataclass(frozen=True)
class Subdivision:
    """An order complex together with its vertex label table."""

    complex: SimplicialComplex
    labels: tuple  # vertex id -> original poset element
    index: dict = field(compare=False)  # original element -> vertex id

    def label_of(self, vertex: int):
        return self.labels[vertex]

    def vertex_of(self, label) -> int:
        return self.index[label]


@lru_cache(maxsize=256)
def barycentric(K: SimplicialComplex) -> Subdivision:
    """Barycentric subdivision: order complex of the face poset of K."""
    P = face_poset(K)
    return Subdivision(
        complex=order_complex(P),
        labels=P.elements,
        index={e: i for i, e in enumerate(P.elements)},
    )


@dataclass(frozen=True)
class MonotoneMap:
    """An order-preserving map between finite posets."""

    source: Poset
    target: Poset
    assignment: dict

    def __post_init__(self):
        for e in self.source.elements:
            if e not in self.assignment:
                raise InputError(f"assignment not total: missing {e!r}")
            if self.assignment[e] not in self.target._index:
                raise InputError(f"image {self.assignment[e]!r} not in target")
        for a in self.source.elements:
            for b in self.source.elements:
                if self.source.leq(a, b) and not self.target.leq(
                    self.assignment[a], self.assignment[b]
                ):
                    raise InputError(f"map is not monotone on {a!r} <= {b!r}")

    def apply(self, element):
        return self.assignment[element]


def dim_map(K: SimplicialComplex) -> MonotoneMap:
    """The monotone map sending each simplex of K to its dimension."""
    P = face_poset(K)
    return MonotoneMap(
        source=P,
        target=chain_poset(K.dim),
        assignment={s: len(s) - 1 for s in P.elements},
    )


class SimplicialMap:
    """A vertex assignment carrying every simplex of the source into the target."""

    def __init__(self, source: SimplicialComplex, target: SimplicialComplex,
                 assignment: dict[int, int], *, check: bool = True):
        self.source = source
        self.target = target
        self.assignment = dict(assignment)
        if check:
            self.validate()

    def validate(self):
        for v in self.source.vertices:
            if v not in self.assignment:
                raise InputError(f"assignment not total: missing vertex {v}")
        for s in self.source.simplexes:
            if self.apply(s) not in self.target:
                raise InputError(
                    f"image of simplex {list(s)} is not a simplex of the target"
                )

    def apply(self, s: Simplex) -> Simplex:
        return tuple(sorted({self.assignment[v] for v in s}))

    def __call__(self, s: Simplex) -> Simplex:
        return self.apply(s)

    def compose(self, other: "SimplicialMap") -> "SimplicialMap":
        """self after other (source of self must be target of other)."""
        if other.target != self.source:
            raise InputError("composition mismatch: target != source")
        assignment = {
            v: self.assignment[other.assignment[v]] for v in other.source.vertices
        }
        return SimplicialMap(other.source, self.target, assignment, check=False)

    def restrict(self, sub: SimplicialComplex) -> "SimplicialMap":
        if not sub.is_subcomplex_of(self.source):
            raise InputError("restriction domain is not a subcomplex of the source")
        assignment = {v: self.assignment[v] for v in sub.vertices}
        return SimplicialMap(sub, self.target, assignment, check=False)

    def __eq__(self, other):
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and all(
                self.assignment[v] == other.assignment[v]
                for v in self.source.vertices
            )
        )

    def __hash__(self):
        return hash(
            (
                self.source,
                self.target,
                tuple(sorted((v, self.assignment[v]) for v in self.source.vertices)),
            )
        )

    def __repr__(self):
        return f"SimplicialMap({len(self.source)} -> {len(self.target)} simplexes)"


def identity_map(K: SimplicialComplex) -> SimplicialMap:
    return SimplicialMap(K, K, {v: v for v in K.vertices}, check=False)


def is_nondegenerate(f: SimplicialMap) -> bool:
    """True iff f preserves the dimension of every simplex of its source."""
    return all(len(f.apply(s)) == len(s) for s in f.source.simplexes)


def image_subcomplex(f: SimplicialMap) -> SimplicialComplex:
    """Smallest subcomplex of the target containing every image simplex."""
    return SimplicialComplex._from_closed(
        frozenset(f.apply(s) for s in f.source.simplexes)
    )


def induced_bary_map(f: SimplicialMap) -> SimplicialMap:
    """The map of barycentric subdivisions sending vertex "s" to vertex "f(s)"."""
    bs = barycentric(f.source)
    bt = barycentric(f.target)
    assignment = {
        i: bt.vertex_of(f.apply(s)) for i, s in enumerate(bs.labels)
    }
    return SimplicialMap(bs.complex, bt.complex, assignment, check=False)
