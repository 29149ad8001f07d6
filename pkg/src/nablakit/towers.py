"""Finite truncations of inverse sequences of simplicial maps.

A tower is a list of complexes K_0, ..., K_N with bonding maps
p_i: K_{i+1} -> K_i.  All semantics here are finite-stage: surjectivization
shrinks levels to iterated images, family checkers test the two
containment disciplines per bond, and resolve_tower rewrites every bond
into a non-degenerate one by lifting the whole tower to resolutions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import (
    SimplicialComplex,
    SimplicialMap,
    identity_map,
    image_subcomplex,
    induced_bary_map,
    make_complex,
    simplex_key,
)
from .errors import InputError, ParameterError
from .resolution import lift, resolve


@dataclass(frozen=True)
class Tower:
    """Levels K_0..K_N and bonds p_i: K_{i+1} -> K_i."""

    levels: tuple[SimplicialComplex, ...]
    bonds: tuple[SimplicialMap, ...]

    def __post_init__(self):
        if len(self.bonds) != max(len(self.levels) - 1, 0):
            raise InputError(
                f"{len(self.levels)} levels need {len(self.levels) - 1} bonds, "
                f"got {len(self.bonds)}"
            )
        for i, p in enumerate(self.bonds):
            if p.source != self.levels[i + 1] or p.target != self.levels[i]:
                raise InputError(f"bond {i} does not map level {i + 1} to level {i}")

    def __len__(self):
        return len(self.levels)


@dataclass(frozen=True)
class SubcomplexFamily:
    """One subcomplex per tower level."""

    members: tuple[SimplicialComplex, ...]

    def matches(self, T: Tower) -> bool:
        return len(self.members) == len(T.levels) and all(
            L.is_subcomplex_of(K) for L, K in zip(self.members, T.levels)
        )


def surjectivize(T: Tower) -> Tower:
    """Shrink each level to the iterated image so every bond is onto."""
    if len(T.levels) == 0:
        return T
    levels = [None] * len(T.levels)
    levels[-1] = T.levels[-1]
    bonds: list[SimplicialMap] = [None] * len(T.bonds)
    for i in range(len(T.levels) - 2, -1, -1):
        restricted = T.bonds[i].restrict(levels[i + 1])
        levels[i] = image_subcomplex(restricted)
        bonds[i] = SimplicialMap(
            levels[i + 1], levels[i], restricted.assignment, check=False
        )
    return Tower(levels=tuple(levels), bonds=tuple(bonds))


def trace_simplex(T: Tower, level: int, s) -> list:
    """Images of a simplex down the tower, from the level just below to 0."""
    s = tuple(s)
    if not (0 <= level < len(T.levels)):
        raise InputError(f"no level {level} in a tower of {len(T.levels)} levels")
    if s not in T.levels[level]:
        raise InputError(f"simplex {list(s)} is not in level {level}")
    out = []
    current = s
    for i in range(level - 1, -1, -1):
        current = T.bonds[i].apply(current)
        out.append(current)
    return out


def skeleton_tower(T: Tower, n: int) -> Tower:
    """Levelwise n-skeletons; bonds restrict since they never raise dimension."""
    levels = tuple(K.skeleton(n) for K in T.levels)
    bonds = tuple(
        SimplicialMap(
            levels[i + 1],
            levels[i],
            {v: p.assignment[v] for v in levels[i + 1].vertices},
            check=False,
        )
        for i, p in enumerate(T.bonds)
    )
    return Tower(levels=levels, bonds=bonds)


def bond_preimage(p: SimplicialMap, L: SimplicialComplex) -> SimplicialComplex:
    """The subcomplex of the bond's source whose simplexes map into L."""
    return SimplicialComplex._from_closed(
        frozenset(s for s in p.source.simplexes if p.apply(s) in L)
    )


@dataclass(frozen=True)
class FamilyReport:
    ok: bool
    mode: str
    level: int | None  # index of the violating bond's source level
    simplex: tuple | None

    def describe(self) -> str:
        if self.ok:
            return f"{self.mode}: ok"
        return (
            f"{self.mode}: violated at level {self.level} "
            f"by simplex {list(self.simplex)}"
        )


def check_family(T: Tower, F: SubcomplexFamily, mode: str) -> FamilyReport:
    """Check the per-bond containment discipline of a subcomplex family.

    mode "lfd": every simplex of L_{i+1} maps into L_i.
    mode "decomposable": every simplex mapping into L_i lies in L_{i+1}.
    Reports the first violation by (level, lexicographically least simplex).
    """
    if mode not in ("lfd", "decomposable"):
        raise ParameterError(f"unknown mode {mode!r}")
    if not F.matches(T):
        raise InputError("family does not match the tower levelwise")
    for i, p in enumerate(T.bonds):
        pre = bond_preimage(p, F.members[i])
        upper = F.members[i + 1]
        if mode == "lfd":
            bad = upper.simplexes - pre.simplexes
        else:
            bad = pre.simplexes - upper.simplexes
        if bad:
            worst = min(bad, key=simplex_key)
            return FamilyReport(ok=False, mode=mode, level=i + 1, simplex=worst)
    return FamilyReport(ok=True, mode=mode, level=None, simplex=None)


def resolve_tower(T: Tower, n: int) -> Tower:
    """Lift every level and bond to the resolutions at level bound n."""
    for K in T.levels:
        if K.dim > n:
            raise ParameterError(
                f"level bound {n} is below a level dimension {K.dim}"
            )
    levels = tuple(resolve(K, n).hat for K in T.levels)
    bonds = tuple(lift(p, n) for p in T.bonds)
    return Tower(levels=levels, bonds=bonds)


def bary_tower(T: Tower) -> Tower:
    """The tower of barycentric subdivisions with the induced bonds."""
    from .complexes import barycentric

    levels = tuple(barycentric(K).complex for K in T.levels)
    bonds = tuple(induced_bary_map(p) for p in T.bonds)
    return Tower(levels=levels, bonds=bonds)


# ---------------------------------------------------------------------------
# surjection factorization


def factor_surjection(values) -> list[tuple[int, ...]]:
    """Factor a surjection {0..a} -> {0..b} into single-merge surjections.

    The input lists the image of each point.  Each factor merges exactly
    one pair of points (the lexicographically least colliding pair at that
    step), and the factors compose, first listed first applied, to the
    input map.  The leftover relabeling after the last merge is folded into
    the final factor; a non-identity bijection (nothing to merge) is
    returned as a single factor.
    """
    s = tuple(values)
    if not s:
        raise InputError("empty map")
    b = max(s)
    if set(s) != set(range(b + 1)):
        raise InputError(f"map {list(s)} is not surjective onto 0..{b}")
    factors: list[tuple[int, ...]] = []
    current = s
    while len(current) > b + 1:
        pair = None
        for i in range(len(current)):
            for j in range(i + 1, len(current)):
                if current[i] == current[j]:
                    pair = (i, j)
                    break
            if pair:
                break
        i, j = pair
        step = tuple(
            x if x < j else (i if x == j else x - 1) for x in range(len(current))
        )
        factors.append(step)
        current = current[:j] + current[j + 1:]
    if current != tuple(range(b + 1)):
        # current is a non-identity bijection of {0..b}
        if factors:
            factors[-1] = tuple(current[v] for v in factors[-1])
        else:
            factors.append(current)
    return factors


def compose_surjections(factors, size: int) -> tuple[int, ...]:
    """Apply the factors in order to the identity on {0..size-1}."""
    values = list(range(size))
    for f in factors:
        values = [f[v] for v in values]
    return tuple(values)


# ---------------------------------------------------------------------------
# named example towers


def path_complex(edges: int, offset: int = 0) -> SimplicialComplex:
    if edges < 0:
        raise ParameterError("a path needs >= 0 edges")
    if edges == 0:
        return make_complex([[offset]])
    return make_complex([[offset + i, offset + i + 1] for i in range(edges)])


def cycle_complex(length: int) -> SimplicialComplex:
    if length < 3:
        raise ParameterError("a cycle needs length >= 3")
    gens = [[i, i + 1] for i in range(length - 1)] + [[0, length - 1]]
    return make_complex(gens)


def simplex_closure(dim: int, offset: int = 0) -> SimplicialComplex:
    return make_complex([list(range(offset, offset + dim + 1))])


def simplex_boundary(dim: int, offset: int = 0) -> SimplicialComplex:
    verts = list(range(offset, offset + dim + 2))
    gens = [verts[:i] + verts[i + 1:] for i in range(len(verts))]
    return make_complex(gens)


def wedge_of_spheres(count: int, sphere_dim: int) -> SimplicialComplex:
    """count boundary spheres sharing the vertex 0."""
    gens = []
    for s in range(count):
        base = s * (sphere_dim + 1)
        verts = [0] + [base + 1 + t for t in range(sphere_dim + 1)]
        gens.extend(
            sorted(verts[:i] + verts[i + 1:]) for i in range(len(verts))
        )
    return make_complex(gens)


def example_tower(name: str, size: int, **params) -> Tower:
    """Finite truncations of the named inverse sequences."""
    if size < 1:
        raise InputError(f"size must be >= 1, got {size}")
    builders = {
        "sine_curve": _sine_curve,
        "nested_intervals": _nested_intervals,
        "hawaiian": _hawaiian,
        "solenoid": _solenoid,
        "comb_flea": _comb_flea,
        "null_sequence": _null_sequence,
    }
    if name not in builders:
        raise InputError(
            f"unknown tower {name!r}; known: {', '.join(sorted(builders))}"
        )
    return builders[name](size, **params)


def _sine_curve(size: int) -> Tower:
    # arcs with t segments; the bond folds the last segment back onto the
    # previous one, a non-degenerate retraction
    levels = [path_complex(t) for t in range(1, size + 1)]
    bonds = []
    for t in range(1, size):
        src, dst = levels[t], levels[t - 1]
        assignment = {v: v for v in range(t + 1)}
        assignment[t + 1] = t - 1
        bonds.append(SimplicialMap(src, dst, assignment))
    return Tower(levels=tuple(levels), bonds=tuple(bonds))


def _nested_intervals(size: int) -> Tower:
    # paths with t edges; the bond collapses the leftmost edge onto its
    # right endpoint, so every bond is degenerate
    levels = [path_complex(t) for t in range(1, size + 1)]
    bonds = []
    for t in range(1, size):
        src, dst = levels[t], levels[t - 1]
        assignment = {0: 0}
        assignment.update({v: v - 1 for v in range(1, t + 2)})
        bonds.append(SimplicialMap(src, dst, assignment))
    return Tower(levels=tuple(levels), bonds=tuple(bonds))


def _hawaiian(size: int, sphere_dim: int = 1) -> Tower:
    # growing wedges of spheres; the bond crushes the newest sphere to the
    # wedge point
    if sphere_dim < 1:
        raise InputError("sphere dimension must be >= 1")
    levels = [wedge_of_spheres(t, sphere_dim) for t in range(1, size + 1)]
    bonds = []
    for t in range(1, size):
        src, dst = levels[t], levels[t - 1]
        assignment = {v: v for v in dst.vertices}
        for v in src.vertices:
            if v not in assignment:
                assignment[v] = 0
        bonds.append(SimplicialMap(src, dst, assignment))
    return Tower(levels=tuple(levels), bonds=tuple(bonds))


def _solenoid(size: int, p: int = 2, base_length: int = 3) -> Tower:
    # cycles of length base * p^t with degree-p covering bonds
    if p < 2:
        raise InputError("covering degree p must be >= 2")
    if base_length < 3:
        raise InputError("base cycle length must be >= 3")
    lengths = [base_length * p**t for t in range(size)]
    levels = [cycle_complex(n) for n in lengths]
    bonds = []
    for t in range(1, size):
        src, dst = levels[t], levels[t - 1]
        modulus = lengths[t - 1]
        assignment = {v: v % modulus for v in src.vertices}
        bonds.append(SimplicialMap(src, dst, assignment))
    return Tower(levels=tuple(levels), bonds=tuple(bonds))


def _comb_flea(size: int) -> Tower:
    # a base path with one tooth per base vertex 1..size; at stage t the
    # teeth above t..size share a single glued tip, and the bond glues one
    # more tip, never collapsing an edge
    base = list(range(size + 1))  # base vertices 0..size

    def level(t: int) -> SimplicialComplex:
        # free tips for teeth 1..t-1 are vertices size+1..size+t-1;
        # the glued tip is vertex size+t
        gens = [[i, i + 1] for i in range(size)]
        for tooth in range(1, size + 1):
            tip = size + min(tooth, t)
            gens.append(sorted([tooth, tip]))
        return make_complex(gens)

    levels = [level(t) for t in range(1, size + 1)]
    bonds = []
    for t in range(1, size):
        src, dst = levels[t], levels[t - 1]  # stage t+1 -> stage t
        glued_src = size + t + 1
        glued_dst = size + t
        assignment = {v: v for v in base}
        for tooth_tip in range(size + 1, size + t + 1):
            assignment[tooth_tip] = min(tooth_tip, glued_dst)
        assignment[glued_src] = glued_dst
        bonds.append(SimplicialMap(src, dst, assignment))
    return Tower(levels=tuple(levels), bonds=tuple(bonds))


def _null_sequence(size: int) -> Tower:
    # disjoint union of a point and simplexes of dimensions 1..t; the bond
    # crushes the top-dimensional simplex onto the point
    def level(t: int) -> SimplicialComplex:
        gens = [[0]]
        offset = 1
        for d in range(t, 0, -1):
            gens.append(list(range(offset, offset + d + 1)))
            offset += d + 1
        return make_complex(gens)

    def vertex_blocks(t: int):
        # block of vertex ids per component: point, then dims t..1
        blocks = [(0,)]
        offset = 1
        for d in range(t, 0, -1):
            blocks.append(tuple(range(offset, offset + d + 1)))
            offset += d + 1
        return blocks

    levels = [level(t) for t in range(1, size + 1)]
    bonds = []
    for t in range(1, size):
        src, dst = levels[t], levels[t - 1]
        src_blocks = vertex_blocks(t + 1)
        dst_blocks = vertex_blocks(t)
        assignment = {0: 0}
        for v in src_blocks[1]:  # top simplex goes to the point
            assignment[v] = 0
        for sb, db in zip(src_blocks[2:], dst_blocks[1:]):
            for sv, dv in zip(sb, db):
                assignment[sv] = dv
        bonds.append(SimplicialMap(src, dst, assignment))
    return Tower(levels=tuple(levels), bonds=tuple(bonds))
