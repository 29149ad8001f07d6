"""Integer simplicial homology via Smith normal form.

This is the independent verification oracle: boundary matrices are built
with the orientation induced by sorted vertex order, reduced by exact
integer elimination (smallest-pivot-first, sparse), and reported as Betti
numbers plus invariant torsion factors per dimension.  Everything runs on
Python integers, so intermediate growth can never overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .cells import CellComplex, cell_dim
from .complexes import Poset, SimplicialComplex, order_complex
from .errors import BudgetExceeded


@dataclass(frozen=True)
class ChainBoundary:
    """The signed boundary matrix from k-simplexes to (k-1)-simplexes."""

    dimension: int
    rows: tuple  # (k-1)-simplexes in canonical order
    cols: tuple  # k-simplexes in canonical order
    columns: tuple  # per column: tuple of (row index, sign)

    def entry(self, i: int, j: int) -> int:
        for r, sign in self.columns[j]:
            if r == i:
                return sign
        return 0

    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.cols))


def boundary_matrices(K: SimplicialComplex) -> list[ChainBoundary]:
    """Boundary matrices for k = 1 .. dim K."""
    by_dim = K.by_dim()
    out = []
    for k in range(1, K.dim + 1):
        rows = by_dim.get(k - 1, ())
        cols = by_dim.get(k, ())
        row_index = {s: i for i, s in enumerate(rows)}
        columns = []
        for s in cols:
            col = []
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                col.append((row_index[face], (-1) ** i))
            columns.append(tuple(col))
        out.append(
            ChainBoundary(dimension=k, rows=rows, cols=cols, columns=tuple(columns))
        )
    return out


def boundary_compose_is_zero(b_low: ChainBoundary, b_high: ChainBoundary) -> bool:
    """Check that the composite boundary map vanishes."""
    for col in b_high.columns:
        acc: dict[int, int] = {}
        for mid, sign in col:
            for r, s2 in b_low.columns[mid]:
                acc[r] = acc.get(r, 0) + sign * s2
        if any(v != 0 for v in acc.values()):
            return False
    return True


def smith_invariants(n_rows: int, n_cols: int, entries) -> tuple[int, list[int]]:
    """Rank and invariant factors of an integer matrix.

    entries is an iterable of (row, col, value).  Exact elimination with a
    smallest-magnitude pivot rule; the returned factors form a divisibility
    chain with every factor >= 1.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for r, c, v in entries:
        if v == 0:
            continue
        rows.setdefault(r, {})[c] = rows.get(r, {}).get(c, 0) + v
        if rows[r][c] == 0:
            del rows[r][c]
        else:
            cols.setdefault(c, set()).add(r)

    def drop(r, c):
        del rows[r][c]
        cols[c].discard(r)
        if not rows[r]:
            del rows[r]
        if not cols[c]:
            del cols[c]

    def put(r, c, v):
        if v == 0:
            if c in rows.get(r, {}):
                drop(r, c)
            return
        rows.setdefault(r, {})[c] = v
        cols.setdefault(c, set()).add(r)

    def add_row(dst, src, factor):
        # row[dst] += factor * row[src]
        for c, v in list(rows.get(src, {}).items()):
            put(dst, c, rows.get(dst, {}).get(c, 0) + factor * v)

    def add_col(dst, src, factor):
        # col[dst] += factor * col[src]
        for r in list(cols.get(src, set())):
            v = rows[r][src]
            put(r, dst, rows.get(r, {}).get(dst, 0) + factor * v)

    diagonal: list[int] = []
    while rows:
        # pivot: smallest magnitude, then least fill, then position
        best = None
        for r, row in rows.items():
            for c, v in row.items():
                key = (abs(v), (len(row) - 1) * (len(cols[c]) - 1), r, c)
                if best is None or key < best[0]:
                    best = (key, r, c)
                    if key[0] == 1 and key[1] == 0:
                        break
            if best is not None and best[0][0] == 1 and best[0][1] == 0:
                break
        _, pr, pc = best

        while True:
            pv = rows[pr][pc]
            moved = False
            for r in list(cols.get(pc, set())):
                if r == pr:
                    continue
                v = rows[r][pc]
                q = v // pv
                add_row(r, pr, -q)
                if pc in rows.get(r, {}):
                    # non-zero remainder: smaller pivot found
                    pr = r
                    moved = True
                    break
            if moved:
                continue
            pv = rows[pr][pc]
            for c in list(rows.get(pr, {}).keys()):
                if c == pc:
                    continue
                v = rows[pr][c]
                q = v // pv
                add_col(c, pc, -q)
                if c in rows.get(pr, {}):
                    pc = c
                    moved = True
                    break
            if moved:
                continue
            break

        diagonal.append(abs(rows[pr][pc]))
        drop(pr, pc)

    # enforce the divisibility chain
    d = [x for x in diagonal if x != 0]
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i] != 0:
                    g = math.gcd(d[i], d[j])
                    lcm = d[i] // g * d[j]
                    d[i], d[j] = g, lcm
                    changed = True
    d.sort()
    return (len(d), d)


@dataclass(frozen=True)
class HomologyProfile:
    """Betti number and sorted torsion factors per dimension 0..dim."""

    groups: tuple  # tuple of (betti, (torsion factors...))

    @property
    def dim(self) -> int:
        return len(self.groups) - 1

    def betti(self, k: int) -> int:
        if 0 <= k < len(self.groups):
            return self.groups[k][0]
        return 0

    def torsion(self, k: int) -> tuple[int, ...]:
        if 0 <= k < len(self.groups):
            return self.groups[k][1]
        return ()

    def betti_vector(self) -> tuple[int, ...]:
        return tuple(b for b, _ in self.groups)

    def format_lines(self) -> list[str]:
        lines = []
        for k, (b, tor) in enumerate(self.groups):
            t = ",".join(str(x) for x in tor)
            lines.append(f"H_{k}: betti={b} torsion={t}")
        return lines


def point_profile(dim: int) -> HomologyProfile:
    """The homology of a point, padded with zeros up to the given dimension."""
    groups = [(1, ())] + [(0, ())] * dim
    return HomologyProfile(groups=tuple(groups))


@lru_cache(maxsize=512)
def homology(K: SimplicialComplex) -> HomologyProfile:
    """Integer homology profile of a complex (empty complex: no groups)."""
    if len(K) == 0:
        return HomologyProfile(groups=())
    by_dim = K.by_dim()
    f = [len(by_dim.get(k, ())) for k in range(K.dim + 1)]
    boundaries = boundary_matrices(K)

    ranks = [0] * (K.dim + 2)  # rank of the k-th boundary map
    torsions: dict[int, tuple[int, ...]] = {}
    for b in boundaries:
        entries = [
            (r, j, sign)
            for j, col in enumerate(b.columns)
            for r, sign in col
        ]
        rank, factors = smith_invariants(len(b.rows), len(b.cols), entries)
        ranks[b.dimension] = rank
        torsions[b.dimension - 1] = tuple(x for x in factors if x > 1)

    groups = []
    for k in range(K.dim + 1):
        betti = f[k] - ranks[k] - ranks[k + 1]
        groups.append((betti, torsions.get(k, ())))
    return HomologyProfile(groups=tuple(groups))


def cell_face_poset(cplx: CellComplex) -> Poset:
    """Face poset of a staircase cell complex (blockwise containment)."""
    cells = sorted(cplx.cells, key=lambda C: (cell_dim(C), C))
    blocks = {C: tuple(frozenset(A) for A in C) for C in cells}

    def leq(a, b):
        return all(x <= y for x, y in zip(blocks[a], blocks[b]))

    return Poset(cells, leq)


def cell_homology(cplx: CellComplex, budget_simplexes: int = 2_000_000) -> HomologyProfile:
    """Homology of a cell complex via its order-complex subdivision."""
    oc = order_complex(cell_face_poset(cplx))
    if len(oc) > budget_simplexes:
        raise BudgetExceeded(
            f"subdivision has {len(oc)} simplexes, budget {budget_simplexes}"
        )
    return homology(oc)


def cell_homology_q(m: int, n: int, budget_simplexes: int = 2_000_000) -> HomologyProfile:
    from .cells import enumerate_cells

    return cell_homology(enumerate_cells(m, n, "q"), budget_simplexes)
