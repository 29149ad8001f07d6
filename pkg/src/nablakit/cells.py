"""Cells of the level staircase over a base simplex.

A cell is a tuple (A_0, ..., A_m) of non-empty sorted subsets of the level
range [0, n].  Under the weak separation max(A_i) <= min(A_{i+1}) these
tuples form the "r" complex, a cell decomposition of a simplex; the cells
with strict separation max(A_i) < min(A_{i+1}) form the "q" subcomplex,
which indexes exactly the resolution simplexes sitting over one base
simplex.  The classification by the first block that deviates from the
singleton flag ({0}, ..., {m}) drives every collapse certificate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import BudgetExceeded, InputError, ParameterError

Cell = tuple[tuple[int, ...], ...]

MAX_LEVEL = 62  # level sets fit comfortably in machine words
DEFAULT_CELL_BUDGET = 500_000


def cell_dim(C: Cell) -> int:
    return sum(len(A) for A in C) - len(C)


def factor_vector(C: Cell) -> tuple[int, ...]:
    """Dimensions (|A_i| - 1) of the product factors of the cell."""
    return tuple(len(A) - 1 for A in C)


def validate_cell(C: Cell, n: int | None = None, strict: bool | None = None) -> Cell:
    C = tuple(tuple(A) for A in C)
    if not C:
        raise InputError("a cell needs at least one block")
    for A in C:
        if not A:
            raise InputError("cell blocks must be non-empty")
        if any(a >= b for a, b in zip(A, A[1:])):
            raise InputError(f"block not strictly increasing: {list(A)}")
        if A[0] < 0:
            raise InputError("levels must be non-negative")
        if n is not None and A[-1] > n:
            raise InputError(f"level {A[-1]} exceeds the range [0, {n}]")
    for A, B in zip(C, C[1:]):
        if strict and A[-1] >= B[0]:
            raise InputError(f"blocks not strictly separated: {C}")
        if strict is False and A[-1] > B[0]:
            raise InputError(f"blocks not weakly separated: {C}")
    return C


def is_q_cell(C: Cell) -> bool:
    return all(A[-1] < B[0] for A, B in zip(C, C[1:]))


@dataclass(frozen=True)
class CellComplex:
    """All cells of one flavor over a base of dimension m with levels [0, n]."""

    m: int
    n: int
    flavor: str  # "r" or "q"
    cells: tuple[Cell, ...]  # lexicographically sorted

    def __post_init__(self):
        object.__setattr__(self, "_cell_set", frozenset(self.cells))

    def __contains__(self, C) -> bool:
        return tuple(tuple(A) for A in C) in self._cell_set

    def __len__(self):
        return len(self.cells)

    def cell_set(self) -> frozenset:
        return self._cell_set

    def by_dim(self) -> dict[int, tuple[Cell, ...]]:
        out: dict[int, list[Cell]] = {}
        for C in self.cells:
            out.setdefault(cell_dim(C), []).append(C)
        return {k: tuple(v) for k, v in out.items()}

    def euler_characteristic(self) -> int:
        return sum((-1) ** cell_dim(C) for C in self.cells)


def enumerate_cells(m: int, n: int, flavor: str = "q",
                    budget_cells: int | None = None) -> CellComplex:
    """Enumerate the full face-closed cell set, in lexicographic order."""
    if flavor not in ("r", "q"):
        raise ParameterError(f"flavor must be 'r' or 'q', got {flavor!r}")
    if m < 0 or n < 0:
        raise ParameterError("m and n must be non-negative")
    if n > MAX_LEVEL:
        raise ParameterError(f"level range too large: n = {n} > {MAX_LEVEL}")
    if flavor == "q" and m > n:
        raise ParameterError(f"no strict cells exist for m = {m} > n = {n}")
    budget = DEFAULT_CELL_BUDGET if budget_cells is None else budget_cells
    strict = flavor == "q"
    cells = list(_cells_cached(m, n, strict))
    if len(cells) > budget:
        raise BudgetExceeded(
            f"{len(cells)} cells exceed the budget of {budget}"
        )
    return CellComplex(m=m, n=n, flavor=flavor, cells=tuple(cells))


@lru_cache(maxsize=128)
def _cells_cached(m: int, n: int, strict: bool) -> tuple[Cell, ...]:
    out: list[Cell] = []
    prefix: list[tuple[int, ...]] = []

    def blocks_from(lo: int, remaining: int):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for size in range(1, n + 2 - lo):
            for A in itertools.combinations(range(lo, n + 1), size):
                # leave room for the remaining blocks
                nxt = A[-1] + 1 if strict else A[-1]
                if n + 1 - nxt < (remaining - 1) * (1 if strict else 0):
                    continue
                prefix.append(A)
                blocks_from(nxt, remaining - 1)
                prefix.pop()

    blocks_from(0, m + 1)
    out.sort()
    return tuple(out)


def cell_faces(C: Cell) -> list[Cell]:
    """All proper faces: non-empty B_i <= A_i blockwise, excluding C."""
    C = tuple(tuple(A) for A in C)
    choices = []
    for A in C:
        subs = [
            tuple(B)
            for k in range(1, len(A) + 1)
            for B in itertools.combinations(A, k)
        ]
        choices.append(subs)
    return [D for D in map(tuple, itertools.product(*choices)) if D != C]


def cell_facets(C: Cell) -> list[Cell]:
    """Codimension-one faces: drop one element from one block of size >= 2."""
    out = []
    for i, A in enumerate(C):
        if len(A) < 2:
            continue
        for j in range(len(A)):
            out.append(C[:i] + (A[:j] + A[j + 1:],) + C[i + 1:])
    return out


@dataclass(frozen=True)
class CellClass:
    lam: int
    kind: str  # "terminal" | "excessive" | "deficient"
    partner: Cell | None


def classify_cell(C: Cell) -> CellClass:
    """Classify a strict cell by its first non-flag block.

    lam is the largest number with A_i = {i} for every i < lam.  A cell is
    terminal when lam = m + 1 (the unique 0-cell ({0}, ..., {m})),
    excessive when lam is in A_lam (partner removes it, one dimension
    down), and deficient otherwise (partner inserts it, one dimension up).
    """
    C = validate_cell(C, strict=True)
    m = len(C) - 1
    lam = m + 1
    for i, A in enumerate(C):
        if A != (i,):
            lam = i
            break
    if lam == m + 1:
        return CellClass(lam=lam, kind="terminal", partner=None)
    A = C[lam]
    if lam in A:
        partner = C[:lam] + (tuple(x for x in A if x != lam),) + C[lam + 1:]
        return CellClass(lam=lam, kind="excessive", partner=partner)
    partner = C[:lam] + (tuple(sorted(A + (lam,))),) + C[lam + 1:]
    return CellClass(lam=lam, kind="deficient", partner=partner)


def pivot_block(C: Cell, d: tuple[int, ...]) -> int | None:
    """First block where toggling the target level d_j keeps a valid cell.

    d must be strictly increasing (the levels of the embedded copy of the
    base chain).  Returns None exactly when C is the cell of the embedded
    chain, i.e. every block equals the singleton (d_j,).
    """
    m = len(C) - 1
    for j in range(m + 1):
        A = C[j]
        t = d[j]
        if A == (t,):
            continue
        lo = C[j - 1][-1] if j > 0 else -1
        if lo >= t:
            continue
        if j < m and C[j + 1][0] <= t:
            continue
        return j
    return None


def toggle_pivot(C: Cell, d: tuple[int, ...], j: int) -> Cell:
    A = C[j]
    t = d[j]
    if t in A:
        B = tuple(x for x in A if x != t)
    else:
        B = tuple(sorted(A + (t,)))
    return C[:j] + (B,) + C[j + 1:]


def embedded_cell(d: tuple[int, ...]) -> Cell:
    return tuple((t,) for t in d)


def cell_to_simplex(C: Cell, sigma_chain) -> tuple:
    """The simplex over a base chain indexed by this cell.

    sigma_chain is the chain of base simplexes (v_0 < ... < v_m); the
    result lists the pairs (v_i, level) for every level in block A_i,
    sorted by (level, base).  The cell lies in the strict flavor exactly
    when the result has pairwise distinct levels.
    """
    chain = tuple(tuple(s) for s in sigma_chain)
    C = validate_cell(C)
    if len(chain) != len(C):
        raise InputError(
            f"cell has {len(C)} blocks but the chain has {len(chain)} simplexes"
        )
    verts = [(j, chain[i]) for i, A in enumerate(C) for j in A]
    verts.sort()
    return tuple((base, level) for level, base in verts)
