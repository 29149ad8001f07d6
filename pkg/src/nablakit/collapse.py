"""Ordered elementary-collapse certificates and their replay validator.

Certificates come in two flavors: cell sequences on the staircase complexes
(collapse_q) and simplicial sequences on a resolution (collapse_hat).  Both
are plain ordered lists of (free face, cofacet) pairs; validate_sequence
replays a list step by step against the start complex and accepts only if
every free face is free at its turn and the remaining complex equals the
declared finish exactly.

The matching behind collapse_hat pairs each non-embedded cell with the
toggle of the first block whose target level fits between the neighbor
blocks.  Over a base chain whose dimensions form the initial flag
(0, 1, ..., m) this reduces to the terminal-rooted matching of collapse_q;
over general chains it is rooted at the embedded cell instead, which is
what makes the global certificate finish at the section image.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache

from .cells import (
    Cell,
    cell_dim,
    cell_facets,
    cell_to_simplex,
    classify_cell,
    embedded_cell,
    enumerate_cells,
    pivot_block,
    toggle_pivot,
    _cells_cached,
)
from .complexes import SimplicialComplex, simplex_key
from .errors import InputError, InternalError, ParameterError
from .resolution import Resolution, resolve


@dataclass(frozen=True)
class CollapseStep:
    free_face: tuple
    cofacet: tuple


@dataclass(frozen=True)
class CollapseSequence:
    """An ordered elementary-collapse certificate.

    kind is "cells" (items are staircase cells) or "labels" (items are
    resolution simplexes as tuples of (base simplex, level) pairs).
    """

    kind: str
    start: str
    finish: str
    steps: tuple[CollapseStep, ...]

    def __len__(self):
        return len(self.steps)


def tuple_facets(s: tuple) -> list[tuple]:
    """Codimension-one faces of a simplex given as a sorted tuple."""
    if len(s) < 2:
        return []
    return [s[:i] + s[i + 1:] for i in range(len(s))]


def tuple_dim(s: tuple) -> int:
    return len(s) - 1


def facets_for(kind: str):
    if kind == "cells":
        return cell_facets, cell_dim
    if kind == "labels" or kind == "simplexes":
        return tuple_facets, tuple_dim
    raise ParameterError(f"unknown certificate kind {kind!r}")


# ---------------------------------------------------------------------------
# replay validation


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    steps_checked: int
    failure_index: int | None
    reason: str | None
    euler_series: tuple[int, ...]
    finish: frozenset
    finish_matches: bool | None

    def first_counterexample(self) -> str | None:
        if self.ok:
            return None
        if self.failure_index is None:
            return self.reason
        return f"step {self.failure_index}: {self.reason}"


def validate_sequence(start_items, steps, facets_of, dim_of,
                      finish_items=None) -> ValidationReport:
    """Replay a collapse sequence; report the first violated step, if any."""
    active = set(start_items)
    cof_count: dict = {}
    for item in active:
        for f in facets_of(item):
            cof_count[f] = cof_count.get(f, 0) + 1

    euler = sum((-1) ** dim_of(item) for item in active)
    series = [euler]

    def fail(i, reason):
        return ValidationReport(
            ok=False, steps_checked=i, failure_index=i, reason=reason,
            euler_series=tuple(series), finish=frozenset(active),
            finish_matches=None,
        )

    for i, step in enumerate(steps):
        tau, sigma = step.free_face, step.cofacet
        if tau not in active:
            return fail(i, f"free face {tau!r} is not in the current complex")
        if sigma not in active:
            return fail(i, f"cofacet {sigma!r} is not in the current complex")
        if tau not in facets_of(sigma):
            return fail(i, f"{tau!r} is not a facet of {sigma!r}")
        if cof_count.get(tau, 0) != 1:
            return fail(
                i,
                f"free face {tau!r} has {cof_count.get(tau, 0)} remaining "
                f"cofacets, expected exactly 1",
            )
        active.discard(tau)
        active.discard(sigma)
        for item in (tau, sigma):
            for f in facets_of(item):
                cof_count[f] -= 1
        euler -= (-1) ** dim_of(tau) + (-1) ** dim_of(sigma)
        series.append(euler)
        if euler != series[0]:
            return fail(i, "Euler characteristic changed during replay")

    finish = frozenset(active)
    matches = None if finish_items is None else finish == frozenset(finish_items)
    ok = matches if matches is not None else True
    reason = None
    if matches is False:
        missing = frozenset(finish_items) - finish
        extra = finish - frozenset(finish_items)
        reason = (
            f"finish mismatch: {len(extra)} unexpected and "
            f"{len(missing)} missing items"
        )
    return ValidationReport(
        ok=bool(ok), steps_checked=len(tuple(steps)), failure_index=None,
        reason=reason, euler_series=tuple(series), finish=finish,
        finish_matches=matches,
    )


def replay(seq: CollapseSequence, start_items, finish_items=None) -> ValidationReport:
    facets_of, dim_of = facets_for(seq.kind)
    return validate_sequence(start_items, seq.steps, facets_of, dim_of,
                             finish_items=finish_items)


# ---------------------------------------------------------------------------
# collapse of the staircase complexes


def q_finish_cells(m: int, floor: int) -> frozenset:
    """Cell set of the strict staircase complex at level bound floor."""
    return frozenset(_cells_cached(m, floor, True))


def collapse_q(m: int, n: int, floor: int) -> CollapseSequence:
    """Collapse the strict staircase complex down to level bound floor.

    With floor = m the sequence ends at the terminal cell ({0}, ..., {m});
    in general it ends at exactly the cells whose levels stay within
    [0, floor].  Ordering: levels from n down to floor + 1; within a level,
    cofacet dimension descending, then lam ascending, then lexicographic.
    """
    if m < 0 or not (m <= floor <= n):
        raise ParameterError(
            f"need 0 <= m <= floor <= n, got m={m}, floor={floor}, n={n}"
        )
    cells = enumerate_cells(m, n, "q").cells
    keyed = []
    for C in cells:
        cls = classify_cell(C)
        if cls.kind != "excessive":
            continue
        top_level = C[-1][-1]
        if top_level <= floor:
            continue
        keyed.append(((-top_level, -cell_dim(C), cls.lam, C), cls.partner, C))
    keyed.sort(key=lambda t: t[0])
    steps = tuple(CollapseStep(free_face=p, cofacet=c) for _, p, c in keyed)
    return CollapseSequence(
        kind="cells",
        start=f"Q(m={m},n={n})",
        finish=f"Q(m={m},n={floor})",
        steps=steps,
    )


# ---------------------------------------------------------------------------
# collapse of a resolution onto its section image


def _slice_pairs(m: int, n: int, d: tuple[int, ...]) -> list[tuple[Cell, Cell]]:
    """The matching on strict cells rooted at the embedded cell of d."""
    pairs = []
    e_cell = embedded_cell(d)
    for C in _cells_cached(m, n, True):
        j = pivot_block(C, d)
        if j is None:
            if C != e_cell:
                raise InternalError(f"unmatched non-embedded cell {C!r}")
            continue
        if d[j] not in C[j]:
            pairs.append((C, toggle_pivot(C, d, j)))
    return pairs


def _schedule_pairs(cells, pairs) -> list[tuple[Cell, Cell]]:
    """Order matched pairs so each free face is free at its turn."""
    if not pairs:
        return []
    up_of = dict(pairs)
    active = set(cells)
    count = {down: 0 for down in up_of}
    for C in cells:
        for f in cell_facets(C):
            if f in count:
                count[f] += 1

    heap = []
    for down, up in pairs:
        if count[down] == 1:
            heapq.heappush(heap, ((-cell_dim(up), up), down))
    out = []
    while heap:
        (_, down) = heapq.heappop(heap)
        if down not in active:
            continue
        up = up_of[down]
        if count[down] != 1 or up not in active:
            raise InternalError("scheduling invariant violated")
        out.append((down, up))
        active.discard(down)
        active.discard(up)
        for item in (up, down):
            for f in cell_facets(item):
                if f in count and f in active:
                    count[f] -= 1
                    if count[f] == 1:
                        heapq.heappush(
                            heap, ((-cell_dim(up_of[f]), up_of[f]), f)
                        )
    if len(out) != len(pairs):
        raise InternalError(
            f"scheduled {len(out)} of {len(pairs)} pairs; matching is cyclic"
        )
    return out


@lru_cache(maxsize=4096)
def _scheduled_slice(m: int, n: int, d: tuple[int, ...],
                     top_level_only: bool) -> tuple[tuple[Cell, Cell], ...]:
    cells = _cells_cached(m, n, True)
    pairs = _slice_pairs(m, n, d)
    if top_level_only:
        pairs = [(down, up) for down, up in pairs if down[-1][-1] == n]
    return tuple(_schedule_pairs(cells, pairs))


def _base_chains(res: Resolution):
    """Chains of base simplexes, largest first, each as a label tuple."""
    chains = []
    for s in res.bary.complex.simplexes:
        chain = tuple(res.bary.label_of(v) for v in s)
        chains.append(tuple(sorted(chain, key=simplex_key)))
    chains.sort(key=lambda ch: (-len(ch), ch))
    return chains


def hat_start_labels(res: Resolution) -> frozenset:
    return res.hat_labels()


def hat_finish_labels(res: Resolution, rel: SimplicialComplex | None = None) -> frozenset:
    """Section image, plus the level-capped part over rel when given."""
    finish = set(res.embed_image_labels())
    if rel is not None:
        keep = rel.simplexes
        for ls in res.hat_labels():
            if all(base in keep and level <= res.n - 1 for base, level in ls):
                finish.add(ls)
    return frozenset(finish)


def collapse_hat(K: SimplicialComplex, n: int,
                 rel: SimplicialComplex | None = None) -> CollapseSequence:
    """Collapse the resolution of K onto its section image.

    When rel is given (a subcomplex of K with dim rel <= n - 1), the
    collapse is relative: everything over rel with levels below n stays,
    and the finish is that part united with the section image.
    """
    if K.dim > n:
        raise ParameterError(f"level bound {n} is below dim K = {K.dim}")
    if rel is not None:
        if not rel.is_subcomplex_of(K):
            raise InputError("rel is not a subcomplex of the base complex")
        if rel.dim > n - 1:
            raise ParameterError(
                f"relative part must have dimension <= {n - 1}, got {rel.dim}"
            )
    res = resolve(K, n)
    rel_simplexes = rel.simplexes if rel is not None else frozenset()

    steps = []
    for chain in _base_chains(res):
        m = len(chain) - 1
        d = tuple(len(s) - 1 for s in chain)
        in_rel = rel is not None and all(s in rel_simplexes for s in chain)
        for down, up in _scheduled_slice(m, n, d, in_rel):
            steps.append(
                CollapseStep(
                    free_face=cell_to_simplex(down, chain),
                    cofacet=cell_to_simplex(up, chain),
                )
            )
    finish = "embed-image" if rel is None else "rel-part+embed-image"
    return CollapseSequence(
        kind="labels",
        start=f"hat(n={n})",
        finish=finish,
        steps=tuple(steps),
    )


def restrict_to_base(seq: CollapseSequence, sub: SimplicialComplex) -> CollapseSequence:
    """Keep the steps whose cofacet lies over a subcomplex of the base."""
    if seq.kind != "labels":
        raise ParameterError("only resolution certificates can be restricted")
    keep = sub.simplexes
    steps = tuple(
        st for st in seq.steps
        if all(base in keep for base, _ in st.cofacet)
    )
    return CollapseSequence(
        kind="labels",
        start=f"{seq.start}|restricted",
        finish=seq.finish,
        steps=steps,
    )


# ---------------------------------------------------------------------------
# independent search oracle


@dataclass(frozen=True)
class OracleResult:
    status: str  # "found" | "exhausted" | "budget"
    steps: tuple[CollapseStep, ...] | None
    nodes: int


class _OutOfBudget(Exception):
    pass


def greedy_oracle(start_items, target_items, facets_of,
                  budget: int = 100_000) -> OracleResult:
    """Backtracking search for some collapse of start onto target.

    Exhaustive up to the node budget: status "exhausted" certifies that no
    sequence of elementary collapses reaches the target, while "budget"
    is indeterminate.
    """
    target = frozenset(target_items)
    active = set(start_items)
    if not target <= active:
        raise InputError("target is not a subset of the start complex")
    steps: list[CollapseStep] = []
    dead: set[frozenset] = set()
    nodes = 0

    def moves():
        cofacets: dict = {}
        for item in active:
            for f in facets_of(item):
                cofacets.setdefault(f, []).append(item)
        out = []
        for tau, cofs in cofacets.items():
            if (
                len(cofs) == 1
                and tau in active
                and tau not in target
                and cofs[0] not in target
            ):
                out.append((tau, cofs[0]))
        out.sort()
        return out

    def dfs() -> bool:
        nonlocal nodes
        if frozenset(active) == target:
            return True
        state = frozenset(active)
        if state in dead:
            return False
        nodes += 1
        if nodes > budget:
            raise _OutOfBudget
        for tau, sigma in moves():
            active.discard(tau)
            active.discard(sigma)
            steps.append(CollapseStep(free_face=tau, cofacet=sigma))
            if dfs():
                return True
            steps.pop()
            active.add(tau)
            active.add(sigma)
        dead.add(state)
        return False

    try:
        found = dfs()
    except _OutOfBudget:
        return OracleResult(status="budget", steps=None, nodes=nodes)
    if found:
        return OracleResult(status="found", steps=tuple(steps), nodes=nodes)
    return OracleResult(status="exhausted", steps=None, nodes=nodes)
