"""The acceptance suite: one function per criterion, runnable via the CLI
`selftest` subcommand or from the test suite.

Every criterion reports pass/fail with a detail string and a digest of the
artifacts it produced; criterion 10 reruns the others and compares the
digests byte for byte.
"""

from __future__ import annotations

import hashlib
import io
import itertools
import random
import time
from contextlib import redirect_stdout, redirect_stderr
from dataclasses import dataclass

from . import textio
from .catalog import (
    dunce_hat,
    random_complex,
    random_quotient_map,
    random_subcomplex,
    standard_corpus,
)
from .cells import cell_dim, enumerate_cells
from .collapse import (
    collapse_hat,
    collapse_q,
    greedy_oracle,
    hat_finish_labels,
    hat_start_labels,
    q_finish_cells,
    replay,
    restrict_to_base,
    tuple_facets,
)
from .complexes import (
    SimplicialComplex,
    barycentric,
    identity_map,
    induced_bary_map,
    is_nondegenerate,
)
from .homology import cell_homology_q, homology, point_profile
from .resolution import lift, resolve
from .towers import check_family, example_tower, resolve_tower, SubcomplexFamily


@dataclass
class CriterionResult:
    number: int
    name: str
    ok: bool
    detail: str
    digest: str
    ms: int


class _Run:
    """Failure collector plus artifact digest for one criterion."""

    def __init__(self):
        self.failures: list[str] = []
        self.hash = hashlib.sha256()
        self.t0 = time.monotonic()

    def check(self, condition: bool, message: str):
        if not condition:
            self.failures.append(message)

    def feed(self, text: str):
        self.hash.update(text.encode("utf-8"))

    def ms(self) -> int:
        return int((time.monotonic() - self.t0) * 1000)

    def result(self, number: int, name: str, ok_detail: str) -> CriterionResult:
        ok = not self.failures
        detail = ok_detail if ok else "; ".join(self.failures[:3])
        return CriterionResult(
            number=number, name=name, ok=ok, detail=detail,
            digest=self.hash.hexdigest(), ms=self.ms(),
        )


def _cli_stdout(argv) -> tuple[int, str]:
    from .cli import main

    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue()


def criterion_1() -> CriterionResult:
    """Staircase cell listings match the expected top cells exactly."""
    run = _Run()
    expected = {
        (1, 2): [
            ("({0},{0,1,2})", "(0,2)"),
            ("({0,1},{1,2})", "(1,1)"),
            ("({0,1,2},{2})", "(2,0)"),
        ],
        (1, 3): [
            ("({0},{0,1,2,3})", "(0,3)"),
            ("({0,1},{1,2,3})", "(1,2)"),
            ("({0,1,2},{2,3})", "(2,1)"),
            ("({0,1,2,3},{3})", "(3,0)"),
        ],
    }
    for (m, n), want in expected.items():
        code, out = _cli_stdout(["grayson", "--m", str(m), "--n", str(n),
                                 "--flavor", "r"])
        run.feed(out)
        run.check(code == 0, f"grayson m={m} n={n} exited {code}")
        top_dim = n  # top cells of the weak staircase have dimension n
        lines = out.splitlines()
        try:
            start = lines.index(f"dim {top_dim}:")
        except ValueError:
            run.check(False, f"no dim {top_dim} section for m={m} n={n}")
            continue
        got = []
        for line in lines[start + 1:]:
            if not line.startswith("cell "):
                break
            parts = line.split()
            got.append((parts[1], parts[2].split("=", 1)[1]))
        run.check(
            got == want,
            f"top cells for m={m} n={n}: got {got}",
        )
    run.check(run.ms() < 1000, f"took {run.ms()} ms, limit 1000")
    return run.result(1, "staircase top cells", "exact listings, under 1 s")


def criterion_2() -> CriterionResult:
    """Full collapses reach the terminal cell, with point homology."""
    run = _Run()
    checked = 0
    for n in range(1, 6):
        for m in range(0, n):
            seq = collapse_q(m, n, m)
            start = enumerate_cells(m, n, "q").cell_set()
            terminal = tuple((i,) for i in range(m + 1))
            rep = replay(seq, start, frozenset({terminal}))
            run.check(rep.ok, f"Q(m={m},n={n}): {rep.first_counterexample()}")
            run.check(
                rep.finish_matches is True,
                f"Q(m={m},n={n}) does not finish at the terminal cell",
            )
            free = {s.free_face for s in seq.steps}
            cof = {s.cofacet for s in seq.steps}
            touched = free | cof | rep.finish
            run.check(
                len(free) + len(cof) + len(rep.finish) == len(start)
                and touched == start,
                f"Q(m={m},n={n}) pairing is not a partition of the cells",
            )
            profile = cell_homology_q(m, n)
            run.check(
                profile == point_profile(profile.dim),
                f"Q(m={m},n={n}) cell homology {profile.groups} is not a point",
            )
            run.feed(textio.format_certificate(seq))
            checked += 1
    run.check(run.ms() < 60_000, f"took {run.ms()} ms, limit 60000")
    return run.result(
        2, "terminal collapses", f"{checked} (m,n) pairs collapse to the point"
    )


def criterion_3() -> CriterionResult:
    """Relative collapses finish at exactly the lower staircase complex."""
    run = _Run()
    checked = 0
    for n in range(1, 6):
        for m in range(0, n):
            start = enumerate_cells(m, n, "q").cell_set()
            for floor in range(m, n):
                seq = collapse_q(m, n, floor)
                rep = replay(seq, start, q_finish_cells(m, floor))
                run.check(
                    rep.ok and rep.finish_matches is True,
                    f"Q(m={m},n={n},floor={floor}): "
                    f"{rep.first_counterexample() or 'finish mismatch'}",
                )
                run.feed(textio.format_certificate(seq))
                checked += 1
    return run.result(3, "relative collapses", f"{checked} floors validated")


def criterion_4() -> CriterionResult:
    """Resolution collapses finish at the section image; filters stay valid."""
    run = _Run()
    corpus = standard_corpus()
    run.check(len(corpus) >= 30, f"corpus has only {len(corpus)} complexes")
    rng = random.Random(20240902)
    for K in corpus:
        n = max(K.dim, 0)
        res = resolve(K, n)
        seq = collapse_hat(K, n)
        rep = replay(seq, hat_start_labels(res), hat_finish_labels(res))
        run.check(
            rep.ok and rep.finish_matches is True,
            f"collapse failed on {len(K)}-simplex complex (dim {K.dim}): "
            f"{rep.first_counterexample() or 'finish mismatch'}",
        )
        run.feed(textio.format_certificate(seq))

        L = random_subcomplex(rng, K)
        sub_seq = restrict_to_base(seq, L)
        keep = L.simplexes
        sub_start = frozenset(
            ls for ls in hat_start_labels(res)
            if all(base in keep for base, _ in ls)
        )
        sub_finish = frozenset(
            ls for ls in hat_finish_labels(res)
            if all(base in keep for base, _ in ls)
        )
        sub_rep = replay(sub_seq, sub_start, sub_finish)
        run.check(
            sub_rep.ok and sub_rep.finish_matches is True,
            f"filtered collapse failed on a random subcomplex: "
            f"{sub_rep.first_counterexample() or 'finish mismatch'}",
        )
    run.check(run.ms() < 300_000, f"took {run.ms()} ms, limit 300000")
    return run.result(
        4, "resolution collapses", f"{len(corpus)} complexes, all local filters valid"
    )


def criterion_5() -> CriterionResult:
    """One extra edge per subdivision vertex in the 1-dimensional resolution."""
    run = _Run()
    checked = 0
    for K in standard_corpus():
        if K.dim != 1:
            continue
        res = resolve(K, 1)
        hat_edges = len(res.hat.by_dim().get(1, ()))
        bary_cplx = barycentric(K).complex
        bary_edges = len(bary_cplx.by_dim().get(1, ()))
        run.check(
            hat_edges == bary_edges + bary_cplx.vertex_count,
            f"half-edge law fails: {hat_edges} != "
            f"{bary_edges} + {bary_cplx.vertex_count}",
        )
        run.feed(f"{hat_edges},{bary_edges},{bary_cplx.vertex_count};")
        checked += 1
    run.check(checked >= 5, f"only {checked} one-dimensional complexes in corpus")
    return run.result(5, "half-edge law", f"{checked} one-dimensional complexes")


def criterion_6() -> CriterionResult:
    """Homology agrees between a complex, its subdivision, and its resolution."""
    run = _Run()
    rng = random.Random(20240903)
    for i in range(50):
        K = random_complex(rng, max_vertices=8, max_dim=3,
                           generators=rng.randint(3, 5))
        n = max(K.dim, 0)
        h_base = homology(K)
        h_bary = homology(barycentric(K).complex)
        h_hat = homology(resolve(K, n).hat)
        run.check(
            h_base == h_bary == h_hat,
            f"sample {i}: {h_base.groups} vs {h_bary.groups} vs {h_hat.groups}",
        )
        run.feed(repr(h_base.groups) + repr(h_hat.groups))
    return run.result(6, "homology invariance", "50 random complexes, no mismatch")


def criterion_7() -> CriterionResult:
    """Lifts are non-degenerate, commute with projections, and compose."""
    run = _Run()
    rng = random.Random(20240904)
    degenerate = 0
    total = 0
    while total < 100:
        K = random_complex(rng, max_vertices=6, max_dim=2,
                           generators=rng.randint(2, 4))
        style = total % 5
        if style == 4:
            f = identity_map(K)
        elif style == 3:
            # constant map
            target_vertex = K.vertices[0]
            L = SimplicialComplex([(target_vertex,)])
            from .complexes import SimplicialMap

            f = SimplicialMap(K, L, {v: target_vertex for v in K.vertices})
        else:
            f = random_quotient_map(rng, K, merge_prob=0.55)
        g = random_quotient_map(rng, f.target, merge_prob=0.4)
        n = max(f.source.dim, 0)  # quotients never raise dimension
        if not is_nondegenerate(f):
            degenerate += 1

        lifted = lift(f, n)
        run.check(is_nondegenerate(lifted), f"map {total}: lift is degenerate")

        rs, rt = resolve(f.source, n), resolve(f.target, n)
        left = rt.project.compose(lifted)
        right = induced_bary_map(f).compose(rs.project)
        run.check(left == right, f"map {total}: projection square fails")
        run.check(
            rt.project.compose(lifted).compose(rs.embed) == induced_bary_map(f),
            f"map {total}: section triangle fails",
        )
        run.check(
            lift(g.compose(f), n) == lift(g, n).compose(lifted),
            f"map {total}: lift does not compose",
        )
        run.feed(
            repr(sorted(lifted.assignment.items()))
        )
        total += 1
    run.check(degenerate >= 20, f"only {degenerate} degenerate samples")
    return run.result(
        7, "non-degenerate lifts",
        f"100 maps ({degenerate} degenerate), all squares commute",
    )


def criterion_8() -> CriterionResult:
    """Tower rewriting removes degeneracy and preserves level homology."""
    run = _Run()

    def bond_flags(T):
        return [is_nondegenerate(p) for p in T.bonds]

    cases = {
        "nested_intervals": (example_tower("nested_intervals", 5), 1),
        "hawaiian": (example_tower("hawaiian", 4, sphere_dim=1), 1),
    }
    for name, (T, n) in cases.items():
        flags = bond_flags(T)
        run.check(not all(flags), f"{name}: no degenerate bond")
        RT = resolve_tower(T, n)
        run.check(all(bond_flags(RT)), f"{name}: resolved tower still degenerate")
        for i, (K, H) in enumerate(zip(T.levels, RT.levels)):
            run.check(
                homology(K) == homology(H),
                f"{name}: homology changed at level {i}",
            )
        run.feed(name + repr(bond_flags(RT)))
        cases[name] = RT

    S = example_tower("solenoid", 4, p=2)
    run.check(all(bond_flags(S)), "solenoid bonds degenerate before resolution")
    RS = resolve_tower(S, 1)
    run.check(all(bond_flags(RS)), "solenoid bonds degenerate after resolution")
    run.feed("solenoid" + repr(bond_flags(RS)))

    for name, RT in [("nested", cases["nested_intervals"]),
                     ("hawaiian", cases["hawaiian"]), ("solenoid", RS)]:
        top = max(K.dim for K in RT.levels)
        for k in range(top + 1):
            F = SubcomplexFamily(members=tuple(K.skeleton(k) for K in RT.levels))
            result = check_family(RT, F, "decomposable")
            run.check(
                result.ok,
                f"{name}: skeleton family at k={k} not decomposable "
                f"({result.describe()})",
            )
            run.feed(f"{name}:{k}:{result.ok};")
    return run.result(8, "tower pipeline", "all towers rewrite cleanly")


def criterion_9() -> CriterionResult:
    """The search oracle agrees with the engine and detects non-collapsibility."""
    run = _Run()
    from .cells import cell_facets

    for n in range(1, 4):
        for m in range(0, n):
            cells = enumerate_cells(m, n, "q").cell_set()
            terminal = frozenset({tuple((i,) for i in range(m + 1))})
            result = greedy_oracle(cells, terminal, cell_facets, budget=200_000)
            run.check(
                result.status == "found",
                f"oracle found no collapse for Q(m={m},n={n}): {result.status}",
            )
            run.feed(f"q:{m},{n}:{result.status};")

    D = dunce_hat()
    one_vertex = frozenset({(D.vertices[0],)})
    result = greedy_oracle(D.simplexes, one_vertex, tuple_facets, budget=200_000)
    run.check(
        result.status == "exhausted",
        f"oracle did not certify non-collapsibility: {result.status}",
    )
    run.feed(f"dunce:{result.status};")

    from .towers import compose_surjections, factor_surjection

    count = 0
    for dom in range(1, 8):
        for cod in range(1, dom + 1):
            for values in itertools.product(range(cod), repeat=dom):
                if set(values) != set(range(cod)):
                    continue
                factors = factor_surjection(values)
                run.check(
                    compose_surjections(factors, dom) == values,
                    f"factorization of {values} does not compose",
                )
                count += 1
    run.feed(f"surjections:{count};")
    return run.result(
        9, "oracle agreement", f"collapse searches agree; {count} surjections recompose"
    )


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
}


def criterion_10(previous: list[CriterionResult]) -> CriterionResult:
    """Determinism: rerun the other criteria and compare artifact digests."""
    run = _Run()
    for result in previous:
        again = CRITERIA[result.number]()
        run.check(
            again.digest == result.digest,
            f"criterion {result.number} artifacts differ between runs",
        )
        run.feed(again.digest)
    return run.result(10, "determinism", "all artifact digests identical on rerun")


def run_all(only=None, stream=None, budget_ms=None) -> list[CriterionResult]:
    numbers = sorted(only) if only else list(range(1, 11))
    results: list[CriterionResult] = []
    plain = [n for n in numbers if n != 10]
    for n in plain:
        if n not in CRITERIA:
            raise ValueError(f"no criterion {n}")
        result = CRITERIA[n]()
        results.append(result)
        if stream:
            _print_result(stream, result)
    if 10 in numbers:
        base = results if plain else [CRITERIA[n]() for n in range(1, 10)]
        result = criterion_10(base)
        results.append(result)
        if stream:
            _print_result(stream, result)
    return results


def _print_result(stream, r: CriterionResult):
    status = "PASS" if r.ok else "FAIL"
    print(f"criterion {r.number:2d} {status} [{r.ms:6d} ms] {r.name}: {r.detail}",
          file=stream)
