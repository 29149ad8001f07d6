"""Acceptance gate: every criterion must pass at its stated tolerance.

Each criterion prints one pass/fail line; criterion 10 reruns the others
and compares artifact digests, so this module is the slow part of the
suite (a couple of minutes).
"""

import sys

import pytest

from nablakit.acceptance import CRITERIA, criterion_10, run_all


@pytest.fixture(scope="module")
def first_pass_results():
    results = {}
    for number in sorted(CRITERIA):
        results[number] = CRITERIA[number]()
    return results


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(first_pass_results, number):
    result = first_pass_results[number]
    status = "PASS" if result.ok else "FAIL"
    print(f"criterion {number:2d} {status} [{result.ms:6d} ms] "
          f"{result.name}: {result.detail}")
    assert result.ok, f"criterion {number} failed: {result.detail}"


def test_criterion_10_determinism(first_pass_results):
    ordered = [first_pass_results[n] for n in sorted(first_pass_results)]
    result = criterion_10(ordered)
    status = "PASS" if result.ok else "FAIL"
    print(f"criterion 10 {status} [{result.ms:6d} ms] "
          f"{result.name}: {result.detail}")
    assert result.ok, f"criterion 10 failed: {result.detail}"


def test_run_all_streams_lines(capsys):
    results = run_all(only=[1], stream=sys.stdout)
    out = capsys.readouterr().out
    assert "criterion  1" in out
    assert all(r.ok for r in results)
