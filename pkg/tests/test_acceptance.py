"""Acceptance criteria 1 to 11, exact arithmetic throughout.

Each test prints one PASS/FAIL line for its criterion.
"""

import io
import os
import time

import pytest

from flatcomp import completions as comp
from flatcomp import enriched as en
from flatcomp import preorders as po
from flatcomp.cli import run
from flatcomp.harness import run_suite

from conftest import GOLDEN, space


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}"
            print("\n" + line + (f"  ({detail})" if detail else ""))
        assert ok, f"criterion {number}: {title} {detail}"

    return emit


def suites(*names):
    reps = [run_suite(n) for n in names]
    ok = all(r.passed and r.instances > 0 for r in reps)
    detail = ", ".join(f"{r.suite}: {r.instances} instances, {r.failure_count} failures" for r in reps)
    return ok, detail


def test_criterion_01_quantale_laws(report):
    t = time.perf_counter()
    ok, detail = suites("quantale-laws")
    elapsed = time.perf_counter() - t
    report(1, "quantale laws on {0,1/3,1/2,1,2,inf}", ok and elapsed < 1.0, f"{detail}; {elapsed:.2f}s")


def test_criterion_02_flatness_soundness(report):
    t = time.perf_counter()
    ok, detail = suites("flat-soundness")
    elapsed = time.perf_counter() - t
    report(2, "closed-form flatness agrees with sampled witnesses", ok and elapsed < 300, f"{detail}; {elapsed:.1f}s")


def test_criterion_03_filter_equalities(report):
    ok, detail = suites("eq-3.21", "eq-3.42", "eq-3.43", "eq-3.44", "eq-3.45")
    report(3, "filter limit equalities", ok, detail)


def test_criterion_04_galois_and_reflection(report):
    ok, detail = suites("galois-3.20", "reflection-3.15")
    report(4, "Galois connection and reflection round trips", ok, detail)


def test_criterion_05_inclusion_chain_and_symmetric(report):
    ok, detail = suites("inclusion-chain", "sym-3.33")
    report(5, "Cauchy => flat => weakly flat; symmetric collapses", ok, detail)


def test_criterion_06_symmetric_p1_hyperspace(report):
    ok, detail = suites("sym-3.60")
    report(6, "P1 completion of symmetric spaces is the closed-subset hyperspace", ok, detail)


def test_criterion_07_extended_half_line(report):
    ok, detail = suites("rbar-3.53-finite")
    a2 = space(["a", "b"], [[0, 1], [2, 0]])
    p1 = comp.complete(a2, "p1")
    p2 = comp.complete(a2, "p2")
    matrix = [[str(v) for v in row] for row in p1.space.dist]
    a2_ok = (
        [p.base for p in p1.points] == [("a",), ("b",), ("a", "b")]
        and matrix == [["0", "1", "0"], ["2", "0", "0"], ["2", "1", "0"]]
        and en.find_isometry(a2, p2.space) is not None
    )
    report(7, "finite half-line self-completion; A2 completions", ok and a2_ok, detail)


def test_criterion_08_forward_cauchy_sequences(report):
    ok, detail = suites("seq-3.35")
    report(8, "closed flat filters are forward Cauchy sequence filters", ok, detail)


def test_criterion_09_two_valued_correspondences(report):
    ok, detail = suites("bool-4.1", "dm-cross")
    anti = po.validate_preorder(["x", "y"], [])
    dm = po.complete_preorder(anti, "dm")
    four = len(dm.points) == 4 and len(po.dm_via_modules(anti).points) == 4
    report(9, "two-valued flatness, ideal and normal completions", ok and four, detail + f"; antichain DM points: {len(dm.points)}")


def test_criterion_10_extension_universality(report):
    ok, detail = suites("extend-3.50", "bool-4.2", "bool-4.3")
    report(10, "extensions exist, extend the map and are unique", ok, detail)


GOLDEN_CASES = [
    (["complete", "-i", "A2.json", "--mode", "p1"], "A2_p1.out.json"),
    (["complete", "--base", "bool", "-i", "P3.json", "--mode", "ideal"], "P3_ideal.out.json"),
    (["classify", "-i", "filter_Z2_uv.json"], "Z2_uv_classify.out.json"),
]


def test_criterion_11_golden_files(report, tmp_path):
    results = []
    for argv, expected in GOLDEN_CASES:
        argv = [os.path.join(GOLDEN, a) if a.endswith(".json") else a for a in argv]
        dest = tmp_path / expected
        code = run(argv + ["-o", str(dest)], io.StringIO(), io.StringIO())
        with open(os.path.join(GOLDEN, expected), "rb") as fh:
            want = fh.read()
        results.append(code == 0 and dest.read_bytes() == want)
    report(11, "CLI golden outputs are byte-identical", all(results), f"{sum(results)}/{len(results)} match")
