"""Acceptance criteria, one test per criterion.

Each test appends a ``criterion N PASS|FAIL`` line that pytest prints in a
closing "acceptance criteria" section.  In-memory tables are flushed first so
the recorded runtimes are cold-start figures.  No disk cache is used.
"""
import json
from fractions import Fraction
from contextlib import contextmanager
from time import perf_counter

from conftest import ACCEPTANCE_LINES
from goldens import (
    CUMULANT_2_2_2,
    KL_CH1,
    KL_CH2,
    KL_CH3,
    KL_CH4,
    KL_CH22,
    KL_CH222,
    KL_KAPPA_22,
    KL_KAPPA_222,
    STRUCTURE_3_2,
    STRUCTURE_3_3,
)
from jackfactor import basis, characters, cli, free, jack, rows
from jackfactor.algebra import DeltaPoly, Laurent, RationalFunction
from jackfactor.characters import (
    CONTENT_FORMULA_PARTITIONS,
    ch_classical,
    ch_content_formula,
    verify_K2_top_degree,
    verify_K3_vanishing,
    verify_K4_laurent_degree,
)
from jackfactor.combinatorics import Partition, partitions_of, partitions_up_to
from jackfactor.free import KLPolynomial, free_cumulant, transition_measure


def flush():
    for mod in (jack, characters, basis, free):
        mod.clear_memory()
    rows._ch_kernels.clear()


@contextmanager
def criterion(number, title, limit=None):
    flush()
    start = perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = perf_counter() - start
        assert limit is None or elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
        status = "PASS"
    finally:
        elapsed = perf_counter() - start
        ACCEPTANCE_LINES.append(f"criterion {number:>2} {status}  {title} [{elapsed:.1f}s]")


def run_cli(*argv):
    lines = []
    code = cli.main(list(argv), out=lines.append)
    return code, lines


def delta_table_from_json(text):
    data = json.loads(text)
    return {
        Partition(c["mu"]): DeltaPoly([Fraction(x) for x in c["delta"]])
        for c in data["coefficients"]
    }


def kl_from_cli(*pis):
    code, lines = run_cli("kl", *pis, "--format", "json")
    assert code == 0
    return KLPolynomial.from_json(json.loads(lines[0])["terms"])


def suite_summary(*argv):
    code, lines = run_cli("verify", *argv, "--format", "json")
    summary = json.loads(lines[-1])["summary"]
    return code, summary


def assert_clean_suite(*argv):
    code, summary = suite_summary(*argv)
    assert summary["violations"] == 0, summary
    assert summary["probes"] > 0, summary
    assert code == 0


def test_criterion_01_structure_coefficients():
    with criterion(1, "structure [3] [2] and [3] [3] reproduce the published expansions", limit=60):
        code, lines = run_cli("structure", "[3]", "[2]", "--format", "json")
        assert code == 0 and delta_table_from_json(lines[0]) == STRUCTURE_3_2
        code, lines = run_cli("structure", "[3]", "[3]", "--format", "json")
        assert code == 0 and delta_table_from_json(lines[0]) == STRUCTURE_3_3
        assert "(6*δ^2 + 3)*Ch[3]" in run_cli("structure", "[3]", "[3]")[1][0]


def test_criterion_02_cumulant():
    with criterion(2, "cumulant [2] [2] [2] reproduces the published expansion", limit=120):
        code, lines = run_cli("cumulant", "[2]", "[2]", "[2]", "--format", "json")
        assert code == 0 and delta_table_from_json(lines[0]) == CUMULANT_2_2_2


def test_criterion_03_kerov_lassalle():
    with criterion(3, "Kerov-Lassalle polynomials of Ch1..Ch4, Ch22, Ch222 and cumulants", limit=600):
        assert kl_from_cli("[1]") == KL_CH1
        assert kl_from_cli("[2]") == KL_CH2
        assert kl_from_cli("[3]") == KL_CH3
        assert kl_from_cli("[4]") == KL_CH4
        assert kl_from_cli("[2,2]") == KL_CH22
        assert kl_from_cli("[2]", "[2]") == KL_KAPPA_22
        assert kl_from_cli("[2]", "[2]", "[2]") == KL_KAPPA_222
        assert kl_from_cli("[2,2,2]") == KL_CH222


def test_criterion_04_main_theorem_scan():
    with criterion(4, "degree bound for all tuples with sum <= 7, at most 3 parts", limit=900):
        code, summary = suite_summary("main-theorem", "--max-size", "7", "--max-parts", "3")
        assert summary["violations"] == 0 and code == 0
        # one report per tuple, so the scan covered every tuple
        from jackfactor.cumulants import tuples_up_to

        assert summary["reports"] == len(tuples_up_to(7, 3)) > 100


def test_criterion_05_cross_definition():
    with criterion(5, "classical definition equals box-sum formulas on |lambda| <= 8"):
        for pi in CONTENT_FORMULA_PARTITIONS:
            for lam in partitions_up_to(8):
                assert ch_classical(pi, lam) == ch_content_formula(pi, lam), (pi, lam)


def test_criterion_06_character_properties():
    with criterion(6, "vanishing, Laurent degree and top-degree row polynomial"):
        for pi in (p for n in range(1, 6) for p in partitions_of(n)):
            assert verify_K3_vanishing(pi, 8).passed, pi
            assert verify_K4_laurent_degree(pi, 8).passed, pi
        for pi in (p for n in range(1, 5) for p in partitions_of(n)):
            for m in (1, 2):
                assert verify_K2_top_degree(pi, m).passed, (pi, m)


def test_criterion_07_delta_zero():
    with criterion(7, "delta = 0 specialisation equals the class-algebra product up to rank 7"):
        code, summary = suite_summary("delta-zero", "--max", "6", "--rank", "7")
        expected = sum(
            len(partitions_of(a)) * len(partitions_of(s - a)) * (7 - max(s, 1) + 1)
            for s in range(7)
            for a in range(s + 1)
        )
        assert summary["reports"] == expected
        assert summary["violations"] == 0 and code == 0


def test_criterion_08_row_functions():
    with criterion(8, "kernel reconstruction, vanishing, explicit cumulant formula, Brillinger"):
        for pi in (p for n in range(1, 5) for p in partitions_of(n)):
            assert rows.verify_reconstruction(pi, 8).passed, pi
        # vanishing suite: row cumulants of all tuples with sum <= 6, tensor products, reconstruction
        assert_clean_suite("vanishing", "--max-size", "6", "--diagram-size", "8")
        # Brillinger suite: all tuples with sum <= 6 and at most 3 parts, plus synthetic kernels
        assert_clean_suite("brillinger", "--max-size", "6", "--max-parts", "3")


def test_criterion_09_z_conditions():
    with criterion(9, "Z3 checks along the induction, and small degree killed"):
        assert_clean_suite("z3", "--max-size", "6")
        # the checker must be able to fail: a degree-4 kernel is not killed at d = 4
        K = rows.TableKernel(lambda X: Laurent({2: X[0]}) if len(X) == 1 else Laurent())
        assert not rows.verify_small_degree_killed(K, 4).passed


def test_criterion_10_conjecture_scans():
    with criterion(10, "steroids --max-size 6 and kl-positivity --max 5 exit 0"):
        code, lines = run_cli("verify", "steroids", "--max-size", "6")
        assert code == 0, "\n".join(lines[-20:])
        code, lines = run_cli("verify", "kl-positivity", "--max", "5")
        assert code == 0, "\n".join(lines[-20:])


def test_criterion_11_free_cumulants():
    with criterion(11, "R2 = |lambda|, R3 of a domino, transition weights sum to one"):
        for lam in partitions_up_to(6):
            assert free_cumulant(2, lam) == Laurent.constant(lam.size())
        assert free_cumulant(3, (2,)) == Laurent({1: 4, -1: -2})
        for lam in partitions_up_to(8):
            assert transition_measure(lam).total_weight() == RationalFunction.of(1)
