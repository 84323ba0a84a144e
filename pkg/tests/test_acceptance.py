"""Acceptance criteria, one test each.

Every criterion prints a single ``PASS``/``FAIL`` line with its runtime and
budget.  Under pytest the lines are collected and shown in the terminal
summary; ``python3 tests/test_acceptance.py`` prints them directly.
"""

from __future__ import annotations

import sys
import time
from itertools import combinations
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from bruhatcup import bits, kernels, verify  # noqa: E402
from bruhatcup.bits import parse  # noqa: E402
from bruhatcup.bruhat import ConsistentSet, enumerate_bruhat, is_consistent  # noqa: E402
from bruhatcup.chains import transpose  # noqa: E402
from bruhatcup.coproducts import delta_classical, delta_from_reoriented_chain, delta_from_U  # noqa: E402
from bruhatcup.simplicial import (  # noqa: E402
    SigmaConsistentSet,
    SimplicialComplex,
    addable_simplices,
    circle,
    cohomology_mod2,
    is_sigma_consistent,
    projective_plane,
    sq_invariance_check,
    sq_matrix,
)
from conftest import tc  # noqa: E402

RESULTS: list[str] = []


def _record(number: int, title: str, budget: float, check) -> None:
    start = time.perf_counter()
    try:
        ok, detail = check()
    except Exception as exc:  # a crash is a failure of the criterion, reported like one
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    in_time = elapsed < budget
    status = "PASS" if ok and in_time else "FAIL"
    line = f"{status} [{number:2d}] {title} ({elapsed:.2f}s of {budget:g}s; {detail})"
    if ok and not in_time:
        line += " over budget"
    RESULTS.append(line)
    print(line)
    assert ok, line
    assert in_time, line


def _report(rep) -> tuple[bool, str]:
    detail = f"{rep.checked} checks"
    if not rep:
        detail += f"; {rep.counterexample}"
    return bool(rep), detail


# --- 1 ------------------------------------------------------------------------------

CLASSICAL = [
    (0, 0, "0", "0⊗0", "0⊗0"),
    (1, 0, "01", "0⊗01 + 01⊗1", "01⊗0 + 1⊗01"),
    (1, 1, "01", "-01⊗01", "01⊗01"),
    (2, 0, "012", "0⊗012 + 01⊗12 + 012⊗2", "012⊗0 - 12⊗01 + 2⊗012"),
    (2, 1, "012", "012⊗01 - 02⊗012 + 012⊗12", "01⊗012 - 012⊗02 + 12⊗012"),
    (2, 2, "012", "012⊗012", "012⊗012"),
]
CUP_ONE = [(["012"], "012⊗01 - 02⊗012 + 012⊗12"), ([], "-01⊗012 + 012⊗02 - 12⊗012")]


def _worked_examples():
    checked = 0
    for n, i, S, value, opposite in CLASSICAL:
        D = delta_classical(n, i)(S)
        if D != tc(value) or transpose(D) != tc(opposite):
            return False, f"Δ_{i}({S}) = {D}"
        checked += 2
    for inv, value in CUP_ONE:
        D = delta_from_U(ConsistentSet.of(2, 2, inv), 1)()
        if D != tc(value):
            return False, f"Δ_1^{inv}(012) = {D}"
        checked += 1
    if delta_from_U(ConsistentSet.empty(2, 1), 0)() != tc("0⊗012 + 01⊗12 + 012⊗2"):
        return False, "Δ_0^∅(012)"
    return True, f"{checked + 1} identities"


def test_criterion_01_worked_examples():
    _record(1, "worked examples of the classical and cup-1 coproducts", 1, _worked_examples)


# --- 2-7 ----------------------------------------------------------------------------

def test_criterion_02_homotopy_formula():
    _record(2, "homotopy formula, n<=6, i<=3", 300, lambda: _report(verify.homotopy_suite(6, 3)))


def test_criterion_03_steenrod_comparison():
    _record(3, "comparison with Steenrod's coproducts, i<=4, n<=7", 60,
            lambda: _report(verify.steenrod_suite(7, 4)))


def test_criterion_04_complement():
    _record(4, "complement identity, n<=6, i<=3", 300, lambda: _report(verify.complement_suite(6, 3)))


def test_criterion_05_boundary_decomposition():
    _record(5, "boundary decomposition of face terms, |S|<=7", 60,
            lambda: _report(verify.decomposition_suite(7)))


def test_criterion_06_sign_lemmas():
    _record(6, "sign lemmas on all partitions inside [0,8]", 120, lambda: _report(verify.appendix_suite(8)))


def _chains():
    rep = verify.chains_suite()
    ok, detail = _report(rep)
    if ok:
        detail += "; classes vs elements " + ", ".join(f"{k}: {v[0]}={v[1]}" for k, v in rep.details["counts"].items())
    return ok, detail


def test_criterion_07_chain_classes():
    _record(7, "chain classes count the next order, with round trips", 120, _chains)


# --- 8 ------------------------------------------------------------------------------

def _subset_filter(n: int, r: int) -> set[frozenset[int]]:
    ground = range(n + 1)
    level = list(combinations(ground, r + 1))
    packets = [list(combinations(M, r + 1)) for M in combinations(ground, r + 2)]
    out = set()
    for k in range(len(level) + 1):
        for chosen in combinations(level, k):
            chosen_set = set(chosen)
            good = True
            for pk in packets:
                flags = [K in chosen_set for K in pk]
                t = sum(flags)
                m = len(flags)
                if flags != [True] * t + [False] * (m - t) and flags != [False] * (m - t) + [True] * t:
                    good = False
                    break
            if good:
                out.add(frozenset(bits.vset(K) for K in chosen))
    return out


def _counts():
    details = []
    for n, r, expected in [(2, 1, 6), (3, 2, 8)]:
        found = {U.inversions for U in enumerate_bruhat(n, r)}
        oracle = _subset_filter(n, r)
        if found != oracle or len(found) != expected:
            return False, f"({n},{r}): enumerator {len(found)}, oracle {len(oracle)}"
        details.append(f"|B([0,{n}],{r})|={len(found)}")
    return True, ", ".join(details)


def test_criterion_08_enumeration_counts():
    _record(8, "enumeration counts against a subset filter", 1, _counts)


# --- 9-11 ---------------------------------------------------------------------------

def test_criterion_09_covering_homotopies():
    _record(9, "covering homotopies and telescoping, n<=4, i<=2", 120,
            lambda: _report(verify.telescoping_suite(4, 2)))


REORIENTED = [
    (("01", "12", "02"), "01⊗012 + 012⊗12 - 02⊗012"),
    (("02", "12", "01"), "012⊗02 - 12⊗012 - 012⊗01"),
]


def _reoriented():
    rep = verify.reoriented_suite((2, 3), (1,))
    if not rep:
        return _report(rep)
    U = ConsistentSet.of(2, 1, ["01"])
    for flips, expected in REORIENTED:
        got = delta_from_reoriented_chain(U, [parse(x) for x in flips])()
        if got != tc(expected):
            return False, f"chain {flips} gives {got}"
    return True, f"{rep.details['chains_found']} chains, {rep.checked} checks, both explicit chains match"


def test_criterion_10_reoriented():
    _record(10, "reoriented orders: chains to the complement and homotopies", 60, _reoriented)


def _minimal():
    rep = verify.minimal_suite()
    ok, detail = _report(rep)
    return ok, detail + "; " + ", ".join(f"{k}: {v}" for k, v in rep.details["counts"].items())


def test_criterion_11_minimal_coproducts():
    _record(11, "minimal coproducts are the cubillage coproducts", 600, _minimal)


# --- 12-13 --------------------------------------------------------------------------

def _sigma():
    X = SimplicialComplex(["012", "013", "023", "123"], 3)
    local = is_sigma_consistent(["012", "123"], X, 2)
    global_ = is_consistent(frozenset(parse(x) for x in ("012", "123")), 3, 2)
    Y = SimplicialComplex(["0135", "0145", "0235", "0245"], 6)
    addable = addable_simplices(SigmaConsistentSet.of(Y, 2, ["013", "024", "145", "235"]))
    ok = local and not global_ and addable == []
    return ok, f"Σ-consistent={local}, globally consistent={global_}, addable={addable}"


def test_criterion_12_sigma_consistency():
    _record(12, "Σ-consistency examples", 1, _sigma)


def _squares():
    X = projective_plane()
    sq = sq_matrix(X, 0, 1)
    if sq != [[1]] or sq != sq_matrix(X, 0, 1, classical=True):
        return False, f"Sq on H^1 is {sq}"
    reps = [sq_invariance_check(X, 0, 1), sq_invariance_check(X, 1, 1), sq_invariance_check(X, 2, 2)]
    for rep in reps:
        if not rep:
            return False, rep.counterexample
    for Y, p in [(circle(), 1), (X, 1), (X, 2)]:
        d = cohomology_mod2(Y, p).dimension
        if sq_matrix(Y, p, p) != [[int(a == b) for b in range(d)] for a in range(d)]:
            return False, f"Sq_{p} is not the identity on H^{p}"
    n = reps[0].details["restrictions"]
    return True, f"Sq nonzero and classical, same for all {n} restrictions, Sq_p = id"


def test_criterion_13_steenrod_squares():
    _record(13, "Steenrod squares on the projective plane", 180, _squares)


if __name__ == "__main__":
    print(f"kernel backend: {kernels.BACKEND}")
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
