"""Exhaustive verification suites.

Each suite returns a :class:`~bruhatcup.coproducts.Report`.  The defaults are
the scales used by the acceptance tests, so calling a suite with no arguments
reproduces them.

The homotopy and complement sweeps visit every pair (U, S) of an element U
and a face S.  The defect on S only queries U on subsets of S, so results are
cached by the restriction of U to S; this is exact, not a sampling shortcut.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from . import bits, kernels
from .bits import fmt, full, nonempty_subsets, size, subsets_of_size
from .bruhat import (
    DEFAULT_NODE_CAP,
    ChainNotFound,
    ConsistentSet,
    MaximalChain,
    chain_class_to_element,
    count_chain_classes,
    covering_relations,
    decode,
    enumerate_bruhat,
    enumerate_codes,
    maximal_chains,
    realize_chain,
    reoriented_maximal_chain,
)
from .coproducts import (
    Report,
    _describe,
    appendix_sign_suite,
    covering_homotopy_check,
    decomposition_defect,
    delta_from_U,
    delta_from_face,
    matches_cubillage_coproducts,
    minimal_coproduct_search,
    reoriented_homotopy_check,
    steenrod_comparison,
)
from .zonotope import ZFace, flip_face

CHAIN_CASES = ((2, 1), (3, 1), (3, 2), (4, 2))


def _restricted_sweep(
    name: str,
    n_max: int,
    i_max: int,
    defect: Callable[[int, int, frozenset, frozenset], dict],
) -> Report:
    checked = 0
    evaluated = 0
    for i in range(0, i_max + 1):
        for n in range(0, n_max + 1):
            items, codes = enumerate_codes(n, i + 1)
            faces = list(nonempty_subsets(full(n)))
            masks = []
            for S in faces:
                m = 0
                for j, K in enumerate(items):
                    if not K & ~S:
                        m |= 1 << j
                masks.append(m)
            seen: set[tuple[int, int]] = set()
            for code in codes:
                for S, m in zip(faces, masks):
                    checked += 1
                    key = (S, code & m)
                    if key in seen:
                        continue
                    seen.add(key)
                    evaluated += 1
                    res = defect(S, i, decode(items, code & m), decode(items, ~code & m))
                    if res:
                        U = ConsistentSet(n, i + 1, decode(items, code))
                        return Report(
                            name, False, checked,
                            f"i={i} U={U!r} " + _describe(S, res),
                            {"evaluated": evaluated},
                        )
    return Report(name, True, checked, None, {"evaluated": evaluated})


def homotopy_suite(n_max: int = 6, i_max: int = 3) -> Report:
    """∂Δ_i^U - (-1)^i Δ_i^U ∂ = (1 + (-1)^i T) Δ_{i-1}^∅ for all U, all faces."""
    return _restricted_sweep(
        f"homotopy n<={n_max} i<={i_max}", n_max, i_max,
        lambda S, i, U, _comp: kernels.homotopy_defect(S, i, U),
    )


def complement_suite(n_max: int = 6, i_max: int = 3) -> Report:
    """Δ_i^{complement} = (-1)^i T Δ_i^U for all U, all faces."""
    return _restricted_sweep(
        f"complement n<={n_max} i<={i_max}", n_max, i_max,
        lambda S, i, U, comp: kernels.complement_defect(S, i, U, comp),
    )


def steenrod_suite(n_max: int = 7, i_max: int = 4) -> Report:
    checked = 0
    for i in range(0, i_max + 1):
        for n in range(0, n_max + 1):
            rep = steenrod_comparison(i, n)
            checked += rep.checked
            if not rep:
                return Report(f"steenrod n<={n_max} i<={i_max}", False, checked, rep.counterexample)
    return Report(f"steenrod n<={n_max} i<={i_max}", True, checked)


def decomposition_suite(max_support: int = 7) -> Report:
    """Facet decomposition of ∂ of every signed face term on supports of size <= max_support."""
    name = f"decomposition |S|<={max_support}"
    checked = 0
    for S in nonempty_subsets(full(max_support - 1)):
        if size(S) < 2:
            continue
        els = bits.elements(S)
        for code in range(3 ** len(els)):
            L = A = 0
            c = code
            for e in els:
                c, d = divmod(c, 3)
                if d == 0:
                    L |= 1 << e
                elif d == 1:
                    A |= 1 << e
            if not L:
                continue
            F = ZFace(L, A, S)
            checked += 1
            res = decomposition_defect(F)
            if res:
                return Report(name, False, checked, f"{F!r}: " + _describe(S, res))
    return Report(name, True, checked)


def appendix_suite(n_max: int = 8) -> Report:
    return appendix_sign_suite(n_max)


def chains_suite(cases: Iterable[tuple[int, int]] = CHAIN_CASES) -> Report:
    """Chain classes of B([0,n],r) against B([0,n],r+1), plus chain realisation round trips."""
    cases = tuple(cases)
    name = "chains " + ",".join(f"({n},{r})" for n, r in cases)
    checked = 0
    counts = {}
    for n, r in cases:
        elements_up = enumerate_bruhat(n, r + 1)
        classes = count_chain_classes(n, r)
        counts[f"{n},{r}"] = [classes, len(elements_up)]
        checked += 1
        if classes != len(elements_up):
            return Report(
                name, False, checked,
                f"({n},{r}): {classes} chain classes but {len(elements_up)} elements",
            )
        for W in elements_up:
            checked += 1
            back = chain_class_to_element(realize_chain(W))
            if back != W:
                return Report(name, False, checked, f"round trip of {W!r} gave {back!r}")
    return Report(name, True, checked, None, {"counts": counts})


def telescoping_suite(n_max: int = 4, i_max: int = 2, node_cap: int = DEFAULT_NODE_CAP) -> Report:
    """Cover homotopies in B([0,n],i) and their sums along every maximal chain.

    Along a chain the flip coproducts must add up to Δ_i^W for the class W
    of the chain, which in turn must satisfy the homotopy formula.
    """
    name = f"telescoping n<={n_max} i<={i_max}"
    checked = 0
    for i in range(0, i_max + 1):
        for n in range(max(i - 1, 0), n_max + 1):
            if i > n + 1:
                continue
            faces = list(nonempty_subsets(full(n)))
            face_cache: dict[tuple[frozenset, int], ZFace] = {}
            for U in enumerate_bruhat(n, i):
                for K, V in covering_relations(U):
                    rep = covering_homotopy_check(U, V, i)
                    checked += rep.checked
                    if not rep:
                        return Report(name, False, checked, rep.counterexample)
                    face_cache[(U.inversions, K)] = flip_face(U, K)
            class_ok: dict[frozenset, bool] = {}
            for order in maximal_chains(n, i, node_cap):
                W = chain_class_to_element(MaximalChain(n, i, order))
                total: dict[int, dict] = {S: {} for S in faces}
                current: frozenset = frozenset()
                for K in order:
                    D = delta_from_face(face_cache[(current, K)], i)
                    for S in faces:
                        kernels.add_into(total[S], D.raw(S), 1)
                    current = current | {K}
                target = delta_from_U(W, i)
                for S in faces:
                    checked += 1
                    if total[S] != target.raw(S):
                        diff = kernels.add_into(dict(total[S]), target.raw(S), -1)
                        return Report(
                            name, False, checked,
                            f"chain {[fmt(K) for K in order]} " + _describe(S, diff),
                        )
                if W.inversions not in class_ok:
                    class_ok[W.inversions] = all(
                        not kernels.homotopy_defect(S, i, W.inversions) for S in faces
                    )
                checked += 1
                if not class_ok[W.inversions]:
                    return Report(name, False, checked, f"homotopy formula fails for {W!r}")
    return Report(name, True, checked)


def reoriented_suite(ns: Sequence[int] = (2, 3), levels: Sequence[int] = (1,)) -> Report:
    """A chain from every U to its complement, and the reoriented homotopy identity."""
    name = "reoriented n in " + ",".join(map(str, ns))
    checked = 0
    found = 0
    for n in ns:
        for r in levels:
            for U in enumerate_bruhat(n, r):
                try:
                    flips = reoriented_maximal_chain(U)
                except ChainNotFound:
                    return Report(name, False, checked, f"no chain from {U!r} to its complement")
                found += 1
                rep = reoriented_homotopy_check(U, flips)
                checked += rep.checked
                if not rep:
                    return Report(name, False, checked, rep.counterexample)
    return Report(name, True, checked, None, {"chains_found": found})


def minimal_suite(
    cases: Iterable[tuple[int, int]] = ((1, 1), (2, 0), (2, 1)),
    uniform_cases: Iterable[tuple[int, int]] = ((2, 1), (3, 1)),
    scan_cases: Iterable[tuple[int, int]] = ((2, 1),),
) -> Report:
    """Minimal coproducts coincide with the cubillage coproducts.

    ``scan_cases`` repeat the search with coefficients in {-2, ..., 2};
    ``uniform_cases`` compare dimension-uniform families with Δ^∅ and
    (-1)^i T Δ^∅.
    """
    checked = 0
    counts = {}
    for tag, pool, coeffs, uniform in (
        ("plain", tuple(cases), (1, -1), False),
        ("scan", tuple(scan_cases), (1, -1, 2, -2), False),
        ("uniform", tuple(uniform_cases), (1, -1), True),
    ):
        for n, i in pool:
            sols = minimal_coproduct_search(n, i, uniform=uniform, coefficients=coeffs)
            if uniform:
                expected = [
                    delta_from_U(ConsistentSet.empty(n, i + 1), i),
                    delta_from_U(ConsistentSet.top(n, i + 1), i),
                ]
                if n <= i:
                    expected = expected[:1]
            else:
                expected = [delta_from_U(U, i) for U in enumerate_bruhat(n, i + 1)]
            counts[f"{tag} ({n},{i})"] = len(sols)
            checked += 1
            if not matches_cubillage_coproducts(sols, expected):
                return Report(
                    "minimal", False, checked,
                    f"{tag} ({n},{i}): {len(sols)} minimal solutions, "
                    f"{len(expected)} cubillage coproducts",
                    {"counts": counts},
                )
    return Report("minimal", True, checked, None, {"counts": counts})


SUITES = {
    "homotopy": homotopy_suite,
    "steenrod": steenrod_suite,
    "complement": complement_suite,
    "appendix": appendix_suite,
    "chains": chains_suite,
    "minimal": minimal_suite,
    "reoriented": reoriented_suite,
    "telescoping": telescoping_suite,
    "decomposition": decomposition_suite,
}
