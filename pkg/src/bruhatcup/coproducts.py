"""Cup-i coproducts on the simplex.

Every coproduct here is a map from nonempty faces S of [0, n] to tensor
chains of degree |S| - 1 + i.  The cubillage coproduct of U ∈ B([0, n], i+1)
has one term per (i+1)-subset L of S:

    Δ_i^U(S) = Σ_L (-1)^ε(L, A, B) (L ∪ A) ⊗ (L ∪ B)

where A is the initial vertex of the cube L and B = S - (L ∪ A).  Its value
on a proper face S uses U restricted to subsets of S, which is the contracted
set relabelled; the sign only depends on relative positions, so no
relabelling is needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterable, Sequence

from . import bits, kernels
from .bits import elements, fmt, full, nonempty_subsets, size, subsets_of_size
from .bruhat import (
    DEFAULT_NODE_CAP,
    ConsistentSet,
    ResourceCapExceeded,
    chain_states,
)
from .chains import TensorChain
from .zonotope import ZFace, facets, flip_face

Terms = dict


# --- signs ---------------------------------------------------------------

@dataclass(frozen=True)
class SignArgs:
    """Disjoint (L, A, B); ``support_size`` plays the role of n + 1."""

    L: int
    A: int
    B: int

    def __post_init__(self) -> None:
        if self.L & self.A or self.L & self.B or self.A & self.B:
            raise ValueError("L, A, B must be pairwise disjoint")

    @classmethod
    def of(cls, L, A, B) -> "SignArgs":
        return cls(bits.parse(L), bits.parse(A), bits.parse(B))

    @property
    def support_size(self) -> int:
        return size(self.L | self.A | self.B)


def epsilon(args: SignArgs) -> int:
    """Σ_{b∈B} |A|_{<b} + Σ_{l∈L} |L|_{<l} + |L ∪ A ∪ B|·|A|  (mod 2)."""
    return kernels.epsilon(args.L, args.A, args.B)


# --- reports ---------------------------------------------------------------

@dataclass
class Report:
    """Outcome of an exhaustive check; ``counterexample`` describes the first failure."""

    name: str
    passed: bool
    checked: int = 0
    counterexample: str | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name} ({self.checked} checks)"
        if self.counterexample:
            text += f": {self.counterexample}"
        return text

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "counterexample": self.counterexample,
            "details": self.details,
        }


def _describe(S: int, residual: Terms) -> str:
    return f"face {fmt(S)} leaves {TensorChain._wrap(dict(residual))}"


# --- coproducts ------------------------------------------------------------

class Coproduct:
    """A degree-``i`` map on the faces of Δ^n, evaluated lazily and memoised."""

    def __init__(self, n: int, i: int, values: Callable[[int], Terms], kind: str, **params):
        self.n = n
        self.i = i
        self.kind = kind
        self.params = params
        self._values = values
        self._cache: dict[int, Terms] = {}

    def raw(self, S: int) -> Terms:
        """Kernel dict of the value on ``S``; callers must not mutate it."""
        got = self._cache.get(S)
        if got is None:
            if S == 0 or S & ~full(self.n):
                raise ValueError(f"{fmt(S)} is not a face of [0, {self.n}]")
            got = self._values(S)
            self._cache[S] = got
        return got

    def __call__(self, S=None) -> TensorChain:
        S = full(self.n) if S is None else bits.parse(S)
        return TensorChain._wrap(dict(self.raw(S)))

    def faces(self) -> list[int]:
        return list(nonempty_subsets(full(self.n)))

    def table(self) -> dict[int, Terms]:
        return {S: self.raw(S) for S in self.faces()}

    def equals(self, other: "Coproduct") -> bool:
        if (self.n, self.i) != (other.n, other.i):
            return False
        return all(self.raw(S) == other.raw(S) for S in self.faces())

    def first_difference(self, other: "Coproduct") -> int | None:
        for S in self.faces():
            if self.raw(S) != other.raw(S):
                return S
        return None

    def _combine(self, others: Sequence[tuple[int, "Coproduct"]], kind: str) -> "Coproduct":
        def values(S: int) -> Terms:
            out: Terms = {}
            for c, D in others:
                kernels.add_into(out, D.raw(S), c)
            return out

        return Coproduct(self.n, self.i, values, kind)

    def __add__(self, other: "Coproduct") -> "Coproduct":
        return self._combine([(1, self), (1, other)], "combination")

    def __sub__(self, other: "Coproduct") -> "Coproduct":
        return self._combine([(1, self), (-1, other)], "combination")

    def __neg__(self) -> "Coproduct":
        return self._combine([(-1, self)], "combination")

    def __rmul__(self, c: int) -> "Coproduct":
        return self._combine([(c, self)], "combination")

    def transposed(self) -> "Coproduct":
        return Coproduct(
            self.n, self.i, lambda S: kernels.transpose(self.raw(S)), "transposed", base=self
        )

    def __repr__(self) -> str:
        return f"Coproduct({self.kind}, n={self.n}, i={self.i})"


def delta_from_U(U: ConsistentSet, i: int | None = None) -> Coproduct:
    """The cubillage coproduct Δ_i^U of U ∈ B([0, n], i+1)."""
    if i is None:
        i = U.r - 1
    if U.r != i + 1:
        raise ValueError(f"U lives in B([0,{U.n}],{U.r}) but Δ_{i} needs level {i + 1}")
    inv = U.inversions
    return Coproduct(U.n, i, lambda S: kernels.delta_terms(S, i, inv), "fromU", U=U)


def delta_classical(n: int, i: int) -> Coproduct:
    """Steenrod's Δ_i on Δ^n, indexed by overlapping partitions; Δ_{-1} = 0."""
    if i < -1:
        raise ValueError("i must be >= -1")
    return Coproduct(n, i, lambda S: kernels.steenrod_terms(S, i), "classical")


def delta_from_face(F: ZFace, i: int | None = None) -> Coproduct:
    """Single-term coproduct of a face (L, A) of Z([0, n], n + 1) with |L| = i + 1."""
    if i is None:
        i = size(F.L) - 1
    if size(F.L) != i + 1:
        raise ValueError("the face must have i + 1 generating vectors")
    n = len(elements(F.S)) - 1
    if F.S != full(n):
        raise ValueError("the face must live on the full support [0, n]")

    def values(S: int) -> Terms:
        if F.L & ~S:
            return {}
        A, B = F.A & S, F.B & S
        return {(F.L | A, F.L | B): -1 if kernels.epsilon(F.L, A, B) else 1}

    return Coproduct(n, i, values, "fromFace", face=F)


def _sum_of_faces(n: int, i: int, signed_faces: Sequence[tuple[int, ZFace]], kind: str, **params) -> Coproduct:
    parts = [(c, delta_from_face(F, i)) for c, F in signed_faces]

    def values(S: int) -> Terms:
        out: Terms = {}
        for c, D in parts:
            kernels.add_into(out, D.raw(S), c)
        return out

    return Coproduct(n, i, values, kind, **params)


def reoriented_flip_faces(U: ConsistentSet, flips: Sequence[int]) -> list[tuple[int, ZFace]]:
    """Signed flip faces along a chain from ``U`` to its complement.

    Each step flips one subset L; the face is read from whichever of the two
    neighbouring states does not contain L.  Steps adding an element of the
    complement of U count positively, removals of members of U negatively.
    """
    states = chain_states(U, flips)
    expected = U.complement()
    if states[-1].inversions != expected.inversions:
        raise ValueError("the chain does not end at the complement of U")
    if sorted(flips) != sorted(subsets_of_size(full(U.n), U.r + 1)):
        raise ValueError("a chain to the complement flips every subset exactly once")
    out = []
    for q, L in enumerate(flips):
        before, after = states[q], states[q + 1]
        if L in U.inversions:
            out.append((-1, flip_face(after, L)))
        else:
            out.append((1, flip_face(before, L)))
    return out


def delta_from_reoriented_chain(U: ConsistentSet, flips: Sequence[int]) -> Coproduct:
    """Δ_{r}^W for a chain W of flips from U ∈ B([0, n], r) to its complement."""
    flips = [bits.parse(L) for L in flips]
    faces = reoriented_flip_faces(U, flips)
    return _sum_of_faces(U.n, U.r, faces, "fromReorientedChain", U=U, flips=tuple(flips))


def delta_from_chain(chain_order: Sequence[int], n: int, r: int) -> Coproduct:
    """Δ_r as the sum of the flip coproducts along a maximal chain of B([0, n], r)."""
    return delta_from_reoriented_chain(ConsistentSet.empty(n, r), chain_order)


# --- boundary operators ------------------------------------------------------

def face_boundary_sum(D: Coproduct, S: int) -> Terms:
    """D(∂S) = Σ_p (-1)^p D(S - s_p)."""
    out: Terms = {}
    for p, v in enumerate(elements(S)):
        face = S & ~(1 << v)
        if face:
            kernels.add_into(out, D.raw(face), -1 if p & 1 else 1)
    return out


def homotopy_lhs(D: Coproduct, S: int) -> Terms:
    """(∂ ∘ D - (-1)^i D ∘ ∂)(S)."""
    out = kernels.tensor_boundary(D.raw(S))
    kernels.add_into(out, face_boundary_sum(D, S), 1 if D.i & 1 else -1)
    return out


def symmetrised(D: Coproduct, S: int, sign: int) -> Terms:
    """(1 + sign·T) D(S)."""
    val = D.raw(S)
    out = dict(val)
    kernels.add_into(out, kernels.transpose(val), sign)
    return out


def homotopy_residual(U: ConsistentSet, i: int | None = None) -> dict[int, TensorChain]:
    """Faces where ∂Δ_i^U - (-1)^i Δ_i^U ∂ differs from (1 + (-1)^i T) Δ_{i-1}^∅.

    The dict is empty exactly when the homotopy formula holds everywhere.
    """
    D = delta_from_U(U, i)
    i = D.i
    out = {}
    for S in D.faces():
        res = kernels.homotopy_defect(S, i, U.inversions)
        if res:
            out[S] = TensorChain._wrap(res)
    return out


def coproduct_homotopy_residual(D: Coproduct) -> dict[int, TensorChain]:
    """The same residual for an arbitrary coproduct ``D``."""
    prev = Coproduct(D.n, D.i - 1, lambda S: kernels.delta_terms(S, D.i - 1, ()), "fromU")
    sign = 1 if D.i % 2 == 0 else -1
    out = {}
    for S in D.faces():
        res = homotopy_lhs(D, S)
        kernels.add_into(res, symmetrised(prev, S, sign), -1)
        if res:
            out[S] = TensorChain._wrap(res)
    return out


# --- named identities ----------------------------------------------------------

def _full_level(S: int, k: int) -> frozenset[int]:
    return frozenset(subsets_of_size(S, k))


def steenrod_comparison(i: int, n: int) -> Report:
    """Compare Δ_i^∅ and Δ_i^{full} with Steenrod's Δ_i on every face of Δ^n.

    i even: Δ^∅ = (-1)^{i/2} Δ_i and Δ^full = (-1)^{i/2} T Δ_i.
    i odd:  Δ^∅ = (-1)^{⌈i/2⌉} T Δ_i and Δ^full = (-1)^{⌊i/2⌋} Δ_i.
    """
    if i % 2 == 0:
        s_empty, t_empty = (-1) ** (i // 2), False
        s_full, t_full = (-1) ** (i // 2), True
    else:
        s_empty, t_empty = (-1) ** ((i + 1) // 2), True
        s_full, t_full = (-1) ** (i // 2), False
    name = f"steenrod i={i} n={n}"
    checked = 0
    for S in nonempty_subsets(full(n)):
        classical = kernels.steenrod_terms(S, i)
        flipped = kernels.transpose(classical)
        for label, U, sign, use_t in (
            ("empty", (), s_empty, t_empty),
            ("full", _full_level(S, i + 2), s_full, t_full),
        ):
            got = kernels.delta_terms(S, i, U)
            want = flipped if use_t else classical
            diff = kernels.add_into(dict(got), want, -sign)
            checked += 1
            if diff:
                return Report(name, False, checked, f"Δ^{label}: " + _describe(S, diff))
    return Report(name, True, checked)


def complement_check(U: ConsistentSet, i: int | None = None) -> Report:
    """Δ_i^{complement of U} = (-1)^i T Δ_i^U on every face."""
    D = delta_from_U(U, i)
    comp = U.complement().inversions
    name = f"complement {U!r}"
    checked = 0
    for S in D.faces():
        res = kernels.complement_defect(S, D.i, U.inversions, comp)
        checked += 1
        if res:
            return Report(name, False, checked, _describe(S, res))
    return Report(name, True, checked)


def term_boundary(F: ZFace) -> dict[str, TensorChain]:
    """Boundary of the signed term of ``F`` split by facet type.

    Returns the groups ``lower`` (signs ε(G)), ``upper`` (signs ε(H) + 1) and
    ``contraction`` (faces F/k for k ∈ A ∪ B, signs ε(F/k) + |S|_{<k} + i).
    Their sum is the tensor boundary of (-1)^ε(F) (L ∪ A) ⊗ (L ∪ B).
    """
    if F.L == 0 or size(F.S) < 2:
        raise ValueError("need at least one generator on a support of size >= 2")
    i = size(F.L) - 1
    lower, upper = facets(F)
    groups: dict[str, Terms] = {"lower": {}, "upper": {}, "contraction": {}}

    def put(group: str, G: ZFace, parity: int) -> None:
        x, y = G.term()
        if x and y:
            kernels.add_into(groups[group], {(x, y): 1}, -1 if parity & 1 else 1)

    for G in lower:
        put("lower", G, kernels.epsilon(G.L, G.A, G.B))
    for H in upper:
        put("upper", H, kernels.epsilon(H.L, H.A, H.B) + 1)
    for k in elements(F.A | F.B):
        bit = 1 << k
        G = ZFace(F.L, F.A & ~bit, F.S & ~bit)
        pos = size(F.S & (bit - 1))
        put("contraction", G, kernels.epsilon(G.L, G.A, G.B) + pos + i)
    return {k: TensorChain._wrap(v) for k, v in groups.items()}


def decomposition_defect(F: ZFace) -> Terms:
    """Sum of the three groups minus the tensor boundary; zero when the split is right."""
    groups = term_boundary(F)
    x, y = F.term()
    sign = -1 if kernels.epsilon(F.L, F.A, F.B) else 1
    out = kernels.tensor_boundary({(x, y): sign})
    for g in groups.values():
        kernels.add_into(out, g.raw(), -1)
    return out


def covering_homotopy_check(U: ConsistentSet, V: ConsistentSet, i: int | None = None) -> Report:
    """∂Δ_i^F - (-1)^i Δ_i^F ∂ = Δ_{i-1}^U - Δ_{i-1}^V for the flip face F of U ⋖ V.

    U and V live in B([0, n], i).  For i = 0 the right-hand side uses the
    extension of the cubillage formula to the single empty generator set.
    """
    if (U.n, U.r) != (V.n, V.r):
        raise ValueError("U and V must live in the same order")
    if i is None:
        i = U.r
    if U.r != i:
        raise ValueError("U must lie in B([0, n], i)")
    added = V.inversions - U.inversions
    if len(added) != 1 or not U.inversions <= V.inversions:
        raise ValueError("V does not cover U")
    (K,) = added
    F = flip_face(U, K)
    D = delta_from_face(F, i)
    name = f"cover {U!r} + {fmt(K)}"
    checked = 0
    for S in D.faces():
        res = homotopy_lhs(D, S)
        kernels.add_into(res, kernels.delta_terms(S, i - 1, U.inversions), -1)
        kernels.add_into(res, kernels.delta_terms(S, i - 1, V.inversions), 1)
        checked += 1
        if res:
            return Report(name, False, checked, _describe(S, res))
    return Report(name, True, checked)


def reoriented_homotopy_check(U: ConsistentSet, flips: Sequence[int]) -> Report:
    """∂Δ^W - (-1)^r Δ^W ∂ = (1 + (-1)^r T) Δ_{r-1}^U for a chain W from U ∈ B([0, n], r)."""
    D = delta_from_reoriented_chain(U, flips)
    r = U.r
    sign = 1 if r % 2 == 0 else -1
    name = f"reoriented {U!r}"
    checked = 0
    for S in D.faces():
        res = homotopy_lhs(D, S)
        prev = kernels.delta_terms(S, r - 1, U.inversions)
        kernels.add_into(res, prev, -1)
        kernels.add_into(res, kernels.transpose(prev), -sign)
        checked += 1
        if res:
            return Report(name, False, checked, _describe(S, res))
    return Report(name, True, checked)


def appendix_sign_suite(n_max: int) -> Report:
    """Every sign lemma on every disjoint (L, A, B) inside [0, n_max]."""
    checked, failure = kernels.appendix_sweep(n_max)
    name = f"appendix n_max={n_max}"
    if failure is None:
        return Report(name, True, checked)
    lemma, L, A, B, k = failure
    where = f"lemma {lemma} at L={fmt(L)} A={fmt(A)} B={fmt(B)}"
    if k >= 0:
        where += f" k={k}"
    return Report(name, False, checked, where)


# --- exhaustive search for minimal coproducts -------------------------------------

def _relabel(mask: int, targets: Sequence[int]) -> int:
    out = 0
    for j, t in enumerate(targets):
        if mask >> j & 1:
            out |= 1 << t
    return out


class _Columns:
    """Candidate terms of a given degree and their boundaries, indexed by row."""

    def __init__(self, ground: int, degree: int):
        subsets = list(nonempty_subsets(ground))
        self.cols: list[tuple[int, int]] = []
        self.boundary: list[Terms] = []
        self.by_row: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for x in subsets:
            for y in subsets:
                if size(x) + size(y) - 2 != degree:
                    continue
                bd = kernels.tensor_boundary({(x, y): 1})
                if not bd:
                    continue
                j = len(self.cols)
                self.cols.append((x, y))
                self.boundary.append(bd)
                for row, e in bd.items():
                    self.by_row.setdefault(row, []).append((j, e))


def _row_key(row: tuple[int, int]) -> tuple:
    x, y = row
    return (bits.lex_key(x), bits.lex_key(y))


def _exact_solutions(
    target: Terms,
    columns: _Columns,
    coefficients: Sequence[int],
    t: int,
    budget: list[int],
) -> list[Terms]:
    """All x with exactly ``t`` terms, coefficients drawn from ``coefficients``, and ∂x = target.

    Each step picks the first unresolved row and branches over the columns
    that touch it, which is complete for minimal solutions.
    """
    found: set[frozenset] = set()
    chosen: dict[int, int] = {}
    residual = dict(target)

    def rec(left: int) -> None:
        budget[0] -= 1
        if budget[0] < 0:
            raise ResourceCapExceeded("minimal coproduct search exceeded its node budget")
        if not residual:
            if left == 0:
                found.add(frozenset(chosen.items()))
            return
        if left == 0:
            return
        row = min(residual, key=_row_key)
        for j, e in columns.by_row.get(row, ()):
            if j in chosen:
                continue
            for c in coefficients:
                chosen[j] = c
                kernels.add_into(residual, columns.boundary[j], -c)
                rec(left - 1)
                kernels.add_into(residual, columns.boundary[j], c)
                del chosen[j]

    rec(t)
    return [{columns.cols[j]: c for j, c in sol} for sol in sorted(found, key=sorted)]


def minimal_coproduct_search(
    n: int,
    i: int,
    uniform: bool = False,
    coefficients: Sequence[int] = (1, -1),
    node_cap: int = DEFAULT_NODE_CAP,
) -> list[Coproduct]:
    """All coproducts of degree ``i`` on Δ^n satisfying the homotopy formula
    with a minimal number of terms on every face.

    Faces are processed by size.  For each face the minimum is taken over
    every way of completing the smaller faces found so far, and only the
    completions reaching it are kept.  For i = 0 the vertices are pinned to
    p ⊗ p.  Candidate terms range over all pairs of faces of Δ^n; with
    ``uniform`` the value on a face depends only on its dimension, so one
    representative [0, k-1] per size is solved using its own faces only.
    """
    if i < 0 or n < 0:
        raise ValueError("need n >= 0 and i >= 0")
    ground = full(n)
    sign_rhs = 1 if i % 2 == 0 else -1
    bd_sign = -1 if i & 1 else 1  # (-1)^i
    budget = [node_cap]
    # a state maps each solved face (or representative size) to its value
    states: list[dict[int, Terms]] = [{}]

    def value(state: dict[int, Terms], S: int) -> Terms:
        if not uniform:
            return state[S]
        rep = state[size(S)]
        targets = elements(S)
        return {(_relabel(x, targets), _relabel(y, targets)): c for (x, y), c in rep.items()}

    for k in range(1, n + 2):
        faces = [full(k - 1)] if uniform else subsets_of_size(ground, k)
        key = (lambda S: size(S)) if uniform else (lambda S: S)
        degree = k - 1 + i
        columns = _Columns(full(k - 1) if uniform else ground, degree)
        for S in faces:
            if i == 0 and k == 1:
                for st in states:
                    st[key(S)] = {(S, S): 1}
                continue
            prev = kernels.delta_terms(S, i - 1, ())
            rhs = dict(prev)
            kernels.add_into(rhs, kernels.transpose(prev), sign_rhs)
            targets = []
            for st in states:
                b = dict(rhs)
                for p, v in enumerate(elements(S)):
                    face = S & ~(1 << v)
                    if face:
                        kernels.add_into(b, value(st, face), bd_sign * (-1 if p & 1 else 1))
                targets.append(b)
            best: list[list[Terms]] | None = None
            for t in range(0, comb(k, i + 1) + 1):
                sols = [_exact_solutions(b, columns, coefficients, t, budget) for b in targets]
                if any(sols):
                    best = sols
                    break
            if best is None:
                raise ResourceCapExceeded(f"no solution on {fmt(S)} within the term bound")
            new_states = []
            for st, sols in zip(states, best):
                for sol in sols:
                    nxt = dict(st)
                    nxt[key(S)] = sol
                    new_states.append(nxt)
            states = new_states
    out = []
    for st in states:
        table = {S: value(st, S) for S in nonempty_subsets(ground)}
        out.append(
            Coproduct(n, i, lambda S, table=table: table[S], "table", uniform=uniform)
        )
    return out


def matches_cubillage_coproducts(found: Iterable[Coproduct], expected: Iterable[Coproduct]) -> bool:
    """Whether two families of coproducts coincide as sets of face tables."""

    def canon(D: Coproduct):
        return tuple(tuple(sorted(D.raw(S).items())) for S in D.faces())

    return sorted(map(canon, found)) == sorted(map(canon, expected))
