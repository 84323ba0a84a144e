"""Simplicial complexes, Σ-consistent sets and Steenrod squares mod 2.

A complex is a downward closed family of nonempty vertex sets.  A family U
of (r+1)-vertex simplices is Σ-consistent when every (r+2)-vertex simplex of
the complex meets U in a beginning or ending segment of its packet.  The
coproduct Δ_i^U of such a U acts on a simplex σ through U ∩ C(σ, i+2), and
cup-i products, cohomology and squares are computed over the two-element
field with ints as bit vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import bits, kernels
from .bits import elements, fmt, full, lex_key, size, subsets_of_size
from .bruhat import (
    DEFAULT_SET_CAP,
    ConsistentSet,
    InconsistentSet,
    ResourceCapExceeded,
    enumerate_codes,
    decode,
    segment_system,
)
from .coproducts import Report


def _canon(masks: Iterable[int]) -> list[int]:
    return sorted(masks, key=lambda m: (size(m), lex_key(m)))


class SimplicialComplex:
    """Finite simplicial complex on the vertices 0..n."""

    def __init__(self, facets: Iterable, n: int | None = None):
        masks = [bits.parse(f) for f in facets]
        if any(m == 0 for m in masks):
            raise ValueError("simplices must be nonempty")
        top = max((elements(m)[-1] for m in masks), default=-1)
        self.n = top if n is None else n
        if top > self.n:
            raise ValueError(f"vertex {top} exceeds the declared range [0, {self.n}]")
        closed: set[int] = set()
        for m in masks:
            if m in closed:
                continue
            sub = m
            while sub:
                closed.add(sub)
                sub = (sub - 1) & m
        self.simplices = frozenset(closed)
        self._by_size: dict[int, list[int]] = {}
        for s in _canon(closed):
            self._by_size.setdefault(size(s), []).append(s)

    @classmethod
    def closure(cls, facets: Iterable, n: int | None = None) -> "SimplicialComplex":
        return cls(facets, n)

    def __contains__(self, sigma) -> bool:
        return bits.parse(sigma) in self.simplices

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SimplicialComplex) and self.simplices == other.simplices

    def __hash__(self) -> int:
        return hash(self.simplices)

    @property
    def dim(self) -> int:
        return max(self._by_size, default=0) - 1

    def simplices_of_dim(self, p: int) -> list[int]:
        """The p-simplices (p + 1 vertices) in lexicographic order."""
        return list(self._by_size.get(p + 1, ()))

    def maximal(self) -> list[int]:
        out = []
        for s in self.simplices:
            if not any(t != s and not s & ~t for t in self._by_size.get(size(s) + 1, ())):
                out.append(s)
        return _canon(out)

    def euler_characteristic(self) -> int:
        return sum((-1) ** (k - 1) * len(v) for k, v in self._by_size.items())

    def to_json(self) -> dict:
        return {"vertices": self.n + 1, "facets": [bits.to_json(s) for s in self.maximal()]}

    @classmethod
    def from_json(cls, data: dict) -> "SimplicialComplex":
        n = int(data["vertices"]) - 1
        facets = [bits.vset(f) for f in data["facets"]]
        for f in facets:
            if f == 0 or f & ~full(n):
                raise ValueError(f"facet {bits.to_json(f)} uses vertices outside 0..{n}")
        return cls(facets, n)

    def __repr__(self) -> str:
        return f"SimplicialComplex({', '.join(fmt(s) for s in self.maximal())})"


# --- standard complexes -------------------------------------------------------

def full_simplex(n: int) -> SimplicialComplex:
    return SimplicialComplex([full(n)], n)


def simplex_boundary(n: int) -> SimplicialComplex:
    """Boundary of the n-simplex, a sphere of dimension n - 1."""
    return SimplicialComplex(subsets_of_size(full(n), n), n)


def circle() -> SimplicialComplex:
    return simplex_boundary(2)


def projective_plane() -> SimplicialComplex:
    """The six-vertex projective plane; its 1-skeleton is the complete graph."""
    facets = ["012", "023", "034", "045", "015", "124", "235", "134", "245", "135"]
    return SimplicialComplex(facets, 5)


# --- Σ-consistent sets -----------------------------------------------------------

@dataclass(frozen=True)
class SigmaConsistentSet:
    complex: SimplicialComplex
    r: int
    inversions: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "inversions", frozenset(self.inversions))
        _check_members(self.inversions, self.complex, self.r)

    @classmethod
    def of(cls, complex: SimplicialComplex, r: int, members: Iterable, check: bool = True):
        U = cls(complex, r, frozenset(bits.parse(m) for m in members))
        if check:
            bad = first_sigma_violation(U.inversions, complex, r)
            if bad is not None:
                raise InconsistentSet(
                    f"packet of {fmt(bad)} meets the set in neither a beginning "
                    "nor an ending segment",
                    bad,
                )
        return U

    def sorted_members(self) -> list[int]:
        return sorted(self.inversions, key=lex_key)

    def __repr__(self) -> str:
        body = ", ".join(fmt(K) for K in self.sorted_members())
        return f"SigmaConsistentSet(r={self.r}, {{{body}}})"


def _check_members(U: Iterable[int], complex: SimplicialComplex, r: int) -> None:
    for K in U:
        if size(K) != r + 1 or K not in complex.simplices:
            raise ValueError(f"{fmt(K)} is not a simplex with {r + 1} vertices")


def first_sigma_violation(U: Iterable[int], complex: SimplicialComplex, r: int) -> int | None:
    U = frozenset(U)
    _check_members(U, complex, r)
    for M in complex.simplices_of_dim(r + 1):
        if not kernels.packet_consistent(U, M):
            return M
    return None


def is_sigma_consistent(U: Iterable, complex: SimplicialComplex, r: int) -> bool:
    """Segment condition at every (r+2)-vertex simplex of the complex."""
    return first_sigma_violation((bits.parse(K) for K in U), complex, r) is None


def addable_simplices(U: SigmaConsistentSet) -> list[int]:
    """Simplices K outside U with U ∪ {K} still Σ-consistent."""
    out = []
    for K in U.complex.simplices_of_dim(U.r):
        if K in U.inversions:
            continue
        V = U.inversions | {K}
        through = [M for M in U.complex.simplices_of_dim(U.r + 1) if not K & ~M]
        if all(kernels.packet_consistent(V, M) for M in through):
            out.append(K)
    return out


def enumerate_sigma_consistent(
    complex: SimplicialComplex, r: int, cap: int = DEFAULT_SET_CAP
) -> list[SigmaConsistentSet]:
    """All Σ-consistent sets at level r, by full backtracking over the simplices."""
    items = complex.simplices_of_dim(r)
    packets = complex.simplices_of_dim(r + 1)
    links = segment_system(items, packets)
    try:
        codes = kernels.enumerate_segments(len(items), links, len(packets), cap)
    except OverflowError:
        raise ResourceCapExceeded(f"more than {cap} Σ-consistent sets") from None
    found = [decode(items, c) for c in codes]
    found.sort(key=lambda U: (len(U), sorted(lex_key(K) for K in U)))
    return [SigmaConsistentSet(complex, r, U) for U in found]


def restrict_global(U: ConsistentSet, complex: SimplicialComplex) -> SigmaConsistentSet:
    """U ∩ Σ at the level of U; always Σ-consistent."""
    kept = frozenset(K for K in U.inversions if K in complex.simplices)
    return SigmaConsistentSet(complex, U.r, kept)


def global_restrictions(complex: SimplicialComplex, r: int, cap: int = DEFAULT_SET_CAP) -> list[frozenset[int]]:
    """Distinct restrictions to the complex of the elements of B([0, n], r)."""
    items, codes = enumerate_codes(complex.n, r, cap)
    keep = 0
    for j, K in enumerate(items):
        if K in complex.simplices:
            keep |= 1 << j
    distinct = sorted({c & keep for c in codes})
    out = [decode(items, c) for c in distinct]
    out.sort(key=lambda U: (len(U), sorted(lex_key(K) for K in U)))
    return out


# --- coproducts on complexes ----------------------------------------------------

def _inv(U) -> frozenset:
    if U is None:
        return frozenset()
    if isinstance(U, (SigmaConsistentSet, ConsistentSet)):
        return U.inversions
    return frozenset(U)


def delta_complex(U: SigmaConsistentSet, i: int, sigma) -> dict:
    """Δ_i^{U_σ}(σ) as a kernel dict."""
    if U.r != i + 1:
        raise ValueError(f"Δ_{i} needs a Σ-consistent set at level {i + 1}")
    sigma = bits.parse(sigma)
    if sigma not in U.complex.simplices:
        raise ValueError(f"{fmt(sigma)} is not a simplex of the complex")
    return kernels.delta_terms(sigma, i, U.inversions)


def complex_homotopy_residual(U: SigmaConsistentSet, i: int) -> dict[int, dict]:
    """Simplices on which the homotopy formula fails (empty when it holds)."""
    if U.r != i + 1:
        raise ValueError(f"Δ_{i} needs a Σ-consistent set at level {i + 1}")
    out = {}
    for sigma in _canon(U.complex.simplices):
        res = kernels.homotopy_defect(sigma, i, U.inversions)
        if res:
            out[sigma] = res
    return out


# --- mod 2 cochains ------------------------------------------------------------------

@dataclass(frozen=True)
class Mod2Cochain:
    """A function Σ_p → {0, 1}, stored as its support."""

    complex: SimplicialComplex
    p: int
    support: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "support", frozenset(self.support))
        for s in self.support:
            if size(s) != self.p + 1 or s not in self.complex.simplices:
                raise ValueError(f"{fmt(s)} is not a {self.p}-simplex of the complex")

    @classmethod
    def of(cls, complex: SimplicialComplex, p: int, support: Iterable) -> "Mod2Cochain":
        return cls(complex, p, frozenset(bits.parse(s) for s in support))

    @classmethod
    def zero(cls, complex: SimplicialComplex, p: int) -> "Mod2Cochain":
        return cls(complex, p, frozenset())

    def __call__(self, sigma) -> int:
        return int(bits.parse(sigma) in self.support)

    def __add__(self, other: "Mod2Cochain") -> "Mod2Cochain":
        if self.p != other.p:
            raise ValueError("cochains of different degrees")
        return Mod2Cochain(self.complex, self.p, self.support ^ other.support)

    def __bool__(self) -> bool:
        return bool(self.support)

    def to_vector(self) -> int:
        basis = self.complex.simplices_of_dim(self.p)
        return sum(1 << j for j, s in enumerate(basis) if s in self.support)

    @classmethod
    def from_vector(cls, complex: SimplicialComplex, p: int, vec: int) -> "Mod2Cochain":
        basis = complex.simplices_of_dim(p)
        return cls(complex, p, frozenset(s for j, s in enumerate(basis) if vec >> j & 1))

    def to_json(self) -> dict:
        return {"p": self.p, "support": [bits.to_json(s) for s in _canon(self.support)]}

    @classmethod
    def from_json(cls, complex: SimplicialComplex, data: dict) -> "Mod2Cochain":
        return cls(complex, int(data["p"]), frozenset(bits.vset(s) for s in data["support"]))

    def __repr__(self) -> str:
        return f"Mod2Cochain(p={self.p}, {{{', '.join(fmt(s) for s in _canon(self.support))}}})"


def coboundary(u: Mod2Cochain) -> Mod2Cochain:
    """δu(τ) = Σ_{faces σ of τ} u(σ) mod 2."""
    out = set()
    for tau in u.complex.simplices_of_dim(u.p + 1):
        parity = 0
        for v in elements(tau):
            if tau & ~(1 << v) in u.support:
                parity ^= 1
        if parity:
            out.add(tau)
    return Mod2Cochain(u.complex, u.p + 1, frozenset(out))


def _cup(u: Mod2Cochain, v: Mod2Cochain, i: int, terms_of) -> Mod2Cochain:
    if u.complex is not v.complex and u.complex != v.complex:
        raise ValueError("cochains live on different complexes")
    deg = u.p + v.p - i
    if deg < 0:
        return Mod2Cochain.zero(u.complex, 0)
    out = set()
    for sigma in u.complex.simplices_of_dim(deg):
        parity = 0
        for (x, y), c in terms_of(sigma).items():
            if c & 1 and x in u.support and y in v.support:
                parity ^= 1
        if parity:
            out.add(sigma)
    return Mod2Cochain(u.complex, deg, frozenset(out))


def cup_i(u: Mod2Cochain, v: Mod2Cochain, i: int, U=None) -> Mod2Cochain:
    """(u ⌣_i^U v)(σ) = (u ⊗ v) Δ_i^U(σ) mod 2; ``U=None`` means the empty set."""
    inv = _inv(U)
    if isinstance(U, SigmaConsistentSet) and U.r != i + 1:
        raise ValueError(f"cup-{i} needs a Σ-consistent set at level {i + 1}")
    return _cup(u, v, i, lambda s: kernels.delta_terms(s, i, inv))


def cup_classical(u: Mod2Cochain, v: Mod2Cochain, i: int) -> Mod2Cochain:
    """Cup-i product of Steenrod's coproduct, used as an independent reference."""
    return _cup(u, v, i, lambda s: kernels.steenrod_terms(s, i))


# --- linear algebra over the two-element field -----------------------------------------

def _coboundary_matrix(complex: SimplicialComplex, p: int) -> list[int]:
    """Columns of δ_p as bit vectors over Σ_{p+1}."""
    rows = {s: j for j, s in enumerate(complex.simplices_of_dim(p + 1))}
    cols = []
    for s in complex.simplices_of_dim(p):
        vec = 0
        for v in elements(full(complex.n) & ~s):
            t = s | 1 << v
            if t in rows:
                vec |= 1 << rows[t]
        cols.append(vec)
    return cols


def _low(v: int) -> int:
    return (v & -v).bit_length() - 1


class _Echelon:
    """Incremental basis with pivots at the lowest set bit; tracks combinations."""

    def __init__(self) -> None:
        self.rows: dict[int, tuple[int, int]] = {}  # pivot -> (vector, combination)

    def reduce(self, v: int, comb: int = 0) -> tuple[int, int]:
        """Clear every pivot position of ``v``; the result is canonical."""
        mask = v
        while mask:
            b = _low(mask)
            hit = self.rows.get(b)
            if hit is not None:
                v ^= hit[0]
                comb ^= hit[1]
            mask = v & ~((1 << (b + 1)) - 1)
        return v, comb

    def add(self, v: int, comb: int) -> bool:
        v, comb = self.reduce(v, comb)
        if not v:
            return False
        self.rows[_low(v)] = (v, comb)
        return True


def _kernel_basis(cols: list[int]) -> list[int]:
    """Basis of {x : Σ x_j cols[j] = 0}, as bit vectors over column indices."""
    ech = _Echelon()
    out = []
    for j, c in enumerate(cols):
        red, comb = ech.reduce(c, 1 << j)
        if red:
            ech.rows[_low(red)] = (red, comb)
        else:
            out.append(comb)
    return out


def _rank(vectors: Iterable[int]) -> int:
    ech = _Echelon()
    return sum(ech.add(v, 0) for v in vectors)


@dataclass
class Mod2CohomologyBasis:
    complex: SimplicialComplex
    p: int
    representatives: list[Mod2Cochain]
    coboundary_basis: list[Mod2Cochain]

    @property
    def dimension(self) -> int:
        return len(self.representatives)

    def coordinates(self, u: Mod2Cochain) -> list[int]:
        """Coefficients of [u] in the representative basis; u must be a cocycle."""
        if u.p != self.p:
            raise ValueError("degree mismatch")
        if coboundary(u):
            raise ValueError("not a cocycle")
        ech = _Echelon()
        for b in self.coboundary_basis:
            ech.add(b.to_vector(), 0)
        for j, r in enumerate(self.representatives):
            ech.add(r.to_vector(), 1 << j)
        rest, comb = ech.reduce(u.to_vector(), 0)
        if rest:
            raise ValueError("cocycle outside the span of the computed basis")
        return [comb >> j & 1 for j in range(self.dimension)]


def cohomology_mod2(complex: SimplicialComplex, p: int) -> Mod2CohomologyBasis:
    """Cocycle representatives of H^p(Σ; Z/2) and a basis of the coboundaries.

    Pivots are taken at the lexicographically first simplex, so the choice
    of representatives is deterministic.
    """
    cols = _coboundary_matrix(complex, p)
    cocycles = _kernel_basis(cols)
    prev = _coboundary_matrix(complex, p - 1) if p > 0 else []
    ech = _Echelon()
    bounds = []
    for c in prev:
        red, _ = ech.reduce(c)
        if red:
            ech.rows[_low(red)] = (red, 0)
            bounds.append(c)
    reps = []
    for z in cocycles:
        red, _ = ech.reduce(z)
        if red:
            ech.rows[_low(red)] = (red, 0)
            reps.append(red)
    return Mod2CohomologyBasis(
        complex,
        p,
        [Mod2Cochain.from_vector(complex, p, v) for v in reps],
        [Mod2Cochain.from_vector(complex, p, v) for v in bounds],
    )


def betti_mod2(complex: SimplicialComplex) -> tuple[int, ...]:
    return tuple(cohomology_mod2(complex, p).dimension for p in range(complex.dim + 1))


# --- Steenrod squares ---------------------------------------------------------------

def steenrod_square(u: Mod2Cochain, i: int, U=None, classical: bool = False) -> Mod2Cochain:
    """A cocycle representing Sq_i^U [u] = [u ⌣_i^U u]."""
    if coboundary(u):
        raise ValueError("the representative is not a cocycle")
    if classical:
        return cup_classical(u, u, i)
    return cup_i(u, u, i, U)


def sq_matrix(complex: SimplicialComplex, i: int, p: int, U=None, classical: bool = False) -> list[list[int]]:
    """Matrix of Sq_i : H^p → H^{2p-i} in the computed bases (rows index the target)."""
    source = cohomology_mod2(complex, p)
    q = 2 * p - i
    if q < 0:
        return []
    target = cohomology_mod2(complex, q)
    cols = [target.coordinates(steenrod_square(r, i, U, classical)) for r in source.representatives]
    return [[col[a] for col in cols] for a in range(target.dimension)]


def sq_invariance_check(
    complex: SimplicialComplex,
    i: int,
    p: int,
    cap: int = DEFAULT_SET_CAP,
    include_local: bool = False,
) -> Report:
    """Sq_i^U on H^p is the same for every U restricting from B([0, n], i+1).

    Also checks Sq(x + y) = Sq(x) + Sq(y) on all pairs of basis classes.
    With ``include_local`` the Σ-consistent sets that are not restrictions
    are evaluated too and reported in ``details`` without affecting the
    verdict.
    """
    name = f"sq invariance i={i} p={p}"
    restrictions = global_restrictions(complex, i + 1, cap)
    source = cohomology_mod2(complex, p)
    q = 2 * p - i
    target = cohomology_mod2(complex, q) if q >= 0 else None
    reps = source.representatives
    reference = None
    checked = 0

    def coords(w: Mod2Cochain) -> tuple[int, ...]:
        if target is None:
            return ()
        return tuple(target.coordinates(w))

    for U in restrictions:
        mat = sq_matrix(complex, i, p, U)
        checked += 1
        if reference is None:
            reference = mat
        elif mat != reference:
            return Report(
                name, False, checked,
                f"U={{{', '.join(fmt(K) for K in _canon(U))}}} gives {mat}, expected {reference}",
            )
        for a in range(len(reps)):
            for b in range(a + 1, len(reps)):
                lhs = coords(steenrod_square(reps[a] + reps[b], i, U))
                sa = coords(steenrod_square(reps[a], i, U))
                sb = coords(steenrod_square(reps[b], i, U))
                checked += 1
                if lhs != tuple(x ^ y for x, y in zip(sa, sb)):
                    return Report(
                        name, False, checked,
                        f"additivity fails for classes {a}, {b} with U={sorted(map(fmt, U))}",
                    )
    details: dict = {"restrictions": len(restrictions), "matrix": reference}
    if include_local:
        local = enumerate_sigma_consistent(complex, i + 1, cap)
        restricted = set(restrictions)
        differing = 0
        for U in local:
            if U.inversions in restricted:
                continue
            if sq_matrix(complex, i, p, U) != reference:
                differing += 1
        details["local_only"] = len(local) - len(restricted)
        details["local_only_differing"] = differing
    return Report(name, True, checked, None, details)
