"""Higher Bruhat orders as consistent sets of subsets.

An element of B([0, n], r) is stored as its inversion set: a family of
(r+1)-subsets of [0, n] meeting every (r+2)-packet in a beginning or ending
lexicographic segment.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import bits, kernels
from .bits import elements, full, lex_key, size, subsets_of_size

DEFAULT_SET_CAP = 5_000_000
DEFAULT_NODE_CAP = 10_000_000


class InconsistentSet(ValueError):
    """Raised when a family fails the packet condition."""

    def __init__(self, message: str, packet: int | None = None):
        super().__init__(message)
        self.packet = packet


class ResourceCapExceeded(RuntimeError):
    pass


class ChainNotFound(LookupError):
    pass


def _sort_key(masks: Iterable[int]) -> tuple:
    ms = sorted(masks, key=lex_key)
    return (len(ms), tuple(lex_key(m) for m in ms))


@dataclass(frozen=True)
class ConsistentSet:
    n: int
    r: int
    inversions: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "inversions", frozenset(self.inversions))
        ground = full(self.n)
        for K in self.inversions:
            if size(K) != self.r + 1 or K & ~ground:
                raise ValueError(
                    f"{bits.fmt(K)} is not an {self.r + 1}-subset of [0, {self.n}]"
                )

    @classmethod
    def of(cls, n: int, r: int, members: Iterable, check: bool = True) -> "ConsistentSet":
        U = cls(n, r, frozenset(bits.parse(m) for m in members))
        if check:
            bad = first_violation(U.inversions, n, r)
            if bad is not None:
                raise InconsistentSet(
                    f"packet of {bits.fmt(bad)} meets the set in neither a "
                    "beginning nor an ending segment",
                    bad,
                )
        return U

    @classmethod
    def empty(cls, n: int, r: int) -> "ConsistentSet":
        return cls(n, r, frozenset())

    @classmethod
    def top(cls, n: int, r: int) -> "ConsistentSet":
        return cls(n, r, frozenset(subsets_of_size(full(n), r + 1)))

    def __contains__(self, K: int) -> bool:
        return K in self.inversions

    def __len__(self) -> int:
        return len(self.inversions)

    def sorted_members(self) -> list[int]:
        return sorted(self.inversions, key=lex_key)

    def sort_key(self) -> tuple:
        return _sort_key(self.inversions)

    def complement(self) -> "ConsistentSet":
        rest = set(subsets_of_size(full(self.n), self.r + 1)) - self.inversions
        return ConsistentSet(self.n, self.r, frozenset(rest))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "inversions": [bits.to_json(K) for K in self.sorted_members()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ConsistentSet":
        return cls.of(data["n"], data["r"], [bits.vset(k) for k in data["inversions"]])

    def __repr__(self) -> str:
        body = ", ".join(bits.fmt(K) for K in self.sorted_members())
        return f"ConsistentSet(n={self.n}, r={self.r}, {{{body}}})"


def _packets_through(K: int, ground: int) -> list[int]:
    return [K | (1 << v) for v in elements(ground & ~K)]


def first_violation(U: Iterable[int], n: int, r: int) -> int | None:
    """The lexicographically first (r+2)-set whose packet condition fails, if any."""
    U = frozenset(U)
    ground = full(n)
    for K in U:
        if size(K) != r + 1 or K & ~ground:
            raise ValueError(f"{bits.fmt(K)} is not an {r + 1}-subset of [0, {n}]")
    candidates = set()
    for K in U:
        candidates.update(_packets_through(K, ground))
    for M in sorted(candidates, key=lex_key):
        if not kernels.packet_consistent(U, M):
            return M
    return None


def is_consistent(U: Iterable[int], n: int, r: int) -> bool:
    return first_violation(U, n, r) is None


def segment_system(items: Sequence[int], packets: Iterable[int]) -> list[list[tuple[int, int]]]:
    """Link structure for :func:`kernels.enumerate_segments`.

    ``items`` must be in lexicographic order, so that every packet lists its
    members in item order.
    """
    index = {K: j for j, K in enumerate(items)}
    links: list[list[tuple[int, int]]] = [[] for _ in items]
    for pid, M in enumerate(packets):
        prev = -1
        for member in bits.packet(M).members:
            j = index[member]
            links[j].append((pid, prev))
            prev = j
    return links


def enumerate_codes(n: int, r: int, cap: int = DEFAULT_SET_CAP) -> tuple[list[int], list[int]]:
    """B([0, n], r) in raw form: the lexicographic list of (r+1)-subsets and,
    for every element, an int whose bit ``j`` says whether ``items[j]`` is an
    inversion.  Codes come in backtracking order.

    Backtracking over the (r+1)-subsets in lexicographic order.  Packet
    members are decided in packet order, so a packet stays consistent iff its
    membership flags change at most once.
    """
    if r < 0 or n < 0:
        raise ValueError("need n >= 0 and r >= 0")
    ground = full(n)
    items = subsets_of_size(ground, r + 1)
    if r > n + 1:
        return items, [0]
    packets = subsets_of_size(ground, r + 2)
    links = segment_system(items, packets)
    try:
        codes = kernels.enumerate_segments(len(items), links, len(packets), cap)
    except OverflowError:
        raise ResourceCapExceeded(f"B([0,{n}],{r}) exceeds the cap of {cap}") from None
    return items, codes


def decode(items: Sequence[int], code: int) -> frozenset[int]:
    return frozenset(K for j, K in enumerate(items) if code >> j & 1)


def enumerate_bruhat(n: int, r: int, cap: int = DEFAULT_SET_CAP) -> list[ConsistentSet]:
    """All of B([0, n], r), sorted by cardinality and then lexicographically."""
    items, codes = enumerate_codes(n, r, cap)
    found = [decode(items, c) for c in codes]
    found.sort(key=_sort_key)
    return [ConsistentSet(n, r, U) for U in found]


def count_bruhat(n: int, r: int, cap: int = DEFAULT_SET_CAP) -> int:
    return len(enumerate_bruhat(n, r, cap))


def covering_relations(U: ConsistentSet) -> list[tuple[int, ConsistentSet]]:
    """Pairs (K, U + {K}) for every K whose addition keeps ``U`` consistent."""
    ground = full(U.n)
    out = []
    for K in subsets_of_size(ground, U.r + 1):
        if K in U.inversions:
            continue
        V = U.inversions | {K}
        if all(kernels.packet_consistent(V, M) for M in _packets_through(K, ground)):
            out.append((K, ConsistentSet(U.n, U.r, V)))
    return out


def _reindex(mask: int, removed: int) -> int:
    """Order-preserving relabelling of ``mask`` after deleting ``removed``."""
    out = 0
    j = 0
    k = 0
    m = mask | removed
    while m >> k:
        if removed >> k & 1:
            k += 1
            continue
        if mask >> k & 1:
            out |= 1 << j
        j += 1
        k += 1
    return out


def contraction(U: ConsistentSet, S: int | Iterable[int]) -> ConsistentSet:
    """Members of ``U`` avoiding ``S``, relabelled onto [0, n - |S|]."""
    S = bits.parse(S) if not isinstance(S, int) else S
    S &= full(U.n)
    kept = frozenset(_reindex(K, S) for K in U.inversions if not K & S)
    return ConsistentSet(U.n - size(S), U.r, kept)


def restrict(U: ConsistentSet, support: int) -> frozenset[int]:
    """Members of ``U`` inside ``support``, without relabelling."""
    return frozenset(K for K in U.inversions if not K & ~support)


@dataclass(frozen=True)
class MaximalChain:
    n: int
    r: int
    order: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "order", tuple(self.order))

    def to_json(self) -> dict:
        return {"n": self.n, "r": self.r, "order": [bits.to_json(K) for K in self.order]}

    @classmethod
    def from_json(cls, data: dict) -> "MaximalChain":
        return cls(data["n"], data["r"], tuple(bits.vset(k) for k in data["order"]))

    def validate(self) -> None:
        ground = full(self.n)
        expected = set(subsets_of_size(ground, self.r + 1))
        if len(self.order) != len(expected) or set(self.order) != expected:
            raise ValueError("order must list every (r+1)-subset exactly once")
        seen: set[int] = set()
        for K in self.order:
            seen.add(K)
            for M in _packets_through(K, ground):
                if not kernels.packet_consistent(seen, M):
                    raise InconsistentSet(
                        f"prefix ending at {bits.fmt(K)} is inconsistent at {bits.fmt(M)}", M
                    )


def chain_class_to_element(c: MaximalChain) -> ConsistentSet:
    """The (r+2)-sets whose packets the chain lists in reverse lexicographic order."""
    c.validate()
    pos = {K: j for j, K in enumerate(c.order)}
    inv = set()
    for M in subsets_of_size(full(c.n), c.r + 2):
        members = bits.packet(M).members
        if pos[members[0]] > pos[members[-1]]:
            inv.add(M)
    return ConsistentSet(c.n, c.r + 1, frozenset(inv))


def realize_chain(W: ConsistentSet) -> MaximalChain:
    """A maximal chain of B([0, n], r - 1) whose class is ``W`` in B([0, n], r).

    Linear extension of the packet constraints, smallest subset first.
    """
    n, r = W.n, W.r - 1
    if r < 0:
        raise ValueError("W must have level >= 1")
    ground = full(n)
    nodes = subsets_of_size(ground, r + 1)
    succ: dict[int, list[int]] = {K: [] for K in nodes}
    indeg = {K: 0 for K in nodes}
    for M in subsets_of_size(ground, r + 2):
        members = list(bits.packet(M).members)
        if M in W.inversions:
            members.reverse()
        for a, b in zip(members, members[1:]):
            succ[a].append(b)
            indeg[b] += 1
    heap = [(lex_key(K), K) for K in nodes if indeg[K] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, K = heapq.heappop(heap)
        order.append(K)
        for b in succ[K]:
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(heap, (lex_key(b), b))
    if len(order) != len(nodes):
        raise InconsistentSet("packet constraints of W contain a cycle")
    chain = MaximalChain(n, r, tuple(order))
    chain.validate()
    return chain


def maximal_chains(n: int, r: int, node_cap: int = DEFAULT_NODE_CAP):
    """Yield every maximal chain of B([0, n], r) as a tuple of added subsets."""
    ground = full(n)
    nodes = subsets_of_size(ground, r + 1)
    visited = 0
    current: list[int] = []
    chosen: set[int] = set()

    def rec():
        nonlocal visited
        visited += 1
        if visited > node_cap:
            raise ResourceCapExceeded(f"more than {node_cap} DFS nodes")
        if len(current) == len(nodes):
            yield tuple(current)
            return
        for K in nodes:
            if K in chosen:
                continue
            chosen.add(K)
            if all(kernels.packet_consistent(chosen, M) for M in _packets_through(K, ground)):
                current.append(K)
                yield from rec()
                current.pop()
            chosen.discard(K)

    yield from rec()


def count_chain_classes(n: int, r: int, node_cap: int = DEFAULT_NODE_CAP) -> int:
    """Number of equivalence classes of maximal chains of B([0, n], r)."""
    classes = set()
    for order in maximal_chains(n, r, node_cap):
        classes.add(chain_class_to_element(MaximalChain(n, r, order)).inversions)
    return len(classes)


def reoriented_coverings(base: ConsistentSet, V: ConsistentSet) -> list[tuple[int, ConsistentSet]]:
    """Covers of ``V`` in the order reoriented at ``base``.

    Each cover flips one subset ``L`` outside the symmetric difference of
    ``base`` and ``V``.
    """
    if (base.n, base.r) != (V.n, V.r):
        raise ValueError("base and V live in different orders")
    ground = full(V.n)
    diff = base.inversions ^ V.inversions
    out = []
    for L in subsets_of_size(ground, V.r + 1):
        if L in diff:
            continue
        W = V.inversions ^ {L}
        if all(kernels.packet_consistent(W, M) for M in _packets_through(L, ground)):
            out.append((L, ConsistentSet(V.n, V.r, W)))
    return out


def reoriented_maximal_chain(
    U: ConsistentSet, node_cap: int = DEFAULT_NODE_CAP
) -> list[int]:
    """Subsets flipped, in order, along a chain from ``U`` to its complement.

    Depth-first search with lexicographic branching; raises ChainNotFound when
    the search space is exhausted.
    """
    ground = full(U.n)
    total = len(subsets_of_size(ground, U.r + 1))
    current: set[int] = set(U.inversions)
    flipped: list[int] = []
    done: set[int] = set()
    dead: set[frozenset[int]] = set()
    visited = 0

    def rec() -> bool:
        nonlocal visited
        visited += 1
        if visited > node_cap:
            raise ResourceCapExceeded(f"more than {node_cap} DFS nodes")
        if len(flipped) == total:
            return True
        key = frozenset(current)
        if key in dead:
            return False
        for L in subsets_of_size(ground, U.r + 1):
            if L in done:
                continue
            current.symmetric_difference_update({L})
            if all(kernels.packet_consistent(current, M) for M in _packets_through(L, ground)):
                done.add(L)
                flipped.append(L)
                if rec():
                    return True
                flipped.pop()
                done.discard(L)
            current.symmetric_difference_update({L})
        dead.add(key)
        return False

    if not rec():
        raise ChainNotFound(f"no chain from {U!r} to its complement")
    return flipped


def chain_states(U: ConsistentSet, flips: Sequence[int]) -> list[ConsistentSet]:
    """The consistent sets visited when applying ``flips`` to ``U`` in turn."""
    states = [U]
    cur = set(U.inversions)
    for L in flips:
        cur ^= {L}
        states.append(ConsistentSet(U.n, U.r, frozenset(cur)))
    return states
