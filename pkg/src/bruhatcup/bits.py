"""Subsets of [0, n] as bitmasks, packets and gap counts.

A vertex set is a plain ``int`` whose bit ``k`` is set iff ``k`` belongs to
the set.  Everything else in the package builds on the helpers here.
"""

from __future__ import annotations

import enum
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Sequence

MAX_N = 62


def vset(elements: Iterable[int]) -> int:
    """Bitmask of an iterable of vertices."""
    mask = 0
    for e in elements:
        e = int(e)
        if e < 0 or e > MAX_N:
            raise ValueError(f"vertex {e} outside [0, {MAX_N}]")
        mask |= 1 << e
    return mask


def elements(mask: int) -> tuple[int, ...]:
    """Increasing tuple of the members of ``mask``."""
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return tuple(out)


def size(mask: int) -> int:
    return bin(mask).count("1")


def interval(p: int, q: int) -> int:
    """The set [p, q]; empty when q < p."""
    if q < p:
        return 0
    return ((1 << (q - p + 1)) - 1) << p


def full(n: int) -> int:
    return interval(0, n)


def fmt(mask: int) -> str:
    """Compact label: ``"012"`` when all vertices are single digits."""
    els = elements(mask)
    if not els:
        return "∅"
    if els[-1] < 10:
        return "".join(map(str, els))
    return "{" + ",".join(map(str, els)) + "}"


def parse(label: str | Sequence[int] | int) -> int:
    """Inverse of :func:`fmt` for digit labels; also accepts sequences and masks."""
    if isinstance(label, int):
        return label
    if isinstance(label, str):
        label = label.strip()
        if label in ("", "∅"):
            return 0
        if label.startswith("{"):
            return vset(int(t) for t in label.strip("{}").split(","))
        return vset(int(ch) for ch in label)
    return vset(label)


def to_json(mask: int) -> list[int]:
    return list(elements(mask))


def lex_key(mask: int) -> tuple[int, ...]:
    """Sort key realising the lexicographic order on equal-size subsets."""
    return elements(mask)


def subsets_of_size(ground: int, k: int) -> list[int]:
    """All ``k``-subsets of ``ground`` in lexicographic order."""
    return [vset(c) for c in combinations(elements(ground), k)]


def nonempty_subsets(ground: int) -> Iterator[int]:
    """Nonempty subsets of ``ground`` by size, then lexicographically."""
    els = elements(ground)
    for k in range(1, len(els) + 1):
        for c in combinations(els, k):
            yield vset(c)


def count_greater(L: int, a: int) -> int:
    """|{l in L : l > a}|."""
    return size(L >> (a + 1))


def count_less(L: int, a: int) -> int:
    """|{l in L : l < a}|."""
    return size(L & ((1 << a) - 1))


def is_even_gap(L: int, a: int) -> bool:
    return count_greater(L, a) % 2 == 0


class Packet(NamedTuple):
    parent: int
    members: tuple[int, ...]


def packet(K: int) -> Packet:
    """The subsets ``K \\ k`` in lexicographic order.

    The smallest member drops the largest element of ``K``.
    """
    els = elements(K)
    if not els:
        raise ValueError("packet of the empty set")
    return Packet(K, tuple(K & ~(1 << k) for k in reversed(els)))


class Segment(enum.Enum):
    BEGINNING = "beginning"
    ENDING = "ending"
    NEITHER = "neither"


def segment_pattern(flags: Sequence[bool]) -> Segment:
    """Classify a membership pattern along a packet.

    An all-false or all-true pattern is reported as ``BEGINNING``; it is also
    an ending segment.
    """
    m = len(flags)
    t = 0
    while t < m and flags[t]:
        t += 1
    if not any(flags[t:]):
        return Segment.BEGINNING
    t = m
    while t > 0 and flags[t - 1]:
        t -= 1
    if not any(flags[:t]):
        return Segment.ENDING
    return Segment.NEITHER


def is_segment(subset: Iterable[int], pk: Packet) -> Segment:
    chosen = set(subset)
    if not chosen <= set(pk.members):
        raise ValueError("subset is not contained in the packet")
    return segment_pattern([m in chosen for m in pk.members])
