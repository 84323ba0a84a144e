"""Faces of cyclic zonotopes and cubillages.

The cyclic zonotope Z([0, n], r) is the Minkowski sum of the vectors
ξ_t = (1, t, ..., t^{r-1}).  A face is a pair (L, A) of disjoint vertex sets:
it is the cube spanned by ξ_l for l in L, translated by ξ_A = Σ_{a∈A} ξ_a.
A cubillage of Z([0, n], r) has one r-cube per r-subset L, and the element U
of B([0, n], r) determines all of their initial vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from . import bits, kernels
from .bits import count_greater, elements, fmt, full, size, subsets_of_size
from .bruhat import ConsistentSet, _packets_through


class FlipNotAvailable(ValueError):
    pass


@dataclass(frozen=True)
class ZFace:
    """Face with generating vectors ``L`` and initial vertex ``A`` inside support ``S``."""

    L: int
    A: int
    S: int

    def __post_init__(self) -> None:
        if self.L & self.A:
            raise ValueError("generators and initial vertex must be disjoint")
        if (self.L | self.A) & ~self.S:
            raise ValueError("generators and initial vertex must lie in the support")

    @classmethod
    def of(cls, L, A, S) -> "ZFace":
        return cls(bits.parse(L), bits.parse(A), bits.parse(S))

    @property
    def B(self) -> int:
        return self.S & ~(self.L | self.A)

    @property
    def dim(self) -> int:
        return size(self.L)

    def term(self) -> tuple[int, int]:
        return (self.L | self.A, self.L | self.B)

    def sign(self) -> int:
        return -1 if kernels.epsilon(self.L, self.A, self.B) else 1

    def __repr__(self) -> str:
        return f"ZFace(L={fmt(self.L)}, A={fmt(self.A)}, S={fmt(self.S)})"


def initial_vertex(U: ConsistentSet, L) -> int:
    """Initial vertex of the cube with generators ``L`` in the cubillage of ``U``.

    ``a`` is in it iff ``L ∪ a ∈ U`` and ``a`` is an even gap of ``L``, or
    ``L ∪ a ∉ U`` and ``a`` is an odd gap.
    """
    L = bits.parse(L)
    if size(L) != U.r or L & ~full(U.n):
        raise ValueError(f"generators must be an {U.r}-subset of [0, {U.n}]")
    return kernels.initial_vertex(full(U.n), L, U.inversions)


@dataclass(frozen=True)
class Cubillage:
    n: int
    r: int
    cubes: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        cubes = tuple(sorted(((int(L), int(A)) for L, A in self.cubes), key=lambda c: bits.lex_key(c[0])))
        object.__setattr__(self, "cubes", cubes)
        expected = subsets_of_size(full(self.n), self.r)
        if [L for L, _ in cubes] != expected:
            raise ValueError("cubes must be indexed by every r-subset exactly once")

    def as_dict(self) -> dict[int, int]:
        return dict(self.cubes)

    def faces(self) -> list[ZFace]:
        ground = full(self.n)
        return [ZFace(L, A, ground) for L, A in self.cubes]

    def consistent_set(self) -> ConsistentSet:
        """Recover the inversion set from the initial vertices."""
        inv = set()
        for L, A in self.cubes:
            for a in elements(full(self.n) & ~L):
                odd = count_greater(L, a) & 1
                if bool(A >> a & 1) != bool(odd):
                    inv.add(L | 1 << a)
        return ConsistentSet(self.n, self.r, frozenset(inv))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "cubes": [{"L": bits.to_json(L), "A": bits.to_json(A)} for L, A in self.cubes],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Cubillage":
        return cls(
            data["n"],
            data["r"],
            tuple((bits.vset(c["L"]), bits.vset(c["A"])) for c in data["cubes"]),
        )


def cubillage_of(U: ConsistentSet) -> Cubillage:
    ground = full(U.n)
    cubes = tuple(
        (L, kernels.initial_vertex(ground, L, U.inversions))
        for L in subsets_of_size(ground, U.r)
    )
    return Cubillage(U.n, U.r, cubes)


def lower_cubillage(n: int, r: int) -> Cubillage:
    """Cubillage of the empty set, read off from alternating intervals.

    The generators l_0 < ... < l_{r-1} cut [0, n] into intervals
    [0, l_0], [l_0, l_1], ..., [l_{r-1}, n].  Counting from the right, they
    belong alternately to L ∪ B and L ∪ A, with [l_{r-1}, n] in L ∪ B.
    """
    if r < 0 or r > n + 1:
        raise ValueError("need 0 <= r <= n + 1")
    cubes = []
    for L in subsets_of_size(full(n), r):
        ls = elements(L)
        # open gaps between consecutive cuts; the last one lies in B
        cuts = [-1, *ls, n + 1]
        A = 0
        for g in range(r + 1):
            if (r - g) % 2 == 1:
                A |= bits.interval(cuts[g] + 1, cuts[g + 1] - 1)
        cubes.append((L, A))
    return Cubillage(n, r, tuple(cubes))


def facets(F: ZFace) -> tuple[list[ZFace], list[ZFace]]:
    """Lower and upper facets of ``F``.

    Removing ``l`` and keeping ``A`` gives an upper facet iff ``l`` is an odd
    gap of ``L - l``; absorbing ``l`` into ``A`` gives the opposite side.
    """
    if F.L == 0:
        raise ValueError("a vertex has no facets")
    lower: list[ZFace] = []
    upper: list[ZFace] = []
    for l in elements(F.L):
        rest = F.L & ~(1 << l)
        odd = count_greater(rest, l) & 1
        keep = ZFace(rest, F.A, F.S)
        absorb = ZFace(rest, F.A | 1 << l, F.S)
        if odd:
            upper.append(keep)
            lower.append(absorb)
        else:
            lower.append(keep)
            upper.append(absorb)
    return lower, upper


def flip_face(U: ConsistentSet, K) -> ZFace:
    """The (r+1)-face whose lower facets are replaced when ``K`` is added to ``U``."""
    K = bits.parse(K)
    if size(K) != U.r + 1:
        raise ValueError(f"flip sets must have {U.r + 1} elements")
    ground = full(U.n)
    candidates = {
        kernels.initial_vertex(ground, K & ~(1 << l), U.inversions) & ~(1 << l)
        for l in elements(K)
    }
    if len(candidates) != 1:
        raise FlipNotAvailable(f"{fmt(K)} does not span a face of the cubillage")
    return ZFace(K, candidates.pop(), ground)


def apply_flip(Q: Cubillage, K) -> Cubillage:
    """Increasing flip at ``K``; only the cubes with generators inside ``K`` move."""
    K = bits.parse(K)
    U = Q.consistent_set()
    if size(K) != Q.r + 1 or K in U.inversions:
        raise FlipNotAvailable(f"{fmt(K)} cannot be added")
    V = U.inversions | {K}
    if not all(kernels.packet_consistent(V, M) for M in _packets_through(K, full(Q.n))):
        raise FlipNotAvailable(f"adding {fmt(K)} breaks consistency")
    ground = full(Q.n)
    cubes = dict(Q.cubes)
    for l in elements(K):
        L = K & ~(1 << l)
        cubes[L] = kernels.initial_vertex(ground, L, V)
    return Cubillage(Q.n, Q.r, tuple(cubes.items()))


# --- planar pictures -------------------------------------------------------

def vertex_point(A: int, n: int) -> tuple[int, int]:
    """Integer picture of ξ_A for r = 2: height |A| and abscissa Σ (2a - n).

    This is an affine image of (|A|, Σ a), so tilings are preserved.
    """
    els = elements(A)
    return (sum(2 * a - n for a in els), len(els))


def rhombus(n: int, L: int, A: int) -> list[tuple[int, int]]:
    """Corners of the tile (L, A) in cyclic order."""
    l0, l1 = elements(L)
    return [
        vertex_point(A, n),
        vertex_point(A | 1 << l0, n),
        vertex_point(A | 1 << l0 | 1 << l1, n),
        vertex_point(A | 1 << l1, n),
    ]


def render_svg(
    Q: Cubillage,
    labels: bool = False,
    terms: bool = False,
    scale: int = 40,
) -> str:
    """SVG drawing of a planar cubillage.

    ``labels`` writes each vertex set next to its point; ``terms`` writes the
    signed coproduct term of each tile at its centre.
    """
    if Q.r != 2:
        raise ValueError("only r = 2 cubillages are planar")
    n = Q.n
    ground = full(n)
    tiles = [(L, A, rhombus(n, L, A)) for L, A in Q.cubes]
    points = {pt for _, _, poly in tiles for pt in poly} or {(0, 0)}
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    margin = 2 * scale
    half = scale // 2

    def sx(x: int) -> int:
        return margin + (x - min(xs)) * half

    def sy(y: int) -> int:
        return margin + (max(ys) - y) * scale

    width = 2 * margin + (max(xs) - min(xs)) * half
    height = 2 * margin + (max(ys) - min(ys)) * scale
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        '<g fill="none" stroke="black" stroke-width="1.5">',
    ]
    for L, A, poly in tiles:
        pts = " ".join(f"{sx(x)},{sy(y)}" for x, y in poly)
        out.append(f'<polygon data-L="{fmt(L)}" data-A="{fmt(A)}" points="{pts}"/>')
    out.append("</g>")
    if labels or terms:
        out.append('<g font-family="monospace" font-size="11" text-anchor="middle">')
    if labels:
        corners = {V for L, A, _ in tiles for V in _corner_sets(L, A)}
        for V in sorted(corners, key=lambda m: (size(m), bits.lex_key(m))):
            x, y = vertex_point(V, n)
            out.append(f'<text x="{sx(x)}" y="{sy(y) - 4}">{fmt(V)}</text>')
    if terms:
        for L, A, poly in tiles:
            cx = sum(sx(x) for x, _ in poly) // 4
            cy = sum(sy(y) for _, y in poly) // 4 + 4
            B = ground & ~(L | A)
            sign = "-" if kernels.epsilon(L, A, B) else "+"
            label = f"{sign}{fmt(L | A)}⊗{fmt(L | B)}"
            out.append(f'<text x="{cx}" y="{cy}">{label}</text>')
    if labels or terms:
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _corner_sets(L: int, A: int) -> list[int]:
    l0, l1 = elements(L)
    return [A, A | 1 << l0, A | 1 << l1, A | 1 << l0 | 1 << l1]


def zonotope_area(n: int) -> int:
    """Area of Z([0, n], 2) in the coordinates (|A|, Σ a)."""
    return sum(q - p for p in range(n + 1) for q in range(p + 1, n + 1))


def tile_area(L: int) -> int:
    l0, l1 = elements(L)
    return l1 - l0
