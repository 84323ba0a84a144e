"""Integer chains on a simplex and on its tensor square.

A basis simplex is a nonempty vertex set; the empty set is not a basis
element, so the boundary of a vertex is zero.  Tensor terms ``X ⊗ Y`` carry
degree ``(|X| - 1) + (|Y| - 1)``.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from . import bits, kernels
from .bits import elements, fmt, lex_key, size


def _clean(items: Iterable[tuple[object, int]]) -> dict:
    out: dict = {}
    for key, c in items:
        if not isinstance(c, int):
            raise TypeError("coefficients must be integers")
        v = out.get(key, 0) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return out


def _signed(terms: list[tuple[str, int]]) -> str:
    if not terms:
        return "0"
    parts = []
    for j, (label, c) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else f"{abs(c)}·"
        if j == 0:
            parts.append(("-" if c < 0 else "") + mag + label)
        else:
            parts.append(f" {sign} {mag}{label}")
    return "".join(parts)


class Chain:
    """Finite integer combination of simplices."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        cleaned = _clean((bits.parse(k), c) for k, c in items)
        if 0 in cleaned:
            raise ValueError("the empty set is not a simplex")
        self._terms = cleaned

    @classmethod
    def simplex(cls, S) -> "Chain":
        return cls({bits.parse(S): 1})

    @staticmethod
    def _key(S: int) -> tuple:
        return (size(S), lex_key(S))

    def items(self) -> list[tuple[int, int]]:
        """Terms in canonical order: by degree, then lexicographically."""
        return sorted(self._terms.items(), key=lambda kv: self._key(kv[0]))

    def coefficient(self, S) -> int:
        return self._terms.get(bits.parse(S), 0)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        return isinstance(other, Chain) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "Chain") -> "Chain":
        return Chain(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "Chain":
        return Chain({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __rmul__(self, scalar: int) -> "Chain":
        return Chain({k: scalar * c for k, c in self._terms.items()})

    def __str__(self) -> str:
        return _signed([(fmt(S), c) for S, c in self.items()])

    def __repr__(self) -> str:
        return f"Chain({self})"


def boundary(c: Chain) -> Chain:
    """Alternating sum of codimension-one faces."""
    out: list[tuple[int, int]] = []
    for S, coef in c._terms.items():
        els = elements(S)
        if len(els) < 2:
            continue
        for p, v in enumerate(els):
            out.append((S & ~(1 << v), -coef if p & 1 else coef))
    return Chain(out)


class TensorChain:
    """Finite integer combination of terms ``X ⊗ Y``."""

    __slots__ = ("_terms",)

    def __init__(
        self,
        terms: Mapping[tuple[int, int], int] | Iterable[tuple[tuple[int, int], int]] = (),
    ):
        items = terms.items() if isinstance(terms, Mapping) else terms
        cleaned = _clean(((bits.parse(x), bits.parse(y)), c) for (x, y), c in items)
        for x, y in cleaned:
            if x == 0 or y == 0:
                raise ValueError("tensor factors must be nonempty")
        self._terms = cleaned

    @classmethod
    def _wrap(cls, raw: dict) -> "TensorChain":
        """Adopt a kernel dict without re-validation."""
        t = cls.__new__(cls)
        t._terms = raw
        return t

    @classmethod
    def term(cls, X, Y, coef: int = 1) -> "TensorChain":
        return cls({(bits.parse(X), bits.parse(Y)): coef})

    @staticmethod
    def _key(xy: tuple[int, int]) -> tuple:
        x, y = xy
        return (size(x) + size(y), lex_key(x), lex_key(y))

    def raw(self) -> dict:
        """The underlying ``{(x, y): coef}`` dict (do not mutate)."""
        return self._terms

    def items(self) -> list[tuple[tuple[int, int], int]]:
        """Terms in canonical order: by degree, then lexicographically."""
        return sorted(self._terms.items(), key=lambda kv: self._key(kv[0]))

    def coefficient(self, X, Y) -> int:
        return self._terms.get((bits.parse(X), bits.parse(Y)), 0)

    def degrees(self) -> set[int]:
        return {size(x) + size(y) - 2 for x, y in self._terms}

    def __iter__(self) -> Iterator[tuple[tuple[int, int], int]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        return isinstance(other, TensorChain) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "TensorChain") -> "TensorChain":
        return TensorChain._wrap(kernels.add_into(dict(self._terms), other._terms, 1))

    def __sub__(self, other: "TensorChain") -> "TensorChain":
        return TensorChain._wrap(kernels.add_into(dict(self._terms), other._terms, -1))

    def __neg__(self) -> "TensorChain":
        return TensorChain._wrap({k: -c for k, c in self._terms.items()})

    def __rmul__(self, scalar: int) -> "TensorChain":
        if scalar == 0:
            return TensorChain()
        return TensorChain._wrap({k: scalar * c for k, c in self._terms.items()})

    def to_json(self) -> dict:
        return {
            "terms": [
                {"coef": c, "left": bits.to_json(x), "right": bits.to_json(y)}
                for (x, y), c in self.items()
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> "TensorChain":
        return cls(
            ((bits.vset(t["left"]), bits.vset(t["right"])), int(t["coef"]))
            for t in data["terms"]
        )

    def __str__(self) -> str:
        return _signed([(f"{fmt(x)}⊗{fmt(y)}", c) for (x, y), c in self.items()])

    def __repr__(self) -> str:
        return f"TensorChain({self})"


def tensor_boundary(t: TensorChain) -> TensorChain:
    """Leibniz rule with the Koszul sign ``(-1)^{|x|}`` on the second factor."""
    return TensorChain._wrap(kernels.tensor_boundary(t.raw()))


def transpose(t: TensorChain) -> TensorChain:
    """``T(x ⊗ y) = (-1)^{|x||y|} y ⊗ x``."""
    return TensorChain._wrap(kernels.transpose(t.raw()))


def face_of_term(X, Y):
    """The zonotope face ``(L, A)`` on support ``X ∪ Y`` matching ``X ⊗ Y``."""
    from .zonotope import ZFace

    X, Y = bits.parse(X), bits.parse(Y)
    if X == 0 or Y == 0:
        raise ValueError("tensor factors must be nonempty")
    return ZFace(L=X & Y, A=X & ~Y, S=X | Y)


def term_of_face(F) -> tuple[int, int]:
    return (F.L | F.A, F.L | F.B)
