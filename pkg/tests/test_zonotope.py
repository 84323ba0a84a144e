from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from bruhatcup import bits
from bruhatcup.bits import fmt, full, parse
from bruhatcup.bruhat import ConsistentSet, covering_relations, enumerate_bruhat, is_consistent, realize_chain
from bruhatcup.chains import TensorChain, transpose
from bruhatcup.coproducts import delta_from_U
from bruhatcup.zonotope import (
    Cubillage,
    FlipNotAvailable,
    ZFace,
    apply_flip,
    cubillage_of,
    facets,
    flip_face,
    initial_vertex,
    lower_cubillage,
    render_svg,
    rhombus,
    tile_area,
    vertex_point,
    zonotope_area,
)

from conftest import tc

# Cubes of the tiling on the cover: each label is a signed term X ⊗ Y of Δ_1 on 01234.
FRONT_PAGE_TERMS = (
    "-02⊗01234 - 24⊗01234 + 012⊗1234 - 023⊗0134 + 234⊗0123"
    " + 234⊗0134 - 0123⊗134 - 0123⊗014 - 1234⊗014 + 01234⊗04"
)
FRONT_PAGE_BOUNDARY = (
    "0⊗01234 + 01⊗1234 + 012⊗234 + 0123⊗34 + 01234⊗4"
    " - 4⊗01234 + 34⊗0123 - 234⊗012 + 1234⊗01 - 01234⊗0"
)


def test_initial_vertex_examples():
    assert initial_vertex(ConsistentSet.empty(2, 1), "1") == parse("0")
    assert initial_vertex(ConsistentSet.of(2, 2, ["012"]), "02") == 0
    assert initial_vertex(ConsistentSet.empty(5, 2), "24") == parse("3")


def test_cubillage_examples():
    Q = cubillage_of(ConsistentSet.empty(2, 1))
    assert {fmt(L): fmt(A) for L, A in Q.cubes} == {"0": "∅", "1": "0", "2": "01"}
    top = cubillage_of(ConsistentSet.of(2, 2, ["012"]))
    # upper tiling of the hexagon: the interior vertex is 02
    assert {fmt(L): fmt(A) for L, A in top.cubes} == {"01": "2", "02": "∅", "12": "0"}


@pytest.mark.parametrize("n", range(0, 7))
@pytest.mark.parametrize("r", range(0, 4))
def test_lower_cubillage_matches_empty_set(n, r):
    if r > n + 1:
        return
    assert lower_cubillage(n, r) == cubillage_of(ConsistentSet.empty(n, r))


def test_lower_cubillage_examples():
    assert lower_cubillage(2, 1).as_dict()[parse("2")] == parse("01")
    assert lower_cubillage(4, 2).as_dict()[parse("13")] == parse("2")


@pytest.mark.parametrize("n, r", [(3, 1), (4, 2), (5, 2), (5, 3)])
def test_cubillage_recovers_inversions(n, r):
    for U in enumerate_bruhat(n, r):
        assert cubillage_of(U).consistent_set() == U


def test_cubillage_json_roundtrip():
    Q = cubillage_of(ConsistentSet.of(3, 2, ["012", "013"]))
    assert Cubillage.from_json(Q.to_json()) == Q


def test_cubillage_requires_every_generator_set():
    with pytest.raises(ValueError):
        Cubillage(2, 1, ((parse("0"), 0), (parse("1"), 0)))


def test_facets_of_square():
    lower, upper = facets(ZFace.of("01", "", "01"))
    assert ZFace.of("0", "", "01") in lower and ZFace.of("1", "", "01") in upper
    assert ZFace.of("1", "0", "01") in lower and ZFace.of("0", "1", "01") in upper


def test_facets_of_segment():
    lower, upper = facets(ZFace.of("0", "", "0"))
    assert lower == [ZFace(0, 0, 1)] and upper == [ZFace(0, 1, 1)]


@given(st.integers(0, 3 ** 6 - 1))
def test_two_dimensional_faces_have_two_facets_each_side(code):
    L = A = 0
    for e in range(6):
        code, d = divmod(code, 3)
        if d == 0:
            L |= 1 << e
        elif d == 1:
            A |= 1 << e
    if bits.size(L) != 2:
        return
    lower, upper = facets(ZFace(L, A, full(5)))
    assert len(lower) == len(upper) == 2
    assert not set(lower) & set(upper)


@pytest.mark.parametrize("n, r", [(2, 1), (3, 1), (4, 2), (5, 2), (5, 3)])
def test_apply_flip_along_covers(n, r):
    for U in enumerate_bruhat(n, r):
        Q = cubillage_of(U)
        for K, V in covering_relations(U):
            assert apply_flip(Q, K) == cubillage_of(V)
            F = flip_face(U, K)
            lower, upper = facets(F)
            cubes = set(Q.faces())
            assert set(lower) <= cubes
            assert set(upper) <= set(cubillage_of(V).faces())


def test_apply_flip_hexagon_and_repeat():
    Q = cubillage_of(ConsistentSet.empty(2, 2))
    top = apply_flip(Q, "012")
    assert top == cubillage_of(ConsistentSet.of(2, 2, ["012"]))
    with pytest.raises(FlipNotAvailable):
        apply_flip(top, "012")


def test_flips_along_chain_reach_upper_cubillage():
    Q = cubillage_of(ConsistentSet.empty(3, 2))
    for K in realize_chain(ConsistentSet.top(3, 3)).order:
        Q = apply_flip(Q, K)
    assert Q == cubillage_of(ConsistentSet.top(3, 2))


# --- planar tilings -----------------------------------------------------------

def shoelace2(poly):
    """Twice the signed area."""
    return sum(x0 * y1 - x1 * y0 for (x0, y0), (x1, y1) in zip(poly, poly[1:] + poly[:1]))


def separated(P, Q):
    """Separating axis test on integer polygons; touching boundaries count as separated."""
    for poly in (P, Q):
        for (x0, y0), (x1, y1) in zip(poly, poly[1:] + poly[:1]):
            ax, ay = y0 - y1, x1 - x0
            pp = [ax * x + ay * y for x, y in P]
            qq = [ax * x + ay * y for x, y in Q]
            if max(pp) <= min(qq) or max(qq) <= min(pp):
                return True
    return False


def zonotope_polygon(n):
    """Prefixes ∅, 0, 01, ... up to [0,n], then back down through the suffixes."""
    lower = [vertex_point(bits.interval(0, k - 1) if k else 0, n) for k in range(n + 2)]
    upper = [vertex_point(bits.interval(k, n), n) for k in range(1, n + 1)]
    return lower + upper


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_planar_tilings_are_tilings(n):
    hull = zonotope_polygon(n)
    hull_area = abs(shoelace2(hull))
    # vertex_point has determinant 2 against (|A|, Σ a), and shoelace2 doubles again
    assert hull_area == 4 * zonotope_area(n)
    for U in enumerate_bruhat(n, 2):
        Q = cubillage_of(U)
        polys = [rhombus(n, L, A) for L, A in Q.cubes]
        assert sum(abs(shoelace2(p)) for p in polys) == hull_area
        for L, A in Q.cubes:
            assert abs(shoelace2(rhombus(n, L, A))) == 4 * tile_area(L)
        for P, R in combinations(polys, 2):
            assert separated(P, R)


def test_hexagon_interior_vertex():
    for U, interior in [(ConsistentSet.empty(2, 2), "1"), (ConsistentSet.of(2, 2, ["012"]), "02")]:
        corners = set()
        for L, A in cubillage_of(U).cubes:
            l0, l1 = bits.elements(L)
            corners |= {A, A | 1 << l0, A | 1 << l1, A | 1 << l0 | 1 << l1}
        boundary = {bits.interval(0, k - 1) if k else 0 for k in range(4)}
        boundary |= {bits.interval(k, 2) for k in range(3)}
        assert {fmt(V) for V in corners - boundary} == {interior}


# --- the cover figure ------------------------------------------------------------

def front_page_cubillage():
    cubes = []
    for (X, Y), _ in tc(FRONT_PAGE_TERMS):
        L = X & Y
        cubes.append((L, X & ~Y))
    return Cubillage(4, 2, tuple(cubes))


def test_front_page_tiling_is_consistent():
    U = front_page_cubillage().consistent_set()
    assert is_consistent(U.inversions, 4, 2)
    assert cubillage_of(U) == front_page_cubillage()
    # neither Steenrod's coproduct nor its opposite
    assert U != ConsistentSet.empty(4, 2) and U != ConsistentSet.top(4, 2)


def test_front_page_terms_and_signs():
    U = front_page_cubillage().consistent_set()
    assert delta_from_U(U, 1)() == tc(FRONT_PAGE_TERMS)


def test_front_page_boundary_terms():
    D0 = delta_from_U(ConsistentSet.empty(4, 1), 0)()
    assert D0 - transpose(D0) == tc(FRONT_PAGE_BOUNDARY)


def test_render_front_page_shape():
    U = front_page_cubillage().consistent_set()
    svg = render_svg(cubillage_of(U), terms=True)
    assert svg.count("<polygon") == 10
    for (X, Y), c in tc(FRONT_PAGE_TERMS):
        sign = "-" if c < 0 else "+"
        assert f">{sign}{fmt(X)}⊗{fmt(Y)}<" in svg


def test_render_hexagon_and_determinism():
    Q = cubillage_of(ConsistentSet.empty(2, 2))
    svg = render_svg(Q)
    assert svg == render_svg(Q)
    assert svg.count("<polygon") == 3
    assert "<text" not in svg
    labelled = render_svg(Q, labels=True)
    assert ">1</text>" in labelled


def test_render_rejects_non_planar():
    with pytest.raises(ValueError):
        render_svg(cubillage_of(ConsistentSet.empty(3, 3)))
