"""Pure-Python kernels.

Reference implementation of the hot loops.  ``_ckernels.pyx`` mirrors every
function here with the same signature and results; :mod:`bruhatcup.kernels`
picks one at import time.

Conventions: vertex sets are int bitmasks, a consistent set is any container
of masks supporting ``in``, tensor chains are dicts ``{(x, y): coef}``.
"""

from itertools import combinations

BACKEND = "python"


def popcount(x):
    return bin(x).count("1")


def _bits(mask):
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def submasks_of_size(S, k):
    return [sum(1 << e for e in c) for c in combinations(_bits(S), k)]


def epsilon(L, A, B):
    """Parity of sum_{b in B} |A|_{<b} + sum_{l in L} |L|_{<l} + |L+A+B| |A|."""
    s = 0
    for b in _bits(B):
        s += popcount(A & ((1 << b) - 1))
    nl = popcount(L)
    s += nl * (nl - 1) // 2
    s += popcount(L | A | B) * popcount(A)
    return s & 1


def initial_vertex(S, L, U):
    """Initial vertex of the cube with generators ``L`` in the cubillage of ``U`` over ``S``."""
    A = 0
    for a in _bits(S & ~L):
        odd = popcount(L >> (a + 1)) & 1
        if ((L | (1 << a)) in U) != bool(odd):
            A |= 1 << a
    return A


def delta_terms(S, i, U):
    """Value of the cup-``i`` coproduct of ``U`` on the face ``S``.

    Terms with an empty tensor factor are dropped, which only happens for
    ``i == -1``.
    """
    out = {}
    if popcount(S) <= i or i < -1:
        return out
    for L in submasks_of_size(S, i + 1):
        A = initial_vertex(S, L, U)
        B = S & ~(L | A)
        x = L | A
        y = L | B
        if x == 0 or y == 0:
            continue
        out[(x, y)] = -1 if epsilon(L, A, B) else 1
    return out


def steenrod_terms(S, i):
    """Steenrod's cup-``i`` coproduct on ``S`` from overlapping partitions."""
    out = {}
    if i < 0:
        return out
    els = _bits(S)
    n = len(els) - 1
    for breaks in combinations(range(n + 1), i + 1):
        cuts = (0,) + breaks + (n,)
        x = y = 0
        for p in range(i + 2):
            seg = 0
            for q in range(cuts[p], cuts[p + 1] + 1):
                seg |= 1 << els[q]
            if p % 2 == 0:
                x |= seg
            else:
                y |= seg
        inv = 0
        for b in _bits(y & ~x):
            inv += popcount(x >> (b + 1))
        out[(x, y)] = -1 if (inv + i * n) & 1 else 1
    return out


def add_into(out, terms, scale):
    for key, c in terms.items():
        v = out.get(key, 0) + scale * c
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return out


def tensor_boundary(terms, out=None, scale=1):
    """``out += scale * d(terms)`` with the Koszul sign on the second factor."""
    if out is None:
        out = {}
    for (x, y), c in terms.items():
        c *= scale
        xs = _bits(x)
        if len(xs) > 1:
            for p, v in enumerate(xs):
                key = (x & ~(1 << v), y)
                val = out.get(key, 0) + (-c if p & 1 else c)
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
        ys = _bits(y)
        if len(ys) > 1:
            c2 = -c if (len(xs) - 1) & 1 else c
            for q, v in enumerate(ys):
                key = (x, y & ~(1 << v))
                val = out.get(key, 0) + (-c2 if q & 1 else c2)
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
    return out


def transpose(terms):
    out = {}
    for (x, y), c in terms.items():
        if ((popcount(x) - 1) * (popcount(y) - 1)) & 1:
            c = -c
        out[(y, x)] = c
    return out


def homotopy_defect(S, i, U):
    """d D(S) - (-1)^i D(dS) - (1 + (-1)^i T) D'(S) for D = Delta_i^U, D' = Delta_{i-1}^empty."""
    out = tensor_boundary(delta_terms(S, i, U))
    sgn = -1 if i & 1 else 1
    for p, v in enumerate(_bits(S)):
        face = S & ~(1 << v)
        if face:
            add_into(out, delta_terms(face, i, U), -sgn if p % 2 == 0 else sgn)
    prev = delta_terms(S, i - 1, ())
    add_into(out, prev, -1)
    add_into(out, transpose(prev), -sgn)
    return out


def complement_defect(S, i, U, Ucomp):
    """Delta_i^{Ucomp}(S) - (-1)^i T Delta_i^U(S)."""
    out = dict(delta_terms(S, i, Ucomp))
    add_into(out, transpose(delta_terms(S, i, U)), -1 if i % 2 == 0 else 1)
    return out


def packet_consistent(U, M):
    """Whether ``U`` meets the packet of ``M`` in a beginning or ending segment."""
    flags = [(M & ~(1 << k)) in U for k in reversed(_bits(M))]
    m = len(flags)
    t = 0
    while t < m and flags[t]:
        t += 1
    if not any(flags[t:]):
        return True
    t = m
    while t > 0 and flags[t - 1]:
        t -= 1
    return not any(flags[:t])


def appendix_sweep(nmax):
    """Check the six sign lemmas on every (L, A, B) partition of every support.

    Returns ``(checked, failure)`` where ``failure`` is ``None`` or a tuple
    ``(lemma, L, A, B, k)``.
    """
    checked = 0
    ground = (1 << (nmax + 1)) - 1
    S = ground
    supports = []
    sub = S
    while True:
        supports.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & S
    for S in supports:
        els = _bits(S)
        m = len(els)
        for code in range(3 ** m):
            L = A = B = 0
            c = code
            for e in els:
                r = c % 3
                c //= 3
                if r == 0:
                    L |= 1 << e
                elif r == 1:
                    A |= 1 << e
                else:
                    B |= 1 << e
            nl = popcount(L)
            na = popcount(A)
            nb = popcount(B)
            base = epsilon(L, A, B)
            # swap
            lhs = epsilon(L, B, A)
            rhs = (base + (nl + na + 1) * (nl + nb + 1) + nl + 1) & 1
            checked += 1
            if lhs != rhs:
                return checked, ("sign_swap", L, A, B, -1)
            for k in els:
                bit = 1 << k
                below = bit - 1
                gt_l = popcount(L >> (k + 1))
                pos = popcount(S & below)
                if L & bit:
                    lhs = (base + popcount((L | A) & below)) & 1
                    rhs = (epsilon(L & ~bit, A, B | bit) + gt_l) & 1
                    checked += 1
                    if lhs != rhs:
                        return checked, ("L_first", L, A, B, k)
                    lhs = (base + popcount((L | B) & below) + nl + na + 1) & 1
                    rhs = (epsilon(L & ~bit, A | bit, B) + gt_l + 1) & 1
                    checked += 1
                    if lhs != rhs:
                        return checked, ("L_second", L, A, B, k)
                elif A & bit:
                    lhs = (base + popcount((L | A) & below)) & 1
                    rhs = (epsilon(L, A & ~bit, B) + nl + pos + 1) & 1
                    checked += 1
                    if lhs != rhs:
                        return checked, ("A", L, A, B, k)
                else:
                    lhs = (base + nl + na + popcount((L | B) & below) + 1) & 1
                    rhs = (epsilon(L, A, B & ~bit) + nl + pos + 1) & 1
                    checked += 1
                    if lhs != rhs:
                        return checked, ("B", L, A, B, k)
        # overlapping partitions of S: one per generator set L
        n = m - 1
        for i in range(0, m):
            for L in submasks_of_size(S, i + 1):
                lpos = [els.index(e) for e in _bits(L)]
                cuts = [0] + lpos + [n]
                x = y = 0
                for p in range(i + 2):
                    seg = 0
                    for q in range(cuts[p], cuts[p + 1] + 1):
                        seg |= 1 << els[q]
                    if p % 2 == 0:
                        x |= seg
                    else:
                        y |= seg
                A = x & ~y
                B = y & ~x
                if (x & y) != L:
                    return checked, ("steenrod_partition", L, A, B, -1)
                inv = 0
                for b in _bits(B):
                    inv += popcount(x >> (b + 1))
                eps_part = (inv + i * n) & 1
                nl = i + 1
                first = (epsilon(L, A, B) + nl * (nl - 1) // 2 + nl + 1) & 1
                second = (epsilon(L, A, B) + i // 2) & 1
                checked += 1
                if eps_part != first or eps_part != second:
                    return checked, ("steenrod", L, A, B, i)
    return checked, None


def enumerate_segments(m, links, npackets, cap):
    """Backtracking enumeration of 0/1 assignments to ``m`` ordered items.

    ``links[j]`` lists ``(packet, prev)`` pairs: item ``j`` belongs to
    ``packet`` and ``prev`` is the preceding member of that packet (``-1`` if
    ``j`` is its first member).  Members must be numbered in packet order.  An
    assignment is accepted iff every packet's flags change value at most once.
    Returns the accepted assignments as int bitsets over the items; raises
    OverflowError past ``cap`` results.
    """
    changes = [0] * npackets
    flags = [0] * m
    out = []

    def rec(j, cur):
        if j == m:
            if len(out) >= cap:
                raise OverflowError("result cap exceeded")
            out.append(cur)
            return
        for v in (0, 1):
            flags[j] = v
            bumped = []
            ok = True
            for pid, prev in links[j]:
                if prev >= 0 and flags[prev] != v:
                    changes[pid] += 1
                    bumped.append(pid)
                    if changes[pid] > 1:
                        ok = False
            if ok:
                rec(j + 1, cur | (v << j))
            for pid in bumped:
                changes[pid] -= 1

    rec(0, 0)
    return out
