# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same functions and results as ``_pykernels``."""

from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

BACKEND = "cython"


cdef inline int pc(u64 x) noexcept nogil:
    return __builtin_popcountll(x)


def popcount(x):
    return pc(<u64>x)


cdef int _bits(u64 mask, int* out) noexcept nogil:
    cdef int m = 0
    while mask:
        out[m] = __builtin_ctzll(mask)
        m += 1
        mask &= mask - 1
    return m


def submasks_of_size(S, int k):
    cdef int els[64]
    cdef int idx[64]
    cdef int m = _bits(<u64>S, els)
    cdef int j
    cdef u64 cur
    out = []
    if k < 0 or k > m:
        return out
    for j in range(k):
        idx[j] = j
    while True:
        cur = 0
        for j in range(k):
            cur |= (<u64>1) << els[idx[j]]
        out.append(cur)
        j = k - 1
        while j >= 0 and idx[j] == m - k + j:
            j -= 1
        if j < 0:
            break
        idx[j] += 1
        j += 1
        while j < k:
            idx[j] = idx[j - 1] + 1
            j += 1
    return out


cdef int _eps(u64 L, u64 A, u64 B) noexcept nogil:
    cdef int s = 0
    cdef u64 b = B
    cdef int e
    while b:
        e = __builtin_ctzll(b)
        s += pc(A & (((<u64>1) << e) - 1))
        b &= b - 1
    cdef int nl = pc(L)
    s += nl * (nl - 1) // 2
    s += pc(L | A | B) * pc(A)
    return s & 1


def epsilon(L, A, B):
    return _eps(<u64>L, <u64>A, <u64>B)


cdef u64 _initial_vertex(u64 S, u64 L, object U) except? 0xFFFFFFFFFFFFFFFF:
    cdef u64 A = 0
    cdef u64 rest = S & ~L
    cdef int a
    cdef int odd
    cdef bint inside
    while rest:
        a = __builtin_ctzll(rest)
        rest &= rest - 1
        odd = pc(L >> (a + 1)) & 1
        inside = (L | ((<u64>1) << a)) in U
        if inside != odd:
            A |= (<u64>1) << a
    return A


def initial_vertex(S, L, U):
    return _initial_vertex(<u64>S, <u64>L, U)


cdef dict _delta_terms(u64 S, int i, object U):
    cdef dict out = {}
    cdef int els[64]
    cdef int idx[64]
    cdef int m = _bits(S, els)
    cdef int k = i + 1
    cdef int j
    cdef u64 L, A, B, x, y
    if m <= i or i < -1:
        return out
    for j in range(k):
        idx[j] = j
    while True:
        L = 0
        for j in range(k):
            L |= (<u64>1) << els[idx[j]]
        A = _initial_vertex(S, L, U)
        B = S & ~(L | A)
        x = L | A
        y = L | B
        if x != 0 and y != 0:
            out[(x, y)] = -1 if _eps(L, A, B) else 1
        j = k - 1
        while j >= 0 and idx[j] == m - k + j:
            j -= 1
        if j < 0:
            break
        idx[j] += 1
        j += 1
        while j < k:
            idx[j] = idx[j - 1] + 1
            j += 1
    return out


def delta_terms(S, int i, U):
    return _delta_terms(<u64>S, i, U)


def steenrod_terms(S, int i):
    cdef dict out = {}
    cdef int els[64]
    cdef int idx[64]
    cdef int cuts[66]
    cdef int m = _bits(<u64>S, els)
    cdef int n = m - 1
    cdef int k = i + 1
    cdef int j, p, q, inv
    cdef u64 x, y, seg, rest
    if i < 0 or k > n + 1:
        return out
    for j in range(k):
        idx[j] = j
    while True:
        cuts[0] = 0
        for j in range(k):
            cuts[j + 1] = idx[j]
        cuts[k + 1] = n
        x = 0
        y = 0
        for p in range(i + 2):
            seg = 0
            for q in range(cuts[p], cuts[p + 1] + 1):
                seg |= (<u64>1) << els[q]
            if p % 2 == 0:
                x |= seg
            else:
                y |= seg
        inv = 0
        rest = y & ~x
        while rest:
            q = __builtin_ctzll(rest)
            rest &= rest - 1
            inv += pc(x >> (q + 1))
        out[(x, y)] = -1 if (inv + i * n) & 1 else 1
        j = k - 1
        while j >= 0 and idx[j] == n + 1 - k + j:
            j -= 1
        if j < 0:
            break
        idx[j] += 1
        j += 1
        while j < k:
            idx[j] = idx[j - 1] + 1
            j += 1
    return out


cdef inline void _bump(dict out, object key, object val):
    cdef object v = out.get(key, 0) + val
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def add_into(dict out, dict terms, scale):
    for key, c in terms.items():
        _bump(out, key, scale * c)
    return out


cdef dict _tensor_boundary(dict terms, dict out, object scale):
    cdef u64 x, y, rest
    cdef int p, v, nx, ny
    cdef object c, c2
    for key, coef in terms.items():
        x = key[0]
        y = key[1]
        c = coef * scale
        nx = pc(x)
        ny = pc(y)
        if nx > 1:
            rest = x
            p = 0
            while rest:
                v = __builtin_ctzll(rest)
                rest &= rest - 1
                _bump(out, (x & ~((<u64>1) << v), y), -c if p & 1 else c)
                p += 1
        if ny > 1:
            c2 = -c if (nx - 1) & 1 else c
            rest = y
            p = 0
            while rest:
                v = __builtin_ctzll(rest)
                rest &= rest - 1
                _bump(out, (x, y & ~((<u64>1) << v)), -c2 if p & 1 else c2)
                p += 1
    return out


def tensor_boundary(dict terms, out=None, scale=1):
    if out is None:
        out = {}
    return _tensor_boundary(terms, out, scale)


cdef dict _transpose(dict terms):
    cdef dict out = {}
    cdef u64 x, y
    for key, c in terms.items():
        x = key[0]
        y = key[1]
        if ((pc(x) - 1) * (pc(y) - 1)) & 1:
            c = -c
        out[(y, x)] = c
    return out


def transpose(dict terms):
    return _transpose(terms)


def homotopy_defect(S, int i, U):
    cdef u64 s = <u64>S
    cdef dict out = _tensor_boundary(_delta_terms(s, i, U), {}, 1)
    cdef int sgn = -1 if i & 1 else 1
    cdef int p = 0
    cdef int v
    cdef u64 rest = s
    cdef u64 face
    while rest:
        v = __builtin_ctzll(rest)
        rest &= rest - 1
        face = s & ~((<u64>1) << v)
        if face:
            add_into(out, _delta_terms(face, i, U), -sgn if p % 2 == 0 else sgn)
        p += 1
    cdef dict prev = _delta_terms(s, i - 1, ())
    add_into(out, prev, -1)
    add_into(out, _transpose(prev), -sgn)
    return out


def complement_defect(S, int i, U, Ucomp):
    cdef dict out = dict(_delta_terms(<u64>S, i, Ucomp))
    add_into(out, _transpose(_delta_terms(<u64>S, i, U)), -1 if i % 2 == 0 else 1)
    return out


def packet_consistent(U, M):
    cdef int els[64]
    cdef int m = _bits(<u64>M, els)
    cdef u64 mm = <u64>M
    cdef int j, t, changes = 0
    cdef bint prev = False, cur
    for j in range(m):
        cur = (mm & ~((<u64>1) << els[m - 1 - j])) in U
        if j > 0 and cur != prev:
            changes += 1
        prev = cur
    return changes <= 1


cdef int _appendix_core(u64 S, long long* checked, u64* fail) noexcept nogil:
    """Return 0 on success or a lemma code; ``fail`` receives (L, A, B, k)."""
    cdef int els[64]
    cdef int m = _bits(S, els)
    cdef long long code, total = 1
    cdef long long c
    cdef int j, r, k, nl, na, nb, base, lhs, rhs, gt_l, pos, e
    cdef u64 L, A, B, bit, below
    for j in range(m):
        total *= 3
    for code in range(total):
        L = 0
        A = 0
        B = 0
        c = code
        for j in range(m):
            r = c % 3
            c = c // 3
            if r == 0:
                L |= (<u64>1) << els[j]
            elif r == 1:
                A |= (<u64>1) << els[j]
            else:
                B |= (<u64>1) << els[j]
        nl = pc(L)
        na = pc(A)
        nb = pc(B)
        base = _eps(L, A, B)
        lhs = _eps(L, B, A)
        rhs = (base + (nl + na + 1) * (nl + nb + 1) + nl + 1) & 1
        checked[0] += 1
        if lhs != rhs:
            fail[0] = L; fail[1] = A; fail[2] = B; fail[3] = <u64>-1
            return 1
        for j in range(m):
            k = els[j]
            bit = (<u64>1) << k
            below = bit - 1
            gt_l = pc(L >> (k + 1))
            pos = pc(S & below)
            fail[0] = L; fail[1] = A; fail[2] = B; fail[3] = k
            if L & bit:
                lhs = (base + pc((L | A) & below)) & 1
                rhs = (_eps(L & ~bit, A, B | bit) + gt_l) & 1
                checked[0] += 1
                if lhs != rhs:
                    return 2
                lhs = (base + pc((L | B) & below) + nl + na + 1) & 1
                rhs = (_eps(L & ~bit, A | bit, B) + gt_l + 1) & 1
                checked[0] += 1
                if lhs != rhs:
                    return 3
            elif A & bit:
                lhs = (base + pc((L | A) & below)) & 1
                rhs = (_eps(L, A & ~bit, B) + nl + pos + 1) & 1
                checked[0] += 1
                if lhs != rhs:
                    return 4
            else:
                lhs = (base + nl + na + pc((L | B) & below) + 1) & 1
                rhs = (_eps(L, A, B & ~bit) + nl + pos + 1) & 1
                checked[0] += 1
                if lhs != rhs:
                    return 5
    return 0


cdef int _steenrod_core(u64 S, long long* checked, u64* fail) noexcept nogil:
    cdef int els[64]
    cdef int idx[64]
    cdef int cuts[66]
    cdef int m = _bits(S, els)
    cdef int n = m - 1
    cdef int i, k, j, p, q, inv, nl, eps_part, first, second, eb
    cdef u64 L, x, y, seg, A, B, rest
    for i in range(m):
        k = i + 1
        for j in range(k):
            idx[j] = j
        while True:
            L = 0
            cuts[0] = 0
            for j in range(k):
                L |= (<u64>1) << els[idx[j]]
                cuts[j + 1] = idx[j]
            cuts[k + 1] = n
            x = 0
            y = 0
            for p in range(i + 2):
                seg = 0
                for q in range(cuts[p], cuts[p + 1] + 1):
                    seg |= (<u64>1) << els[q]
                if p % 2 == 0:
                    x |= seg
                else:
                    y |= seg
            A = x & ~y
            B = y & ~x
            fail[0] = L; fail[1] = A; fail[2] = B; fail[3] = <u64>-1
            if (x & y) != L:
                return 6
            inv = 0
            rest = B
            while rest:
                eb = __builtin_ctzll(rest)
                rest &= rest - 1
                inv += pc(x >> (eb + 1))
            eps_part = (inv + i * n) & 1
            nl = i + 1
            first = (_eps(L, A, B) + nl * (nl - 1) // 2 + nl + 1) & 1
            second = (_eps(L, A, B) + i // 2) & 1
            checked[0] += 1
            if eps_part != first or eps_part != second:
                fail[3] = i
                return 7
            j = k - 1
            while j >= 0 and idx[j] == m - k + j:
                j -= 1
            if j < 0:
                break
            idx[j] += 1
            j += 1
            while j < k:
                idx[j] = idx[j - 1] + 1
                j += 1
    return 0


_LEMMAS = {
    1: "sign_swap", 2: "L_first", 3: "L_second", 4: "A", 5: "B",
    6: "steenrod_partition", 7: "steenrod",
}


def appendix_sweep(int nmax):
    cdef long long checked = 0
    cdef u64 fail[4]
    cdef u64 ground = ((<u64>1) << (nmax + 1)) - 1
    cdef u64 sub = ground
    cdef int code
    while True:
        code = _appendix_core(sub, &checked, fail)
        if code == 0:
            code = _steenrod_core(sub, &checked, fail)
        if code:
            k = -1 if fail[3] == <u64>-1 else <long long>fail[3]
            return checked, (_LEMMAS[code], fail[0], fail[1], fail[2], k)
        if sub == 0:
            break
        sub = (sub - 1) & ground
    return checked, None


def enumerate_segments(int m, links, int npackets, cap):
    cdef int total_links = 0
    cdef int j, t
    for j in range(m):
        total_links += len(links[j])
    cdef int* start = <int*>malloc((m + 1) * sizeof(int))
    cdef int* pids = <int*>malloc((total_links + 1) * sizeof(int))
    cdef int* prevs = <int*>malloc((total_links + 1) * sizeof(int))
    cdef int* changes = <int*>malloc((npackets + 1) * sizeof(int))
    cdef int* flags = <int*>malloc((m + 1) * sizeof(int))
    cdef int* state = <int*>malloc((m + 1) * sizeof(int))
    if not (start and pids and prevs and changes and flags and state):
        free(start); free(pids); free(prevs); free(changes); free(flags); free(state)
        raise MemoryError()
    cdef int pos = 0
    cdef long long limit = cap
    cdef list out = []
    cdef int v, ok, pid, prev
    cdef object cur
    cdef object one = 1
    try:
        for j in range(m):
            start[j] = pos
            for pid_, prev_ in links[j]:
                pids[pos] = pid_
                prevs[pos] = prev_
                pos += 1
        start[m] = pos
        for t in range(npackets):
            changes[t] = 0
        # state[j]: next value to try at depth j (0, 1) or 2 when exhausted
        j = 0
        if m == 0:
            out.append(0)
            return out
        state[0] = 0
        while j >= 0:
            if state[j] > 0:
                # undo the previous choice at depth j
                v = flags[j]
                for t in range(start[j], start[j + 1]):
                    prev = prevs[t]
                    if prev >= 0 and flags[prev] != v:
                        changes[pids[t]] -= 1
            if state[j] == 2:
                j -= 1
                continue
            v = state[j]
            state[j] += 1
            flags[j] = v
            ok = 1
            for t in range(start[j], start[j + 1]):
                prev = prevs[t]
                if prev >= 0 and flags[prev] != v:
                    changes[pids[t]] += 1
                    if changes[pids[t]] > 1:
                        ok = 0
            if not ok:
                continue
            if j == m - 1:
                if len(out) >= limit:
                    raise OverflowError("result cap exceeded")
                cur = 0
                for t in range(m):
                    if flags[t]:
                        cur |= one << t
                out.append(cur)
                continue
            j += 1
            state[j] = 0
        return out
    finally:
        free(start); free(pids); free(prevs); free(changes); free(flags); free(state)
