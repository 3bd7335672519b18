# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: endomorphism census and 1D realization search.

Mirror of _pykernel.py (same enumeration order, same results); see that
module for the algorithm notes.
"""

import array

from libc.string cimport memset

IMPL = "c"

cdef enum:
    MAXM = 16        # census basis size cap (masks fit in 16 bits)
    MAXNEU = 12      # census neuron cap
    MAXSYM = 24      # search: 2 * neuron cap


cdef struct CensusCounts:
    unsigned long long nrh
    unsigned long long bpm
    unsigned long long um


cdef void _census_descend(
    int k, int m, int n, int filter_kind, int prefix_len,
    unsigned int* cols, unsigned char* pref_ok, unsigned char* prefix,
    unsigned char* f, int* used, int* profile, unsigned int* ys,
    CensusCounts* out,
) noexcept:
    cdef int i, j, t, lo, hi
    cdef unsigned int bit = 1u << k
    cdef unsigned int ny
    cdef unsigned int saved[MAXNEU]
    cdef bint ok, is_perm, is_const
    cdef unsigned char* pk = pref_ok + ((<size_t> k) << MAXM)

    if k == m:
        out.nrh += 1
        is_perm = True
        for i in range(m):
            if used[i] != 1:
                is_perm = False
                break
        if is_perm:
            out.bpm += 1
        else:
            is_const = True
            for t in range(1, m):
                if f[t] != f[0]:
                    is_const = False
                    break
            if is_const:
                out.um += 1
        return

    if k < prefix_len:
        lo = prefix[k]
        hi = lo + 1
    elif filter_kind == 2 and k > 0:
        lo = f[0]
        hi = lo + 1
    else:
        lo = 0
        hi = m
    for i in range(lo, hi):
        if filter_kind == 1 and used[i]:
            continue
        if profile != NULL and used[i] >= profile[i]:
            continue
        ok = True
        for j in range(n):
            saved[j] = ys[j]
            ny = ys[j] | (bit if (cols[j] >> i) & 1u else 0u)
            if not pk[ny]:
                ok = False
                for t in range(j):
                    ys[t] = saved[t]
                break
            ys[j] = ny
        if not ok:
            continue
        f[k] = <unsigned char> i
        used[i] += 1
        _census_descend(k + 1, m, n, filter_kind, prefix_len, cols, pref_ok,
                        prefix, f, used, profile, ys, out)
        used[i] -= 1
        for j in range(n):
            ys[j] = saved[j]


def census_block(int m, cols, allowed, int filter_kind,
                 prefix=(), profile=None):
    """See _pykernel.census_block."""
    cdef unsigned int ccols[MAXNEU]
    cdef unsigned char cprefix[MAXM]
    cdef unsigned char f[MAXM]
    cdef int used[MAXM]
    cdef int cprofile[MAXM]
    cdef unsigned int ys[MAXNEU]
    cdef int* profile_ptr = NULL
    cdef CensusCounts out
    cdef int n = len(cols)
    cdef int i, k
    cdef unsigned int v, mask

    if m < 1 or m > MAXM or n > MAXNEU:
        raise ValueError("census kernel size cap exceeded")
    for i in range(n):
        ccols[i] = cols[i]
        ys[i] = 0
    cdef int prefix_len = len(prefix)
    for i in range(prefix_len):
        cprefix[i] = prefix[i]
    if profile is not None:
        for i in range(m):
            cprofile[i] = profile[i]
        profile_ptr = cprofile
    memset(used, 0, sizeof(used))
    out.nrh = 0
    out.bpm = 0
    out.um = 0

    # feasibility tables: pref_ok[k][y] = 1 when some allowed mask matches y
    # on the low k+1 bits
    table = array.array("B", bytes((<size_t> m) << MAXM))
    cdef unsigned char[::1] tview = table
    cdef unsigned char* pref_ok = &tview[0]
    for k in range(m):
        mask = (2u << k) - 1u
        for v in allowed:
            pref_ok[((<size_t> k) << MAXM) + (v & mask)] = 1

    _census_descend(0, m, n, filter_kind, prefix_len, ccols, pref_ok,
                    cprefix, f, used, profile_ptr, ys, &out)
    return int(out.nrh), int(out.bpm), int(out.um)


# ---------------------------------------------------------------------------
# realization search


cdef bint _search_descend(
    int n, int mode, unsigned int rem, unsigned int open_mask,
    unsigned long long seen, int t,
    unsigned char* allowed, int* word_pos, unsigned long long all_seen,
    unsigned int* a_coord, unsigned int* b_coord,
    unsigned char* lclosed, unsigned char* rclosed,
) noexcept:
    cdef unsigned int sub = 0
    if rem == 0:
        return seen == all_seen
    while True:
        sub = (sub - rem) & rem
        if sub == 0:
            return False
        if _search_place(n, mode, rem, open_mask, seen, t, sub, allowed,
                         word_pos, all_seen, a_coord, b_coord, lclosed,
                         rclosed):
            return True


cdef bint _search_place(
    int n, int mode, unsigned int rem, unsigned int open_mask,
    unsigned long long seen, int t, unsigned int block,
    unsigned char* allowed, int* word_pos, unsigned long long all_seen,
    unsigned int* a_coord, unsigned int* b_coord,
    unsigned char* lclosed, unsigned char* rclosed,
) noexcept:
    cdef int a_in[MAXSYM]
    cdef int b_in[MAXSYM]
    cdef int singles[MAXSYM]
    cdef int na = 0, nb = 0, ns = 0
    cdef int i, idx
    cdef bint a_here, b_here, closed_flag
    cdef unsigned int point, base_open, new_rem, fl, nflags
    cdef unsigned long long seen2

    for i in range(n):
        a_here = (block >> i) & 1u
        b_here = (block >> (n + i)) & 1u
        if b_here and not a_here and (rem >> i) & 1u:
            return False
        if a_here and b_here:
            if mode == 0:
                return False
            singles[ns] = i
            ns += 1
        elif a_here:
            a_in[na] = i
            na += 1
        elif b_here:
            b_in[nb] = i
            nb += 1

    base_open = open_mask
    for idx in range(na):
        base_open |= 1u << a_in[idx]
    for idx in range(nb):
        base_open &= ~(1u << b_in[idx])
    new_rem = rem & ~block

    nflags = (1u << (na + nb)) if mode == 2 else 1u

    for fl in range(nflags):
        point = open_mask
        for idx in range(na):
            closed_flag = (mode == 1) or (mode == 2 and not (fl >> idx) & 1u)
            if closed_flag:
                point |= 1u << a_in[idx]
        for idx in range(nb):
            closed_flag = (mode == 1) or (mode == 2 and not (fl >> (na + idx)) & 1u)
            if not closed_flag:
                point &= ~(1u << b_in[idx])
        for idx in range(ns):
            point |= 1u << singles[idx]
        if not allowed[point]:
            continue
        seen2 = seen
        if point:
            seen2 |= 1ULL << word_pos[point]
        if new_rem:
            if not allowed[base_open]:
                continue
            if base_open:
                seen2 |= 1ULL << word_pos[base_open]
        for idx in range(na):
            i = a_in[idx]
            a_coord[i] = t
            lclosed[i] = 1 if (mode == 1 or (mode == 2 and not (fl >> idx) & 1u)) else 0
        for idx in range(nb):
            i = b_in[idx]
            b_coord[i] = t
            rclosed[i] = 1 if (mode == 1 or (mode == 2 and not (fl >> (na + idx)) & 1u)) else 0
        for idx in range(ns):
            i = singles[idx]
            a_coord[i] = t
            b_coord[i] = t
            lclosed[i] = 1
            rclosed[i] = 1
        if _search_descend(n, mode, new_rem, base_open, seen2, t + 1, allowed,
                           word_pos, all_seen, a_coord, b_coord, lclosed,
                           rclosed):
            return True
    return False


def search_block(int n, words, int mode, top_block=None):
    """See _pykernel.search_block."""
    cdef unsigned int a_coord[MAXSYM]
    cdef unsigned int b_coord[MAXSYM]
    cdef unsigned char lclosed[MAXSYM]
    cdef unsigned char rclosed[MAXSYM]
    cdef int nwords = len(words)
    cdef unsigned long long all_seen = (1ULL << nwords) - 1ULL
    cdef unsigned int full, w
    cdef int i
    cdef bint found

    if n < 1 or 2 * n > MAXSYM or nwords > 62:
        raise ValueError("search kernel size cap exceeded")
    full = (1u << (2 * n)) - 1u

    atable = array.array("B", bytes(1 << n))
    ptable = array.array("i", bytes(4 << n))
    cdef unsigned char[::1] aview = atable
    cdef int[::1] pview = ptable
    cdef unsigned char* allowed = &aview[0]
    cdef int* word_pos = &pview[0]
    allowed[0] = 1
    for i in range(nwords):
        w = words[i]
        allowed[w] = 1
        word_pos[w] = i

    memset(a_coord, 0, sizeof(a_coord))
    memset(b_coord, 0, sizeof(b_coord))
    memset(lclosed, 0, sizeof(lclosed))
    memset(rclosed, 0, sizeof(rclosed))

    if top_block is not None:
        found = _search_place(n, mode, full, 0, 0, 1, <unsigned int> top_block,
                              allowed, word_pos, all_seen, a_coord, b_coord,
                              lclosed, rclosed)
    else:
        found = _search_descend(n, mode, full, 0, 0, 1, allowed, word_pos,
                                all_seen, a_coord, b_coord, lclosed, rclosed)
    if not found:
        return None
    return (
        [int(a_coord[i]) for i in range(n)],
        [int(b_coord[i]) for i in range(n)],
        [int(lclosed[i]) for i in range(n)],
        [int(rclosed[i]) for i in range(n)],
    )
