"""Pure-Python kernels: endomorphism census and 1D realization search.

Same enumeration order and results as the compiled kernel in _ckernel.pyx;
selected at import time by ncode.kernel when the extension is unavailable
or NCODE_PURE=1.
"""

from __future__ import annotations

from typing import Optional

IMPL = "python"

MODE_OPEN = 0
MODE_CLOSED = 1
MODE_CONVEX = 2


def census_block(
    m: int,
    cols: tuple[int, ...],
    allowed: tuple[int, ...],
    filter_kind: int,  # 0 all functions, 1 bijections, 2 constants
    prefix: tuple[int, ...] = (),
    profile: Optional[tuple[int, ...]] = None,
) -> tuple[int, int, int]:
    """Count index functions f:[m]->[m] whose induced basis substitution keeps
    every column gather inside `allowed`.

    The gather for column c is y with bit k = bit f(k) of c; a function
    passes when every column's gather is an allowed mask.  Counts are
    returned as (passing, passing_bijections, passing_constants) with
    constants that are also bijections (m=1) counted as bijections.

    `prefix` pins f(1..len(prefix)) for work splitting; `profile` restricts
    preimage sizes (|f^-1(i)| = profile[i]).  Feasibility tables over mask
    prefixes prune the walk without changing any count.
    """
    n = len(cols)
    # pref_ok[k] = set of low-(k+1)-bit patterns extendable to an allowed mask
    pref_ok = []
    for k in range(m):
        mask = (2 << k) - 1
        pref_ok.append(frozenset(v & mask for v in allowed))
    colbits = [[(c >> i) & 1 for i in range(m)] for c in cols]

    used = [0] * m
    ys = [0] * n
    f = [0] * m
    counts = [0, 0, 0]  # nrh, bpm, um

    def descend(k: int) -> None:
        if k == m:
            counts[0] += 1
            if all(u == 1 for u in used):
                counts[1] += 1
            elif f[0] == f[m - 1] and all(v == f[0] for v in f):
                counts[2] += 1
            return
        pk = pref_ok[k]
        bit = 1 << k
        if k < len(prefix):
            candidates = (prefix[k],)
        elif filter_kind == 2:
            candidates = (f[0],) if k else range(m)
        else:
            candidates = range(m)
        for i in candidates:
            if filter_kind == 1 and used[i]:
                continue
            if profile is not None and used[i] >= profile[i]:
                continue
            snapshot = ys[:]
            ok = True
            for j in range(n):
                ny = ys[j] | (bit if colbits[j][i] else 0)
                if ny not in pk:
                    ok = False
                    break
                ys[j] = ny
            if ok:
                f[k] = i
                used[i] += 1
                descend(k + 1)
                used[i] -= 1
            ys[:] = snapshot

    descend(0)
    return counts[0], counts[1], counts[2]


def search_block(
    n: int,
    words: tuple[int, ...],
    mode: int,
    top_block: Optional[int] = None,
) -> Optional[tuple[list[int], list[int], list[int], list[int]]]:
    """First endpoint weak order + closure flags realizing exactly `words`.

    Endpoint symbols: bit i is the left endpoint of interval i, bit n+i the
    right one.  Blocks of tied symbols are laid down left to right at
    coordinates 1, 2, ...; every elementary piece (each tie point, each gap
    between consecutive coordinates) must read an allowed membership mask,
    and all words must occur.  Branches are explored with blocks as
    ascending submask integers and, in convex mode, closed flags before
    open ones, so the first hit is deterministic.

    Returns (a_coord, b_coord, left_closed, right_closed) per interval or
    None.  `top_block` restricts the first block (work splitting).
    """
    allowed = frozenset(words) | {0}
    word_pos = {w: i for i, w in enumerate(words)}
    all_seen = (1 << len(words)) - 1
    nsym = 2 * n
    full = (1 << nsym) - 1

    a_coord = [0] * n
    b_coord = [0] * n
    lclosed = [0] * n
    rclosed = [0] * n

    def place(rem: int, open_mask: int, seen: int, t: int, block: int) -> bool:
        # split block into roles
        a_in = []
        b_in = []
        singles = []
        for i in range(n):
            a_here = block >> i & 1
            b_here = block >> (n + i) & 1
            if b_here and not a_here and rem >> i & 1:
                return False  # right endpoint before its left endpoint
            if a_here and b_here:
                if mode == MODE_OPEN:
                    return False
                singles.append(i)
            elif a_here:
                a_in.append(i)
            elif b_here:
                b_in.append(i)

        flagged = a_in + b_in
        if mode == MODE_CONVEX:
            flag_range = range(1 << len(flagged))
        else:
            flag_range = (0,)
        closed_mode = mode == MODE_CLOSED

        base_open = open_mask
        for i in a_in:
            base_open |= 1 << i
        for i in b_in:
            base_open &= ~(1 << i)
        new_rem = rem & ~block

        for fl in flag_range:
            # closed-flag vector over `flagged`; bit set = open (so that
            # fl=0, all closed, is explored first)
            point = open_mask
            for idx, i in enumerate(a_in):
                if closed_mode or (mode == MODE_CONVEX and not fl >> idx & 1):
                    point |= 1 << i
            for idx, i in enumerate(b_in):
                if not (
                    closed_mode
                    or (mode == MODE_CONVEX and not fl >> (len(a_in) + idx) & 1)
                ):
                    point &= ~(1 << i)
            for i in singles:
                point |= 1 << i
            if point not in allowed:
                continue
            seen2 = seen | (1 << word_pos[point] if point else 0)
            if new_rem:
                if base_open not in allowed:
                    continue
                if base_open:
                    seen2 |= 1 << word_pos[base_open]
            # record placement
            for idx, i in enumerate(a_in):
                a_coord[i] = t
                lclosed[i] = (
                    1
                    if closed_mode or (mode == MODE_CONVEX and not fl >> idx & 1)
                    else 0
                )
            for idx, i in enumerate(b_in):
                b_coord[i] = t
                rclosed[i] = (
                    1
                    if closed_mode
                    or (mode == MODE_CONVEX and not fl >> (len(a_in) + idx) & 1)
                    else 0
                )
            for i in singles:
                a_coord[i] = t
                b_coord[i] = t
                lclosed[i] = 1
                rclosed[i] = 1
            if descend(new_rem, base_open, seen2, t + 1):
                return True
        return False

    def descend(rem: int, open_mask: int, seen: int, t: int) -> bool:
        if rem == 0:
            return seen == all_seen
        sub = 0
        while True:
            sub = (sub - rem) & rem
            if sub == 0:
                return False
            if place(rem, open_mask, seen, t, sub):
                return True

    if top_block is not None:
        if not place(full, 0, 0, 1, top_block):
            return None
    else:
        if not descend(full, 0, 0, 1):
            return None
    return a_coord, b_coord, lclosed, rclosed
