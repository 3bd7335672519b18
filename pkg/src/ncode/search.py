"""Exhaustive desk-scale decider for 1D realizability.

Enumerates every weak ordering of the 2n interval endpoints (laid out on
integer coordinates with ties) together with every closure-flag assignment
legal for the requested mode.  The derived code depends only on the order
type and the flags, so the enumeration is exhaustive for the combinatorial
question; a hit is re-validated through the exact code_of before being
returned, so the decider never reports a wrong realization.
"""

from __future__ import annotations

import multiprocessing
from fractions import Fraction
from typing import Optional

from ncode import kernel
from ncode.codes import Code
from ncode.intervals import Interval1D, Mode, Realization1D, code_of

DEFAULT_SEARCH_CAP = 4

_MODE_NUM = {Mode.OPEN: 0, Mode.CLOSED: 1, Mode.CONVEX: 2}


class CapacityError(RuntimeError):
    """Instance exceeds the configured exhaustive-search budget."""


def _compress(code: Code) -> tuple[list[int], list[int]]:
    """Drop neurons that fire in no codeword; they get empty receptive sets."""
    used = 0
    for w in code.words:
        used |= w
    active = [i for i in range(code.n) if used >> i & 1]
    pos = {i: k for k, i in enumerate(active)}
    words = []
    for w in code.words:
        cw = 0
        for i in range(code.n):
            if w >> i & 1:
                cw |= 1 << pos[i]
        words.append(cw)
    return active, words


def _build_realization(
    code: Code,
    active: list[int],
    placement: tuple[list[int], list[int], list[int], list[int]],
    mode: Mode,
) -> Realization1D:
    a_coord, b_coord, lclosed, rclosed = placement
    intervals: list[Optional[Interval1D]] = [None] * code.n
    for k, i in enumerate(active):
        intervals[i] = Interval1D(
            Fraction(a_coord[k]),
            Fraction(b_coord[k]),
            bool(lclosed[k]),
            bool(rclosed[k]),
        )
    return Realization1D(code.n, tuple(intervals), mode)


def _search_worker(args):
    n, words, mode_num, block = args
    return block, kernel.search_block(n, tuple(words), mode_num, top_block=block)


def search_realization_1d(
    code: Code,
    mode: Mode,
    cap: int = DEFAULT_SEARCH_CAP,
    workers: int = 1,
) -> Optional[Realization1D]:
    """First 1D realization of `code` in the given mode, or None.

    None is exhaustive: no arrangement of intervals in that mode yields the
    code.  The empty codeword, if present, is realized implicitly (bounded
    receptive sets never cover the whole line) and is stripped before the
    search.  Neurons outside every codeword receive empty receptive sets.
    The cap bounds the number of active neurons; above it the decider
    refuses rather than guess.
    """
    words_nonempty = [w for w in code.words if w]
    if not words_nonempty:
        # only the empty codeword: realized by all-empty receptive sets
        return Realization1D(code.n, tuple([None] * code.n), mode)
    active, words = _compress(Code(code.n, words_nonempty))
    n_active = len(active)
    if n_active > cap:
        raise CapacityError(
            f"{n_active} active neurons exceed the search cap {cap}"
        )
    mode_num = _MODE_NUM[mode]

    placement = None
    if workers <= 1:
        placement = kernel.search_block(n_active, tuple(words), mode_num)
    else:
        blocks = list(range(1, 1 << (2 * n_active)))
        with multiprocessing.Pool(workers) as pool:
            jobs = ((n_active, words, mode_num, b) for b in blocks)
            for _, result in pool.imap(_search_worker, jobs, chunksize=16):
                if result is not None:
                    placement = result
                    pool.terminate()
                    break
    if placement is None:
        return None
    real = _build_realization(code, active, placement, mode)
    real.validate()
    derived = code_of(real)
    expected = sorted(set(words_nonempty))
    assert (
        list(derived.words) == expected
    ), "search returned a realization of the wrong code"
    return real


def is_realizable(code: Code, mode: Mode, cap: int = DEFAULT_SEARCH_CAP) -> bool:
    return search_realization_1d(code, mode, cap=cap) is not None
