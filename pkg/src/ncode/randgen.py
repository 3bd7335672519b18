"""Seeded generators for the randomized batteries.

Each battery derives its own substream from (seed, label), so adding a
battery never perturbs the draws of existing ones.
"""

from __future__ import annotations

import random
from fractions import Fraction

from ncode.codes import Code, intersection_complete, maximal_codewords
from ncode.intervals import Interval1D, Mode, Realization1D
from ncode.maps import (
    AddDuplicate,
    AddTrivial,
    DeleteNeuron,
    ElementaryMap,
    Permutation,
)


def rng_for(seed: int, label: str) -> random.Random:
    return random.Random(f"{seed}:{label}")


def random_code(
    rng: random.Random,
    n: int,
    max_words: int = 0,
    density: float = 0.5,
    allow_empty_word: bool = False,
) -> Code:
    """Code with distinct codewords drawn neuron-wise at the given density."""
    space = (1 << n) - 1
    if max_words <= 0:
        max_words = min(2 * n, space)
    m = rng.randint(1, max_words)
    words: list[int] = []
    seen = set()
    guard = 0
    while len(words) < m and guard < 200 * m:
        guard += 1
        w = 0
        for i in range(n):
            if rng.random() < density:
                w |= 1 << i
        if w == 0 and not allow_empty_word:
            continue
        if w not in seen:
            seen.add(w)
            words.append(w)
    if not words:
        words = [1]
    return Code(n, words)


def random_mic_code(rng: random.Random, n: int) -> Code:
    """Random code completed so all maximal intersections are codewords."""
    code = random_code(rng, n)
    while True:
        hat = intersection_complete(maximal_codewords(code))
        missing = [w for w in hat.words if w not in code]
        if not missing:
            return code
        code = Code(n, list(code.words) + missing)


def random_realization(rng: random.Random, n: int, mode: Mode) -> Realization1D:
    """Random realization on a small integer grid; collisions between
    endpoints are likely on purpose, and closed realizations may contain
    singletons."""
    hi = 2 * n + 3
    intervals = []
    for _ in range(n):
        if mode is Mode.CLOSED and rng.random() < 0.2:
            x = Fraction(rng.randint(0, hi))
            intervals.append(Interval1D.point(x))
            continue
        a = rng.randint(0, hi - 1)
        b = rng.randint(a + 1, hi)
        if mode is Mode.OPEN:
            intervals.append(Interval1D.open(a, b))
        elif mode is Mode.CLOSED:
            intervals.append(Interval1D.closed(a, b))
        else:
            intervals.append(
                Interval1D(
                    Fraction(a), Fraction(b), rng.random() < 0.5, rng.random() < 0.5
                )
            )
    return Realization1D(n, tuple(intervals), mode)


def random_elementary_map(
    rng: random.Random, code: Code, iso_only: bool = False
) -> ElementaryMap:
    """Elementary map applicable to `code`; deletions are skipped for
    iso_only unless they remove a trivial or duplicate neuron."""
    from ncode.maps import DeletionKind, classify_deletion

    n = code.n
    kinds = ["perm", "trivial", "dup"]
    if n > 1:
        deletable = [
            i
            for i in range(1, n + 1)
            if not iso_only
            or classify_deletion(code, i) is not DeletionKind.PROPER_PROJECTION
        ]
        if deletable:
            kinds.append("delete")
    kind = rng.choice(kinds)
    if kind == "perm":
        pi = list(range(1, n + 1))
        rng.shuffle(pi)
        return Permutation(tuple(pi))
    if kind == "trivial":
        return AddTrivial(rng.randint(0, 1))
    if kind == "dup":
        return AddDuplicate(rng.randint(1, n))
    return DeleteNeuron(rng.choice(deletable))
