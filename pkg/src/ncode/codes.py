"""Binary codes on n neurons and their combinatorial predicates.

A codeword is an int bitmask: bit i-1 set means neuron i fires.  A Code is
an ordered list of distinct codewords; the order matters because it doubles
as the basis order of the function ring built over the code.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

MAX_NEURONS = 64


class CodeError(ValueError):
    """Malformed code (bad neuron count, duplicate codeword, ...)."""


class CodeParseError(CodeError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def word_from_neurons(neurons: Iterable[int], n: int) -> int:
    mask = 0
    for i in neurons:
        if not 1 <= i <= n:
            raise CodeError(f"neuron {i} out of range 1..{n}")
        mask |= 1 << (i - 1)
    return mask


def neurons_of(word: int) -> tuple[int, ...]:
    """Support of a codeword as a 1-based neuron tuple."""
    out = []
    i = 1
    while word:
        if word & 1:
            out.append(i)
        word >>= 1
        i += 1
    return tuple(out)


def word_to_str(word: int, n: int) -> str:
    """Binary string display, neuron 1 leftmost ('110' = neurons {1,2})."""
    return "".join("1" if word >> i & 1 else "0" for i in range(n))


def word_label(word: int) -> str:
    """Compact support label ('12', '145', '-' for the empty word)."""
    if word == 0:
        return "-"
    return " ".join(str(i) for i in neurons_of(word)) if word >= 1 << 9 else "".join(
        str(i) for i in neurons_of(word)
    )


class Code:
    """Ordered collection of distinct codewords on n neurons."""

    __slots__ = ("n", "words", "_positions")

    def __init__(self, n: int, words: Iterable[int]):
        if not 1 <= n <= MAX_NEURONS:
            raise CodeError(f"neuron count must be 1..{MAX_NEURONS}, got {n}")
        ws = tuple(int(w) for w in words)
        if not ws:
            raise CodeError("a code needs at least one codeword")
        full = (1 << n) - 1
        positions = {}
        for idx, w in enumerate(ws):
            if w < 0 or w & ~full:
                raise CodeError(f"codeword {w:#x} uses neurons beyond {n}")
            if w in positions:
                raise CodeError(f"duplicate codeword '{word_label(w)}'")
            positions[w] = idx
        self.n = n
        self.words = ws
        self._positions = positions

    @property
    def m(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[int]:
        return iter(self.words)

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: int) -> bool:
        return word in self._positions

    def index_of(self, word: int) -> int:
        return self._positions[word]

    def word_set(self) -> frozenset:
        return frozenset(self.words)

    def same_words(self, other: "Code") -> bool:
        """Set equality, ignoring order (n must agree)."""
        return self.n == other.n and self.word_set() == other.word_set()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Code) and self.n == other.n and self.words == other.words
        )

    def __hash__(self):
        return hash((self.n, self.words))

    def __repr__(self) -> str:
        shown = ", ".join(word_label(w) for w in self.words)
        return f"Code(n={self.n}, [{shown}])"

    def column(self, j: int) -> int:
        """Bitmask over codeword indices: which words activate neuron j."""
        col = 0
        for idx, w in enumerate(self.words):
            if w >> (j - 1) & 1:
                col |= 1 << idx
        return col

    def active_neurons(self) -> tuple[int, ...]:
        used = 0
        for w in self.words:
            used |= w
        return neurons_of(used)


# ---------------------------------------------------------------------------
# predicates


def maximal_codewords(code: Code) -> Code:
    """Sub-code of codewords not strictly contained in any other codeword."""
    maximal = []
    for w in code.words:
        if not any(w != v and w & v == w for v in code.words):
            maximal.append(w)
    return Code(code.n, maximal)


def intersection_complete(code: Code) -> Code:
    """All non-empty intersections of non-empty subcollections, mask-ascending.

    Closure under pairwise intersection reaches every subset intersection,
    because each prefix of an iterated intersection contains the final set.
    """
    closure = set(code.words)
    frontier = set(code.words)
    while frontier:
        new = set()
        for a in frontier:
            for b in code.words:
                c = a & b
                if c and c not in closure:
                    new.add(c)
        closure |= new
        frontier = new
    return Code(code.n, sorted(closure))


def is_max_intersection_complete(code: Code) -> bool:
    """True when every intersection of maximal codewords is itself a codeword."""
    hat = intersection_complete(maximal_codewords(code))
    return hat.word_set() <= code.word_set()


def is_doublet_maximal(code: Code) -> tuple[bool, list[tuple[int, int]]]:
    """Whether each maximal codeword meets at most one other maximal codeword.

    Returns (verdict, pairs) where pairs lists every unordered pair of
    maximal codewords with non-empty intersection, in maximal-order.
    """
    maxw = maximal_codewords(code).words
    pairs = []
    degree = [0] * len(maxw)
    for i in range(len(maxw)):
        for j in range(i + 1, len(maxw)):
            if maxw[i] & maxw[j]:
                pairs.append((maxw[i], maxw[j]))
                degree[i] += 1
                degree[j] += 1
    return all(d <= 1 for d in degree), pairs


class ObstructionKind(enum.Enum):
    TRIPLE_IN_MAXIMAL = "triple_in_maximal"
    TRIPLE_PAIRWISE = "triple_pairwise"


@dataclass(frozen=True)
class ObstructionWitness:
    """A pattern in the code that rules out any 1D convex realization."""

    kind: ObstructionKind
    neurons: tuple[int, int, int]
    witnesses: tuple[int, ...]

    def describe(self) -> str:
        i, j, k = self.neurons
        ws = ", ".join(word_label(w) for w in self.witnesses)
        return f"{self.kind.value} on neurons ({i},{j},{k}) via [{ws}]"


def find_dim1_obstructions(code: Code) -> list[ObstructionWitness]:
    """Witnesses of the two singleton-triple patterns barring 1D realizations.

    Pattern ``triple_in_maximal``: singletons {i},{j},{k} are codewords and
    some codeword contains all three neurons.  Pattern ``triple_pairwise``:
    the three singletons plus codewords containing each pair of the three
    neurons while excluding the third.  Every witness tuple is reported.
    """
    singles = [i for i in range(1, code.n + 1) if (1 << (i - 1)) in code]
    out: list[ObstructionWitness] = []
    for ai in range(len(singles)):
        for bi in range(ai + 1, len(singles)):
            for ci in range(bi + 1, len(singles)):
                i, j, k = singles[ai], singles[bi], singles[ci]
                bits = (1 << (i - 1)) | (1 << (j - 1)) | (1 << (k - 1))
                for w in code.words:
                    if w & bits == bits:
                        out.append(
                            ObstructionWitness(
                                ObstructionKind.TRIPLE_IN_MAXIMAL, (i, j, k), (w,)
                            )
                        )
                def pair_words(a: int, b: int, other: int) -> list[int]:
                    need = (1 << (a - 1)) | (1 << (b - 1))
                    ban = 1 << (other - 1)
                    return [w for w in code.words if w & need == need and not w & ban]

                for wij in pair_words(i, j, k):
                    for wik in pair_words(i, k, j):
                        for wjk in pair_words(j, k, i):
                            out.append(
                                ObstructionWitness(
                                    ObstructionKind.TRIPLE_PAIRWISE,
                                    (i, j, k),
                                    (wij, wik, wjk),
                                )
                            )
    return out


# ---------------------------------------------------------------------------
# text / JSON formats


def parse_code_text(text: str) -> Code:
    """Parse the one-codeword-per-line format.

    Lines starting with '#' are comments.  The first payload line may be
    'n=<int>' (required when codewords are given as neuron index lists).
    A codeword line is either a 0/1 string of length n, a space-separated
    list of neuron indices, or '-' for the empty codeword.
    """
    n: Optional[int] = None
    words: list[int] = []
    saw_payload = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("n=") and not saw_payload:
            try:
                n = int(line[2:])
            except ValueError:
                raise CodeParseError(f"bad neuron count {line!r}", lineno)
            continue
        saw_payload = True
        if line == "-":
            words.append(0)
            continue
        is_bits = set(line) <= {"0", "1"}
        if is_bits and (n is None or len(line) == n):
            if n is None:
                n = len(line)
            elif len(line) != n:
                raise CodeParseError(
                    f"bit string length {len(line)} != n={n}", lineno
                )
            words.append(sum(1 << i for i, c in enumerate(line) if c == "1"))
        else:
            if n is None:
                raise CodeParseError(
                    "neuron index lists need a preceding 'n=<int>' line", lineno
                )
            try:
                idx = [int(tok) for tok in line.split()]
            except ValueError:
                raise CodeParseError(f"cannot parse codeword {line!r}", lineno)
            try:
                words.append(word_from_neurons(idx, n))
            except CodeError as e:
                raise CodeParseError(str(e), lineno)
    if n is None or not words:
        raise CodeParseError("no codewords found")
    try:
        return Code(n, words)
    except CodeError as e:
        raise CodeParseError(str(e))


def code_to_text(code: Code) -> str:
    lines = [f"n={code.n}"]
    lines += [word_to_str(w, code.n) for w in code.words]
    return "\n".join(lines) + "\n"


def code_to_json_dict(code: Code) -> dict:
    return {"n": code.n, "words": [list(neurons_of(w)) for w in code.words]}


def code_from_json_dict(obj: dict) -> Code:
    try:
        n = int(obj["n"])
        words = [word_from_neurons(w, n) for w in obj["words"]]
    except (KeyError, TypeError) as e:
        raise CodeParseError(f"bad code JSON: {e}")
    return Code(n, words)


def load_code(path: str) -> Code:
    """Load a code from a text or JSON file (sniffed by leading '{')."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return code_from_json_dict(json.loads(text))
    return parse_code_text(text)
