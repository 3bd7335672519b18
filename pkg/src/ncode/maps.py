"""Elementary code maps, their compositions, and structure checks.

The five elementary maps (neuron permutation, adding a trivial neuron,
duplicating a neuron, deleting a neuron, inclusion into a larger code)
generate exactly the code maps whose ring counterparts send generators to
generators or constants; this module implements them on codes directly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Union

from ncode.codes import (
    Code,
    CodeError,
    code_from_json_dict,
    code_to_json_dict,
    is_max_intersection_complete,
    maximal_codewords,
    word_label,
)


class MapError(ValueError):
    """Ill-formed map or map/code arity mismatch."""


@dataclass(frozen=True)
class Permutation:
    """Relabel neurons: neuron i becomes pi[i-1]."""

    pi: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.pi) != list(range(1, len(self.pi) + 1)):
            raise MapError(f"not a permutation of 1..{len(self.pi)}: {self.pi}")

    def arity(self, n: int) -> int:
        if n != len(self.pi):
            raise MapError(f"permutation on {len(self.pi)} neurons applied to n={n}")
        return n

    def apply_word(self, w: int, n: int) -> int:
        out = 0
        for i in range(n):
            if w >> i & 1:
                out |= 1 << (self.pi[i] - 1)
        return out


@dataclass(frozen=True)
class AddTrivial:
    """Append neuron n+1 firing in all codewords (bit=1) or none (bit=0)."""

    bit: int

    def __post_init__(self):
        if self.bit not in (0, 1):
            raise MapError("trivial neuron bit must be 0 or 1")

    def arity(self, n: int) -> int:
        return n + 1

    def apply_word(self, w: int, n: int) -> int:
        return w | (self.bit << n)


@dataclass(frozen=True)
class AddDuplicate:
    """Append neuron n+1 copying the firing pattern of `source`."""

    source: int

    def arity(self, n: int) -> int:
        if not 1 <= self.source <= n:
            raise MapError(f"duplicate source {self.source} out of range 1..{n}")
        return n + 1

    def apply_word(self, w: int, n: int) -> int:
        return w | ((w >> (self.source - 1) & 1) << n)


@dataclass(frozen=True)
class DeleteNeuron:
    """Drop neuron `index`; distinct codewords may collapse."""

    index: int

    def arity(self, n: int) -> int:
        if not 1 <= self.index <= n:
            raise MapError(f"deleted neuron {self.index} out of range 1..{n}")
        if n == 1:
            raise MapError("cannot delete the only neuron")
        return n - 1

    def apply_word(self, w: int, n: int) -> int:
        k = self.index - 1
        low = w & ((1 << k) - 1)
        high = w >> (k + 1)
        return low | (high << k)


@dataclass(frozen=True)
class Inclusion:
    """Identity on codewords, viewed into a larger target code."""

    target: Code

    def arity(self, n: int) -> int:
        if n != self.target.n:
            raise MapError(f"inclusion target has n={self.target.n}, input n={n}")
        return n

    def apply_word(self, w: int, n: int) -> int:
        if w not in self.target:
            raise MapError(
                f"codeword '{word_label(w)}' is not in the inclusion target"
            )
        return w


ElementaryMap = Union[Permutation, AddTrivial, AddDuplicate, DeleteNeuron, Inclusion]


@dataclass(frozen=True)
class CodeMap:
    """Composition of elementary maps, applied left to right."""

    stages: tuple[ElementaryMap, ...]

    def __post_init__(self):
        if not self.stages:
            raise MapError("a code map needs at least one stage")

    def output_arity(self, n: int) -> int:
        for stage in self.stages:
            n = stage.arity(n)
        return n


def as_code_map(q: Union[CodeMap, ElementaryMap]) -> CodeMap:
    return q if isinstance(q, CodeMap) else CodeMap((q,))


def apply_detailed(
    q: Union[CodeMap, ElementaryMap], code: Code
) -> tuple[Code, list[dict]]:
    """Image code plus a per-stage log of codeword collapses.

    The image keeps the order of first preimage occurrence; when a deletion
    maps several codewords to one, the log records the multiplicity.
    """
    q = as_code_map(q)
    logs = []
    current = code
    for stage in q.stages:
        n_out = stage.arity(current.n)
        images = [stage.apply_word(w, current.n) for w in current.words]
        seen: dict[int, int] = {}
        order: list[int] = []
        for img in images:
            if img in seen:
                seen[img] += 1
            else:
                seen[img] = 1
                order.append(img)
        collapsed = {word_label(w): c for w, c in seen.items() if c > 1}
        logs.append(
            {
                "stage": stage_to_json(stage),
                "n_out": n_out,
                "collapsed": collapsed,
            }
        )
        current = Code(n_out, order)
    return current, logs


def apply_map(q: Union[CodeMap, ElementaryMap], code: Code) -> Code:
    return apply_detailed(q, code)[0]


class DeletionKind(enum.Enum):
    TRIVIAL = "trivial_deletion"
    DUPLICATE = "duplicate_deletion"
    PROPER_PROJECTION = "proper_projection"


def classify_deletion(code: Code, i: int) -> DeletionKind:
    """Whether deleting neuron i undoes a trivial neuron, a duplicate
    neuron, or genuinely projects."""
    if not 1 <= i <= code.n:
        raise MapError(f"neuron {i} out of range 1..{code.n}")
    col = code.column(i)
    if col == 0 or col == (1 << code.m) - 1:
        return DeletionKind.TRIVIAL
    for j in range(1, code.n + 1):
        if j != i and code.column(j) == col:
            return DeletionKind.DUPLICATE
    return DeletionKind.PROPER_PROJECTION


def is_surjective(q: Union[CodeMap, ElementaryMap], code: Code, target: Code) -> bool:
    image = apply_map(q, code)
    return image.same_words(target)


def verify_monotone(q: Union[CodeMap, ElementaryMap], code: Code) -> bool:
    """Every containment between codewords survives the map."""
    image = {w: None for w in code.words}
    qmap = as_code_map(q)
    for w in code.words:
        v = w
        n = code.n
        for stage in qmap.stages:
            v, n = stage.apply_word(v, n), stage.arity(n)
        image[w] = v
    for s in code.words:
        for t in code.words:
            if s & t == s and not image[s] & image[t] == image[s]:
                return False
    return True


class MicStatus(enum.Enum):
    PRESERVED = "preserved"
    VIOLATED = "violated"
    PRECONDITION_FAILED = "precondition_failed"


@dataclass(frozen=True)
class MicPreservation:
    status: MicStatus
    reason: str = ""
    witness: Optional[tuple[int, int]] = None


def check_mic_preservation(
    q: Union[CodeMap, ElementaryMap], code: Code
) -> MicPreservation:
    """Re-check max-intersection completeness on the image of a complete code.

    A violation (the image of a complete code failing completeness under a
    surjective map) would contradict the preservation theorem; the witness
    carries the offending pair of maximal image codewords.
    """
    if not is_max_intersection_complete(code):
        return MicPreservation(
            MicStatus.PRECONDITION_FAILED, "source code is not max-intersection complete"
        )
    qmap = as_code_map(q)
    last = qmap.stages[-1]
    image = apply_map(qmap, code)
    if isinstance(last, Inclusion) and not image.same_words(last.target):
        return MicPreservation(
            MicStatus.PRECONDITION_FAILED,
            "inclusion stage is not surjective onto its target",
        )
    if is_max_intersection_complete(image):
        return MicPreservation(MicStatus.PRESERVED)
    maxw = maximal_codewords(image).words
    for x in range(len(maxw)):
        for y in range(x + 1, len(maxw)):
            inter = maxw[x] & maxw[y]
            if inter and inter not in image:
                return MicPreservation(
                    MicStatus.VIOLATED,
                    "image misses a maximal intersection",
                    (maxw[x], maxw[y]),
                )
    return MicPreservation(MicStatus.VIOLATED, "image misses a deeper intersection")


def is_iso_stage(stage: ElementaryMap, code: Code) -> bool:
    """Stages whose ring counterpart is invertible on this code."""
    if isinstance(stage, (Permutation, AddTrivial, AddDuplicate)):
        return True
    if isinstance(stage, DeleteNeuron):
        return classify_deletion(code, stage.index) is not DeletionKind.PROPER_PROJECTION
    return False


@dataclass(frozen=True)
class CorrespondenceReport:
    """Outcome of the maximal-codeword correspondence check for one map."""

    projection: bool
    holds: bool
    detail: str


def maximal_correspondence(stage: ElementaryMap, code: Code) -> CorrespondenceReport:
    """For invertible-type maps, maximal codewords map onto maximal
    codewords bijectively; for proper projections, every maximal image
    codeword still has some maximal preimage."""
    image = apply_map(stage, code)
    max_src = maximal_codewords(code)
    max_img = maximal_codewords(image)
    if is_iso_stage(stage, code):
        mapped = {stage.apply_word(w, code.n) for w in max_src.words}
        holds = mapped == set(max_img.words)
        return CorrespondenceReport(
            projection=False,
            holds=holds,
            detail="maximal sets correspond bijectively"
            if holds
            else "maximal sets differ under the map",
        )
    srcs = {stage.apply_word(w, code.n): w for w in reversed(max_src.words)}
    missing = [w for w in max_img.words if w not in srcs]
    return CorrespondenceReport(
        projection=True,
        holds=not missing,
        detail="every maximal image codeword has a maximal preimage"
        if not missing
        else f"no maximal preimage for {[word_label(w) for w in missing]}",
    )


# ---------------------------------------------------------------------------
# JSON form


def stage_to_json(stage: ElementaryMap) -> dict:
    if isinstance(stage, Permutation):
        return {"perm": list(stage.pi)}
    if isinstance(stage, AddTrivial):
        return {"add_trivial": stage.bit}
    if isinstance(stage, AddDuplicate):
        return {"dup": stage.source}
    if isinstance(stage, DeleteNeuron):
        return {"delete": stage.index}
    return {"include_into": code_to_json_dict(stage.target)}


def stage_from_json(obj: dict) -> ElementaryMap:
    if len(obj) != 1:
        raise MapError(f"stage object must have exactly one key: {obj}")
    key, value = next(iter(obj.items()))
    if key == "perm":
        return Permutation(tuple(value))
    if key == "add_trivial":
        return AddTrivial(int(value))
    if key == "dup":
        return AddDuplicate(int(value))
    if key == "delete":
        return DeleteNeuron(int(value))
    if key == "include_into":
        try:
            return Inclusion(code_from_json_dict(value))
        except CodeError as e:
            raise MapError(f"bad inclusion target: {e}")
    raise MapError(f"unknown stage kind {key!r}")


def map_to_json_dict(q: Union[CodeMap, ElementaryMap]) -> dict:
    return {"stages": [stage_to_json(s) for s in as_code_map(q).stages]}


def map_from_json_dict(obj: dict) -> CodeMap:
    try:
        stages = [stage_from_json(s) for s in obj["stages"]]
    except (KeyError, TypeError) as e:
        raise MapError(f"bad map JSON: {e}")
    return CodeMap(tuple(stages))
