"""The function ring of a code over F2 and its unity-preserving endomorphisms.

The ring of F2-valued functions on an m-word code has the characteristic
functions of the codewords as an orthogonal idempotent basis, so a ring
element is an m-bit coefficient mask and multiplication is bitwise AND.
A unity-preserving endomorphism is forced to send each basis element to a
disjoint chunk of the basis covering all of it, i.e. it is exactly an index
function f:[m]->[m] (output coordinate k reads input coordinate f(k)).
"""

from __future__ import annotations

import enum
import itertools
import multiprocessing
import time
import warnings
from dataclasses import dataclass
from typing import Optional

from ncode import kernel
from ncode.codes import Code

DEFAULT_CENSUS_CAP = 9


class CapacityError(RuntimeError):
    """Instance exceeds the configured enumeration budget."""


class RingError(ValueError):
    pass


@dataclass(frozen=True)
class RingElement:
    code: Code
    coeffs: int

    def __post_init__(self):
        if self.coeffs < 0 or self.coeffs >> self.code.m:
            raise RingError("coefficient mask wider than the basis")

    @property
    def m(self) -> int:
        return self.code.m

    def norm(self) -> int:
        """Number of basis terms in the expression."""
        return bin(self.coeffs).count("1")

    def __mul__(self, other: "RingElement") -> "RingElement":
        return multiply(self, other)

    def __add__(self, other: "RingElement") -> "RingElement":
        if self.code != other.code:
            raise RingError("elements of different rings")
        return RingElement(self.code, self.coeffs ^ other.coeffs)


def zero(code: Code) -> RingElement:
    return RingElement(code, 0)


def one(code: Code) -> RingElement:
    return RingElement(code, (1 << code.m) - 1)


def basis_element(code: Code, i: int) -> RingElement:
    """Characteristic function of the i-th codeword (1-based)."""
    if not 1 <= i <= code.m:
        raise RingError(f"basis index {i} out of range 1..{code.m}")
    return RingElement(code, 1 << (i - 1))


def multiply(y: RingElement, z: RingElement) -> RingElement:
    """Pointwise product; the basis is orthogonal and idempotent, so this
    is the AND of coefficient masks."""
    if y.code != z.code:
        raise RingError("elements of different rings")
    return RingElement(y.code, y.coeffs & z.coeffs)


def x_element(code: Code, j: int) -> RingElement:
    """Coordinate function of neuron j: sum of the basis elements of the
    codewords in which neuron j fires."""
    if not 1 <= j <= code.n:
        raise RingError(f"neuron {j} out of range 1..{code.n}")
    return RingElement(code, code.column(j))


@dataclass(frozen=True)
class Endomorphism:
    """Unity-preserving ring endomorphism as an index function.

    mapping[k-1] = i says output coordinate k copies input coordinate i;
    equivalently the basis element of codeword i is sent to the sum of
    basis elements over the preimage of i.
    """

    mapping: tuple[int, ...]

    def __post_init__(self):
        m = len(self.mapping)
        if not all(1 <= v <= m for v in self.mapping):
            raise RingError(f"index function values must lie in 1..{m}")

    @property
    def m(self) -> int:
        return len(self.mapping)

    def preimage_sizes(self) -> list[int]:
        sizes = [0] * self.m
        for v in self.mapping:
            sizes[v - 1] += 1
        return sizes

    def is_bijection(self) -> bool:
        return len(set(self.mapping)) == self.m

    def is_constant(self) -> bool:
        return len(set(self.mapping)) == 1

    @classmethod
    def identity(cls, m: int) -> "Endomorphism":
        return cls(tuple(range(1, m + 1)))

    def inverse(self) -> "Endomorphism":
        if not self.is_bijection():
            raise RingError("only bijections invert")
        inv = [0] * self.m
        for k, v in enumerate(self.mapping, start=1):
            inv[v - 1] = k
        return Endomorphism(tuple(inv))


def apply_endo(phi: Endomorphism, y: RingElement) -> RingElement:
    if phi.m != y.m:
        raise RingError("endomorphism size does not match the ring")
    out = 0
    for k, v in enumerate(phi.mapping):
        if y.coeffs >> (v - 1) & 1:
            out |= 1 << k
    return RingElement(y.code, out)


def compose(outer: Endomorphism, inner: Endomorphism) -> Endomorphism:
    """Ring composition: apply `inner` to the element first.

    At the index level the functions compose the other way around:
    f_(outer after inner)(k) = f_inner(f_outer(k)).
    """
    if outer.m != inner.m:
        raise RingError("endomorphism sizes differ")
    return Endomorphism(tuple(inner.mapping[v - 1] for v in outer.mapping))


def conjugate(phi: Endomorphism, alpha: Endomorphism) -> Endomorphism:
    """alpha^-1 . phi . alpha for a bijective alpha."""
    inv = alpha.inverse()
    return compose(inv, compose(phi, alpha))


class EndoClass(enum.Enum):
    BPM = "bpm"
    UM = "um"
    OTHER = "other"


def classify(phi: Endomorphism) -> EndoClass:
    """Basis permutation, unity map, or neither (a size-1 ring's only map
    counts as a basis permutation)."""
    if phi.is_bijection():
        return EndoClass.BPM
    if phi.is_constant():
        return EndoClass.UM
    return EndoClass.OTHER


def neural_targets(code: Code) -> frozenset:
    """Coefficient masks an endomorphism may send coordinate functions to."""
    masks = {code.column(j) for j in range(1, code.n + 1)}
    masks.add(0)
    masks.add((1 << code.m) - 1)
    return frozenset(masks)


def is_neural(phi: Endomorphism, code: Code) -> bool:
    """Whether every coordinate function lands on a coordinate function or
    a constant; checks neurons in ascending order with early exit."""
    if phi.m != code.m:
        raise RingError("endomorphism size does not match the code")
    targets = neural_targets(code)
    for j in range(1, code.n + 1):
        img = apply_endo(phi, x_element(code, j))
        if img.coeffs not in targets:
            return False
    return True


# ---------------------------------------------------------------------------
# census


@dataclass(frozen=True)
class CensusReport:
    m: int
    n: int
    total_functions: int
    nrh_total: int
    bpm_nrh: int
    um_nrh: int
    other_nrh: int
    pruned: bool
    elapsed_ms: int
    workers: int

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "total_functions": self.total_functions,
            "nrh_total": self.nrh_total,
            "bpm_nrh": self.bpm_nrh,
            "um_nrh": self.um_nrh,
            "other_nrh": self.other_nrh,
            "pruned": self.pruned,
            "elapsed_ms": self.elapsed_ms,
            "workers": self.workers,
        }


def detect_circulant_support(code: Code) -> Optional[int]:
    """Support p when the code is the standard circulant on m=n words."""
    if code.m != code.n:
        return None
    n = code.n
    p = bin(code.words[0]).count("1")
    if not 1 <= p < n:
        return None
    for j in range(1, n + 1):
        expect = 0
        for i in range(1, n + 1):
            if (j - i) % n < p:
                expect |= 1 << (i - 1)
        if code.words[j - 1] != expect:
            return None
    return p


def _window_profiles(m: int, p: int) -> list[tuple[int, ...]]:
    """Preimage-size profiles compatible with neural images on a circulant
    code: every cyclic window of p consecutive sizes sums to 0, p, or m."""
    valid = []

    def extend(partial: list[int], remaining: int) -> None:
        if len(partial) == m:
            if remaining:
                return
            for i in range(m):
                w = sum(partial[(i + k) % m] for k in range(p))
                if w not in (0, p, m):
                    return
            valid.append(tuple(partial))
            return
        for v in range(remaining + 1):
            partial.append(v)
            extend(partial, remaining - v)
            partial.pop()

    extend([], m)
    return valid


def _census_task(args):
    m, cols, allowed, filter_kind, prefix, profile = args
    return kernel.census_block(m, cols, allowed, filter_kind, prefix, profile)


def enumerate_nrh(
    code: Code,
    filter_class: Optional[EndoClass] = None,
    pruning: bool = False,
    workers: int = 1,
    cap: int = DEFAULT_CENSUS_CAP,
) -> CensusReport:
    """Exhaustive census of neural endomorphisms, split by class.

    With pruning on a circulant code, candidate index functions are first
    restricted to preimage-size profiles compatible with the necessary
    norm condition (an exact filter, so pruned and plain censuses agree);
    on a non-circulant code pruning is ignored with a warning.
    """
    m, n = code.m, code.n
    if m > cap:
        raise CapacityError(f"basis size {m} exceeds the census cap {cap}")
    cols = tuple(code.column(j) for j in range(1, n + 1))
    allowed = tuple(sorted(neural_targets(code)))
    filter_kind = {None: 0, EndoClass.BPM: 1, EndoClass.UM: 2}[filter_class]

    pruned = False
    if pruning:
        p = detect_circulant_support(code)
        if p is None:
            warnings.warn("pruning ignored: code is not circulant", stacklevel=2)
        else:
            pruned = True

    t0 = time.monotonic()
    tasks: list[tuple]
    if pruned and filter_kind == 0:
        profiles = _window_profiles(m, p)
        tasks = [(m, cols, allowed, 0, (), prof) for prof in profiles]
    elif workers > 1 and filter_kind == 0:
        depth = 1 if workers <= m else 2
        prefixes = (
            [(v,) for v in range(m)]
            if depth == 1
            else [(v, w) for v in range(m) for w in range(m)]
        )
        tasks = [(m, cols, allowed, 0, pref, None) for pref in prefixes]
    else:
        tasks = [(m, cols, allowed, filter_kind, (), None)]

    if workers > 1 and len(tasks) > 1:
        with multiprocessing.Pool(workers) as pool:
            results = pool.map(_census_task, tasks)
    else:
        results = [_census_task(t) for t in tasks]
    nrh = sum(r[0] for r in results)
    bpm = sum(r[1] for r in results)
    um = sum(r[2] for r in results)
    elapsed_ms = int((time.monotonic() - t0) * 1000)

    if filter_kind == 1:
        total = 1
        for k in range(2, m + 1):
            total *= k
        nrh = bpm  # bijection walk counts only bijections
        um = 0
    elif filter_kind == 2:
        total = m
        bpm = 1 if m == 1 else 0
        um = nrh - bpm
    else:
        total = m**m
    return CensusReport(
        m=m,
        n=n,
        total_functions=total,
        nrh_total=nrh,
        bpm_nrh=bpm,
        um_nrh=um,
        other_nrh=nrh - bpm - um,
        pruned=pruned,
        elapsed_ms=elapsed_ms,
        workers=workers,
    )


def all_neural_endomorphisms(code: Code) -> list[Endomorphism]:
    """Materialized neural endomorphism set; small m only."""
    if code.m > 6:
        raise CapacityError("materializing endomorphisms is capped at m=6")
    out = []
    for mapping in itertools.product(range(1, code.m + 1), repeat=code.m):
        phi = Endomorphism(mapping)
        if is_neural(phi, code):
            out.append(phi)
    return out
