"""Circulant codes, closed-form endomorphism count predictions, and the
harness comparing predictions against brute-force censuses."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Optional

from ncode.codes import Code
from ncode.ring import CensusReport, EndoClass, enumerate_nrh


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class CirculantSpec:
    """Circulant code family parameters: n codewords on n neurons, each a
    cyclic run of p consecutive firing neurons."""

    n: int
    p: int

    def __post_init__(self):
        if self.n < 2:
            raise SpecError("circulant codes need n >= 2")
        if not 1 <= self.p < self.n:
            raise SpecError(f"support must satisfy 1 <= p < n, got p={self.p}")


def wrap_index(i: int, n: int) -> int:
    """1-based cyclic reduction into 1..n."""
    return (i - 1) % n + 1


def circulant_code(spec: CirculantSpec) -> Code:
    """Rows of the 0/1 circulant matrix whose row p is p ones then zeros.

    Neuron i fires in codeword j exactly when (j - i) mod n < p, so the
    coordinate function of neuron i sums the basis elements of codewords
    i, i+1, ..., i+p-1 (cyclically).
    """
    n, p = spec.n, spec.p
    words = []
    for j in range(1, n + 1):
        w = 0
        for i in range(1, n + 1):
            if (j - i) % n < p:
                w |= 1 << (i - 1)
        words.append(w)
    return Code(n, words)


class PredictionStatus(enum.Enum):
    THEOREM = "theorem"
    CONJECTURE = "conjecture"
    BRUTE_FORCE_ONLY = "brute_force_only"


@dataclass(frozen=True)
class Prediction:
    value: Optional[int]
    status: PredictionStatus
    source: str
    bpm_value: int
    um_value: int


def predicted_bpm(spec: CirculantSpec) -> int:
    """Basis permutations that stay neural: all of them at support 1 or
    n-1, otherwise only the 2n rotations and reflections."""
    if spec.p in (1, spec.n - 1):
        return math.factorial(spec.n)
    return 2 * spec.n


def predicted_count(spec: CirculantSpec) -> Prediction:
    """Most specific applicable count for |NRH| on a circulant code.

    Clauses are ordered so no formula is applied outside its stated
    hypotheses; reported special values take precedence over formulas,
    theorems over conjectures, and anything else is brute-force-only.
    """
    n, p = spec.n, spec.p
    bpm = predicted_bpm(spec)
    um = n

    def pred(value: Optional[int], status: PredictionStatus, source: str) -> Prediction:
        return Prediction(value, status, source, bpm, um)

    if (n, p) == (4, 2):
        return pred(36, PredictionStatus.THEOREM, "explicit count at n=4, p=2")
    if (n, p) == (6, 3):
        return pred(270, PredictionStatus.THEOREM, "reported count at n=6, p=3")
    if p in (1, n - 1):
        return pred(
            math.factorial(n) + n,
            PredictionStatus.THEOREM,
            "support 1 or n-1: count n!+n",
        )
    if p == 2 and n % 2 == 1:
        return pred(3 * n, PredictionStatus.THEOREM, "support 2, odd n: count 3n")
    if p == 2 and n % 2 == 0 and n >= 6:
        return pred(
            4 * math.factorial(n // 2) + 3 * n,
            PredictionStatus.THEOREM,
            "support 2, even n>=6: count 4*(n/2)!+3n",
        )
    if p == 3 and n % 3 == 0 and n // 3 > 2:
        return pred(
            15 * n + 9 * math.factorial(n // 3),
            PredictionStatus.THEOREM,
            "support 3, n=3d (d>2): count 15n+9*(n/3)!",
        )
    if 2 < p < n - 1 and math.gcd(p, n) == 1 and n % p in (1, 2):
        return pred(
            3 * n,
            PredictionStatus.THEOREM,
            "gcd(p,n)=1 with n=pd+1 or pd+2: count 3n",
        )
    if 2 < p < n - 1 and math.gcd(p, n) == 1 and 2 < n % p < p:
        return pred(
            3 * n,
            PredictionStatus.CONJECTURE,
            "conjecture: gcd(p,n)=1, n=pd+r with 2<r<p: count 3n",
        )
    if p > 2 and _is_prime(p) and n % p == 0:
        return pred(
            3 * n + p * p * math.factorial(n // p) + p * (p + 1) * n,
            PredictionStatus.CONJECTURE,
            "conjecture: prime p>2 dividing n: count 3n+p^2*(n/p)!+p(p+1)n",
        )
    return pred(None, PredictionStatus.BRUTE_FORCE_ONLY, "no closed form applies")


def _is_prime(k: int) -> bool:
    if k < 2:
        return False
    d = 2
    while d * d <= k:
        if k % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class VerificationRow:
    spec: CirculantSpec
    prediction: Prediction
    census: CensusReport
    frontier: bool

    @property
    def total_match(self) -> Optional[bool]:
        if self.prediction.value is None:
            return None
        return self.prediction.value == self.census.nrh_total

    @property
    def bpm_match(self) -> bool:
        return self.prediction.bpm_value == self.census.bpm_nrh

    @property
    def um_match(self) -> bool:
        return self.prediction.um_value == self.census.um_nrh

    @property
    def passed(self) -> bool:
        """Frontier rows only report; theorem rows must match throughout."""
        if self.frontier:
            return True
        return bool(self.total_match) and self.bpm_match and self.um_match

    def to_json_dict(self) -> dict:
        return {
            "n": self.spec.n,
            "p": self.spec.p,
            "predicted": self.prediction.value,
            "status": self.prediction.status.value,
            "source": self.prediction.source,
            "predicted_bpm": self.prediction.bpm_value,
            "predicted_um": self.prediction.um_value,
            "census": self.census.to_json_dict(),
            "frontier": self.frontier,
            "total_match": self.total_match,
            "bpm_match": self.bpm_match,
            "um_match": self.um_match,
            "passed": self.passed,
        }


def verify(
    spec: CirculantSpec,
    pruning: bool = False,
    workers: int = 1,
    cap: int = 9,
) -> VerificationRow:
    """Brute-force census of one circulant cell against its prediction."""
    code = circulant_code(spec)
    census = enumerate_nrh(code, pruning=pruning, workers=workers, cap=cap)
    prediction = predicted_count(spec)
    frontier = prediction.status is not PredictionStatus.THEOREM
    return VerificationRow(spec, prediction, census, frontier)


@dataclass(frozen=True)
class VerificationTable:
    rows: tuple[VerificationRow, ...]

    @property
    def all_theorem_rows_match(self) -> bool:
        return all(row.passed for row in self.rows)

    def to_json_dict(self) -> dict:
        return {
            "rows": [r.to_json_dict() for r in self.rows],
            "all_theorem_rows_match": self.all_theorem_rows_match,
        }

    def to_markdown(self) -> str:
        head = (
            "| n | p | status | predicted | brute force | bpm (pred/brute) "
            "| um (pred/brute) | match |"
        )
        sep = "|---|---|--------|-----------|-------------|------------------|-----------------|-------|"
        lines = [head, sep]
        for r in self.rows:
            pred = "-" if r.prediction.value is None else str(r.prediction.value)
            if r.total_match is None:
                verdict = "reported"
            elif r.frontier:
                verdict = "agrees" if r.total_match else "disagrees (frontier)"
            else:
                verdict = "ok" if r.passed else "MISMATCH"
            lines.append(
                f"| {r.spec.n} | {r.spec.p} | {r.prediction.status.value} | {pred} "
                f"| {r.census.nrh_total} "
                f"| {r.prediction.bpm_value}/{r.census.bpm_nrh} "
                f"| {r.prediction.um_value}/{r.census.um_nrh} | {verdict} |"
            )
        return "\n".join(lines)


def verify_range(
    n_values: Iterable[int],
    p_rule: str = "all",
    include_frontier: bool = True,
    pruning: bool = False,
    workers: int = 1,
    cap: int = 9,
) -> VerificationTable:
    """Censuses over a (n, p) grid; p_rule is 'all' or a fixed integer."""
    rows = []
    for n in n_values:
        if p_rule == "all":
            ps = range(1, n)
        else:
            p = int(p_rule)
            ps = [p] if p < n else []
        for p in ps:
            spec = CirculantSpec(n, p)
            if not include_frontier:
                if predicted_count(spec).status is not PredictionStatus.THEOREM:
                    continue
            rows.append(verify(spec, pruning=pruning, workers=workers, cap=cap))
    return VerificationTable(tuple(rows))
