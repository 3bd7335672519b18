"""Reference codes and realizations used across reports and tests.

The two interval families are read off the figures' axes; both are open
realizations whose derived codes exercise the maximal-intersection
machinery (the five-neuron one fails completeness, the six-neuron one is
complete and doublet-maximal).  The two obstruction codes are the standard
singleton-triple examples with no 1D realization.
"""

from __future__ import annotations

from fractions import Fraction

from ncode.codes import Code, word_from_neurons
from ncode.intervals import Interval1D, Mode, Realization1D


def code_from_labels(n: int, labels: list[str]) -> Code:
    """Build a code from compact support labels like '145' ('-' = empty)."""
    words = []
    for label in labels:
        if label == "-":
            words.append(0)
        else:
            words.append(word_from_neurons([int(c) for c in label], n))
    return Code(n, words)


# open realization on five neurons; derived code is NOT max-intersection
# complete (two of its maximal codewords meet exactly in neuron 1, and the
# singleton 1 is not a codeword)
MIP_GAP_REALIZATION = Realization1D(
    5,
    (
        Interval1D.open(Fraction(5, 2), 6),
        Interval1D.open(3, Fraction(9, 2)),
        Interval1D.open(Fraction(7, 4), Fraction(7, 2)),
        Interval1D.open(4, 9),
        Interval1D.open(5, 10),
    ),
    Mode.OPEN,
)

MIP_GAP_CODE = code_from_labels(
    5, ["3", "5", "12", "13", "14", "45", "123", "124", "145"]
)

# open realization on six neurons; derived code is max-intersection
# complete and doublet maximal (two independent pairs of maximal words)
DOUBLET_REALIZATION = Realization1D(
    6,
    (
        Interval1D.open(Fraction(5, 2), Fraction(7, 2)),
        Interval1D.open(Fraction(5, 2), 5),
        Interval1D.open(Fraction(7, 2), 5),
        Interval1D.open(6, 10),
        Interval1D.open(6, Fraction(15, 2)),
        Interval1D.open(Fraction(15, 2), 10),
    ),
    Mode.OPEN,
)

DOUBLET_CODE = code_from_labels(6, ["2", "4", "12", "23", "45", "46"])

# singleton-triple obstruction codes: no convex realization on the line in
# any mode; their minimal open and plain convex dimensions are both 2
OBSTRUCTION_TRIPLE_CODE = code_from_labels(4, ["1", "2", "3", "1234"])
OBSTRUCTION_PAIRWISE_CODE = code_from_labels(5, ["1", "2", "3", "124", "23", "135"])

# convex-but-not-open/closed witness on the line
CONVEX_ONLY_CODE = code_from_labels(3, ["12", "23"])
