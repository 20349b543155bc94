"""Exact Bell/CHSH inequality checks on +/-1 datasets.

The three- and four-variable inequalities hold identically for cross
correlations of any equal-length +/-1 sequences, so everything here is
integer/rational arithmetic; no tolerance ever enters.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

_TOKEN_SPLIT = re.compile(r"[,\s]+")


class SignSequence:
    """An immutable sequence of +/-1 entries, length >= 1."""

    __slots__ = ("_values",)

    def __init__(self, values):
        arr = np.asarray(list(values), dtype=np.int64)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("need a nonempty 1-D sequence")
        if not np.all(np.abs(arr) == 1):
            raise ValueError("entries must be exactly -1 or +1")
        arr.setflags(write=False)
        self._values = arr

    @property
    def values(self):
        return self._values

    def __len__(self):
        return int(self._values.size)

    def __eq__(self, other):
        return isinstance(other, SignSequence) and np.array_equal(self._values, other._values)

    def __repr__(self):
        return f"SignSequence({self._values.tolist()!r})"

    @classmethod
    def from_text(cls, line: str) -> "SignSequence":
        tokens = [t for t in _TOKEN_SPLIT.split(line.strip()) if t]
        values = []
        for t in tokens:
            if t in ("+1", "1"):
                values.append(1)
            elif t == "-1":
                values.append(-1)
            else:
                raise ValueError(f"token {t!r} is not +1 or -1")
        return cls(values)


@dataclass(frozen=True)
class InequalityReport:
    lhs: Fraction
    bound: Fraction
    satisfied: bool
    margin: Fraction


def _require_equal_lengths(*seqs):
    lengths = {len(s) for s in seqs}
    if len(lengths) != 1:
        raise ValueError("sequences must have equal lengths")


def cross_correlation(x: SignSequence, y: SignSequence) -> Fraction:
    """(sum x_i y_i) / N as an exact rational."""
    _require_equal_lengths(x, y)
    return Fraction(int(np.dot(x.values, y.values)), len(x))


def bell_three_check(a: SignSequence, b: SignSequence, c: SignSequence) -> InequalityReport:
    """|C(a,b) - C(a,c)| <= 1 - C(b,c); identically true for +/-1 data."""
    _require_equal_lengths(a, b, c)
    lhs = abs(cross_correlation(a, b) - cross_correlation(a, c))
    bound = 1 - cross_correlation(b, c)
    return InequalityReport(lhs=lhs, bound=bound, satisfied=lhs <= bound, margin=bound - lhs)


def chsh_four_check(
    a: SignSequence, a_prime: SignSequence, b: SignSequence, b_prime: SignSequence
) -> InequalityReport:
    """|C(a,b) - C(a,b')| + |C(a',b) + C(a',b')| <= 2; identically true."""
    _require_equal_lengths(a, a_prime, b, b_prime)
    lhs = abs(cross_correlation(a, b) - cross_correlation(a, b_prime)) + abs(
        cross_correlation(a_prime, b) + cross_correlation(a_prime, b_prime)
    )
    bound = Fraction(2)
    return InequalityReport(lhs=lhs, bound=bound, satisfied=lhs <= bound, margin=bound - lhs)


def parse_sequences(text: str):
    """One sequence per nonblank line; tokens split on whitespace/commas."""
    seqs = [SignSequence.from_text(line) for line in text.splitlines() if line.strip()]
    if not seqs:
        raise ValueError("no sequences found")
    return seqs
