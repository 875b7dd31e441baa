"""Majorization and pure-state LOCC convertibility.

``majorizes(x, y)`` decides ``x ≺ y``: every prefix sum of ``x`` sorted
descending is at most the matching prefix sum of ``y``.  By Nielsen's
theorem a bipartite pure state with Schmidt spectrum ``x`` can be turned
into one with spectrum ``y`` by LOCC exactly when ``x ≺ y``.

Exact inputs (Fractions) are compared exactly, so boundary ties are decided
without rounding.  If either side is floating point, comparisons allow a
slack of ``NUMERIC_SLACK`` per prefix sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Iterable, Optional

from .errors import InvalidInput
from .spectra import Spectrum

__all__ = [
    "ProbVector",
    "MajorizationResult",
    "Verdict",
    "majorizes",
    "locc_transformable",
    "locc_verdict_pair",
]

NUMERIC_SLACK = 1e-9
NEG_TOL = 1e-10


@dataclass(frozen=True)
class ProbVector:
    """Probability vector stored in descending order."""

    components: tuple
    exact: bool = True
    provenance: str = ""

    @classmethod
    def of(cls, obj, provenance: str = "") -> "ProbVector":
        """Coerce a ProbVector, Spectrum or plain sequence."""
        if isinstance(obj, ProbVector):
            return obj
        if isinstance(obj, Spectrum):
            return cls.from_values(obj.values(), exact=obj.mode == "exact",
                                   provenance=provenance or str(obj))
        values = list(obj)
        exact = all(isinstance(v, (int, Fraction)) for v in values)
        return cls.from_values(values, exact=exact, provenance=provenance)

    @classmethod
    def from_values(cls, values: Iterable, exact: bool = True, provenance: str = "") -> "ProbVector":
        if exact:
            comps = [Fraction(v) for v in values]
            if any(c < 0 for c in comps):
                raise InvalidInput("probability vector has a negative component")
            if sum(comps, Fraction(0)) != 1:
                raise InvalidInput(f"probability vector sums to {sum(comps)}, not 1")
        else:
            comps = [float(v) for v in values]
            if any(c < -NEG_TOL for c in comps):
                raise InvalidInput("probability vector has a negative component")
            comps = [max(c, 0.0) for c in comps]
            if abs(sum(comps) - 1.0) > NUMERIC_SLACK:
                raise InvalidInput(f"probability vector sums to {sum(comps)!r}, not 1")
        comps.sort(reverse=True)
        return cls(tuple(comps), exact, provenance)

    def __len__(self) -> int:
        return len(self.components)

    def padded(self, length: int) -> list:
        zero = Fraction(0) if self.exact else 0.0
        return list(self.components) + [zero] * (length - len(self.components))


@dataclass(frozen=True)
class MajorizationResult:
    holds: bool
    first_failing_k: Optional[int]
    partial_sums_x: tuple
    partial_sums_y: tuple

    def __bool__(self) -> bool:
        return self.holds


def majorizes(x, y) -> MajorizationResult:
    """Decide ``x ≺ y`` (x is majorized by y).

    The shorter vector is zero-padded.  ``first_failing_k`` is the 1-based
    prefix length of the first violated inequality.
    """
    px, py = ProbVector.of(x), ProbVector.of(y)
    length = max(len(px), len(py))
    exact = px.exact and py.exact
    xs, ys = px.padded(length), py.padded(length)
    if not exact:
        xs, ys = [float(v) for v in xs], [float(v) for v in ys]
    sx, sy = tuple(accumulate(xs)), tuple(accumulate(ys))
    if length and (sx[-1] != sy[-1] if exact else abs(sx[-1] - sy[-1]) > NUMERIC_SLACK):
        raise InvalidInput(f"vectors have different totals ({sx[-1]} vs {sy[-1]})")
    failing = None
    for k, (a, b) in enumerate(zip(sx, sy), start=1):
        if (a > b) if exact else (a > b + NUMERIC_SLACK):
            failing = k
            break
    return MajorizationResult(failing is None, failing, sx, sy)


def locc_transformable(source, target) -> bool:
    """Whether the pure state with spectrum ``source`` converts to ``target``."""
    return majorizes(source, target).holds


@dataclass(frozen=True)
class Verdict:
    """Both-direction convertibility between two spectra ``a`` and ``b``."""

    a_to_b: MajorizationResult
    b_to_a: MajorizationResult

    @property
    def kind(self) -> str:
        if self.a_to_b.holds and self.b_to_a.holds:
            return "equivalent"
        if self.a_to_b.holds:
            return "a_to_b"
        if self.b_to_a.holds:
            return "b_to_a"
        return "incomparable"

    @property
    def comparable(self) -> bool:
        return self.a_to_b.holds or self.b_to_a.holds

    def to_dict(self) -> dict:
        return {
            "a_to_b": self.a_to_b.holds,
            "b_to_a": self.b_to_a.holds,
            "first_failing_k": {
                "a_to_b": self.a_to_b.first_failing_k,
                "b_to_a": self.b_to_a.first_failing_k,
            },
        }


def locc_verdict_pair(a, b) -> Verdict:
    return Verdict(majorizes(a, b), majorizes(b, a))
