"""Phase conditions for unit-modulus weights on a triangle.

With weights ``e^{i w1}, e^{i w2}, e^{i w3}`` on the three edges, each
weight must equal the product of the other two:

    w1 + w2 = w3,   w2 + w3 = w1,   w3 + w1 = w2   (mod 2π)

Adding any two equations forces ``2 w_k = 0``, so every weight is ±1 and
their product is +1.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .errors import LaplaceqError, ParseError

TWO_PI = 2 * math.pi
DEFAULT_TOL = 1e-9

# (i, j, k): w_i + w_j must equal w_k
EQUATIONS = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


def _wrap(w: float) -> float:
    w = math.fmod(w, TWO_PI)
    if w < 0:
        w += TWO_PI
    return 0.0 if w >= TWO_PI else w


def circular_distance(a, b):
    """Angular distance in [0, π]; works elementwise on arrays."""
    d = np.mod(np.asarray(a) - np.asarray(b) + math.pi, TWO_PI) - math.pi
    return np.abs(d)


@dataclass(frozen=True)
class TrianglePhases:
    w1: float
    w2: float
    w3: float

    def __post_init__(self):
        for name in ("w1", "w2", "w3"):
            object.__setattr__(self, name, _wrap(float(getattr(self, name))))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.w1, self.w2, self.w3)

    def weights(self) -> tuple[complex, ...]:
        return tuple(complex(math.cos(w), math.sin(w)) for w in self.as_tuple())


@dataclass(frozen=True)
class TriangleCheck:
    satisfied: bool
    residuals: tuple[float, float, float]

    def to_dict(self) -> dict:
        return {"satisfied": self.satisfied, "residuals": list(self.residuals)}


def check_triangle_condition(p: TrianglePhases, tol: float = DEFAULT_TOL) -> TriangleCheck:
    if tol <= 0:
        raise ValueError("tol must be positive")
    w = p.as_tuple()
    residuals = tuple(float(circular_distance(w[i] + w[j], w[k])) for i, j, k in EQUATIONS)
    return TriangleCheck(all(r <= tol for r in residuals), residuals)


def admissible_phase_set(tol: float = DEFAULT_TOL) -> list[TrianglePhases]:
    """All solutions with phases in {0, π}, checked against the sign rule.

    The sign rule (weights ±1 with product +1) is evaluated in integer
    arithmetic on multiples of π, independently of the residual test.
    """
    found = []
    by_rule = set()
    for ks in product((0, 1), repeat=3):
        phases = TrianglePhases(*(k * math.pi for k in ks))
        if check_triangle_condition(phases, tol).satisfied:
            found.append(phases)
        # 2·w_k = 0 holds for every k in {0, π}; the product rule is sum parity
        if sum(ks) % 2 == 0:
            by_rule.add(ks)
    found_ks = {tuple(round(w / math.pi) % 2 for w in p.as_tuple()) for p in found}
    if found_ks != by_rule:
        raise LaplaceqError(f"solution set {sorted(found_ks)} differs from sign rule {sorted(by_rule)}")
    return found


def grid_scan(steps: int = 360, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Grid indices ``(i, j, k)`` (phases ``2π·index/steps``) satisfying all three equations."""
    grid = np.arange(steps) * (TWO_PI / steps)
    w2, w3 = np.meshgrid(grid, grid, indexing="ij")
    hits = []
    for i, w1 in enumerate(grid):
        ok = (
            (circular_distance(w1 + w2, w3) <= tol)
            & (circular_distance(w2 + w3, w1) <= tol)
            & (circular_distance(w3 + w1, w2) <= tol)
        )
        for j, k in zip(*np.nonzero(ok)):
            hits.append((i, int(j), int(k)))
    return np.array(hits, dtype=np.int64).reshape(-1, 3)


_PHASE_RE = re.compile(
    r"""^\s*(?P<sign>[+-])?\s*
        (?:(?P<num>\d+(?:\.\d+)?)(?:\s*/\s*(?P<den>\d+))?)?\s*\*?\s*
        (?P<pi>pi|π)?
        (?:\s*/\s*(?P<pden>\d+))?\s*$""",
    re.VERBOSE | re.IGNORECASE,
)


def parse_phase(text: str) -> float:
    """Parse radians (``"1.5"``) or a multiple of π (``"1/2 pi"``, ``"3pi/2"``, ``"-pi"``)."""
    m = _PHASE_RE.match(text)
    if not m or (m.group("num") is None and m.group("pi") is None):
        raise ParseError(f"cannot parse phase {text!r}")
    if m.group("pden") and not m.group("pi"):
        raise ParseError(f"cannot parse phase {text!r}")
    coeff = Fraction(m.group("num") or "1")
    if m.group("den"):
        if int(m.group("den")) == 0:
            raise ParseError(f"zero denominator in phase {text!r}")
        coeff /= int(m.group("den"))
    if m.group("pden"):
        if int(m.group("pden")) == 0:
            raise ParseError(f"zero denominator in phase {text!r}")
        coeff /= int(m.group("pden"))
    if m.group("sign") == "-":
        coeff = -coeff
    return float(coeff) * math.pi if m.group("pi") else float(coeff)


def parse_phases(text: str) -> TrianglePhases:
    parts = text.split(",")
    if len(parts) != 3:
        raise ParseError(f"expected three comma-separated phases, got {len(parts)}")
    values = []
    for idx, part in enumerate(parts, start=1):
        try:
            values.append(parse_phase(part))
        except ParseError as exc:
            raise ParseError(str(exc), f"w{idx}") from None
    return TrianglePhases(*values)
