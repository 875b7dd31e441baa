"""Spectra of hub-graph density matrices and their Von Neumann entropy.

Two independent routes to the same eigenvalues live here:

* :func:`closed_form_spectrum` evaluates the known formulas for the star,
  star-like, the two star-alike variants and star-mlike families exactly;
* :func:`numeric_spectrum` diagonalizes an explicit matrix with a cyclic
  Jacobi iteration (:func:`jacobi_eigh`), which never looks at the family.

Entropies are in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from ._io import parse_rational, rational_str
from .errors import InvalidInput, InvalidParameter, NumericalFailure
from .graphs import DensityMatrix

__all__ = [
    "Spectrum",
    "EntropyValue",
    "CLOSED_FORM_FAMILIES",
    "closed_form_spectrum",
    "jacobi_eigh",
    "numeric_spectrum",
    "entropy",
    "entropy_closed_form",
    "rationalize",
]

GROUP_TOL = 1e-8
CLAMP_TOL = 1e-10
NUMERIC_SUM_TOL = 1e-9

Number = Union[Fraction, float]


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue multiset as ``(value, multiplicity)`` pairs, descending.

    ``mode`` is ``"exact"`` (values are Fractions) or ``"numeric"`` (floats).
    """

    entries: tuple
    mode: str = "exact"

    def __post_init__(self):
        if self.mode not in ("exact", "numeric"):
            raise InvalidInput(f"unknown spectrum mode {self.mode!r}")
        for value, mult in self.entries:
            if mult < 1:
                raise InvalidInput(f"multiplicity of {value} must be >= 1, got {mult}")

    @classmethod
    def from_values(cls, values: Sequence[Number], mode: str = "exact") -> "Spectrum":
        """Group a flat list of eigenvalues (exact: by equality)."""
        if mode == "numeric":
            return _group_numeric(sorted((float(v) for v in values), reverse=True))
        counts: dict = {}
        for v in values:
            q = Fraction(v)
            counts[q] = counts.get(q, 0) + 1
        return cls(tuple(sorted(counts.items(), reverse=True)), "exact")

    @property
    def order(self) -> int:
        return sum(m for _, m in self.entries)

    def values(self) -> list:
        """Flattened eigenvalues in descending order."""
        out = []
        for value, mult in self.entries:
            out.extend([value] * mult)
        return out

    def total(self) -> Number:
        start = Fraction(0) if self.mode == "exact" else 0.0
        return sum((v * m for v, m in self.entries), start)

    def multiplicities(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.entries)

    def is_normalized(self) -> bool:
        if self.mode == "exact":
            return self.total() == 1
        return abs(self.total() - 1.0) <= NUMERIC_SUM_TOL

    def to_numeric(self) -> "Spectrum":
        if self.mode == "numeric":
            return self
        return Spectrum(tuple((float(v), m) for v, m in self.entries), "numeric")

    def to_dict(self) -> dict:
        entries = [
            {
                "value": rational_str(v) if self.mode == "exact" else float(v),
                "multiplicity": m,
            }
            for v, m in self.entries
        ]
        return {"mode": self.mode, "entries": entries}

    @classmethod
    def from_dict(cls, doc: dict) -> "Spectrum":
        try:
            mode = doc["mode"]
            raw = [(e["value"], int(e["multiplicity"])) for e in doc["entries"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed spectrum document: {exc}") from None
        if mode == "exact":
            entries = [(parse_rational(str(v)), m) for v, m in raw]
        else:
            entries = [(float(v), m) for v, m in raw]
        entries.sort(key=lambda e: e[0], reverse=True)
        return cls(tuple(entries), mode)

    def __str__(self) -> str:
        def fmt(v):
            return str(v) if self.mode == "exact" else f"{v:.6g}"

        return "{" + ", ".join(f"{fmt(v)}^[{m}]" for v, m in self.entries) + "}"


@dataclass(frozen=True)
class EntropyValue:
    bits: float
    spectrum: Spectrum | None = field(default=None, compare=False)

    def to_dict(self) -> dict:
        return {"bits": self.bits}


# -- closed forms -------------------------------------------------------------

CLOSED_FORM_FAMILIES = ("star", "star_like", "alike_disjoint", "alike_path", "star_mlike")


def _merge(pairs) -> Spectrum:
    counts: dict = {}
    for value, mult in pairs:
        if mult < 0:
            raise InvalidParameter(f"negative multiplicity {mult} for value {value}")
        if mult:
            counts[value] = counts.get(value, 0) + mult
    return Spectrum(tuple(sorted(counts.items(), reverse=True)), "exact")


def _check_closed_form_args(family: str, n: int, m: int | None) -> None:
    if family not in CLOSED_FORM_FAMILIES:
        raise InvalidParameter(
            f"no closed form for family {family!r}; expected one of {CLOSED_FORM_FAMILIES}"
        )
    minimum = {"star": 2, "star_like": 3, "alike_disjoint": 4, "alike_path": 4, "star_mlike": 3}
    if n < minimum[family]:
        raise InvalidParameter(f"{family} closed form requires n >= {minimum[family]}, got n={n}")
    if family == "star_mlike":
        if m is None:
            raise InvalidParameter("star_mlike needs m")
        if not 1 <= m <= (n - 1) // 2:
            raise InvalidParameter(
                f"star_mlike requires 1 <= m <= {(n - 1) // 2} for n={n}, got m={m}"
            )
    elif m is not None:
        raise InvalidParameter(f"family {family!r} takes no m")


@lru_cache(maxsize=4096)
def closed_form_spectrum(family: str, n: int, m: int | None = None) -> Spectrum:
    """Exact spectrum of the density matrix of a named family member.

    Coinciding values are merged, e.g. the star-like triangle (n=3) gives
    ``{1/2^[2], 0^[1]}``.  The formulas accept any ``n`` in their arithmetic
    range: the alike_disjoint formula is defined at n=4 even though the graph
    needs five vertices.
    """
    _check_closed_form_args(family, n, m)
    F = Fraction
    if family == "star":
        d = 2 * n - 2
        pairs = [(F(n, d), 1), (F(1, d), n - 2), (F(0), 1)]
    elif family == "star_like":
        d = 2 * n
        pairs = [(F(1, 2), 1), (F(3, d), 1), (F(1, d), n - 3), (F(0), 1)]
    elif family == "alike_disjoint":
        d = 2 * n + 2
        pairs = [(F(n, d), 1), (F(3, d), 2), (F(1, d), n - 4), (F(0), 1)]
    elif family == "alike_path":
        d = 2 * n + 2
        pairs = [(F(n, d), 1), (F(4, d), 1), (F(2, d), 1), (F(1, d), n - 4), (F(0), 1)]
    else:
        d = 2 * n + 2 * (m - 1)
        pairs = [(F(n, d), 1), (F(3, d), m), (F(1, d), n - m - 2), (F(0), 1)]
    return _merge(pairs)


# -- Jacobi eigensolver -----------------------------------------------------------


@lru_cache(maxsize=64)
def _round_robin(n: int) -> tuple:
    """Rounds of disjoint index pairs covering every (p, q) once per sweep."""
    size = n + (n % 2)
    players = list(range(size))
    rounds = []
    for _ in range(size - 1):
        pairs = []
        for i in range(size // 2):
            p, q = players[i], players[size - 1 - i]
            if p < n and q < n:
                pairs.append((min(p, q), max(p, q)))
        if pairs:
            p_idx = np.array([p for p, _ in pairs])
            q_idx = np.array([q for _, q in pairs])
            rounds.append((p_idx, q_idx))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(off * off)))


def jacobi_eigh(a, tol: float = 1e-12, max_sweeps: int = 100):
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi.

    Each sweep visits every off-diagonal pair once, in round-robin order so
    that each round applies ``n // 2`` disjoint rotations at the same time.
    Iteration stops once the off-diagonal Frobenius norm falls below
    ``tol * max(1, ||a||_F)``.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues descending and
    eigenvectors as columns, so ``a == V @ diag(w) @ V.T``.
    """
    a = np.array(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidInput(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    scale = max(1.0, float(np.linalg.norm(a)))
    if n and np.max(np.abs(a - a.T)) > 1e-12 * scale:
        raise InvalidInput("matrix is not symmetric")
    a = (a + a.T) / 2
    v = np.eye(n)
    threshold = tol * scale
    off = _off_norm(a)
    sweeps = 0
    while off >= threshold:
        if sweeps >= max_sweeps:
            raise NumericalFailure(
                f"Jacobi iteration did not converge in {max_sweeps} sweeps", off
            )
        for p, q in _round_robin(n):
            apq = a[p, q]
            active = apq != 0.0
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            # a subnormal apq sends theta to inf, which gives t = 0 (no rotation)
            with np.errstate(over="ignore", invalid="ignore"):
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
            t[np.isnan(t)] = 0.0
            t[theta == 0.0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            # the round's rotations act on disjoint index pairs, so they
            # compose into one orthogonal matrix applied with two matmuls
            j = np.eye(n)
            j[p, p] = c
            j[q, q] = c
            j[p, q] = s
            j[q, p] = -s
            a = j.T @ a @ j
            a[p, q] = a[q, p] = 0.0
            v = v @ j
        a = (a + a.T) / 2  # matmul rounding can break exact symmetry
        sweeps += 1
        off = _off_norm(a)
    w = np.diag(a).copy()
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def _group_numeric(values: list[float]) -> Spectrum:
    entries: list[list] = []
    for x in values:
        if entries and entries[-1][2] - x <= GROUP_TOL:
            entries[-1][0] += x
            entries[-1][1] += 1
            entries[-1][2] = x
        else:
            entries.append([x, 1, x])
    out = []
    for total, mult, _ in entries:
        mean = total / mult
        out.append((0.0 if abs(mean) <= CLAMP_TOL else mean, mult))
    return Spectrum(tuple(out), "numeric")


def numeric_spectrum(rho, tol: float = 1e-12, max_sweeps: int = 100) -> Spectrum:
    """Spectrum of a density matrix computed with :func:`jacobi_eigh`.

    Eigenvalues within ``GROUP_TOL`` of their neighbour are merged into one
    entry.  Values in ``[-1e-10, 0)`` are clamped to zero; anything more
    negative is reported as a PSD violation.
    """
    mat = rho.to_numpy() if isinstance(rho, DensityMatrix) else np.asarray(rho, float)
    if abs(float(np.trace(mat)) - 1.0) > NUMERIC_SUM_TOL:
        raise InvalidInput(f"trace {np.trace(mat)!r} is not 1")
    w, _ = jacobi_eigh(mat, tol=tol, max_sweeps=max_sweeps)
    if w.size and w[-1] < -CLAMP_TOL:
        raise NumericalFailure("matrix is not positive semidefinite", float(-w[-1]))
    w = np.where(w < 0.0, 0.0, w)
    return _group_numeric([float(x) for x in w])


def rationalize(s: Spectrum, max_denominator: int = 10_000, tol: float = 1e-9) -> Spectrum:
    """Recover exact fractions from a numeric spectrum, if they exist.

    Raises :class:`InvalidInput` when some value has no fraction with
    denominator ``<= max_denominator`` within ``tol``.
    """
    if s.mode == "exact":
        return s
    pairs = []
    for v, m in s.entries:
        q = Fraction(v).limit_denominator(max_denominator)
        if abs(float(q) - v) > tol:
            raise InvalidInput(f"value {v!r} has no rational form within {tol}")
        pairs.append((q, m))
    return _merge(pairs)


# -- entropy ----------------------------------------------------------------------


def _xlog2x(x: Number) -> float:
    if x == 0:
        return 0.0
    if isinstance(x, Fraction):
        # log2 of numerator and denominator separately keeps big ints accurate
        return float(x) * (math.log2(x.numerator) - math.log2(x.denominator))
    return x * math.log2(x)


def entropy(s: Spectrum) -> EntropyValue:
    """Von Neumann entropy ``-sum(lambda * log2(lambda))`` with 0 log 0 = 0."""
    if not s.is_normalized():
        raise InvalidInput(f"spectrum sums to {s.total()}, not 1")
    for v, _ in s.entries:
        if v < 0:
            raise InvalidInput(f"negative eigenvalue {v} in spectrum")
    bits = -math.fsum(m * _xlog2x(v) for v, m in s.entries)
    return EntropyValue(max(bits, 0.0), s)


def entropy_closed_form(family: str, n: int, m: int | None = None) -> EntropyValue:
    """Entropy from the simplified algebraic expressions, bypassing spectra."""
    _check_closed_form_args(family, n, m)
    log2 = math.log2
    if family == "star":
        bits = 0.5 * log2(2 - 2 / n) + 0.5 * log2(2 * n - 2) - log2(n) / (2 * n - 2)
    elif family == "star_like":
        bits = 0.5 * log2(2) + 3 / (2 * n) * log2(1 / 3) + 0.5 * log2(2 * n)
    elif family == "alike_disjoint":
        d = 2 * n + 2
        bits = log2(d) - n / d * log2(n) - 6 / d * log2(3)
    elif family == "alike_path":
        d = 2 * n + 2
        bits = log2(d) - n / d * log2(n) - 10 / d * log2(2)
    else:
        d = 2 * n + 2 * (m - 1)
        bits = log2(d) - n / d * log2(n) - 3 * m / d * log2(3)
    return EntropyValue(bits)
