"""Composition symbols ``phi(s) = c0*s + sum c_n n^{-s}`` acting on Dirichlet series.

The operator ``C_phi`` is bounded exactly when the images ``n^{-phi}`` have
uniformly bounded norms, so most of this module is about building those
images and reading criteria off the symbol's coefficients.
"""

from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _linalg
from .bohr import factorize
from .dirichlet import (INDEX_MAX, DirichletSeries, a_plus_norm_partial, checked_mul,
                        exp_neg_log, unit_phase)
from .errors import ConstantSymbol, IndexOverflow, NotIndependent, ValidationError

EQ_TOL = 1e-12


class Verdict(str, Enum):
    COMPACT = "Compact"
    BOUNDED_CONTRACTION = "BoundedContraction"
    BOUNDED = "Bounded"
    UNBOUNDED = "Unbounded"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class OperatorDiagnosis:
    verdict: Verdict
    evidence: str
    norm_samples: list[tuple[int, float]] = field(default_factory=list)
    rule: str = ""

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "rule": self.rule,
            "evidence": self.evidence,
            "norm_samples": [[n, v] for n, v in self.norm_samples],
        }


class CompositionSymbol:
    """``phi(s) = c0*s + c_1 + sum_{n >= 2} c_n n^{-s}`` with finite support."""

    __slots__ = ("_c0", "_coeffs")

    def __init__(self, c0: int, coeffs: Mapping[int, complex] | Iterable[tuple[int, complex]] = ()):
        if int(c0) != c0 or c0 < 0:
            raise ValidationError(f"characteristic c0 must be a non-negative integer, got {c0}")
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        table: dict[int, complex] = {}
        for n, c in items:
            n = int(n)
            if n < 1:
                raise ValidationError(f"symbol indices start at 1, got {n}")
            table[n] = table.get(n, 0j) + complex(c)
        self._c0 = int(c0)
        self._coeffs = {n: table[n] for n in sorted(table) if table[n] != 0}
        if self._c0 == 0 and not self.tail:
            raise ConstantSymbol("symbol is constant (c0 = 0 and no n^{-s} terms)")

    @property
    def c0(self) -> int:
        return self._c0

    @property
    def coeffs(self) -> Mapping[int, complex]:
        return MappingProxyType(self._coeffs)

    @property
    def c1(self) -> complex:
        return self._coeffs.get(1, 0j)

    @property
    def tail(self) -> dict[int, complex]:
        return {n: c for n, c in self._coeffs.items() if n >= 2}

    def tail_series(self, cutoff: int = INDEX_MAX) -> DirichletSeries:
        return DirichletSeries(self.tail, cutoff)

    def tail_norm(self) -> float:
        return math.fsum(abs(c) for c in self.tail.values())

    def with_c0(self, c0: int) -> "CompositionSymbol":
        return CompositionSymbol(c0, self._coeffs)

    def __call__(self, s: complex) -> complex:
        s = complex(s)
        return self._c0 * s + sum(c * cmath.exp(-s * math.log(n)) for n, c in self._coeffs.items())

    def __repr__(self) -> str:
        return f"CompositionSymbol(c0={self._c0}, coeffs={dict(self._coeffs)})"

    def to_json(self) -> dict:
        return {"c0": self._c0,
                "coeffs": [[n, c.real, c.imag] for n, c in self._coeffs.items()]}

    @classmethod
    def from_json(cls, data: dict) -> "CompositionSymbol":
        try:
            c0 = data["c0"]
            coeffs = [(int(n), complex(float(re), float(im))) for n, re, im in data.get("coeffs", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed symbol: {exc}") from exc
        if not isinstance(c0, int) or isinstance(c0, bool):
            raise ValidationError("c0 must be an integer")
        return cls(c0, coeffs)


def image_basis(phi: CompositionSymbol, n: int, cutoff: int) -> DirichletSeries:
    """``n^{-phi}`` truncated at ``cutoff``.

    Computed as ``(n^{c0})^{-s} * n^{-c_1} * n^{-tail}``: the tail exponential
    is expanded exactly below ``cutoff // n^{c0}`` and its indices are then
    shifted by ``n^{c0}``.
    """
    if n < 1:
        raise ValidationError("n must be >= 1")
    if n == 1:
        return DirichletSeries.unit(cutoff)
    shift = n ** phi.c0
    if shift > INDEX_MAX:
        raise IndexOverflow(f"{n}^{phi.c0} exceeds the 64-bit index range")
    inner_cutoff = cutoff // shift
    if inner_cutoff < 1:
        return DirichletSeries({}, cutoff)
    log_n = math.log(n)
    c1 = phi.c1
    if c1.real == 0:
        scale = unit_phase(-c1.imag * log_n)  # keeps |n^{-i tau}| == 1.0 exactly
    else:
        scale = cmath.rect(math.exp(-c1.real * log_n), -c1.imag * log_n)
    base = exp_neg_log(n, phi.tail_series(inner_cutoff), inner_cutoff)
    return DirichletSeries({checked_mul(m, shift): scale * a for m, a in base}, cutoff)


def _partial_norm(args: tuple[CompositionSymbol, int, int]) -> tuple[int, float]:
    phi, n, cutoff = args
    return n, a_plus_norm_partial(image_basis(phi, n, cutoff))


def _workers(workers: int | None) -> int:
    if workers is not None:
        return max(1, workers)
    try:
        return max(1, int(os.environ.get("WD_THREADS", "1")))
    except ValueError:
        return 1


def norm_sequence(phi: CompositionSymbol, n_max: int, cutoff: int,
                  workers: int | None = None) -> list[tuple[int, float]]:
    """Partial norms of ``n^{-phi}`` for ``n = 1..n_max``.

    Each entry lower-bounds the true norm and is non-decreasing in ``cutoff``.
    ``workers`` (default: ``$WD_THREADS`` or 1) spreads the n's over processes.
    """
    if n_max < 2:
        raise ValidationError("n_max must be >= 2")
    jobs = [(phi, n, cutoff) for n in range(1, n_max + 1)]
    nw = _workers(workers)
    if nw == 1:
        return [_partial_norm(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=nw) as pool:
        return list(pool.map(_partial_norm, jobs, chunksize=max(1, len(jobs) // (4 * nw))))


def sufficient_condition(phi: CompositionSymbol) -> OperatorDiagnosis:
    """Compare ``Re c_1`` with ``sum_{n>=2} |c_n|``."""
    re_c1 = phi.c1.real
    tail = phi.tail_norm()
    gap = re_c1 - tail
    rule = "coefficient-sum test"
    if abs(gap) <= EQ_TOL:
        return OperatorDiagnosis(
            Verdict.BOUNDED_CONTRACTION,
            f"{rule}: Re c1 = {re_c1!r} equals sum|c_n| = {tail!r} within {EQ_TOL:g} "
            "(equality snapped); bounded with ||C_phi|| <= 1", rule=rule)
    if gap > 0:
        return OperatorDiagnosis(
            Verdict.COMPACT,
            f"{rule}: Re c1 = {re_c1!r} > sum|c_n| = {tail!r}; compact, and ||C_phi|| <= 1",
            rule=rule)
    return OperatorDiagnosis(
        Verdict.INCONCLUSIVE,
        f"{rule}: Re c1 = {re_c1!r} < sum|c_n| = {tail!r}; this rule gives no conclusion",
        rule=rule)


def multiplicative_independence(qs: Sequence[int]) -> bool:
    """True iff the prime-exponent vectors of ``qs`` are linearly independent over Q."""
    qs = [int(q) for q in qs]
    if any(q < 2 for q in qs):
        raise ValidationError("integers must be >= 2")
    if len(set(qs)) != len(qs):
        return False
    if not qs:
        return True
    vecs = [factorize(q) for q in qs]
    width = max(len(v) for v in vecs)
    rows = [list(v) + [0] * (width - len(v)) for v in vecs]
    return _linalg.rank(rows) == len(qs)


def kronecker_inf(phi: CompositionSymbol, sigma: float) -> float:
    """``inf_t Re phi(sigma + it) = c0*sigma + Re c_1 - sum |d_j| q_j^{-sigma}``.

    Valid when the tail frequencies ``q_j`` are multiplicatively independent,
    so that the phases ``q_j^{-it}`` can be steered independently.
    """
    if sigma <= 0:
        raise ValidationError("sigma must be positive")
    tail = phi.tail
    if not multiplicative_independence(list(tail)):
        raise NotIndependent(f"tail support {sorted(tail)} is not multiplicatively independent")
    drop = math.fsum(abs(d) * q ** -sigma for q, d in tail.items())
    return phi.c0 * sigma + phi.c1.real - drop


def re_phi_on_line(phi: CompositionSymbol, sigma: float, t: np.ndarray) -> np.ndarray:
    """Vectorised ``Re phi(sigma + it)``."""
    out = np.full(t.shape, phi.c0 * sigma + phi.c1.real)
    for q, d in phi.tail.items():
        out += (d * q ** -sigma * np.exp(-1j * t * math.log(q))).real
    return out


def dirichlet_isometry_check(phi: CompositionSymbol) -> bool:
    """``C_phi`` is an isometry iff ``phi(s) = c0*s + i*tau`` with ``c0 >= 1``."""
    return phi.c0 >= 1 and not phi.tail and abs(phi.c1.real) <= EQ_TOL


def spectra_disjointness_probe(phi: CompositionSymbol, n_max: int,
                               cutoff: int) -> tuple[int, int] | None:
    """First pair ``m < n <= n_max`` whose truncated spectra of ``n^{-phi}`` meet."""
    if n_max < 2:
        raise ValidationError("n_max must be >= 2")
    owner: dict[int, int] = {}
    for n in range(1, n_max + 1):
        support = image_basis(phi, n, cutoff).support
        hits = [owner[k] for k in support if k in owner]
        if hits:
            return min(hits), n
        for k in support:
            owner.setdefault(k, n)
    return None
