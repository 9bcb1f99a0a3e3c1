"""Truncated absolutely convergent Dirichlet series.

A :class:`DirichletSeries` stores finitely many coefficients ``a_n`` of
``sum a_n n^{-s}`` together with a cutoff ``N``; every operation is exact for
the indices ``n <= N`` that it keeps, up to floating-point rounding.
"""

from __future__ import annotations

import cmath
import math
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import ConstantTermPresent, IndexOverflow, ValidationError

INDEX_MAX = 2**64 - 1


def _check_index(n: int) -> int:
    n = int(n)
    if n < 1:
        raise ValidationError(f"Dirichlet indices start at 1, got {n}")
    if n > INDEX_MAX:
        raise IndexOverflow(f"index {n} exceeds the 64-bit range")
    return n


def checked_mul(i: int, j: int) -> int:
    """Product of two indices, raising :class:`IndexOverflow` past 2**64 - 1."""
    p = i * j
    if p > INDEX_MAX:
        raise IndexOverflow(f"{i} * {j} exceeds the 64-bit index range")
    return p


class DirichletSeries:
    """Immutable sparse table ``n -> a_n`` with all ``n <= cutoff``.

    Exact zeros are dropped on construction; nothing else is pruned.  Terms
    beyond ``cutoff`` are discarded.
    """

    __slots__ = ("_terms", "_cutoff")

    def __init__(self, terms: Mapping[int, complex] | Iterable[tuple[int, complex]] = (),
                 cutoff: int = INDEX_MAX):
        cutoff = _check_index(cutoff)
        items = terms.items() if isinstance(terms, Mapping) else terms
        table: dict[int, complex] = {}
        for n, a in items:
            n = _check_index(n)
            if n > cutoff:
                continue
            table[n] = table.get(n, 0j) + complex(a)
        self._terms = {n: table[n] for n in sorted(table) if table[n] != 0}
        self._cutoff = cutoff

    @classmethod
    def unit(cls, cutoff: int = INDEX_MAX) -> "DirichletSeries":
        return cls({1: 1.0}, cutoff)

    @classmethod
    def monomial(cls, n: int, coeff: complex = 1.0, cutoff: int = INDEX_MAX) -> "DirichletSeries":
        return cls({n: coeff}, cutoff)

    @property
    def terms(self) -> Mapping[int, complex]:
        return MappingProxyType(self._terms)

    @property
    def cutoff(self) -> int:
        return self._cutoff

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self._terms)

    def __iter__(self) -> Iterator[tuple[int, complex]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __getitem__(self, n: int) -> complex:
        return self._terms.get(n, 0j)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirichletSeries):
            return NotImplemented
        return self._terms == other._terms and self._cutoff == other._cutoff

    def __hash__(self) -> int:
        return hash((tuple(self._terms.items()), self._cutoff))

    def __repr__(self) -> str:
        body = " + ".join(f"({a:g})*{n}^-s" for n, a in list(self._terms.items())[:6])
        more = " + ..." if len(self._terms) > 6 else ""
        return f"DirichletSeries({body or '0'}{more}; N={self._cutoff})"

    def __add__(self, other: "DirichletSeries") -> "DirichletSeries":
        return add(self, other)

    def __neg__(self) -> "DirichletSeries":
        return self.scale(-1.0)

    def __sub__(self, other: "DirichletSeries") -> "DirichletSeries":
        return add(self, -other)

    def __mul__(self, other: "DirichletSeries") -> "DirichletSeries":
        return mul(self, other, min(self._cutoff, other._cutoff))

    def scale(self, c: complex) -> "DirichletSeries":
        return DirichletSeries({n: c * a for n, a in self._terms.items()}, self._cutoff)

    def truncate(self, cutoff: int) -> "DirichletSeries":
        return DirichletSeries(self._terms, min(cutoff, self._cutoff))

    def compact(self, tol: float) -> "DirichletSeries":
        """Drop coefficients with modulus ``<= tol`` (explicit, never implicit)."""
        return DirichletSeries({n: a for n, a in self._terms.items() if abs(a) > tol},
                               self._cutoff)

    def without_constant(self) -> tuple[complex, "DirichletSeries"]:
        """Split off the index-1 coefficient."""
        rest = {n: a for n, a in self._terms.items() if n != 1}
        return self[1], DirichletSeries(rest, self._cutoff)

    def to_json(self) -> dict:
        return {
            "cutoff": self._cutoff,
            "terms": [[n, a.real, a.imag] for n, a in self._terms.items()],
        }

    @classmethod
    def from_json(cls, data: dict | list) -> "DirichletSeries":
        if isinstance(data, list):
            data = {"terms": data}
        try:
            cutoff = int(data.get("cutoff", INDEX_MAX))
            triples = [(int(n), complex(float(re), float(im))) for n, re, im in data["terms"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed Dirichlet series: {exc}") from exc
        return cls(triples, cutoff)

    def to_csv(self) -> str:
        lines = ["n,re,im"]
        lines += [f"{n},{a.real:.17g},{a.imag:.17g}" for n, a in self._terms.items()]
        return "\n".join(lines) + "\n"


def unit_phase(theta: float) -> complex:
    """``exp(i theta)`` rounded so that ``abs()`` of the result is exactly 1.0.

    ``cmath.rect(1, theta)`` misses unit modulus by an ulp for roughly one
    angle in seventy; the nearest pair within two ulps per component that
    hits it exactly is used instead (when one exists).
    """
    z = cmath.rect(1.0, theta)
    if abs(z) == 1.0:
        return z
    best = None
    for dr in range(-2, 3):
        for di in range(-2, 3):
            re, im = z.real, z.imag
            for _ in range(abs(dr)):
                re = math.nextafter(re, math.copysign(math.inf, dr))
            for _ in range(abs(di)):
                im = math.nextafter(im, math.copysign(math.inf, di))
            w = complex(re, im)
            if abs(w) == 1.0 and (best is None or abs(dr) + abs(di) < best[0]):
                best = (abs(dr) + abs(di), w)
    return z if best is None else best[1]


def add(f: DirichletSeries, g: DirichletSeries) -> DirichletSeries:
    cutoff = min(f.cutoff, g.cutoff)
    out = dict(f.terms)
    for n, b in g:
        out[n] = out.get(n, 0j) + b
    return DirichletSeries(out, cutoff)


def _convolve(f_items: list, g_items: list, cutoff: int) -> dict[int, complex]:
    # both inputs sorted by index; j <= cutoff // i  <=>  i*j <= cutoff, so no overflow
    out: dict[int, complex] = {}
    for i, a in f_items:
        if i > cutoff:
            break
        limit = cutoff // i
        for j, b in g_items:
            if j > limit:
                break
            n = i * j
            out[n] = out.get(n, 0j) + a * b
    return out


def _trusted(terms: dict[int, complex], cutoff: int) -> DirichletSeries:
    """Wrap already-valid indices without re-checking them."""
    f = DirichletSeries.__new__(DirichletSeries)
    f._terms = {n: terms[n] for n in sorted(terms) if terms[n] != 0}
    f._cutoff = cutoff
    return f


def mul(f: DirichletSeries, g: DirichletSeries, cutoff: int) -> DirichletSeries:
    """Dirichlet convolution ``c_n = sum_{ij=n} a_i b_j`` for ``n <= cutoff``."""
    cutoff = _check_index(cutoff)
    return _trusted(_convolve(list(f), list(g), cutoff), cutoff)


def a_plus_norm_partial(f: DirichletSeries) -> float:
    """Sum of coefficient moduli over the stored support (correctly rounded)."""
    return math.fsum(abs(a) for _, a in f)


def exp_neg_log(r: float, upsilon: DirichletSeries, cutoff: int,
                max_power: int | None = None) -> DirichletSeries:
    """``r^{-upsilon} = sum_k (-log r)^k upsilon^k / k!`` truncated at ``cutoff``.

    Since every index of ``upsilon`` is at least 2, ``upsilon^k`` vanishes below
    index ``2^k`` and the sum over ``k`` is finite for a finite cutoff.
    ``max_power`` optionally stops the expansion after that many powers.
    """
    if r < 1:
        raise ValidationError(f"base r must be >= 1, got {r}")
    if 1 in upsilon.terms:
        raise ConstantTermPresent("exponent series has an index-1 term")
    cutoff = _check_index(cutoff)
    acc: dict[int, complex] = {1: 1.0 + 0j}
    neg_log = -math.log(r)
    if neg_log == 0.0 or len(upsilon) == 0:
        return DirichletSeries(acc, cutoff)
    base = [(n, a) for n, a in upsilon if n <= cutoff]
    power = base
    factor = 1.0
    k = 0
    while power and (max_power is None or k < max_power):
        k += 1
        factor *= neg_log / k
        for n, a in power:
            acc[n] = acc.get(n, 0j) + factor * a
        nxt = _convolve(power, base, cutoff)
        power = sorted(nxt.items())
    return _trusted(acc, cutoff)


def evaluate(f: DirichletSeries, s: complex) -> complex:
    """Value of the truncation at ``s`` (ascending-index summation)."""
    s = complex(s)
    if s.real <= 0:
        raise ValidationError("evaluation needs Re s > 0")
    total = 0j
    for n, a in f:
        total += a * cmath.exp(-s * math.log(n))
    return total


def sup_norm_estimate(f: DirichletSeries, sigma: float, t_max: float, samples: int) -> float:
    """Max of ``|f(sigma + it)|`` over a uniform grid on ``[0, t_max]``.

    A lower bound for the supremum over the half-plane.
    """
    if samples < 2:
        raise ValidationError("need at least two samples")
    if sigma <= 0:
        raise ValidationError("sigma must be positive")
    if len(f) == 0:
        return 0.0
    idx = np.array(list(f.terms), dtype=float)
    coef = np.array(list(f.terms.values()), dtype=complex)
    logs = np.log(idx)
    weights = coef * np.exp(-sigma * logs)
    t = np.linspace(0.0, t_max, samples)
    best = 0.0
    chunk = max(1, 2_000_000 // len(idx))
    for start in range(0, samples, chunk):
        tt = t[start:start + chunk]
        vals = np.exp(-1j * np.outer(tt, logs)) @ weights
        best = max(best, float(np.abs(vals).max()))
    return best
