"""Bohr correspondence between Dirichlet series and power series.

``n^{-s}`` is sent to the monomial ``z_1^{a_1} ... z_r^{a_r}`` where
``n = p_1^{a_1} ... p_r^{a_r}``.  Exponent vectors are plain tuples of
non-negative ints with trailing zeros trimmed, so ``()`` stands for ``n = 1``.
"""

from __future__ import annotations

import bisect
import cmath
import math
from functools import lru_cache
from itertools import compress
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .dirichlet import INDEX_MAX, DirichletSeries
from .errors import IndexOverflow, ValidationError

ExponentVector = tuple[int, ...]


def exponent_vector(exps: Iterable[int]) -> ExponentVector:
    """Canonical form: non-negative ints, trailing zeros removed."""
    out = list(exps)
    if not set(map(type, out)) <= {int}:
        out = [int(e) for e in out]
    if out and min(out) < 0:
        raise ValidationError("exponents must be non-negative")
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def support(alpha: Sequence[int]) -> Iterator[int]:
    """Positions of the nonzero exponents.  Vectors can be long and mostly zero."""
    return compress(range(len(alpha)), alpha)


class PrimeTable:
    """The first ``size`` primes, grown on demand by sieving."""

    def __init__(self, size: int = 0):
        self._primes: list[int] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
        self._limit = 30
        if size > len(self._primes):
            self.ensure_count(size)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(self._primes)

    def __len__(self) -> int:
        return len(self._primes)

    def __getitem__(self, j: int) -> int:
        if j >= len(self._primes):
            self.ensure_count(j + 1)
        return self._primes[j]

    def _sieve(self, limit: int) -> None:
        if limit <= self._limit:
            return
        mask = np.ones(limit + 1, dtype=bool)
        mask[:2] = False
        for p in range(2, math.isqrt(limit) + 1):
            if mask[p]:
                mask[p * p::p] = False
        self._primes = np.flatnonzero(mask).tolist()
        self._limit = limit

    def ensure_count(self, count: int) -> None:
        while len(self._primes) < count:
            self._sieve(self._limit * 2)

    def ensure_limit(self, limit: int) -> None:
        self._sieve(limit)

    def index_of(self, p: int) -> int:
        self.ensure_limit(p)
        j = bisect.bisect_left(self._primes, p)
        if j >= len(self._primes) or self._primes[j] != p:
            raise ValidationError(f"{p} is not prime")
        return j


DEFAULT_TABLE = PrimeTable()
_SIEVE_CAP = 10**7


def prime_index(p: int, table: PrimeTable = DEFAULT_TABLE) -> int:
    """Zero-based position of the prime ``p`` (2 -> 0, 3 -> 1, ...)."""
    if p <= _SIEVE_CAP:
        return table.index_of(p)
    from sympy import primepi
    return int(primepi(p)) - 1


@lru_cache(maxsize=1 << 16)
def factorize(n: int) -> ExponentVector:
    """Exponent vector of ``n`` over the primes 2, 3, 5, ...

    Trial division against the cached prime table; numbers whose square root
    exceeds the sieve cap are handed to sympy.
    """
    n = int(n)
    if n < 1:
        raise ValidationError(f"factorize needs n >= 1, got {n}")
    root = math.isqrt(n)
    if root > _SIEVE_CAP:
        from sympy import factorint
        exps: dict[int, int] = {}
        for p, e in factorint(n).items():
            exps[prime_index(p)] = e
        return exponent_vector(exps.get(j, 0) for j in range(max(exps) + 1))
    table = DEFAULT_TABLE
    table.ensure_limit(max(30, root))
    out: list[int] = []
    rest = n
    for j, p in enumerate(table._primes):
        if p * p > rest:
            break
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        if e:
            out.extend([0] * (j + 1 - len(out)))
            out[j] = e
    if rest > 1:
        k = prime_index(rest)
        out.extend([0] * (k + 1 - len(out)))
        out[k] += 1
    return tuple(out)


def nth_prime(j: int, table: PrimeTable = DEFAULT_TABLE) -> int:
    """Prime at zero-based position ``j``."""
    if j < len(table) or j < 664_579:  # pi(10**7)
        return table[j]
    from sympy import prime
    return int(prime(j + 1))


def integer_image(alpha: Sequence[int], table: PrimeTable = DEFAULT_TABLE) -> int:
    """``prod p_j^{alpha_j}``; raises :class:`IndexOverflow` past 64 bits."""
    n = 1
    for j in support(alpha):
        n *= nth_prime(j, table) ** alpha[j]
        if n > INDEX_MAX:
            raise IndexOverflow(f"monomial {tuple(alpha)} has integer image beyond 64 bits")
    return n


class PowerSeries:
    """Sparse power series in prime-indexed variables ``z_1, z_2, ...``."""

    __slots__ = ("_terms", "_budget", "_sparse")

    def __init__(self, terms: Mapping[Sequence[int], complex] | Iterable = (),
                 prime_budget: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        table: dict[ExponentVector, complex] = {}
        for alpha, a in items:
            key = exponent_vector(alpha)
            table[key] = table.get(key, 0j) + complex(a)
        width = max((len(k) for k in table), default=0)
        if prime_budget is None:
            prime_budget = width
        elif width > prime_budget:
            raise ValidationError(f"a key uses {width} primes, budget is {prime_budget}")
        self._fill(table, int(prime_budget))

    def _fill(self, table: dict[ExponentVector, complex], budget: int) -> None:
        # each key also gets its (position, exponent) pairs so that long, mostly
        # zero vectors are walked once
        sparse = {k: tuple((j, k[j]) for j in support(k)) for k, a in table.items() if a != 0}
        image = {k: _sparse_image(sp) for k, sp in sparse.items()}
        keys = sorted(sparse, key=image.__getitem__)
        self._terms = {k: table[k] for k in keys}
        self._sparse = {k: sparse[k] for k in keys}
        self._budget = budget

    @classmethod
    def _canonical(cls, table: dict[ExponentVector, complex], budget: int) -> "PowerSeries":
        # keys already trimmed and validated
        self = cls.__new__(cls)
        self._fill(table, budget)
        return self

    def sparse_items(self) -> Iterator[tuple[tuple[tuple[int, int], ...], complex]]:
        """Terms as ``((position, exponent), ...), coefficient`` in canonical order."""
        return zip(self._sparse.values(), self._terms.values())

    @property
    def terms(self) -> Mapping[ExponentVector, complex]:
        return MappingProxyType(self._terms)

    @property
    def prime_budget(self) -> int:
        return self._budget

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __getitem__(self, alpha: Sequence[int]) -> complex:
        return self._terms.get(exponent_vector(alpha), 0j)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self._terms == other._terms

    def __repr__(self) -> str:
        return f"PowerSeries({len(self._terms)} terms, r={self._budget})"

    def norm(self) -> float:
        return math.fsum(abs(a) for a in self._terms.values())

    def to_json(self) -> dict:
        return {
            "prime_budget": self._budget,
            "terms": [{"alpha": list(k), "re": a.real, "im": a.imag}
                      for k, a in self._terms.items()],
        }

    @classmethod
    def from_json(cls, data: dict | list) -> "PowerSeries":
        if isinstance(data, list):
            data = {"terms": data}
        try:
            terms = [(t["alpha"], complex(float(t["re"]), float(t["im"]))) for t in data["terms"]]
            budget = data.get("prime_budget")
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed power series: {exc}") from exc
        return cls(terms, budget)


def _sparse_image(pairs: Iterable[tuple[int, int]]) -> int:
    n = 1
    for j, e in pairs:
        n *= nth_prime(j) ** e
    return n


def integer_image_unchecked(alpha: Sequence[int]) -> int:
    return _sparse_image((j, alpha[j]) for j in support(alpha))


def lift(f: DirichletSeries) -> PowerSeries:
    table = {factorize(n): a for n, a in f}
    return PowerSeries._canonical(table, max(map(len, table), default=0))


def inverse_lift(F: PowerSeries, cutoff: int | None = None) -> DirichletSeries:
    terms = {}
    for pairs, a in F.sparse_items():
        n = _sparse_image(pairs)
        if n > INDEX_MAX:
            raise IndexOverflow(f"monomial {dict(pairs)} has integer image beyond 64 bits")
        terms[n] = a
    return DirichletSeries(terms, INDEX_MAX if cutoff is None else cutoff)


def ps_mul(F: PowerSeries, G: PowerSeries, cutoff: int | None = None) -> PowerSeries:
    """Power-series product, optionally keeping only keys with image ``<= cutoff``."""
    out: dict[ExponentVector, complex] = {}
    right = [(b, y, sb, _sparse_image(sb)) for (b, y), (sb, _) in zip(G, G.sparse_items())]
    for (a, x), (sa, _) in zip(F, F.sparse_items()):
        na = _sparse_image(sa)
        for b, y, sb, nb in right:
            if cutoff is not None and na * nb > cutoff:
                continue
            long, pairs = (a, sb) if len(a) >= len(b) else (b, sa)
            merged = list(long)
            for j, e in pairs:
                merged[j] += e
            key = tuple(merged)
            out[key] = out.get(key, 0j) + x * y
    return PowerSeries._canonical(out, max(F.prime_budget, G.prime_budget))


def half_plane_point(s: complex, count: int, table: PrimeTable = DEFAULT_TABLE) -> list[complex]:
    """``z^{[s]} = (p_j^{-s})_{j < count}``."""
    return [cmath.exp(-complex(s) * math.log(nth_prime(j, table))) for j in range(count)]


def eval_at_point(F: PowerSeries, z: Sequence[complex]) -> complex:
    total = 0j
    for pairs, a in F.sparse_items():
        term = a
        for j, e in pairs:
            term *= z[j] ** e
        total += term
    return total


class _LazyPoint:
    """``p_j^{-s}`` computed only for the positions actually touched."""

    def __init__(self, s: complex, table: PrimeTable):
        self._s, self._table, self._cache = s, table, {}

    def __getitem__(self, j: int) -> complex:
        z = self._cache.get(j)
        if z is None:
            z = self._cache[j] = cmath.exp(-self._s * math.log(nth_prime(j, self._table)))
        return z


def eval_at_half_plane_point(F: PowerSeries, s: complex,
                             table: PrimeTable = DEFAULT_TABLE) -> complex:
    s = complex(s)
    if s.real <= 0:
        raise ValidationError("evaluation needs Re s > 0")
    return eval_at_point(F, _LazyPoint(s, table))


def polydisk_sup_estimate(F: PowerSeries, sigma: float, samples: int, seed: int = 0) -> float:
    """Max of ``|F|`` over random points of the torus ``|z_j| = p_j^{-sigma}``.

    By the maximum modulus principle this lower-bounds the sup of ``F`` over
    the polydisk of those radii, which is the power-series side of the
    sup-norm identity on the line ``Re s = sigma``.
    """
    rng = np.random.default_rng(seed)
    r = F.prime_budget
    radii = np.array([nth_prime(j) ** -sigma for j in range(r)])
    keys = list(F.terms)
    coef = np.array(list(F.terms.values()), dtype=complex)
    expo = np.zeros((len(keys), max(r, 1)))
    for i, k in enumerate(keys):
        expo[i, :len(k)] = k
    log_mod = expo[:, :r] @ np.log(radii) if r else np.zeros(len(keys))
    theta = rng.uniform(0.0, 2 * np.pi, size=(samples, max(r, 1)))[:, :r]
    phases = theta @ expo[:, :r].T if r else np.zeros((samples, len(keys)))
    vals = np.exp(1j * phases) @ (coef * np.exp(log_mod))
    return float(np.abs(vals).max()) if samples else 0.0

