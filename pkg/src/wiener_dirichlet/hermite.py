"""Quadratic symbols ``phi(s) = c0*s + c1 + cr r^{-s} + cr2 r^{-2s}``.

For these symbols the norm of ``n^{-phi}`` has the closed form

    n^{-Re c1} * sum_k |H_k(lam_n)| / k! * x_n^k,
    x_n = sqrt(cr2 log n),  lam_n = -cr / (2 sqrt(cr2)) * sqrt(log n),

with ``H_k`` the physicists' Hermite polynomials.  Terms grow enormously
before they decay, so everything here is carried as ``(sign, log|value|)``.

The Hermite values come from the normalised recurrence for
``h_k = H_k / sqrt(2^k k!)``::

    h_{k+1} = lam * sqrt(2/(k+1)) * h_k - sqrt(k/(k+1)) * h_{k-1}

which stays below ``exp(lam^2/2)`` in modulus, so only the prefactor needs logs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .errors import HermiteOverflow, MaxNotOnCircle, NotApplicable, ValidationError
from .symbols import EQ_TOL, CompositionSymbol, OperatorDiagnosis, Verdict

LOG2 = math.log(2.0)
_RESCALE = 1e150


@dataclass(frozen=True)
class QuadraticSymbol:
    c0: int
    c1: complex
    r: int
    cr: float
    cr2: float

    def __post_init__(self):
        if int(self.c0) != self.c0 or self.c0 < 0:
            raise ValidationError("c0 must be a non-negative integer")
        if int(self.r) != self.r or self.r < 2:
            raise ValidationError("r must be an integer >= 2")
        for name in ("cr", "cr2"):
            v = getattr(self, name)
            if isinstance(v, complex):
                if v.imag != 0:
                    raise ValidationError(f"{name} must be a positive real (complex case unsupported)")
                object.__setattr__(self, name, v.real)
            if not getattr(self, name) > 0:
                raise ValidationError(f"{name} must be > 0")
        object.__setattr__(self, "c1", complex(self.c1))

    @property
    def threshold(self) -> float:
        """``cr^2 / (8 cr2) + cr2``."""
        return self.cr ** 2 / (8 * self.cr2) + self.cr2

    def to_symbol(self) -> CompositionSymbol:
        return CompositionSymbol(self.c0, {1: self.c1, self.r: self.cr, self.r ** 2: self.cr2})

    @classmethod
    def from_json(cls, data: dict) -> "QuadraticSymbol":
        try:
            c1 = data.get("c1", 0.0)
            if isinstance(c1, (list, tuple)):
                c1 = complex(float(c1[0]), float(c1[1]))
            else:
                c1 = complex(float(c1))
            return cls(int(data.get("c0", 0)), c1, int(data["r"]),
                       float(data["cr"]), float(data["cr2"]))
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise ValidationError(f"malformed quadratic symbol: {exc}") from exc


@dataclass(frozen=True)
class NormProfile:
    n: int
    x_n: float
    lambda_n: float

    @classmethod
    def of(cls, sym: QuadraticSymbol, n: int) -> "NormProfile":
        if n < 1:
            raise ValidationError("n must be >= 1")
        root_log = math.sqrt(math.log(n))
        return cls(n, math.sqrt(sym.cr2) * root_log, -sym.cr / (2 * math.sqrt(sym.cr2)) * root_log)


def hermite(k: int, lam: float) -> float:
    """``H_k(lam)`` by the plain three-term recurrence."""
    if k < 0:
        raise ValidationError("k must be non-negative")
    prev, cur = 1.0, 2.0 * lam
    if k == 0:
        return prev
    for j in range(1, k):
        prev, cur = cur, 2.0 * lam * cur - 2.0 * j * prev
        if not math.isfinite(cur):
            raise HermiteOverflow(f"H_{k}({lam}) overflows double precision")
    return cur


def log_hermite_sequence(lam: float, kmax: int) -> Iterator[tuple[int, float]]:
    """Yield ``(sign, log|H_k(lam)|)`` for ``k = 0..kmax``; ``log|0| = -inf``."""
    hm, h = 0.0, 1.0
    shift = 0.0  # log of the factor divided out of (hm, h)
    half_log2 = 0.5 * LOG2
    yield 1, 0.0
    for k in range(kmax):
        hm, h = h, lam * math.sqrt(2.0 / (k + 1)) * h - math.sqrt(k / (k + 1)) * hm
        if abs(h) > _RESCALE or abs(hm) > _RESCALE:
            hm /= _RESCALE
            h /= _RESCALE
            shift += math.log(_RESCALE)
        kk = k + 1
        prefactor = kk * half_log2 + 0.5 * math.lgamma(kk + 1)
        if h == 0.0:
            yield 0, -math.inf
        else:
            yield (1 if h > 0 else -1), math.log(abs(h)) + shift + prefactor


def log_hermite(k: int, lam: float) -> tuple[int, float]:
    """``(sign, log|H_k(lam)|)`` without overflow."""
    for item in log_hermite_sequence(lam, k):
        pass
    return item


def _log_terms(profile: NormProfile, kmax: int) -> Iterator[float]:
    """``log(|H_k(lam_n)| / k! * x_n^k)`` for ``k = 0..kmax``."""
    log_x = math.log(profile.x_n) if profile.x_n > 0 else -math.inf
    for k, (sign, lh) in enumerate(log_hermite_sequence(profile.lambda_n, kmax)):
        if k == 0:
            yield 0.0
        elif sign == 0 or log_x == -math.inf:
            yield -math.inf
        else:
            yield lh - math.lgamma(k + 1) + k * log_x


def hermite_series_term(k: int, profile: NormProfile) -> float:
    """``|H_k(lam_n)| / k! * x_n^k``."""
    for term in _log_terms(profile, k):
        pass
    return math.exp(term)


def log_tail_bound(profile: NormProfile, K: int) -> float:
    """Log of an upper bound for ``sum_{k > K}`` of the series terms.

    Each term is at most ``exp(lam^2/2) y^k / sqrt(k!)`` with ``y = sqrt(2) x``
    (Indritz); past ``K`` the ratio of consecutive bounds is below
    ``q = y / sqrt(K + 2)`` so the tail is geometric once ``q < 1``.
    """
    if profile.x_n == 0:
        return -math.inf
    y = math.sqrt(2.0) * profile.x_n
    q = y / math.sqrt(K + 2)
    if q >= 1:
        return math.inf
    first = profile.lambda_n ** 2 / 2 + (K + 1) * math.log(y) - 0.5 * math.lgamma(K + 2)
    return first - math.log1p(-q)


class _LogSum:
    """Running log-sum-exp with a moving max shift."""

    def __init__(self):
        self.m = -math.inf
        self.s = 0.0

    def add(self, v: float) -> None:
        if v == -math.inf:
            return
        if v <= self.m:
            self.s += math.exp(v - self.m)
        else:
            self.s = self.s * math.exp(self.m - v) + 1.0
            self.m = v

    @property
    def value(self) -> float:
        return self.m + math.log(self.s) if self.s > 0 else -math.inf


def truncation_order(sym: QuadraticSymbol, n: int, rel_tol: float = 1e-16,
                     kmax: int = 100_000) -> int:
    """Smallest ``K`` whose dropped tail is provably below ``rel_tol`` of the partial sum."""
    profile = NormProfile.of(sym, n)
    if profile.x_n == 0:
        return 1
    acc = _LogSum()
    for k, t in enumerate(_log_terms(profile, kmax)):
        acc.add(t)
        if k >= 1 and log_tail_bound(profile, k) <= math.log(rel_tol) + acc.value:
            return k
    raise ValidationError(f"no truncation order up to {kmax} meets rel_tol={rel_tol}")


def log_closed_form_norm(sym: QuadraticSymbol, n: int, K: int | None = None) -> float:
    profile = NormProfile.of(sym, n)
    if profile.x_n == 0:
        return 0.0
    if K is None:
        K = truncation_order(sym, n)
    if K < 1:
        raise ValidationError("K must be >= 1")
    acc = _LogSum()
    for t in _log_terms(profile, K):
        acc.add(t)
    return acc.value - sym.c1.real * math.log(n)


def closed_form_norm(sym: QuadraticSymbol, n: int, K: int | None = None) -> float:
    """``n^{-Re c1} * sum_{k <= K} |H_k(lam_n)|/k! x_n^k``.

    With ``K=None`` the order is picked by :func:`truncation_order`, making
    the result the full norm to double precision.
    """
    return math.exp(log_closed_form_norm(sym, n, K))


def lower_bound(sym: QuadraticSymbol, n: int) -> float:
    """``n^{-Re c1 + cr^2/(8 cr2) + cr2}``, valid when ``cr <= 4 cr2``."""
    if sym.cr > 4 * sym.cr2:
        raise NotApplicable("the maximising cosine lies outside [-1, 1] when cr > 4*cr2")
    if n < 1:
        raise ValidationError("n must be >= 1")
    return math.exp((sym.threshold - sym.c1.real) * math.log(n))


def classify(sym: QuadraticSymbol) -> OperatorDiagnosis:
    re_c1 = sym.c1.real
    T = sym.threshold
    cr, cr2 = sym.cr, sym.cr2
    head = f"T = cr^2/(8 cr2) + cr2 = {T!r}, Re c1 = {re_c1!r}"
    critical = abs(cr - 4 * cr2) <= EQ_TOL * max(1.0, cr)
    if abs(re_c1 - T) <= EQ_TOL:
        snap = f"{head}; equality Re c1 = T snapped within {EQ_TOL:g}"
        if critical:
            return OperatorDiagnosis(
                Verdict.UNBOUNDED,
                f"{snap}; cr = 4*cr2 so the boundary maximum is not an ordinary point",
                rule="quadratic boundary ordinary-point test")
        return OperatorDiagnosis(
            Verdict.BOUNDED,
            f"{snap}; cr != 4*cr2 so the boundary maximum is an ordinary point",
            rule="quadratic boundary ordinary-point test")
    if re_c1 > T:
        return OperatorDiagnosis(Verdict.COMPACT, f"{head}; Re c1 > T",
                                 rule="quadratic threshold test")
    if cr <= 4 * cr2:
        return OperatorDiagnosis(
            Verdict.UNBOUNDED,
            f"{head}; Re c1 < T with cr <= 4*cr2, so norms grow at least like n^(T - Re c1)",
            rule="quadratic lower-bound necessity")
    if re_c1 >= cr + cr2 - EQ_TOL:
        return OperatorDiagnosis(
            Verdict.BOUNDED,
            f"{head}; cr > 4*cr2 and Re c1 >= cr + cr2 = {cr + cr2!r} "
            "(the half-plane image test would further give compactness)",
            rule="coefficient-sum test")
    # cr > 4 cr2: inf of Re phi over the right half-plane is Re c1 - (cr - cr2)
    edge = cr - cr2
    if re_c1 > edge + EQ_TOL:
        return OperatorDiagnosis(
            Verdict.COMPACT,
            f"{head}; cr > 4*cr2 and inf Re phi = Re c1 - (cr - cr2) = {re_c1 - edge!r} > 0",
            rule="half-plane image test")
    if re_c1 < edge - EQ_TOL:
        return OperatorDiagnosis(
            Verdict.UNBOUNDED,
            f"{head}; cr > 4*cr2 and inf Re phi = Re c1 - (cr - cr2) = {re_c1 - edge!r} < 0",
            rule="half-plane image test")
    return OperatorDiagnosis(
        Verdict.INCONCLUSIVE,
        f"{head}; cr > 4*cr2 and Re c1 = cr - cr2 (image touches the imaginary axis)",
        rule="half-plane image test")


@dataclass(frozen=True)
class OrdinaryPoint:
    theta0: float
    t2_real_part: float
    ordinary: bool


def ordinary_point_test(c1: complex, c2: float, c4: float, tol: float = 1e-9) -> OrdinaryPoint:
    """Inspect the maximum of ``|psi(e^{i theta})|``, ``psi(z) = 2^{-(c1 + c2 z + c4 z^2)}``.

    Requires the maximum modulus to be exactly 1.  Returns the real part of the
    ``t^2`` coefficient of ``log psi(e^{i(theta0 + t)})``; the maximum is an
    ordinary point when it is nonzero.
    """
    if not (c2 > 0 and c4 > 0):
        raise ValidationError("c2 and c4 must be positive")
    if c2 <= 4 * c4:
        cos0 = -c2 / (4 * c4)
        theta0 = math.acos(cos0)
    else:
        cos0 = -1.0
        theta0 = math.pi
    min_re = c2 * cos0 + c4 * (2 * cos0 ** 2 - 1)
    if abs(complex(c1).real + min_re) > tol:
        raise MaxNotOnCircle(
            f"max |psi| on the circle is 2^({-(complex(c1).real + min_re)!r}), not 1")
    t2 = (c2 / 2 * cos0 + 2 * c4 * (2 * cos0 ** 2 - 1)) * LOG2
    return OrdinaryPoint(theta0, t2, abs(t2) > 1e-12)


def indritz_check(k: int, lam: float) -> bool:
    """Check ``|H_k(lam)| <= sqrt(2^k k!) exp(lam^2/2)`` in log form."""
    sign, lh = log_hermite(k, lam)
    bound = 0.5 * (k * LOG2 + math.lgamma(k + 1)) + lam * lam / 2
    return sign == 0 or lh <= bound + 1e-12 * max(1.0, abs(bound))


def hermite_generating_partial(lam: float, x: float, K: int) -> float:
    """``sum_{k <= K} H_k(lam) x^k / k!`` (signed, via the log-scaled values)."""
    total = 0.0
    log_x = math.log(abs(x)) if x != 0 else -math.inf
    sx = -1 if x < 0 else 1
    for k, (sign, lh) in enumerate(log_hermite_sequence(lam, K)):
        if k == 0:
            total += 1.0
        elif sign and log_x != -math.inf:
            total += sign * sx ** k * math.exp(lh - math.lgamma(k + 1) + k * log_x)
    return total
