"""Wiener algebras on finite tori: sparse polynomials and composition symbols.

A symbol ``phi = (phi_1, ..., phi_m)`` of polynomials in ``k`` variables acts
on polynomials in ``m`` variables by ``z^alpha -> phi^alpha``.  For monomial
symbols ``phi_i = eps_i z^{row_i(A)}`` this is ``eps^alpha z^{A^T alpha}``, so
isometry reduces to injectivity of the transpose on exponent vectors.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np
from scipy.signal import lfilter

from . import _linalg
from .errors import DimensionMismatch, SupNormExceedsOne, ValidationError

MultiIndex = tuple[int, ...]
_COMPONENT_MAX = 2**31
SIGN_TOL = 1e-12
COEFF_TOL = 1e-12
SUP_TOL = 1e-9


def _multi_index(alpha: Iterable[int], dim: int) -> MultiIndex:
    out = tuple(int(a) for a in alpha)
    if len(out) != dim:
        raise DimensionMismatch(f"multi-index {out} has dimension {len(out)}, expected {dim}")
    if any(a < 0 or a >= _COMPONENT_MAX for a in out):
        raise ValidationError(f"multi-index {out} has a component outside [0, 2^31)")
    return out


class TorusPolynomial:
    """Sparse ``sum a_alpha z^alpha`` in ``dim`` variables, keys in lexicographic order."""

    __slots__ = ("_dim", "_terms")

    def __init__(self, dim: int, terms: Mapping[Sequence[int], complex] | Iterable = ()):
        if int(dim) != dim or dim < 0:
            raise ValidationError("dimension must be a non-negative integer")
        self._dim = int(dim)
        items = terms.items() if isinstance(terms, Mapping) else terms
        table: dict[MultiIndex, complex] = {}
        for alpha, a in items:
            key = _multi_index(alpha, self._dim)
            table[key] = table.get(key, 0j) + complex(a)
        self._terms = {k: table[k] for k in sorted(table) if table[k] != 0}

    @classmethod
    def monomial(cls, alpha: Sequence[int], coeff: complex = 1.0) -> "TorusPolynomial":
        return cls(len(alpha), {tuple(alpha): coeff})

    @classmethod
    def variable(cls, j: int, dim: int, coeff: complex = 1.0) -> "TorusPolynomial":
        alpha = [0] * dim
        alpha[j] = 1
        return cls(dim, {tuple(alpha): coeff})

    @classmethod
    def one(cls, dim: int) -> "TorusPolynomial":
        return cls(dim, {(0,) * dim: 1.0})

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def terms(self) -> Mapping[MultiIndex, complex]:
        return MappingProxyType(self._terms)

    @property
    def spectrum(self) -> frozenset[MultiIndex]:
        return frozenset(self._terms)

    def __iter__(self) -> Iterator[tuple[MultiIndex, complex]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __getitem__(self, alpha: Sequence[int]) -> complex:
        return self._terms.get(tuple(alpha), 0j)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TorusPolynomial):
            return NotImplemented
        return self._dim == other._dim and self._terms == other._terms

    def __repr__(self) -> str:
        return f"TorusPolynomial(dim={self._dim}, {dict(self._terms)})"

    def __add__(self, other: "TorusPolynomial") -> "TorusPolynomial":
        if other.dim != self._dim:
            raise DimensionMismatch("cannot add polynomials of different dimension")
        out = dict(self._terms)
        for k, a in other:
            out[k] = out.get(k, 0j) + a
        return TorusPolynomial(self._dim, out)

    def scale(self, c: complex) -> "TorusPolynomial":
        return TorusPolynomial(self._dim, {k: c * a for k, a in self._terms.items()})

    def norm(self) -> float:
        return math.fsum(abs(a) for a in self._terms.values())

    def degree(self) -> int:
        return max((sum(k) for k in self._terms), default=0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __call__(self, z: Sequence[complex]) -> complex:
        total = 0j
        for alpha, a in self._terms.items():
            term = a
            for zj, e in zip(z, alpha):
                if e:
                    term *= zj ** e
            total += term
        return total

    def sup_estimate(self, samples: int = 4096, seed: int = 0) -> float:
        """Max of ``|f|`` over a grid (dim 1) or random points (dim > 1) of the torus."""
        if not self._terms:
            return 0.0
        keys = np.array(list(self._terms), dtype=float).reshape(len(self._terms), self._dim)
        coef = np.array(list(self._terms.values()), dtype=complex)
        if self._dim == 0:
            return abs(complex(coef.sum()))
        if self._dim == 1:
            n = max(samples, 64 * (self.degree() + 1))
            theta = (2 * np.pi / n) * np.arange(n)[:, None]
        else:
            rng = np.random.default_rng(seed)
            theta = rng.uniform(0.0, 2 * np.pi, size=(samples, self._dim))
            theta = np.vstack([np.zeros((1, self._dim)), theta])
        best = 0.0
        for start in range(0, len(theta), 8192):
            vals = np.exp(1j * (theta[start:start + 8192] @ keys.T)) @ coef
            best = max(best, float(np.abs(vals).max()))
        return best

    def to_json(self) -> dict:
        return {"dim": self._dim,
                "terms": [[list(k), a.real, a.imag] for k, a in self._terms.items()]}

    @classmethod
    def from_json(cls, data: dict | list, dim: int | None = None) -> "TorusPolynomial":
        if isinstance(data, list):
            data = {"terms": data}
        try:
            triples = [(tuple(int(x) for x in k), complex(float(re), float(im)))
                       for k, re, im in data["terms"]]
            d = data.get("dim", dim)
            if d is None:
                d = len(triples[0][0]) if triples else 0
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise ValidationError(f"malformed torus polynomial: {exc}") from exc
        return cls(int(d), triples)


def tpoly_mul(f: TorusPolynomial, g: TorusPolynomial,
              degree_cap: int | None = None) -> TorusPolynomial:
    """Product, dropping keys of total degree above ``degree_cap``."""
    if f.dim != g.dim:
        raise DimensionMismatch(f"dimensions {f.dim} and {g.dim} differ")
    out: dict[MultiIndex, complex] = {}
    for a, x in f:
        da = sum(a)
        for b, y in g:
            if degree_cap is not None and da + sum(b) > degree_cap:
                continue
            key = tuple(i + j for i, j in zip(a, b))
            out[key] = out.get(key, 0j) + x * y
    return TorusPolynomial(f.dim, out)


def tpoly_pow(f: TorusPolynomial, n: int, degree_cap: int | None = None) -> TorusPolynomial:
    result = TorusPolynomial.one(f.dim)
    base = f
    while n:
        if n & 1:
            result = tpoly_mul(result, base, degree_cap)
        n >>= 1
        if n:
            base = tpoly_mul(base, base, degree_cap)
    return result


def multi_indices(dim: int, degree: int) -> Iterator[MultiIndex]:
    """All ``alpha`` with ``|alpha| = degree``, larger leading entries first."""
    if dim == 0:
        if degree == 0:
            yield ()
        return
    for head in range(degree, -1, -1):
        for tail in multi_indices(dim - 1, degree - head):
            yield (head,) + tail


def multi_indices_upto(dim: int, degree: int) -> Iterator[MultiIndex]:
    for d in range(degree + 1):
        yield from multi_indices(dim, d)


class MonomialSymbol:
    """``phi_i(z) = eps_i z^{A[i]}``: ``m`` rows (outputs) over ``k`` columns (variables)."""

    __slots__ = ("_matrix", "_signs")

    def __init__(self, matrix: Sequence[Sequence[int]], signs: Sequence[complex] | None = None):
        rows = [list(r) for r in matrix]
        if not rows:
            raise ValidationError("matrix must have at least one row")
        k = len(rows[0])
        if any(len(r) != k for r in rows):
            raise DimensionMismatch("matrix rows have different lengths")
        for r in rows:
            for a in r:
                if isinstance(a, bool) or int(a) != a or a < 0:
                    raise ValidationError(f"matrix entries must be non-negative integers, got {a!r}")
        self._matrix = tuple(tuple(int(a) for a in r) for r in rows)
        signs = [1.0] * len(rows) if signs is None else [complex(e) for e in signs]
        if len(signs) != len(rows):
            raise DimensionMismatch("need one sign per row")
        for e in signs:
            if abs(abs(e) - 1.0) > SIGN_TOL:
                raise ValidationError(f"sign {e} is not unimodular")
        self._signs = tuple(complex(e) for e in signs)

    @property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        return self._matrix

    @property
    def signs(self) -> tuple[complex, ...]:
        return self._signs

    @property
    def dim_out(self) -> int:
        return len(self._matrix)

    @property
    def dim_in(self) -> int:
        return len(self._matrix[0])

    @property
    def is_square(self) -> bool:
        return self.dim_in == self.dim_out

    def transpose(self) -> list[list[int]]:
        return [list(col) for col in zip(*self._matrix)]

    def components(self) -> list[TorusPolynomial]:
        return [TorusPolynomial(self.dim_in, {row: e}) for row, e in zip(self._matrix, self._signs)]

    def __repr__(self) -> str:
        return f"MonomialSymbol({[list(r) for r in self._matrix]}, signs={list(self._signs)})"

    def to_json(self) -> dict:
        return {"matrix": [list(r) for r in self._matrix],
                "signs": [[e.real, e.imag] for e in self._signs]}

    @classmethod
    def from_json(cls, data: dict) -> "MonomialSymbol":
        try:
            matrix = data["matrix"]
            signs = data.get("signs")
            if signs is not None:
                signs = [complex(float(re), float(im)) for re, im in signs]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed monomial symbol: {exc}") from exc
        return cls(matrix, signs)


def astar_apply(sym: MonomialSymbol, alpha: Sequence[int]) -> MultiIndex:
    """``gamma_j = sum_i a_ij alpha_i``."""
    alpha = _multi_index(alpha, sym.dim_out)
    return tuple(sum(row[j] * a for row, a in zip(sym.matrix, alpha)) for j in range(sym.dim_in))


def monomial_compose(sym: MonomialSymbol, f: TorusPolynomial) -> TorusPolynomial:
    """``sum a_alpha z^alpha -> sum a_alpha eps^alpha z^{A^T alpha}``."""
    if f.dim != sym.dim_out:
        raise DimensionMismatch(f"polynomial has dimension {f.dim}, symbol expects {sym.dim_out}")
    out: dict[MultiIndex, complex] = {}
    for alpha, a in f:
        c = a
        for e, k in zip(sym.signs, alpha):
            if k:
                c *= e ** k
        key = astar_apply(sym, alpha)
        out[key] = out.get(key, 0j) + c
    return TorusPolynomial(sym.dim_in, out)


@dataclass(frozen=True)
class MonomialIsometryReport:
    is_isometry: bool
    witness: tuple[MultiIndex, MultiIndex] | None
    determinant: int | None
    rank: int
    search_degree: int
    witness_source: str | None = None

    def to_json(self) -> dict:
        return {
            "is_isometry": self.is_isometry,
            "witness": None if self.witness is None else [list(a) for a in self.witness],
            "witness_source": self.witness_source,
            "determinant": self.determinant,
            "rank": self.rank,
            "search_degree": self.search_degree,
            "rule": "injectivity of the transpose (nonzero determinant for square matrices)",
        }


def _collision_search(image, dim: int, degree: int):
    seen: dict = {}
    for alpha in multi_indices_upto(dim, degree):
        key = image(alpha)
        if key in seen:
            return seen[key], alpha
        seen[key] = alpha
    return None


def _split(v: Sequence[int]) -> tuple[MultiIndex, MultiIndex]:
    return tuple(max(x, 0) for x in v), tuple(max(-x, 0) for x in v)


def isometry_check_monomial(sym: MonomialSymbol, search_degree: int) -> MonomialIsometryReport:
    """Exact injectivity test of ``A^T`` on ``N^m`` plus a brute-force collision search.

    The transpose is injective on ``N^m`` exactly when it has full column rank
    ``m``: any rational kernel vector ``v`` splits as ``v+ - v-`` into a
    colliding pair.  That split is used as the witness when the search up to
    ``search_degree`` finds nothing.
    """
    if search_degree < 0:
        raise ValidationError("search_degree must be non-negative")
    at = sym.transpose()
    rank = _linalg.rank(at)
    det = _linalg.det(sym.matrix) if sym.is_square else None
    injective = rank == sym.dim_out
    if det is not None:
        assert injective == (det != 0)
    witness = _collision_search(lambda a: astar_apply(sym, a), sym.dim_out, search_degree)
    source = "search" if witness else None
    if witness is None and not injective:
        v = _linalg.integer_kernel_vector(at)
        witness = _split(v)
        source = "kernel"
    return MonomialIsometryReport(injective, witness, det, rank, search_degree, source)


def automorphism_check(sym: MonomialSymbol) -> bool:
    """Permutation matrix with unimodular signs."""
    if not sym.is_square:
        return False
    m = sym.matrix
    if any(sorted(r) != [0] * (len(r) - 1) + [1] for r in m):
        return False
    cols = [sum(m[i][j] for i in range(len(m))) for j in range(len(m))]
    return all(c == 1 for c in cols) and all(abs(abs(e) - 1) <= SIGN_TOL for e in sym.signs)


class GeneralSymbol:
    """``phi = (phi_1, ..., phi_m)``, each a polynomial in ``dim_in`` variables.

    Components must map the torus into the closed disc; this is checked on a
    sample of points, which can only miss violations, never invent them.
    """

    __slots__ = ("_components",)

    def __init__(self, components: Sequence[TorusPolynomial], check_sup: bool = True):
        comps = list(components)
        if not comps:
            raise ValidationError("a symbol needs at least one component")
        k = comps[0].dim
        if any(c.dim != k for c in comps):
            raise DimensionMismatch("components have different dimensions")
        if check_sup:
            for i, c in enumerate(comps):
                s = c.sup_estimate()
                if s > 1 + SUP_TOL:
                    raise SupNormExceedsOne(f"component {i} reaches modulus {s!r} on the torus")
        self._components = tuple(comps)

    @property
    def components(self) -> tuple[TorusPolynomial, ...]:
        return self._components

    @property
    def dim_in(self) -> int:
        return self._components[0].dim

    @property
    def dim_out(self) -> int:
        return len(self._components)

    @classmethod
    def from_monomial(cls, sym: MonomialSymbol) -> "GeneralSymbol":
        return cls(sym.components(), check_sup=False)

    def to_json(self) -> dict:
        return {"components": [c.to_json() for c in self._components]}

    @classmethod
    def from_json(cls, data: dict) -> "GeneralSymbol":
        try:
            comps = [TorusPolynomial.from_json(c) for c in data["components"]]
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed general symbol: {exc}") from exc
        return cls(comps)


def symbol_power(sym: GeneralSymbol, alpha: Sequence[int]) -> TorusPolynomial:
    """``phi^alpha = prod phi_i^{alpha_i}``."""
    alpha = _multi_index(alpha, sym.dim_out)
    out = TorusPolynomial.one(sym.dim_in)
    for comp, e in zip(sym.components, alpha):
        if e:
            out = tpoly_mul(out, tpoly_pow(comp, e))
    return out


def general_compose(sym: GeneralSymbol, f: TorusPolynomial) -> TorusPolynomial:
    if f.dim != sym.dim_out:
        raise DimensionMismatch(f"polynomial has dimension {f.dim}, symbol expects {sym.dim_out}")
    out = TorusPolynomial(sym.dim_in)
    for alpha, a in f:
        out = out + symbol_power(sym, alpha).scale(a)
    return out


def sumset_spectrum(spectra: Sequence[frozenset[MultiIndex]], alpha: Sequence[int],
                    dim: int) -> frozenset[MultiIndex]:
    """``alpha_1 * S_1 + ... + alpha_m * S_m`` as exact integer Minkowski sums."""
    acc: set[MultiIndex] = {(0,) * dim}
    for s, e in zip(spectra, alpha):
        for _ in range(e):
            acc = {tuple(x + y for x, y in zip(a, b)) for a in acc for b in s}
    return frozenset(acc)


def _common_sign(comp: TorusPolynomial) -> complex | None:
    """``eps`` with ``comp / eps`` having non-negative coefficients summing to 1, if any."""
    if not len(comp):
        return None
    if abs(math.fsum(abs(a) for _, a in comp) - 1.0) > COEFF_TOL:
        return None
    lead = next(iter(comp))[1]
    eps = lead / abs(lead)
    for _, a in comp:
        if abs(a / eps - abs(a)) > COEFF_TOL:
            return None
    return eps


def _relation_witness(spectra: Sequence[frozenset[MultiIndex]], dim: int,
                      max_tries: int = 10_000) -> tuple[MultiIndex, MultiIndex] | None:
    """Colliding pair from an integer relation among spectrum points.

    For a component ``i`` with two spectrum points ``s != t`` and a chosen
    point ``t_j`` of every component, a nonzero integer vector ``(lam, mu)``
    with ``lam (s - t) + sum_j mu_j t_j = 0`` has ``mu != 0``; splitting
    ``mu`` into positive and negative parts and padding coordinate ``i`` by
    ``max(lam+, lam-)`` gives ``alpha != alpha'`` with overlapping spectra.
    """
    m = len(spectra)
    choices = [sorted(s) for s in spectra]
    tries = 0
    for i, pts in enumerate(choices):
        if len(pts) < 2:
            continue
        for s, t in itertools.combinations(pts, 2):
            others = [choices[j] if j != i else [t] for j in range(m)]
            for picks in itertools.product(*others):
                tries += 1
                if tries > max_tries:
                    return None
                cols = [[a - b for a, b in zip(s, t)]] + [list(p) for p in picks]
                matrix = [[col[r] for col in cols] for r in range(dim)]
                v = _linalg.integer_kernel_vector(matrix)
                if v is None:
                    continue
                lam, mu = v[0], v[1:]
                a, a2 = (list(x) for x in _split(mu))
                pad = max(lam, -lam, 0)
                a[i] += pad
                a2[i] += pad
                alpha, alpha2 = tuple(a), tuple(a2)
                if alpha != alpha2 and (sumset_spectrum(spectra, alpha, dim)
                                        & sumset_spectrum(spectra, alpha2, dim)):
                    return alpha, alpha2
    return None


@dataclass(frozen=True)
class GeneralIsometryReport:
    conditions_a: bool
    conditions_b: bool
    witness: tuple[MultiIndex, MultiIndex] | None
    degree_bound: int
    witness_source: str | None = None
    signs: list[complex] | None = field(default=None)

    @property
    def is_isometry(self) -> bool:
        return self.conditions_a and self.conditions_b

    def to_json(self) -> dict:
        return {
            "is_isometry": self.is_isometry,
            "conditions_a": self.conditions_a,
            "conditions_b": self.conditions_b,
            "witness": None if self.witness is None else [list(a) for a in self.witness],
            "witness_source": self.witness_source,
            "certified_degree": self.degree_bound,
            "rule": "unimodular nonnegative components with pairwise disjoint power spectra",
        }


def isometry_check_general(sym: GeneralSymbol, degree_bound: int) -> GeneralIsometryReport:
    """Check that each ``phi_i = eps_i F_i`` with ``F_i >= 0`` of mass 1, and that
    the spectra of ``phi^alpha`` are pairwise disjoint for ``|alpha| <= degree_bound``.

    Spectra are exact integer sumsets.  When the first condition holds they
    are the true spectra (no cancellation between non-negative terms).
    Disjointness is certified only up to ``degree_bound``.
    """
    if degree_bound < 0:
        raise ValidationError("degree_bound must be non-negative")
    signs = [_common_sign(c) for c in sym.components]
    cond_a = all(e is not None for e in signs)
    spectra = [c.spectrum for c in sym.components]
    owner: dict[MultiIndex, MultiIndex] = {}
    witness = None
    for alpha in multi_indices_upto(sym.dim_out, degree_bound):
        sp = sumset_spectrum(spectra, alpha, sym.dim_in)
        hits = [owner[b] for b in sp if b in owner]
        if hits:
            witness = (min(hits, key=lambda a: (sum(a), tuple(-x for x in a))), alpha)
            break
        for b in sp:
            owner[b] = alpha
    source = "search" if witness else None
    if witness is None and any(len(s) > 1 for s in spectra):
        witness = _relation_witness(spectra, sym.dim_in)
        source = "integer relation" if witness else None
    return GeneralIsometryReport(cond_a, witness is None, witness, degree_bound, source,
                                 signs if cond_a else None)


def blaschke_coefficients(a: complex, length: int) -> np.ndarray:
    """Taylor coefficients of ``(z - a) / (1 - conj(a) z)``."""
    a = complex(a)
    c = np.empty(length, dtype=complex)
    if length:
        c[0] = -a
    if length > 1:
        c[1:] = (1 - abs(a) ** 2) * np.conj(a) ** np.arange(length - 1)
    return c


def blaschke_tail_bound(a: complex, n: int, length: int) -> float:
    """Bound on ``sum_{j >= length} |coeff_j(phi^n)|`` from Cauchy estimates.

    On ``|z| = R`` with ``1 < R < 1/|a|``, ``|phi| <= (R + |a|)/(1 - |a| R)``;
    the best ``R`` on a grid is used.
    """
    r = abs(complex(a))
    if r == 0:
        return 0.0 if length > n else math.inf
    hi = 1.0 / r
    best = math.inf
    for R in np.linspace(1.0, hi, 2002)[1:-1]:
        M = (R + r) / (1 - r * R)
        log_b = n * math.log(M) - length * math.log(R) - math.log1p(-1.0 / R)
        best = min(best, log_b)
    return math.exp(best) if best < 700 else math.inf


def blaschke_taylor_len(a: complex, n_max: int, rel_tol: float = 1e-6) -> int:
    """Smallest power of two ``L`` whose Cauchy tail for ``phi^{n_max}`` is below ``rel_tol``.

    Norms are at least the sup norm, 1, so an absolute bound suffices.
    """
    if abs(complex(a)) == 0:
        return n_max + 1
    length = 16
    while blaschke_tail_bound(a, n_max, length) >= rel_tol:
        length *= 2
        if length > 1 << 26:
            raise ValidationError("Blaschke parameter too close to the circle")
    return length


def blaschke_power_norms(a: complex, n_max: int, taylor_len: int | None = None,
                         rel_tol: float = 1e-6) -> list[tuple[int, float]]:
    """``(n, ||phi^n||)`` for ``n = 1..n_max`` with ``phi(z) = (z - a)/(1 - conj(a) z)``.

    Each power is the previous one filtered by ``phi`` (numerator ``-a + z``,
    denominator ``1 - conj(a) z``), which is the exact truncated product.
    """
    a = complex(a)
    if not abs(a) < 1:
        raise ValidationError("need |a| < 1")
    if n_max < 1:
        raise ValidationError("n_max must be >= 1")
    if taylor_len is None:
        taylor_len = blaschke_taylor_len(a, n_max, rel_tol)
    elif abs(a) == 0:
        if taylor_len <= n_max:
            raise ValidationError(f"taylor_len={taylor_len} drops z^{n_max}")
    elif blaschke_tail_bound(a, n_max, taylor_len) >= rel_tol:
        raise ValidationError(f"taylor_len={taylor_len} leaves a tail above {rel_tol:g}")
    c = np.zeros(taylor_len, dtype=complex)
    c[0] = 1.0
    b, den = [-a, 1.0], [1.0, -a.conjugate()]
    out = []
    for n in range(1, n_max + 1):
        c = lfilter(b, den, c)
        out.append((n, math.fsum(np.abs(c))))
    return out


def loglog_slope(pairs: Sequence[tuple[int, float]], lo: int, hi: int) -> float:
    pts = [(math.log(n), math.log(v)) for n, v in pairs if lo <= n <= hi]
    x, y = np.array(pts).T
    return float(np.polyfit(x, y, 1)[0])


def newman_boundedness_probe(p: TorusPolynomial, n_max: int) -> list[tuple[int, float]]:
    """``(n, ||p^n||)`` for ``n = 1..n_max``; exact polynomial powers."""
    if p.dim != 1:
        raise DimensionMismatch("Newman probe needs a one-variable polynomial")
    if n_max < 1:
        raise ValidationError("n_max must be >= 1")
    s = p.sup_estimate()
    if s > 1 + SUP_TOL:
        raise SupNormExceedsOne(f"sup |p| on the circle is about {s!r}")
    base = np.zeros(p.degree() + 1, dtype=complex)
    for (d,), a in p:
        base[d] = a
    power = np.ones(1, dtype=complex)
    out = []
    for n in range(1, n_max + 1):
        power = np.convolve(power, base)
        out.append((n, math.fsum(np.abs(power))))
    return out


def log_on_circle_t2(p: TorusPolynomial, theta0: float) -> complex:
    """``t^2`` Taylor coefficient of ``log p(e^{i(theta0 + t)})`` (exact derivatives)."""
    if p.dim != 1:
        raise DimensionMismatch("needs a one-variable polynomial")
    w = cmath.exp(1j * theta0)
    f0 = f1 = f2 = 0j
    for (d,), a in p:
        v = a * w ** d
        f0 += v
        f1 += 1j * d * v
        f2 += -(d * d) * v
    # (log f)'' / 2 = (f''/f - (f'/f)^2) / 2
    return (f2 / f0 - (f1 / f0) ** 2) / 2
