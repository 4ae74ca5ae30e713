"""Exact rational polynomials, Hermite polynomials and the overlap polynomials P_n.

P_n(z) is built from the Gaussian-weighted overlap integral

    P_n(z) = e^{-z^2/2} / (sqrt(2 pi) (2^n n!)^2)
             * int dxi e^{-2 xi^2} H_n(xi)^2
               [e^{2 z xi} H_n(xi - z)^2 + e^{-2 z xi} H_n(xi + z)^2]

Completing the square moves both terms onto the same centred Gaussian
e^{-2 t^2} with t = xi -+ z/2, and the e^{z^2/2} from the square cancels the
prefactor.  What remains is

    P_n(z) = 2 / (sqrt(2 pi) (2^n n!)^2) int dt e^{-2 t^2} [H_n(t + z/2) H_n(t - z/2)]^2

whose even moments are sqrt(pi/2) (2k-1)!! / 4^k.  The sqrt(pi/2) cancels
against sqrt(2 pi) / 2, so every coefficient stays rational.
"""
from __future__ import annotations

import threading
import warnings
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Union

import numpy as np

Number = Union[int, Fraction]

DEFAULT_N_MAX = 14


class CostWarning(UserWarning):
    """Emitted when P_n is constructed above the configured ceiling."""


class Polynomial:
    """Univariate polynomial with exact rational coefficients, lowest power first."""

    __slots__ = ("_coeffs", "_dd")

    def __init__(self, coefficients: Iterable[Number] = ()):
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self._coeffs = tuple(coeffs)
        self._dd = None

    @classmethod
    def monomial(cls, power: int, coefficient: Number = 1) -> "Polynomial":
        return cls([0] * power + [coefficient])

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        # zero polynomial gets degree -1
        return len(self._coeffs) - 1

    def __len__(self) -> int:
        return len(self._coeffs)

    def __getitem__(self, power: int) -> Fraction:
        if 0 <= power < len(self._coeffs):
            return self._coeffs[power]
        return Fraction(0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs == Polynomial([other])._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self._coeffs]})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self._coeffs):
            if c == 0:
                continue
            terms.append(f"{c}" if k == 0 else f"{c}*x^{k}" if k > 1 else f"{c}*x")
        return " + ".join(terms)

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self), len(other))
        return Polynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self._coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._coeffs or not other._coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self) + len(other) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative exponent")
        result, base = Polynomial([1]), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale_argument(self, factor: Number) -> "Polynomial":
        """Return q(x) = p(factor * x)."""
        factor = Fraction(factor)
        return Polynomial(c * factor**k for k, c in enumerate(self._coeffs))

    def shift_argument(self, shift: Number) -> "Polynomial":
        """Return q(x) = p(x + shift)."""
        shift = Fraction(shift)
        out = [Fraction(0)] * len(self)
        for k, c in enumerate(self._coeffs):
            for i in range(k + 1):
                out[i] += c * comb(k, i) * shift ** (k - i)
        return Polynomial(out)

    def __call__(self, x):
        return poly_eval(self, x)


class EvenPolynomial(Polynomial):
    """A Polynomial whose odd-power coefficients are exactly zero."""

    __slots__ = ()

    def __init__(self, coefficients: Iterable[Number] = ()):
        super().__init__(coefficients)
        if any(c != 0 for c in self._coeffs[1::2]):
            raise ValueError("EvenPolynomial has a nonzero odd-power coefficient")

    @property
    def even_coefficients(self) -> tuple[Fraction, ...]:
        """Coefficients of z^0, z^2, z^4, ..."""
        return self._coeffs[::2]


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _split(a):
    t = 134217729.0 * a
    hi = t - (t - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_coeffs(p: Polynomial) -> tuple[np.ndarray, np.ndarray]:
    # each exact coefficient as an unevaluated sum hi + lo of two doubles
    if p._dd is None:
        hi = [float(c) for c in p.coefficients]
        lo = [float(c - Fraction(h)) for c, h in zip(p.coefficients, hi)]
        p._dd = (np.array(hi), np.array(lo))
    return p._dd


def poly_eval(p: Polynomial, x):
    """Horner evaluation in double-double arithmetic, rounded to float at the end.

    Accepts a float or an array.  Plain double Horner loses up to
    cond(p, x) * 2^-53 and the P_n of moderate n are badly conditioned in the
    monomial basis; the doubled working precision (coefficients included) keeps
    the result at full double accuracy over the range where P_n e^{-z^2/2}
    matters.  Even polynomials are evaluated in x^2, so p(x) == p(-x) bit for bit.
    """
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    hi, lo = _dd_coeffs(p)
    if isinstance(p, EvenPolynomial):
        hi, lo = hi[::2], lo[::2]
        yh, yl = _two_prod(x, x)
    else:
        yh, yl = x, np.zeros_like(x)
    acc_h = np.zeros_like(x)
    acc_l = np.zeros_like(x)
    with np.errstate(over="ignore", invalid="ignore"):
        for ch, cl in zip(hi[::-1], lo[::-1]):
            # acc = acc * y + c, all in double-double
            ph, pl = _two_prod(acc_h, yh)
            pl = pl + (acc_h * yl + acc_l * yh)
            sh, sl = _two_sum(ph, ch)
            sl = sl + (pl + cl)
            acc_h = sh + sl
            acc_l = sl - (acc_h - sh)
        out = acc_h + acc_l
        # the splitting trick overflows near the top of the float range
        bad = ~np.isfinite(out)
        if bad.any():
            out = np.where(bad, np.polynomial.polynomial.polyval(yh, hi), out)
    return float(out) if scalar else out


@lru_cache(maxsize=None)
def hermite(n: int) -> Polynomial:
    """Physicists' Hermite polynomial H_n."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    x2 = Polynomial([0, 2])
    prev, cur = Polynomial([1]), x2
    if n == 0:
        return prev
    for k in range(1, n):
        prev, cur = cur, x2 * cur - 2 * k * prev
    return cur


def gaussian_moment(k: int) -> Fraction:
    """int t^k e^{-2 t^2} dt divided by sqrt(pi/2)."""
    if k % 2:
        return Fraction(0)
    j = k // 2
    # (2j-1)!! / 4^j
    dfact = 1
    for i in range(1, 2 * j, 2):
        dfact *= i
    return Fraction(dfact, 4**j)


def _shifted_bivariate(p: Polynomial, sign: int) -> dict[tuple[int, int], Fraction]:
    """Coefficients of p(t + sign*z/2) as {(power of t, power of z): coeff}."""
    out: dict[tuple[int, int], Fraction] = {}
    half = Fraction(sign, 2)
    for k, c in enumerate(p.coefficients):
        if c == 0:
            continue
        for i in range(k + 1):
            key = (i, k - i)
            out[key] = out.get(key, 0) + c * comb(k, i) * half ** (k - i)
    return out


def _bivariate_mul(a, b):
    out: dict[tuple[int, int], Fraction] = {}
    for (i1, l1), c1 in a.items():
        for (i2, l2), c2 in b.items():
            key = (i1 + i2, l1 + l2)
            out[key] = out.get(key, 0) + c1 * c2
    return {k: v for k, v in out.items() if v != 0}


_p_lock = threading.Lock()
_p_cache: dict[int, EvenPolynomial] = {}


def p_poly(n: int, n_max: int = DEFAULT_N_MAX) -> EvenPolynomial:
    """The overlap polynomial P_n, degree 4n, exact rational coefficients.

    Results are cached.  Asking for n above ``n_max`` still works but emits a
    CostWarning since construction cost grows steeply with n.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    with _p_lock:
        cached = _p_cache.get(n)
    if cached is not None:
        return cached
    if n > n_max:
        warnings.warn(
            f"constructing P_{n} above the ceiling n_max={n_max}; cost grows super-linearly",
            CostWarning,
            stacklevel=2,
        )
    h = hermite(n)
    prod = _bivariate_mul(_shifted_bivariate(h, +1), _shifted_bivariate(h, -1))
    # Only the t-moments of prod^2 are needed; integrate while squaring.
    z_coeffs = [Fraction(0)] * (4 * n + 1)
    items = list(prod.items())
    for (i1, l1), c1 in items:
        for (i2, l2), c2 in items:
            if (i1 + i2) % 2:
                continue
            z_coeffs[l1 + l2] += c1 * c2 * gaussian_moment(i1 + i2)
    norm = (2**n * factorial(n)) ** 2
    result = EvenPolynomial(c / norm for c in z_coeffs)
    with _p_lock:
        _p_cache.setdefault(n, result)
    return result


def dump_coefficients(p: Polynomial) -> str:
    """Line-oriented dump: ``power numerator denominator`` per nonzero term."""
    lines = [f"{k} {c.numerator} {c.denominator}" for k, c in enumerate(p.coefficients) if c != 0]
    return "\n".join(lines) + "\n"
