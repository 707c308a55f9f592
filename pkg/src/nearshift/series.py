"""Truncated power-series arithmetic and weighted coefficient inner products.

A series of degree D stores the Taylor coefficients (a_0, ..., a_D) of an
analytic function on the unit disc; everything above degree D is discarded.
Truncation degrees are always explicit: each operation states the degree of
its output, so nothing silently pretends to be an infinite expansion.

Coefficients are IEEE-754 double pairs.  Values are immutable and all
operations are pure, so everything here is safe for concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, NumericError


def _as_coeffs(values) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidInputError("coefficients must be a nonempty 1-d sequence")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise InvalidInputError("coefficients must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Degree-D Taylor expansion, coefficients a_0 ... a_D."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _as_coeffs(self.coeffs))

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __eq__(self, other) -> bool:
        """Exact value equality: pad the shorter with zeros, compare exactly."""
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = max(self.coeffs.size, other.coeffs.size)
        a = np.zeros(n, dtype=np.complex128)
        b = np.zeros(n, dtype=np.complex128)
        a[: self.coeffs.size] = self.coeffs
        b[: other.coeffs.size] = other.coeffs
        return bool(np.all(a == b))

    __hash__ = None

    def approx_eq(self, other: "TruncatedSeries", tol: float) -> bool:
        """Approximate comparison with an explicit absolute tolerance."""
        n = max(self.coeffs.size, other.coeffs.size)
        a = np.zeros(n, dtype=np.complex128)
        b = np.zeros(n, dtype=np.complex128)
        a[: self.coeffs.size] = self.coeffs
        b[: other.coeffs.size] = other.coeffs
        return bool(np.max(np.abs(a - b)) <= tol)

    def truncate(self, degree: int) -> "TruncatedSeries":
        """Cut or zero-pad to the requested degree."""
        if degree < 0:
            raise InvalidInputError("degree must be nonnegative")
        out = np.zeros(degree + 1, dtype=np.complex128)
        n = min(degree + 1, self.coeffs.size)
        out[:n] = self.coeffs[:n]
        return TruncatedSeries(out)

    def shift(self, k: int, out_degree: int) -> "TruncatedSeries":
        """Multiply by z**k, truncated at out_degree."""
        out = np.zeros(out_degree + 1, dtype=np.complex128)
        n = min(self.coeffs.size, out_degree + 1 - k)
        if n > 0:
            out[k : k + n] = self.coeffs[:n]
        return TruncatedSeries(out)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = max(self.coeffs.size, other.coeffs.size)
        out = np.zeros(n, dtype=np.complex128)
        out[: self.coeffs.size] += self.coeffs
        out[: other.coeffs.size] += other.coeffs
        return TruncatedSeries(out)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = max(self.coeffs.size, other.coeffs.size)
        out = np.zeros(n, dtype=np.complex128)
        out[: self.coeffs.size] += self.coeffs
        out[: other.coeffs.size] -= other.coeffs
        return TruncatedSeries(out)

    def scale(self, c: complex) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs * c)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TruncatedSeries":
        try:
            degree = int(data["degree"])
            pairs = data["coeffs"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"malformed series JSON: {exc}") from exc
        if len(pairs) != degree + 1:
            raise InvalidInputError(
                f"series JSON claims degree {degree} but has {len(pairs)} coefficients"
            )
        return cls([complex(p[0], p[1]) for p in pairs])


def zero(degree: int) -> TruncatedSeries:
    return TruncatedSeries(np.zeros(degree + 1, dtype=np.complex128))


def one(degree: int) -> TruncatedSeries:
    out = np.zeros(degree + 1, dtype=np.complex128)
    out[0] = 1.0
    return TruncatedSeries(out)


def monomial(k: int, degree: int, coeff: complex = 1.0) -> TruncatedSeries:
    """coeff * z**k at the given truncation degree."""
    if not 0 <= k <= degree:
        raise InvalidInputError(f"monomial power {k} outside degree {degree}")
    out = np.zeros(degree + 1, dtype=np.complex128)
    out[k] = coeff
    return TruncatedSeries(out)


def series_eval(f: TruncatedSeries, z: complex) -> complex:
    """Evaluate f at z by Horner's scheme.  Any finite z is accepted."""
    z = complex(z)
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise InvalidInputError("evaluation point must be finite")
    acc = 0.0 + 0.0j
    for c in f.coeffs[::-1]:
        acc = acc * z + c
    return acc


def series_mul(f: TruncatedSeries, g: TruncatedSeries, out_degree: int) -> TruncatedSeries:
    """Cauchy product truncated at out_degree."""
    if out_degree < 0:
        raise InvalidInputError("out_degree must be nonnegative")
    full = np.convolve(f.coeffs, g.coeffs)
    out = np.zeros(out_degree + 1, dtype=np.complex128)
    n = min(full.size, out_degree + 1)
    out[:n] = full[:n]
    return TruncatedSeries(out)


def series_div(num: TruncatedSeries, den: TruncatedSeries, out_degree: int) -> TruncatedSeries:
    """Formal quotient num/den truncated at out_degree.

    Requires a nonzero constant term in the denominator; coefficients come
    from the standard forward recursion.
    """
    if out_degree < 0:
        raise InvalidInputError("out_degree must be nonnegative")
    d0 = den.coeffs[0]
    if abs(d0) < 1e-300:
        raise NumericError("series division by a series with vanishing constant term")
    n = out_degree + 1
    dc = np.zeros(n, dtype=np.complex128)
    dc[: min(n, den.coeffs.size)] = den.coeffs[: min(n, den.coeffs.size)]
    nc = np.zeros(n, dtype=np.complex128)
    nc[: min(n, num.coeffs.size)] = num.coeffs[: min(n, num.coeffs.size)]
    q = np.zeros(n, dtype=np.complex128)
    for k in range(n):
        acc = nc[k]
        if k:
            acc = acc - np.dot(q[:k], dc[k:0:-1])
        q[k] = acc / d0
    return TruncatedSeries(q)


def alpha_weights(length: int, alpha: float) -> np.ndarray:
    """The diagonal weights (k+1)**alpha for k = 0 .. length-1."""
    return (np.arange(1, length + 1, dtype=np.float64)) ** alpha


def norm_alpha(f: TruncatedSeries, alpha: float) -> float:
    """Weighted coefficient norm (sum |a_k|^2 (k+1)^alpha)^(1/2)."""
    w = alpha_weights(f.coeffs.size, alpha)
    return float(np.sqrt(np.sum(w * np.abs(f.coeffs) ** 2)))


def dilate(f: TruncatedSeries, s: float) -> TruncatedSeries:
    """Coordinate form of the dilation f(z) -> f(sz): coefficient k scales by s**k.

    s > 1 is accepted so the dilation can be undone; s <= 0 is invalid.
    """
    s = float(s)
    if not np.isfinite(s) or s <= 0.0:
        raise InvalidInputError("dilation parameter must be positive")
    powers = s ** np.arange(f.coeffs.size, dtype=np.float64)
    return TruncatedSeries(f.coeffs * powers)


def inner_weighted(f: TruncatedSeries, g: TruncatedSeries, weights) -> complex:
    """Weighted coefficient pairing sum w_k a_k conj(b_k).

    Conjugate-linear in the second argument.  The weight list must cover
    max(deg f, deg g) + 1 entries and every weight must be positive.
    """
    w = np.asarray(weights, dtype=np.float64)
    n = max(f.coeffs.size, g.coeffs.size)
    if w.ndim != 1 or w.size < n:
        raise InvalidInputError(f"need at least {n} weights, got {w.size}")
    if np.any(w <= 0.0) or not np.all(np.isfinite(w)):
        raise InvalidInputError("weights must be positive and finite")
    a = np.zeros(n, dtype=np.complex128)
    b = np.zeros(n, dtype=np.complex128)
    a[: f.coeffs.size] = f.coeffs
    b[: g.coeffs.size] = g.coeffs
    return complex(np.sum(w[:n] * a * np.conj(b)))


def h2_inner(f: TruncatedSeries, g: TruncatedSeries) -> complex:
    """Plain coefficient pairing (the alpha = 0 inner product)."""
    n = max(f.coeffs.size, g.coeffs.size)
    return inner_weighted(f, g, np.ones(n))


def h2_norm(f: TruncatedSeries) -> float:
    return float(np.linalg.norm(f.coeffs))


@dataclass(frozen=True, eq=False)
class VectorSeries:
    """Tuple of l >= 1 scalar series of one common degree (a C^l-valued expansion)."""

    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if len(comps) < 1:
            raise InvalidInputError("vector series needs at least one component")
        if any(not isinstance(c, TruncatedSeries) for c in comps):
            raise InvalidInputError("vector series components must be TruncatedSeries")
        if len({c.degree for c in comps}) != 1:
            raise InvalidInputError("vector series components must share one degree")
        object.__setattr__(self, "components", comps)

    @property
    def width(self) -> int:
        return len(self.components)

    @property
    def degree(self) -> int:
        return self.components[0].degree

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorSeries):
            return NotImplemented
        return self.width == other.width and all(
            a == b for a, b in zip(self.components, other.components)
        )

    __hash__ = None

    def flat(self) -> np.ndarray:
        """Component-major flattening of the coefficient table."""
        return np.concatenate([c.coeffs for c in self.components])

    @classmethod
    def from_flat(cls, arr, width: int, degree: int) -> "VectorSeries":
        arr = np.asarray(arr, dtype=np.complex128)
        if arr.size != width * (degree + 1):
            raise InvalidInputError("flattened length does not match width*(degree+1)")
        parts = arr.reshape(width, degree + 1)
        return cls(tuple(TruncatedSeries(p) for p in parts))

    def h2_norm(self) -> float:
        return float(np.linalg.norm(self.flat()))

    def to_json(self) -> dict:
        return {"components": [c.to_json() for c in self.components]}

    @classmethod
    def from_json(cls, data: dict) -> "VectorSeries":
        try:
            comps = data["components"]
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"malformed vector series JSON: {exc}") from exc
        return cls(tuple(TruncatedSeries.from_json(c) for c in comps))
