"""Finite Blaschke products, their model spaces, and scaled factorizations.

A finite Blaschke product is z**m0 times factors (a-z)/(1 - conj(a) z) for
zeros a strictly inside the punctured unit disc; `normalized` factors carry
the extra unimodular constant |a|/a.  The model space attached to B is the
orthogonal complement of B times the coefficient space, spanned here by the
Takenaka-Malmquist-Walsh system.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError, NumericError, PreconditionError
from .series import TruncatedSeries, monomial, series_mul

_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class FiniteBlaschke:
    """z**origin_multiplicity times one factor per listed zero."""

    origin_multiplicity: int = 0
    zeros: tuple = ()
    normalized: bool = True

    def __post_init__(self):
        m0 = int(self.origin_multiplicity)
        if m0 < 0:
            raise InvalidInputError("origin multiplicity must be nonnegative")
        zs = tuple(complex(z) for z in self.zeros)
        for z in zs:
            if not (np.isfinite(z.real) and np.isfinite(z.imag)):
                raise InvalidInputError("zeros must be finite")
            if not 0.0 < abs(z) < 1.0:
                raise InvalidInputError(
                    f"zero {z} must lie strictly inside the punctured unit disc"
                )
        if m0 + len(zs) < 1:
            raise InvalidInputError("a Blaschke product must have degree >= 1")
        object.__setattr__(self, "origin_multiplicity", m0)
        object.__setattr__(self, "zeros", zs)
        object.__setattr__(self, "normalized", bool(self.normalized))

    @property
    def degree(self) -> int:
        return self.origin_multiplicity + len(self.zeros)

    @property
    def max_zero_modulus(self) -> float:
        return max((abs(z) for z in self.zeros), default=0.0)

    def to_json(self) -> dict:
        return {
            "origin_multiplicity": self.origin_multiplicity,
            "zeros": [[z.real, z.imag] for z in self.zeros],
            "normalized": self.normalized,
        }

    @classmethod
    def from_json(cls, data: dict) -> "FiniteBlaschke":
        try:
            m0 = int(data.get("origin_multiplicity", 0))
            zeros = tuple(complex(p[0], p[1]) for p in data.get("zeros", []))
            normalized = bool(data.get("normalized", True))
        except (TypeError, ValueError, IndexError) as exc:
            raise InvalidInputError(f"malformed Blaschke JSON: {exc}") from exc
        return cls(m0, zeros, normalized)


def disc_automorphism(a: complex) -> FiniteBlaschke:
    """The unnormalized degree-1 factor (a - z) / (1 - conj(a) z)."""
    return FiniteBlaschke(0, (a,), normalized=False)


def blaschke_eval(B: FiniteBlaschke, z: complex) -> complex:
    """Evaluate B at a point that is not one of its poles."""
    z = complex(z)
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise InvalidInputError("evaluation point must be finite")
    value = z ** B.origin_multiplicity
    for a in B.zeros:
        den = 1.0 - np.conj(a) * z
        if abs(den) < 1e-14:
            raise InvalidInputError(f"evaluation point {z} is a pole of the product")
        factor = (a - z) / den
        if B.normalized:
            factor *= abs(a) / a
        value *= factor
    return complex(value)


def _factor_taylor(a: complex, degree: int, normalized: bool) -> TruncatedSeries:
    """Coefficients of (a - z)/(1 - conj(a) z), optionally times |a|/a."""
    ac = np.conj(a)
    geo = ac ** np.arange(degree + 1, dtype=np.complex128)  # 1/(1 - conj(a) z)
    coeffs = a * geo
    coeffs[1:] -= geo[:-1]
    if normalized:
        coeffs *= abs(a) / a
    return TruncatedSeries(coeffs)


def blaschke_taylor(B: FiniteBlaschke, degree: int) -> TruncatedSeries:
    """Taylor expansion of B at the origin through the given degree."""
    if degree < 0:
        raise InvalidInputError("degree must be nonnegative")
    out = np.zeros(degree + 1, dtype=np.complex128)
    if B.origin_multiplicity <= degree:
        out[B.origin_multiplicity] = 1.0
    result = TruncatedSeries(out)
    for a in B.zeros:
        result = series_mul(result, _factor_taylor(a, degree, B.normalized), degree)
    return result


def mult_matrix(B: FiniteBlaschke, degree: int) -> np.ndarray:
    """Matrix of multiplication by B on coefficient vectors, truncated."""
    c = blaschke_taylor(B, degree).coeffs
    n = degree + 1
    out = np.zeros((n, n), dtype=np.complex128)
    for j in range(n):
        out[j:, j] = c[: n - j]
    return out


def conj_mult_matrix(B: FiniteBlaschke, degree: int) -> np.ndarray:
    """Matrix of f -> P(conj(B) f) on coefficient vectors: entry (j,k) = conj(b_{k-j})."""
    return mult_matrix(B, degree).conj().T


@dataclass(frozen=True)
class ModelSpaceBasis:
    """Orthonormal basis of the complement of B times the polynomial space."""

    source: FiniteBlaschke
    basis: tuple  # deg(B) series, orthonormal in the flat coefficient pairing

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def matrix(self) -> np.ndarray:
        """Columns are the basis coefficient vectors."""
        return np.stack([e.coeffs for e in self.basis], axis=1)


def model_space_basis(B: FiniteBlaschke, degree: int) -> ModelSpaceBasis:
    """Takenaka-Malmquist-Walsh basis, origin zeros first, then listed order.

    For the ordered zeros w_1, ..., w_n the k-th element is the normalized
    kernel sqrt(1-|w_k|^2)/(1 - conj(w_k) z) times the product of the first
    k-1 degree-one factors.  The recursion is valid verbatim for repeated
    zeros, so there is a single code path.
    """
    if degree < B.degree:
        raise InvalidInputError(
            f"truncation degree {degree} is below the product degree {B.degree}"
        )
    ordered = [0.0 + 0.0j] * B.origin_multiplicity + list(B.zeros)
    elements = []
    prefix = TruncatedSeries(np.concatenate(([1.0], np.zeros(degree))))
    for w in ordered:
        if w == 0:
            kernel = TruncatedSeries(np.concatenate(([1.0], np.zeros(degree))))
            factor = monomial(1, degree)
        else:
            geo = np.conj(w) ** np.arange(degree + 1, dtype=np.complex128)
            kernel = TruncatedSeries(np.sqrt(1.0 - abs(w) ** 2) * geo)
            factor = _factor_taylor(w, degree, B.normalized)
        elements.append(series_mul(prefix, kernel, degree))
        prefix = series_mul(prefix, factor, degree)
    return ModelSpaceBasis(B, tuple(elements))


def sup_on_circle(B: FiniteBlaschke, s: float, grid: int = 4096) -> float:
    """Maximum of |B| on the circle of radius s, 0 < s < 1.

    Grid sampling plus one golden-section refinement around the best sample;
    Blaschke moduli of the degrees used here are smooth in the angle, so the
    reported value is accurate to about 1e-6.
    """
    s = float(s)
    if not 0.0 < s < 1.0:
        raise InvalidInputError("radius must lie in (0, 1)")
    theta = np.linspace(0.0, 2.0 * np.pi, grid, endpoint=False)
    pts = s * np.exp(1j * theta)

    def modulus(t: float) -> float:
        return abs(blaschke_eval(B, s * np.exp(1j * t)))

    vals = np.abs(_eval_vectorized(B, pts))
    best = int(np.argmax(vals))
    lo = theta[best] - 2.0 * np.pi / grid
    hi = theta[best] + 2.0 * np.pi / grid
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = modulus(c), modulus(d)
    for _ in range(60):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = modulus(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = modulus(d)
    refined = max(fc, fd)
    return float(max(vals[best], refined))


def _eval_vectorized(B: FiniteBlaschke, z: np.ndarray) -> np.ndarray:
    value = z ** B.origin_multiplicity
    for a in B.zeros:
        factor = (a - z) / (1.0 - np.conj(a) * z)
        if B.normalized:
            factor = factor * (abs(a) / a)
        value = value * factor
    return value


@dataclass(frozen=True)
class ScaledFactorization:
    """B(z/s) written as b(z) * F_s(z) with b Blaschke and F_s invertible on the disc."""

    b: FiniteBlaschke
    F_s: TruncatedSeries
    s: float
    min_modulus: float = field(default=0.0)  # min grid |F_s| over the closed disc


def scaled_factorization(B: FiniteBlaschke, s: float, degree: int) -> ScaledFactorization:
    """Split B(z/s) into a Blaschke product with zeros s*a_n times an invertible part.

    Requires every zero of B inside the radius-s disc.  Formally the
    invertible part is the power-series quotient of B(z/s) by the rescaled
    product, but the forward division recursion is unstable whenever the
    divisor vanishes inside the disc, so the quotient is assembled from its
    closed form instead: one factor (1 - conj(a) s z) / (1 - conj(a) z / s)
    per zero, times the constant s to the negative product degree.
    """
    s = float(s)
    if not 0.0 < s < 1.0:
        raise InvalidInputError("scaling radius must lie in (0, 1)")
    if B.max_zero_modulus >= s:
        raise PreconditionError(
            f"all zeros must lie inside radius {s}; largest modulus is {B.max_zero_modulus}"
        )
    m0 = B.origin_multiplicity
    b = FiniteBlaschke(m0, tuple(s * a for a in B.zeros), B.normalized)
    F_s = TruncatedSeries(
        np.concatenate(([s ** (-float(B.degree))], np.zeros(degree)))
    )
    for a in B.zeros:
        ac = np.conj(a)
        geo = TruncatedSeries((ac / s) ** np.arange(degree + 1, dtype=np.complex128))
        numerator = TruncatedSeries(np.concatenate(([1.0], [-ac * s], np.zeros(degree - 1))))
        F_s = series_mul(F_s, series_mul(numerator, geo, degree), degree)
    radii = np.linspace(0.0, 1.0, 11)
    angles = np.exp(1j * np.linspace(0.0, 2.0 * np.pi, 256, endpoint=False))
    grid = np.concatenate([r * angles for r in radii] + [np.zeros(1)])
    vals = np.polyval(F_s.coeffs[::-1], grid)
    min_mod = float(np.min(np.abs(vals)))
    if min_mod <= 0.0:
        raise NumericError("invertible part of the scaled factorization vanishes on the disc")
    return ScaledFactorization(b, F_s, s, min_mod)
