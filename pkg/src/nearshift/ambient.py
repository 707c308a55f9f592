"""Ambient coefficient spaces: truncation degree, component count, inner product.

A vector is a component-major flattening of one coefficient array per
component.  The inner product is induced by the active norm spec; block
norms are realized through the Gram matrix of the coordinate map, so all
subspace work downstream reduces to flat linear algebra after one Cholesky
change of basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import InvalidInputError, NumericError
from .series import TruncatedSeries, VectorSeries, alpha_weights
from .wold import NormSpec, coordinate_matrix

GRAM_CONDITION_LIMIT = 1e12


@lru_cache(maxsize=64)
def _scalar_gram(spec: NormSpec, degree: int) -> np.ndarray:
    """Gram matrix of the spec inner product on scalar coefficient vectors."""
    n = degree + 1
    if spec.variant == "alpha-standard":
        return np.diag(alpha_weights(n, spec.alpha))
    B = spec.blaschke
    C = coordinate_matrix(B, degree, None, rtol=1e-14)  # (levels, m, n)
    levels = C.shape[0]
    w = spec.level_weights(levels)
    flat = C.reshape(levels * B.degree, n)
    weights = np.repeat(w, B.degree)
    W = flat.conj().T @ (weights[:, None] * flat)
    return 0.5 * (W + W.conj().T)


@dataclass(frozen=True)
class Ambient:
    """Descriptor of the space a computation lives in."""

    components: int
    degree: int
    spec: NormSpec

    def __post_init__(self):
        if self.components < 1:
            raise InvalidInputError("ambient needs at least one component")
        if self.degree < 0:
            raise InvalidInputError("ambient degree must be nonnegative")

    @property
    def dim(self) -> int:
        return self.components * (self.degree + 1)

    @cached_property
    def gram(self) -> np.ndarray:
        block = _scalar_gram(self.spec, self.degree)
        if self.components == 1:
            return block
        n = self.degree + 1
        W = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for c in range(self.components):
            W[c * n : (c + 1) * n, c * n : (c + 1) * n] = block
        return W

    @cached_property
    def gram_condition(self) -> float:
        return float(np.linalg.cond(self.gram))

    @cached_property
    def _chol(self) -> np.ndarray:
        if self.gram_condition > GRAM_CONDITION_LIMIT:
            raise NumericError(
                f"inner-product Gram matrix too ill-conditioned: {self.gram_condition:.3e}"
            )
        return np.linalg.cholesky(self.gram)

    def check_vector(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.complex128).reshape(-1)
        if v.size != self.dim:
            raise InvalidInputError(f"vector has length {v.size}, ambient needs {self.dim}")
        return v

    def inner(self, u: np.ndarray, v: np.ndarray) -> complex:
        """Conjugate-linear in the second argument."""
        return complex(np.vdot(v, self.gram @ u))

    def norm(self, u: np.ndarray) -> float:
        val = np.vdot(u, self.gram @ u).real
        return float(np.sqrt(max(val, 0.0)))

    def to_ortho(self, v: np.ndarray) -> np.ndarray:
        """Coordinates in which the ambient inner product is the flat one."""
        return self._chol.conj().T @ v

    def from_ortho(self, y: np.ndarray) -> np.ndarray:
        return np.linalg.solve(self._chol.conj().T, y)

    def scalar(self, v: np.ndarray) -> TruncatedSeries:
        if self.components != 1:
            raise InvalidInputError("ambient is not scalar")
        return TruncatedSeries(self.check_vector(v))

    def vector_series(self, v: np.ndarray) -> VectorSeries:
        return VectorSeries.from_flat(self.check_vector(v), self.components, self.degree)

    def embed(self, f: TruncatedSeries | VectorSeries) -> np.ndarray:
        if isinstance(f, TruncatedSeries):
            if self.components != 1:
                raise InvalidInputError("scalar series in a vector ambient")
            return f.truncate(self.degree).coeffs.copy()
        if f.width != self.components:
            raise InvalidInputError("component count mismatch")
        return np.concatenate([c.truncate(self.degree).coeffs for c in f.components])

    def guarded_indices(self, margin: int) -> np.ndarray:
        """Flat indices of coefficients of degree <= degree - margin, per component."""
        keep = self.degree + 1 - max(margin, 0)
        if keep <= 0:
            return np.array([], dtype=np.intp)
        n = self.degree + 1
        idx = [c * n + j for c in range(self.components) for j in range(keep)]
        return np.asarray(idx, dtype=np.intp)

    def to_json(self) -> dict:
        return {
            "components": self.components,
            "degree": self.degree,
            "norm": self.spec.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Ambient":
        return cls(
            components=int(data["components"]),
            degree=int(data["degree"]),
            spec=NormSpec.from_json(data["norm"]),
        )


def hardy_ambient(degree: int, components: int = 1) -> Ambient:
    """Flat coefficient space (the alpha = 0 norm)."""
    return Ambient(components, degree, NormSpec("alpha-standard", 0.0))
