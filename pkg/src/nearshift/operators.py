"""Dense matrix realizations of the operators used by the verifiers.

Everything is materialized on coefficient vectors at the working truncation;
identities that involve multiplication are only asserted on inputs kept away
from the truncation edge (the guard band), where they hold literally.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ambient import Ambient, hardy_ambient
from .blaschke import (
    FiniteBlaschke,
    blaschke_taylor,
    conj_mult_matrix,
    model_space_basis,
    mult_matrix,
    scaled_factorization,
)
from .errors import InvalidInputError, NumericError, PreconditionError
from .series import TruncatedSeries, VectorSeries, series_mul
from .subspaces import Subspace, defect, projection_matrix
from .wold import NormSpec, coordinate_matrix


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense operator between ambient coefficient spaces."""

    domain: Ambient
    codomain: Ambient
    matrix: np.ndarray
    name: str = ""
    degree_growth: int = 0  # guard-band unit: polynomial degree added per application

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape != (self.codomain.dim, self.domain.dim):
            raise InvalidInputError(
                f"operator {self.name!r} must be {self.codomain.dim} x {self.domain.dim}"
            )
        if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
            raise InvalidInputError("operator entries must be finite")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ self.domain.check_vector(v)

    def scaled(self, c: complex, name: str | None = None) -> "OperatorMatrix":
        return OperatorMatrix(
            self.domain, self.codomain, c * self.matrix,
            name or f"{c} * {self.name}", self.degree_growth,
        )

    def to_json(self) -> dict:
        rows, cols = self.matrix.shape
        return {
            "name": self.name,
            "rows": rows,
            "cols": cols,
            "entries": [[c.real, c.imag] for c in self.matrix.reshape(-1)],
        }

    @classmethod
    def from_json(cls, data: dict, domain: Ambient, codomain: Ambient) -> "OperatorMatrix":
        rows, cols = int(data["rows"]), int(data["cols"])
        entries = np.array(
            [complex(p[0], p[1]) for p in data["entries"]], dtype=np.complex128
        ).reshape(rows, cols)
        return cls(domain, codomain, entries, str(data.get("name", "")))


def _blockwise(block: np.ndarray, components: int) -> np.ndarray:
    if components == 1:
        return block
    n = block.shape[0]
    out = np.zeros((components * n, components * n), dtype=np.complex128)
    for c in range(components):
        out[c * n : (c + 1) * n, c * n : (c + 1) * n] = block
    return out


def mult_operator(B: FiniteBlaschke, ambient: Ambient) -> OperatorMatrix:
    """Componentwise multiplication by B, truncated."""
    if ambient.degree < B.degree:
        raise InvalidInputError("ambient degree is below the multiplier degree")
    block = mult_matrix(B, ambient.degree)
    return OperatorMatrix(
        ambient, ambient, _blockwise(block, ambient.components),
        name=f"mult[{B.to_json()['zeros']}, m0={B.origin_multiplicity}]",
        degree_growth=B.degree,
    )


def mult_by_series(symbol: TruncatedSeries, ambient: Ambient, name: str = "mult-series") -> OperatorMatrix:
    """Componentwise multiplication by an arbitrary series symbol, truncated."""
    n = ambient.degree + 1
    c = symbol.truncate(ambient.degree).coeffs
    block = np.zeros((n, n), dtype=np.complex128)
    for j in range(n):
        block[j:, j] = c[: n - j]
    nz = np.nonzero(np.abs(c) > 1e-14)[0]
    growth = int(nz[-1]) if nz.size else 0
    return OperatorMatrix(
        ambient, ambient, _blockwise(block, ambient.components), name=name,
        degree_growth=growth,
    )


def toeplitz_conj(B: FiniteBlaschke, ambient: Ambient) -> OperatorMatrix:
    """Componentwise f -> P(conj(B) f): entry (j, k) = conj(b_{k-j})."""
    block = conj_mult_matrix(B, ambient.degree)
    return OperatorMatrix(
        ambient, ambient, _blockwise(block, ambient.components),
        name="toeplitz-conj", degree_growth=0,
    )


def backward_shift(ambient: Ambient) -> OperatorMatrix:
    """Componentwise coefficient backward shift."""
    return toeplitz_conj(FiniteBlaschke(1, ()), ambient)


def adjoint(op: OperatorMatrix, spec: NormSpec | None = None) -> OperatorMatrix:
    """Adjoint with respect to the spec inner product: W^-1 A^H W.

    The domain and codomain must carry the same inner-product family; by
    default the domain's own spec is used.
    """
    if spec is None:
        spec = op.domain.spec
    if op.domain.spec != op.codomain.spec:
        raise PreconditionError("adjoint needs one inner-product family on both sides")
    dom = Ambient(op.domain.components, op.domain.degree, spec)
    cod = Ambient(op.codomain.components, op.codomain.degree, spec)
    for amb in (dom, cod):
        if amb.gram_condition > 1e12:
            raise NumericError(
                f"Gram matrix condition {amb.gram_condition:.3e} too large for adjoint"
            )
    mat = np.linalg.solve(dom.gram, op.matrix.conj().T @ cod.gram)
    return OperatorMatrix(cod, dom, mat, name=f"adj({op.name})", degree_growth=0)


@dataclass(frozen=True)
class CoordinateMap:
    """Unitary identification with the multiplicity-m coefficient model.

    forward sends a scalar coefficient vector to the component-major
    flattening of its block coordinates; backward reassembles.  On inputs
    inside the guard band the two compose to the identity and forward
    preserves the flat norm.
    """

    forward: OperatorMatrix
    backward: OperatorMatrix

    @property
    def levels(self) -> int:
        return self.forward.codomain.degree + 1

    @property
    def multiplicity(self) -> int:
        return self.forward.codomain.components


def unitary_U(B: FiniteBlaschke, levels: int, degree: int) -> CoordinateMap:
    """Coordinate map onto the vector model with one component per basis element."""
    m = B.degree
    if levels < 1:
        raise InvalidInputError("levels must be positive")
    dom = hardy_ambient(degree)
    cod = hardy_ambient(levels - 1, components=m)
    C = coordinate_matrix(B, degree, levels)  # (levels, m, degree+1)
    fwd = np.zeros((m * levels, degree + 1), dtype=np.complex128)
    for j in range(m):
        fwd[j * levels : (j + 1) * levels, :] = C[:, j, :]
    E = model_space_basis(B, degree).matrix()
    Bc = blaschke_taylor(B, degree).coeffs
    bwd = np.zeros((degree + 1, m * levels), dtype=np.complex128)
    power = np.zeros(degree + 1, dtype=np.complex128)
    power[0] = 1.0
    for k in range(levels):
        for j in range(m):
            bwd[:, j * levels + k] = np.convolve(power, E[:, j])[: degree + 1]
        power = np.convolve(power, Bc)[: degree + 1]
    return CoordinateMap(
        forward=OperatorMatrix(dom, cod, fwd, name="U", degree_growth=0),
        backward=OperatorMatrix(cod, dom, bwd, name="U*", degree_growth=0),
    )


def model_mult(h: TruncatedSeries, U: CoordinateMap, g: np.ndarray) -> np.ndarray:
    """(U g) * h in the vector model: scalar series times each component."""
    K = U.levels
    m = U.multiplicity
    ug = U.forward.apply(g).reshape(m, K)
    out = np.zeros_like(ug)
    for j in range(m):
        comp = TruncatedSeries(ug[j])
        out[j] = series_mul(comp, h, K - 1).coeffs
    return out.reshape(-1)


def apply_series_of_operator(h, T: OperatorMatrix, G) -> np.ndarray:
    """Evaluate sum_i sum_k h_{i,k} T^k g_i by iterated application.

    h is a scalar series (one g) or a width-l vector series matched with l
    vectors; powers of T are never materialized.
    """
    if isinstance(h, TruncatedSeries):
        h = VectorSeries((h,))
    if h.width != len(G):
        raise InvalidInputError(f"series width {h.width} != {len(G)} vectors")
    if T.degree_growth and h.degree * T.degree_growth > T.domain.degree:
        raise PreconditionError(
            f"degree overflow: {h.degree} applications of growth "
            f"{T.degree_growth} exceed truncation {T.domain.degree}"
        )
    acc = np.zeros(T.codomain.dim, dtype=np.complex128)
    for i, comp in enumerate(h.components):
        v = T.domain.check_vector(G[i]).copy()
        acc += comp.coeffs[0] * v
        for k in range(1, comp.coeffs.size):
            v = T.matrix @ v
            acc += comp.coeffs[k] * v
    return acc


def rq_operators(M: Subspace, T: OperatorMatrix, guard: int = 1):
    """The backdivision/defect pair for iterating inside M.

    R inverts T on the part of M shared with the operator range, then Q
    projects onto the complementary defect directions, so that every h in M
    splits as Q h + T R h.
    """
    ambient = M.ambient
    if T.domain != ambient or T.codomain != ambient:
        raise PreconditionError("operator must act on the subspace ambient")
    d = defect(M, T, guard)
    P_w = projection_matrix(d.intersection)
    Q = projection_matrix(d.G0)
    Ts = adjoint(T).matrix
    TsT = Ts @ T.matrix
    # min-norm least squares: multiplication operators lose their top columns
    # to the truncation, so the normal equations are singular by design
    R, _, rank, svals = np.linalg.lstsq(TsT, Ts @ P_w, rcond=None)
    if rank == 0 or not np.all(np.isfinite(R)):
        raise NumericError("normal equations degenerate for the backdivision operator")
    return (
        OperatorMatrix(ambient, ambient, R, name="R", degree_growth=0),
        OperatorMatrix(ambient, ambient, Q, name="Q", degree_growth=0),
    )


def ts_star(B: FiniteBlaschke, s: float, ambient: Ambient, degree: int) -> OperatorMatrix:
    """Toeplitz operator with symbol conj(B(z/s)) on the ambient.

    The symbol expansion comes from the scaled factorization, so the same
    object certifies that the product of the rescaled Blaschke part and the
    invertible part reproduces B(z/s).
    """
    fact = scaled_factorization(B, s, degree)
    symbol = series_mul(blaschke_taylor(fact.b, degree), fact.F_s, degree)
    n = ambient.degree + 1
    block = np.zeros((n, n), dtype=np.complex128)
    c = symbol.truncate(ambient.degree).coeffs
    for j in range(n):
        block[j, j:] = np.conj(c[: n - j])
    return OperatorMatrix(
        ambient, ambient, _blockwise(block, ambient.components),
        name=f"ts_star(s={s})", degree_growth=0,
    )
