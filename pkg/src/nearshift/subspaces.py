"""Finite-dimensional subspace calculus in a chosen inner product.

Frames are kept orthonormal with respect to the ambient inner product; all
actual linear algebra happens in the Cholesky-orthonormalized coordinates
supplied by the ambient, so the weighted geometry reduces to flat numpy
calls.  Intersections use principal angles: directions whose cosine exceeds
1 - tol count as shared.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .ambient import Ambient
from .errors import DegenerateDefectError, InvalidInputError

if TYPE_CHECKING:  # pragma: no cover
    from .operators import OperatorMatrix

INTERSECT_TOL = 1e-8
DROP_RATIO = 1e-10
KERNEL_RTOL = 1e-6


@dataclass(frozen=True)
class Subspace:
    """Orthonormal frame (columns) for a span inside an ambient space."""

    ambient: Ambient
    frame: np.ndarray  # (ambient.dim, k), orthonormal in the ambient inner product

    def __post_init__(self):
        f = np.asarray(self.frame, dtype=np.complex128)
        if f.ndim != 2 or f.shape[0] != self.ambient.dim:
            raise InvalidInputError("frame must be (ambient.dim, k)")
        f = f.copy()
        f.setflags(write=False)
        object.__setattr__(self, "frame", f)

    @property
    def dim(self) -> int:
        return self.frame.shape[1]

    def ortho_frame(self) -> np.ndarray:
        return np.stack(
            [self.ambient.to_ortho(self.frame[:, i]) for i in range(self.dim)], axis=1
        ) if self.dim else np.zeros((self.ambient.dim, 0), dtype=np.complex128)

    def contains(self, v: np.ndarray, tol: float) -> bool:
        r = residual_norm(v, self)
        return r <= tol * max(self.ambient.norm(v), 1e-300)

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient.to_json(),
            "frame": [
                [[c.real, c.imag] for c in self.frame[:, i]] for i in range(self.dim)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Subspace":
        ambient = Ambient.from_json(data["ambient"])
        rows = data["frame"]
        if not rows:
            return cls(ambient, np.zeros((ambient.dim, 0)))
        cols = [np.array([complex(p[0], p[1]) for p in row]) for row in rows]
        return cls(ambient, np.stack(cols, axis=1))


def _mgs(X: np.ndarray, drop_tol: float) -> np.ndarray:
    """Modified Gram-Schmidt with one reorthogonalization pass, dropping rank losses."""
    cols = []
    for j in range(X.shape[1]):
        v = X[:, j].copy()
        for _ in range(2):
            for q in cols:
                v -= np.vdot(q, v) * q
        nv = np.linalg.norm(v)
        if nv >= drop_tol:
            cols.append(v / nv)
    if not cols:
        return np.zeros((X.shape[0], 0), dtype=np.complex128)
    return np.stack(cols, axis=1)


def orthonormalize(vectors, ambient: Ambient) -> Subspace:
    """Orthonormal span of the given coefficient vectors, deterministic order."""
    vecs = [ambient.check_vector(v) for v in vectors]
    if not vecs:
        raise InvalidInputError("cannot orthonormalize an empty list")
    X = np.stack([ambient.to_ortho(v) for v in vecs], axis=1)
    max_norm = max(float(np.linalg.norm(X[:, j])) for j in range(X.shape[1]))
    Q = _mgs(X, DROP_RATIO * max(max_norm, 1e-300))
    frame = np.stack(
        [ambient.from_ortho(Q[:, j]) for j in range(Q.shape[1])], axis=1
    ) if Q.shape[1] else np.zeros((ambient.dim, 0), dtype=np.complex128)
    return Subspace(ambient, frame)


def project(v: np.ndarray, M: Subspace) -> np.ndarray:
    """Orthogonal projection of v onto M in the ambient inner product."""
    v = M.ambient.check_vector(v)
    if M.dim == 0:
        return np.zeros_like(v)
    y = M.ambient.to_ortho(v)
    Q = M.ortho_frame()
    return M.ambient.from_ortho(Q @ (Q.conj().T @ y))


def residual_norm(v: np.ndarray, M: Subspace) -> float:
    return M.ambient.norm(M.ambient.check_vector(v) - project(v, M))


def projection_matrix(M: Subspace) -> np.ndarray:
    """Dense matrix of the orthogonal projection onto M (ambient coordinates)."""
    n = M.ambient.dim
    if M.dim == 0:
        return np.zeros((n, n), dtype=np.complex128)
    F = M.frame
    # with W-orthonormal frame F the projection is F F^H W
    return F @ (F.conj().T @ M.ambient.gram)


def principal_cosines(M: Subspace, W: Subspace) -> np.ndarray:
    """Cosines of the principal angles, sorted descending."""
    if M.ambient != W.ambient:
        raise InvalidInputError("subspaces live in different ambients")
    if M.dim == 0 or W.dim == 0:
        return np.zeros(0)
    C = M.ortho_frame().conj().T @ W.ortho_frame()
    svals = np.linalg.svd(C, compute_uv=False)
    return np.clip(svals, 0.0, 1.0)


def subspace_distance(M: Subspace, W: Subspace) -> float:
    """Sine of the largest principal angle among the min(dim) shared directions.

    Computed from the projection residual of the smaller frame onto the
    larger span, which stays accurate for tiny angles where the cosine
    route saturates at the square root of machine precision.
    """
    k = min(M.dim, W.dim)
    if k == 0:
        return 0.0 if M.dim == W.dim else 1.0
    small, large = (M, W) if M.dim <= W.dim else (W, M)
    Fs = small.ortho_frame()
    Fl = large.ortho_frame()
    resid = Fs - Fl @ (Fl.conj().T @ Fs)
    return float(min(1.0, np.linalg.norm(resid, 2)))


def intersect(M: Subspace, W: Subspace, tol: float = INTERSECT_TOL) -> Subspace:
    """Common directions of two spans, via principal angles of the cross-Gram."""
    if M.ambient != W.ambient:
        raise InvalidInputError("subspaces live in different ambients")
    ambient = M.ambient
    if M.dim == 0 or W.dim == 0:
        return Subspace(ambient, np.zeros((ambient.dim, 0)))
    Fm = M.ortho_frame()
    C = Fm.conj().T @ W.ortho_frame()
    U, svals, _ = np.linalg.svd(C)
    keep = np.where(svals >= 1.0 - tol)[0]
    if keep.size == 0:
        return Subspace(ambient, np.zeros((ambient.dim, 0)))
    cols_o = Fm @ U[:, keep]
    frame = np.stack(
        [ambient.from_ortho(cols_o[:, j]) for j in range(cols_o.shape[1])], axis=1
    )
    return Subspace(ambient, frame)


@dataclass(frozen=True)
class DefectBasis:
    """Orthonormal rows spanning M minus its overlap with the operator range."""

    l: int
    G0: Subspace
    intersection: Subspace

    def vectors(self) -> list:
        return [self.G0.frame[:, i] for i in range(self.l)]


def operator_range(T: "OperatorMatrix", guard: int = 1) -> Subspace:
    """Span of T applied to guard-banded coefficient basis vectors.

    Columns whose input degree crowds the truncation edge are excluded,
    since their images lose most of their mass to the cutoff.
    """
    dom, cod = T.domain, T.codomain
    idx = dom.guarded_indices(guard * T.degree_growth)
    if idx.size == 0:
        return Subspace(cod, np.zeros((cod.dim, 0)))
    cols = T.matrix[:, idx]
    return orthonormalize([cols[:, j] for j in range(cols.shape[1])], cod)


def defect(M: Subspace, T: "OperatorMatrix", guard: int = 1) -> DefectBasis:
    """Defect space of M against the range of T, with its orthonormal frame."""
    if M.dim == 0:
        raise InvalidInputError("defect of the zero subspace is undefined")
    rng = operator_range(T, guard)
    W = intersect(M, rng)
    rest = [M.frame[:, i] - project(M.frame[:, i], W) for i in range(M.dim)]
    kept = [r for r in rest if M.ambient.norm(r) > DROP_RATIO]
    if not kept:
        raise DegenerateDefectError(
            "subspace lies entirely inside the operator range at this truncation"
        )
    G0 = orthonormalize(kept, M.ambient)
    return DefectBasis(l=G0.dim, G0=G0, intersection=W)


@dataclass(frozen=True)
class NearInvarianceReport:
    """Did every guarded preimage under T of the subspace stay inside it?"""

    is_nearly_invariant: bool
    max_residual: float
    witness: np.ndarray | None
    preimage_dim: int
    degree: int
    guard: int
    tol: float

    def to_json(self) -> dict:
        return {
            "is_nearly_invariant": self.is_nearly_invariant,
            "max_residual": self.max_residual,
            "witness": None
            if self.witness is None
            else [[c.real, c.imag] for c in self.witness],
            "preimage_dim": self.preimage_dim,
            "degree": self.degree,
            "guard": self.guard,
            "tol": self.tol,
        }


def near_invariance_check(
    M: Subspace,
    T: "OperatorMatrix",
    guard: int = 1,
    tol: float = 1e-8,
) -> NearInvarianceReport:
    """Test near invariance of M under division by T.

    The preimage space {g : T g in M} is the numerical kernel of
    (I - P_M) T restricted to the guard band; the report carries the worst
    membership residual of that kernel inside M.  An empty preimage is
    vacuously invariant.
    """
    ambient = M.ambient
    idx = ambient.guarded_indices(guard * T.degree_growth)
    if idx.size == 0:
        return NearInvarianceReport(True, 0.0, None, 0, ambient.degree, guard, tol)
    # orthonormal basis of the guarded domain in the ambient inner product
    E = np.zeros((ambient.dim, idx.size), dtype=np.complex128)
    E[idx, np.arange(idx.size)] = 1.0
    Do = _mgs(
        np.stack([ambient.to_ortho(E[:, j]) for j in range(idx.size)], axis=1), 1e-300
    )
    D_amb = np.stack([ambient.from_ortho(Do[:, j]) for j in range(Do.shape[1])], axis=1)
    P = projection_matrix(M)
    images = T.matrix @ D_amb
    A = np.stack(
        [ambient.to_ortho(images[:, j] - P @ images[:, j]) for j in range(images.shape[1])],
        axis=1,
    )
    U, svals, Vh = np.linalg.svd(A)
    cutoff = KERNEL_RTOL * max(float(svals[0]) if svals.size else 0.0, 1.0)
    kernel_mask = np.concatenate(
        [svals <= cutoff, np.ones(Vh.shape[0] - svals.size, dtype=bool)]
    )
    if not np.any(kernel_mask):
        return NearInvarianceReport(True, 0.0, None, 0, ambient.degree, guard, tol)
    kernel = Vh.conj().T[:, kernel_mask]
    worst = 0.0
    witness = None
    for j in range(kernel.shape[1]):
        p = D_amb @ kernel[:, j]
        r = residual_norm(p, M) / max(ambient.norm(p), 1e-300)
        if r > worst:
            worst = r
            witness = p
    ok = worst <= tol
    return NearInvarianceReport(
        is_nearly_invariant=ok,
        max_residual=float(worst),
        witness=None if ok else witness,
        preimage_dim=int(kernel.shape[1]),
        degree=ambient.degree,
        guard=guard,
        tol=tol,
    )
