"""Factorization of nearly invariant subspace elements and structure verifiers.

Given a subspace M that is nearly invariant under division by a Blaschke
multiplier, every h in M factors through the defect frame G0: iterating the
backdivision/defect pair peels off one coefficient row per power, giving
h = sum_i g_i q_i with q_i a series in powers of the (possibly rescaled)
multiplier.  The verifiers here check the resulting norm inequalities, the
shift-invariance of the quotient family, and the representation of M inside
the vector coefficient model.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ambient import Ambient, hardy_ambient
from .blaschke import FiniteBlaschke, blaschke_taylor, disc_automorphism, model_space_basis
from .errors import (
    InvalidInputError,
    NumericError,
    PreconditionError,
    TruncationError,
)
from .operators import (
    OperatorMatrix,
    backward_shift,
    mult_operator,
    rq_operators,
    unitary_U,
)
from .rng import Lcg64
from .series import (
    TruncatedSeries,
    VectorSeries,
    dilate,
    monomial,
    series_eval,
    series_mul,
)
from .subspaces import (
    Subspace,
    defect,
    near_invariance_check,
    orthonormalize,
    residual_norm,
    subspace_distance,
)
from .wold import NormParameters, select_parameters

RECONSTRUCT_RTOL = 1e-8
REMAINDER_RTOL = 1e-10


def iterate_decomposition(
    h: np.ndarray,
    M: Subspace,
    T: OperatorMatrix,
    p: int,
    *,
    tol: float = RECONSTRUCT_RTOL,
):
    """Split h in M into the p+1 peeled terms plus the depth-(p+1) remainder.

    Returns ([term_0, ..., term_p], remainder) where term_k is the k-fold
    image under T of the defect part of the k-fold backdivision, and the
    remainder absorbs what is left.  The pieces sum back to h; if they fail
    to within tol * |h| the truncation cannot support depth p.
    """
    ambient = M.ambient
    h = ambient.check_vector(h)
    nh = ambient.norm(h)
    if residual_norm(h, M) > 1e-8 * max(nh, 1e-300):
        raise PreconditionError("input vector is not in the subspace at this truncation")
    R, Q = rq_operators(M, T)
    terms = []
    x = h.copy()
    for _ in range(p + 1):
        q = Q.matrix @ x
        terms.append(q)
        x = R.matrix @ x
    for k in range(1, p + 1):
        for j in range(k):
            terms[k] = T.matrix @ terms[k]
    remainder = x
    for _ in range(p + 1):
        remainder = T.matrix @ remainder
    total = np.sum(terms, axis=0) + remainder
    if ambient.norm(h - total) > tol * max(nh, 1e-300):
        raise TruncationError(
            f"depth-{p} split misses its input by {ambient.norm(h - total):.3e}"
        )
    return terms, remainder


@dataclass(frozen=True)
class FactorizationContext:
    """Shared machinery for factoring many vectors from one subspace."""

    regime: str  # "expansive" (alpha >= 0) or "rescaled" (alpha < 0)
    B: FiniteBlaschke
    M: Subspace
    G0: Subspace
    T: OperatorMatrix
    R: OperatorMatrix
    Q: OperatorMatrix
    gamma: float
    params: NormParameters | None
    base: TruncatedSeries  # expansion variable gamma^-1 B at the working degree

    @property
    def l(self) -> int:
        return self.G0.dim


def expansive_context(M: Subspace, B: FiniteBlaschke, alpha: float) -> FactorizationContext:
    """Context for the one-sided norm regime, alpha in [0, 1]."""
    spec = M.ambient.spec
    if spec.variant != "wold-one" or spec.alpha != alpha or spec.blaschke != B:
        raise PreconditionError("subspace ambient must carry the wold-one norm of B")
    T = mult_operator(B, M.ambient)
    _require_nearly_invariant(M, T)
    R, Q = rq_operators(M, T)
    G0 = defect(M, T).G0
    base = blaschke_taylor(B, M.ambient.degree)
    return FactorizationContext("expansive", B, M, G0, T, R, Q, 1.0, None, base)


def rescaled_context(
    M: Subspace, B: FiniteBlaschke, alpha: float, s: float
) -> FactorizationContext:
    """Context for the modified norm regime, alpha in [-1, 0)."""
    params = select_parameters(B, alpha, s)
    spec = M.ambient.spec
    if (
        spec.variant != "wold-two"
        or spec.alpha != alpha
        or spec.blaschke != B
        or spec.N != params.N
    ):
        raise PreconditionError(
            "subspace ambient must carry the wold-two norm of B with the selected N"
        )
    T = mult_operator(B, M.ambient).scaled(1.0 / params.gamma, name="rescaled-mult")
    _require_nearly_invariant(M, T)
    R, Q = rq_operators(M, T)
    G0 = defect(M, T).G0
    base = TruncatedSeries(blaschke_taylor(B, M.ambient.degree).coeffs / params.gamma)
    return FactorizationContext("rescaled", B, M, G0, T, R, Q, params.gamma, params, base)


def _require_nearly_invariant(M: Subspace, T: OperatorMatrix) -> None:
    report = near_invariance_check(M, T)
    if not report.is_nearly_invariant:
        raise PreconditionError(
            f"subspace is not nearly invariant under division "
            f"(worst membership residual {report.max_residual:.3e})"
        )


@dataclass(frozen=True)
class FactorizationResult:
    """h = sum_i g_i q_i with its coefficient table and norm-bound audit."""

    q: VectorSeries  # row of l quotient series
    coeff_table: np.ndarray  # (depth, l); row k multiplies the k-th power
    residual: float  # reconstruction defect in the regime's norm
    coeff_l2: float  # flat norm of the coefficient table
    bound_ok: bool  # the regime's norm inequality held
    bound_slack: float  # nonnegative when the inequality holds
    h_norm: float
    q_norm: float  # flat-disc norm (expansive) or dilated norm (rescaled)
    cki_slack: float  # h_norm - coeff_l2, nonnegative per the coefficient bound
    context: FactorizationContext
    h: np.ndarray

    @property
    def cki_ok(self) -> bool:
        return self.cki_slack >= -1e-8

    def to_json(self) -> dict:
        return {
            "q": self.q.to_json(),
            "coeff_table": [[[c.real, c.imag] for c in row] for row in self.coeff_table],
            "residual": self.residual,
            "coeff_l2": self.coeff_l2,
            "bound_ok": self.bound_ok,
            "bound_slack": self.bound_slack,
            "h_norm": self.h_norm,
            "q_norm": self.q_norm,
            "cki_slack": self.cki_slack,
        }


def _peel(
    h: np.ndarray,
    R: OperatorMatrix,
    Q: OperatorMatrix,
    G0: Subspace,
    ambient: Ambient,
    p_cap: int,
):
    """Coefficient rows of the backdivision iteration, stopping once the
    iterate is negligible.  Returns (table, final relative iterate norm)."""
    nh = max(ambient.norm(h), 1e-300)
    l = G0.dim
    x = h.copy()
    rows = []
    rel = 1.0
    for _ in range(p_cap + 1):
        qx = Q.matrix @ x
        rows.append(np.array([ambient.inner(qx, G0.frame[:, i]) for i in range(l)]))
        x = R.matrix @ x
        rel = ambient.norm(x) / nh
        if rel <= REMAINDER_RTOL:
            break
    return np.array(rows), rel


def _factor(h: np.ndarray, ctx: FactorizationContext) -> FactorizationResult:
    ambient = ctx.M.ambient
    h = ambient.check_vector(h)
    nh = ambient.norm(h)
    if residual_norm(h, ctx.M) > 1e-8 * max(nh, 1e-300):
        raise PreconditionError("vector to factor is not in the subspace")
    D = ambient.degree
    p_cap = max(D // ctx.B.degree - 1, 0)
    C, _ = _peel(h, ctx.R, ctx.Q, ctx.G0, ambient, p_cap)
    base = ctx.base.coeffs
    power = np.zeros(D + 1, dtype=np.complex128)
    power[0] = 1.0
    q_cols = np.zeros((ctx.l, D + 1), dtype=np.complex128)
    acc = np.zeros(ambient.dim, dtype=np.complex128)
    for k in range(C.shape[0]):
        q_cols += np.outer(C[k], power)
        gk = ctx.G0.frame @ C[k]
        acc += _componentwise_mult(power, gk, ambient)
        power = np.convolve(power, base)[: D + 1]
    q = VectorSeries(tuple(TruncatedSeries(col) for col in q_cols))
    diff = h - acc
    coeff_l2 = float(np.sqrt(np.sum(np.abs(C) ** 2)))
    if ctx.regime == "expansive":
        residual = ambient.norm(diff)
        q_norm = float(np.sqrt(sum(np.sum(np.abs(col) ** 2) for col in q_cols)))
        bound_slack = nh - q_norm
    else:
        s = ctx.params.s
        residual = _dilated_norm(diff, ambient, s)
        q_norm = float(
            np.sqrt(sum(np.sum(np.abs(dilate(TruncatedSeries(col), s).coeffs) ** 2) for col in q_cols))
        )
        factor = np.sqrt(max(0.0, 1.0 - ctx.params.contraction**2))
        bound_slack = nh - factor * q_norm
    return FactorizationResult(
        q=q,
        coeff_table=C,
        residual=float(residual),
        coeff_l2=coeff_l2,
        bound_ok=bound_slack >= -1e-8,
        bound_slack=float(bound_slack),
        h_norm=float(nh),
        q_norm=q_norm,
        cki_slack=float(nh - coeff_l2),
        context=ctx,
        h=h,
    )


def _componentwise_mult(power: np.ndarray, g: np.ndarray, ambient: Ambient) -> np.ndarray:
    n = ambient.degree + 1
    out = np.zeros(ambient.dim, dtype=np.complex128)
    for c in range(ambient.components):
        out[c * n : (c + 1) * n] = np.convolve(power, g[c * n : (c + 1) * n])[:n]
    return out


def _dilated_norm(v: np.ndarray, ambient: Ambient, s: float) -> float:
    n = ambient.degree + 1
    total = 0.0
    for c in range(ambient.components):
        comp = TruncatedSeries(v[c * n : (c + 1) * n])
        total += float(np.sum(np.abs(dilate(comp, s).coeffs) ** 2))
    return float(np.sqrt(total))


def factor_in_context(h: np.ndarray, ctx: FactorizationContext) -> FactorizationResult:
    """Factor one vector with precomputed subspace machinery (batch entry point)."""
    return _factor(h, ctx)


def factor_alpha_pos(
    h: np.ndarray, M: Subspace, B: FiniteBlaschke, alpha: float
) -> FactorizationResult:
    """Factor h through G0 in the one-sided norm, alpha in [0, 1]."""
    if not 0.0 <= alpha <= 1.0:
        raise InvalidInputError("expansive factorization needs alpha in [0, 1]")
    return _factor(h, expansive_context(M, B, alpha))


def factor_alpha_neg(
    h: np.ndarray, M: Subspace, B: FiniteBlaschke, alpha: float, s: float
) -> FactorizationResult:
    """Factor h through G0 in the modified norm, alpha in [-1, 0)."""
    if not -1.0 <= alpha < 0.0:
        raise InvalidInputError("rescaled factorization needs alpha in [-1, 0)")
    return _factor(h, rescaled_context(M, B, alpha, s))


@dataclass(frozen=True)
class InvarianceReport:
    """Membership residuals of the shifted quotients back in the subspace."""

    residuals: tuple
    max_residual: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "residuals": list(self.residuals),
            "max_residual": self.max_residual,
            "passed": self.passed,
        }


def invariance_check_N(
    factorizations,
    B: FiniteBlaschke | None = None,
    regime: str | None = None,
    tol: float = 1e-8,
) -> InvarianceReport:
    """Shift each coefficient table down one row and test membership of the result.

    The shifted table encodes the conjugate-shift of the quotient; the
    corresponding combination against G0 must land back inside M.
    """
    if not factorizations:
        raise InvalidInputError("need at least one factorization")
    ctx = factorizations[0].context
    if B is not None and B != ctx.B:
        raise InvalidInputError("factorizations were built from a different multiplier")
    if regime is not None and regime != ctx.regime:
        raise InvalidInputError("factorizations were built in a different regime")
    ambient = ctx.M.ambient
    D = ambient.degree
    base = ctx.base.coeffs
    residuals = []
    for fact in factorizations:
        if fact.context is not ctx and fact.context.M is not ctx.M:
            raise InvalidInputError("factorizations must share one subspace")
        C = fact.coeff_table[1:]
        acc = np.zeros(ambient.dim, dtype=np.complex128)
        power = np.zeros(D + 1, dtype=np.complex128)
        power[0] = 1.0
        for k in range(C.shape[0]):
            gk = ctx.G0.frame @ C[k]
            acc += _componentwise_mult(power, gk, ambient)
            power = np.convolve(power, base)[: D + 1]
        na = ambient.norm(acc)
        if na <= 1e-12 * max(fact.h_norm, 1e-300):
            residuals.append(0.0)
            continue
        residuals.append(residual_norm(acc, ctx.M) / na)
    worst = max(residuals) if residuals else 0.0
    return InvarianceReport(tuple(residuals), float(worst), worst <= tol)


@dataclass(frozen=True)
class InnerCandidate:
    """Matrix of series columns that should be isometric on the boundary."""

    entries: tuple  # l rows, each a tuple of l' series

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        if not rows or not rows[0]:
            raise InvalidInputError("candidate needs at least one entry")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise InvalidInputError("candidate rows must have equal width")
        object.__setattr__(self, "entries", rows)

    @property
    def l(self) -> int:
        return len(self.entries)

    @property
    def columns(self) -> int:
        return len(self.entries[0])

    def boundary_isometry_defect(self, grid: int = 256) -> float:
        """Max deviation of Phi(w)* Phi(w) from the identity on the unit circle."""
        worst = 0.0
        eye = np.eye(self.columns)
        for theta in np.linspace(0.0, 2.0 * np.pi, grid, endpoint=False):
            w = np.exp(1j * theta)
            mat = np.array(
                [[series_eval(e, w) for e in row] for row in self.entries]
            )
            worst = max(worst, float(np.max(np.abs(mat.conj().T @ mat - eye))))
        return worst


def shifted_column_span(phi: InnerCandidate, ambient: Ambient) -> Subspace:
    """Span of the candidate columns times all admissible coefficient shifts."""
    if ambient.components != phi.l:
        raise InvalidInputError("ambient component count must match candidate rows")
    K = ambient.degree + 1
    vectors = []
    for c in range(phi.columns):
        col = [phi.entries[r][c] for r in range(phi.l)]
        eff = 0
        for e in col:
            nz = np.nonzero(np.abs(e.coeffs) > 1e-14)[0]
            if nz.size:
                eff = max(eff, int(nz[-1]))
        for t in range(K - eff):
            parts = [e.shift(t, ambient.degree).coeffs for e in col]
            vectors.append(np.concatenate(parts))
    if not vectors:
        return Subspace(ambient, np.zeros((ambient.dim, 0)))
    return orthonormalize(vectors, ambient)


@dataclass(frozen=True)
class CandidateReport:
    isometry_defect: float
    complement_dim: int
    distance: float

    def to_json(self) -> dict:
        return {
            "isometry_defect": self.isometry_defect,
            "complement_dim": self.complement_dim,
            "distance": self.distance,
        }


def verify_inner_candidate(F: Subspace, phi: InnerCandidate, grid: int = 256) -> CandidateReport:
    """Distance between F and the complement of the candidate's shifted span."""
    defect_val = phi.boundary_isometry_defect(grid)
    if defect_val > 1e-8:
        raise PreconditionError(
            f"candidate is not isometric on the boundary (defect {defect_val:.3e})"
        )
    span = shifted_column_span(phi, F.ambient)
    Fo = span.ortho_frame()
    U, svals, _ = np.linalg.svd(Fo, full_matrices=True)
    rank = int(np.sum(svals > 1e-10))
    comp_cols = U[:, rank:]
    complement = Subspace(
        F.ambient,
        np.stack(
            [F.ambient.from_ortho(comp_cols[:, j]) for j in range(comp_cols.shape[1])],
            axis=1,
        )
        if comp_cols.shape[1]
        else np.zeros((F.ambient.dim, 0)),
    )
    dist = subspace_distance(F, complement)
    return CandidateReport(
        isometry_defect=float(defect_val),
        complement_dim=complement.dim,
        distance=float(dist),
    )


@dataclass(frozen=True)
class RepresentationReport:
    """Vector-model image of a nearly invariant subspace and its audits."""

    F_prime: Subspace
    sstar_invariance_residual: float
    isometry_defect: float
    l: int
    levels: int
    phi: InnerCandidate | None = None
    subspace_distance: float | None = None

    def to_json(self) -> dict:
        return {
            "sstar_invariance_residual": self.sstar_invariance_residual,
            "isometry_defect": self.isometry_defect,
            "l": self.l,
            "levels": self.levels,
            "subspace_distance": self.subspace_distance,
            "f_prime_dim": self.F_prime.dim,
        }


def representation_check_h2(
    M: Subspace,
    B: FiniteBlaschke,
    levels: int | None = None,
    *,
    trials: int = 50,
    seed: int = 0,
) -> RepresentationReport:
    """Transport M to the vector coefficient model and audit the representation.

    Every frame vector f of M is written as (U f) = sum_i h_i (U g_i); the
    quotient tuples h come from the stable peel-off iteration (the raw
    coordinatewise division is hopelessly conditioned at truncation) and the
    model identity is then audited by forward multiplication.  The span of
    the solutions must be invariant under the componentwise backward shift
    and the map f -> h must preserve norms.
    """
    ambient = M.ambient
    if ambient.components != 1 or ambient.spec.variant != "alpha-standard" or ambient.spec.alpha != 0.0:
        raise PreconditionError("representation check runs in the flat scalar ambient")
    T = mult_operator(B, ambient)
    _require_nearly_invariant(M, T)
    R, Q = rq_operators(M, T)
    G0 = defect(M, T).G0
    l = G0.dim
    m = B.degree
    if levels is None:
        from .wold import tail_levels

        levels = tail_levels(B, ambient.degree, rtol=1e-12)
    K = levels
    U = unitary_U(B, K, ambient.degree)
    ug = [U.forward.apply(G0.frame[:, i]).reshape(m, K) for i in range(l)]
    p_cap = max(ambient.degree // m - 1, 0)
    solutions = []
    for j in range(M.dim):
        f = M.frame[:, j]
        C, _ = _peel(f, R, Q, G0, ambient, p_cap)
        h = np.zeros((l, K), dtype=np.complex128)
        h[:, : C.shape[0]] = C.T
        uf = U.forward.apply(f).reshape(m, K)
        product = np.zeros((m, K), dtype=np.complex128)
        for i in range(l):
            for comp in range(m):
                product[comp] += np.convolve(h[i], ug[i][comp])[:K]
        fit = float(np.linalg.norm(product - uf))
        if fit > 1e-7 * max(float(np.linalg.norm(uf)), 1e-300):
            raise NumericError(
                f"model representation of a frame vector fails to close (fit {fit:.3e})"
            )
        solutions.append(h.reshape(-1))
    sol_mat = np.stack(solutions, axis=1)
    iso_defect = 0.0
    rng = Lcg64(seed)
    for t in range(M.dim + trials):
        if t < M.dim:
            c = np.zeros(M.dim)
            c[t] = 1.0
        else:
            c = np.array([rng.complex_uniform() for _ in range(M.dim)])
            c = c / np.linalg.norm(c)
        f_norm = float(np.linalg.norm(M.frame @ c))
        h_norm = float(np.linalg.norm(sol_mat @ c))
        iso_defect = max(iso_defect, abs(f_norm - h_norm))
    model_ambient = hardy_ambient(K - 1, components=l)
    F_prime = orthonormalize(solutions, model_ambient)
    S_star = backward_shift(model_ambient)
    worst = 0.0
    for j in range(F_prime.dim):
        v = S_star.apply(F_prime.frame[:, j])
        nv = float(np.linalg.norm(v))
        if nv > 1e-12:
            worst = max(worst, residual_norm(v, F_prime) / nv)
    return RepresentationReport(
        F_prime=F_prime,
        sstar_invariance_residual=float(worst),
        isometry_defect=float(iso_defect),
        l=l,
        levels=K,
    )


def scalar_beurling_lax(F: Subspace, tol: float = 1e-8) -> FiniteBlaschke:
    """Recover the Blaschke product whose model space matches a backward-shift
    invariant F.

    The compression of the backward shift to F has the conjugated zeros as
    its eigenvalues (with multiplicity); eigenvalues on or outside the unit
    circle contradict invariance and are reported as an inconsistency.  The
    result is verified by the distance between F and the reconstructed model
    space.
    """
    ambient = F.ambient
    if ambient.components != 1 or ambient.spec.variant != "alpha-standard" or ambient.spec.alpha != 0.0:
        raise PreconditionError("scalar synthesis runs in the flat scalar ambient")
    if F.dim == 0:
        raise PreconditionError("cannot synthesize from the zero subspace")
    S_star = backward_shift(ambient)
    for j in range(F.dim):
        v = S_star.apply(F.frame[:, j])
        nv = float(np.linalg.norm(v))
        if nv > 1e-12 and residual_norm(v, F) / nv > tol:
            raise PreconditionError("subspace is not invariant under the backward shift")
    A = F.frame.conj().T @ (S_star.matrix @ F.frame)
    eigvals = np.linalg.eigvals(A)
    if np.any(np.abs(eigvals) >= 1.0 - 1e-9):
        raise NumericError(
            "compressed backward shift has spectrum outside the open disc; "
            "inconsistent with invariance"
        )
    zeros = []
    m0 = 0
    for lam in eigvals:
        if abs(lam) < 1e-9:
            m0 += 1
        else:
            zeros.append(np.conj(lam))
    theta = FiniteBlaschke(m0, tuple(zeros), normalized=True)
    if model_space_distance(F, theta) >= 1e-7:
        raise NumericError("reconstructed model space does not match the input span")
    return theta


def model_space_distance(F: Subspace, theta: FiniteBlaschke) -> float:
    """Subspace distance between F and the model space of theta."""
    basis = model_space_basis(theta, F.ambient.degree)
    K = orthonormalize([e.coeffs for e in basis.basis], F.ambient)
    return subspace_distance(F, K)


def example_subspace(
    B: FiniteBlaschke,
    a: complex,
    m: int,
    levels: int,
    ambient: Ambient,
    *,
    literal_positive_powers: bool = False,
) -> Subspace:
    """The worked family: a disc automorphism times a lattice of multiplier powers.

    Generators are phi_a B^k (k below `levels`) and phi_a z B^k (k <= m),
    ordered by nominal degree.  The literal flag drops the k = 0 power from
    the first family, the reading under which near invariance fails.
    """
    if not 0.0 < abs(complex(a)) < 1.0:
        raise InvalidInputError("automorphism parameter must be in the punctured disc")
    if m < 0 or levels < 1:
        raise InvalidInputError("need m >= 0 and at least one power")
    D = ambient.degree
    phi = blaschke_taylor(disc_automorphism(a), D)
    Bc = blaschke_taylor(B, D)
    start = 1 if literal_positive_powers else 0
    items = [(k * B.degree, k, 0) for k in range(start, levels)]
    items += [(k * B.degree + 1, k, 1) for k in range(m + 1)]
    items.sort()
    gens = []
    for _, k, shifted in items:
        g = phi
        for _ in range(k):
            g = series_mul(g, Bc, D)
        if shifted:
            g = series_mul(g, monomial(1, D), D)
        gens.append(g.coeffs)
    return orthonormalize(gens, ambient)


def example_section2(
    a: complex,
    m: int,
    levels: int,
    degree: int,
    *,
    literal_positive_powers: bool = False,
    trials: int = 50,
    seed: int = 0,
) -> dict:
    """Run the full worked scenario for the degree-two origin multiplier.

    Builds the truncated subspace, checks near invariance, the defect
    dimension, the vector-model representation, and the polynomial inner
    candidate with a single shifted column.  Returns a scenario report with
    one entry per check.
    """
    B = FiniteBlaschke(2, ())
    ambient = hardy_ambient(degree)
    M = example_subspace(
        B, a, m, levels, ambient, literal_positive_powers=literal_positive_powers
    )
    T = mult_operator(B, ambient)
    checks = []
    near = near_invariance_check(M, T)
    detail = near.to_json()
    if not near.is_nearly_invariant and near.witness is not None:
        phi = blaschke_taylor(disc_automorphism(a), degree).coeffs
        overlap = abs(np.vdot(phi, near.witness)) / (
            np.linalg.norm(phi) * np.linalg.norm(near.witness)
        )
        detail["witness_automorphism_overlap"] = float(overlap)
    checks.append(
        {
            "name": "near-invariance",
            "pass": near.is_nearly_invariant,
            "residual": near.max_residual,
            "details": detail,
        }
    )
    report = {
        "parameters": {
            "a": [complex(a).real, complex(a).imag],
            "m": m,
            "levels": levels,
            "degree": degree,
            "literal_positive_powers": literal_positive_powers,
        },
        "checks": checks,
    }
    if not near.is_nearly_invariant:
        checks.append(
            {
                "name": "downstream",
                "pass": False,
                "residual": None,
                "details": {"skipped": "near invariance failed"},
            }
        )
        return report
    d = defect(M, T)
    checks.append(
        {
            "name": "defect-dimension",
            "pass": d.l == 2,
            "residual": None,
            "details": {"l": d.l},
        }
    )
    rep = representation_check_h2(M, B, trials=trials, seed=seed)
    checks.append(
        {
            "name": "sstar-invariance",
            "pass": rep.sstar_invariance_residual < 1e-8,
            "residual": rep.sstar_invariance_residual,
            "details": {"levels": rep.levels},
        }
    )
    checks.append(
        {
            "name": "isometry-defect",
            "pass": rep.isometry_defect < 1e-8,
            "residual": rep.isometry_defect,
            "details": {"trials": trials},
        }
    )
    phi = InnerCandidate(
        (
            (TruncatedSeries(np.zeros(m + 2)),),
            (monomial(m + 1, m + 1),),
        )
    )
    cand = verify_inner_candidate(rep.F_prime, phi)
    checks.append(
        {
            "name": "inner-candidate-distance",
            "pass": cand.distance < 1e-7,
            "residual": cand.distance,
            "details": cand.to_json(),
        }
    )
    return report
