"""Block decomposition of coefficient vectors along powers of a Blaschke product.

Any function in the Hardy space splits as sum_k B^k h_k with each h_k in the
model space of B; for B = z this is the ordinary Taylor expansion.  The
diagonal norms used throughout the package weight the blocks:

    one-sided (alpha in [0, 1]):   sum (k+1)^alpha |h_k|^2
    modified  (alpha in [-1, 0)):  sum_{k<N} N^alpha |h_k|^2
                                   + sum_{k>=N} (k+1)^alpha |h_k|^2

where |h_k| is the flat coefficient norm of the block coordinates.  For
polynomial input the sequential projection/backdivision loop below recovers
the block coordinates exactly (up to roundoff): the discarded tails of the
model-space basis live entirely above the truncation degree, where
polynomial inputs have no mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .blaschke import (
    FiniteBlaschke,
    blaschke_taylor,
    conj_mult_matrix,
    model_space_basis,
    sup_on_circle,
)
from .errors import InvalidInputError, PreconditionError, TruncationError
from .rng import Lcg64, trial_seed
from .series import TruncatedSeries, h2_norm, norm_alpha, series_mul

DECOMPOSE_RTOL = 1e-8  # warn above this relative remainder


@dataclass(frozen=True)
class NormSpec:
    """Which norm a computation runs in.

    variant "alpha-standard" is the plain weighted coefficient norm;
    "wold-one" and "wold-two" are the block norms above and carry the
    Blaschke product (and, for wold-two, the crossover index N).
    """

    variant: str
    alpha: float = 0.0
    N: int | None = None
    blaschke: FiniteBlaschke | None = None

    def __post_init__(self):
        if self.variant not in ("alpha-standard", "wold-one", "wold-two"):
            raise InvalidInputError(f"unknown norm variant {self.variant!r}")
        if not np.isfinite(self.alpha):
            raise InvalidInputError("alpha must be finite")
        if self.variant == "wold-one":
            if not 0.0 <= self.alpha <= 1.0:
                raise InvalidInputError("wold-one requires alpha in [0, 1]")
            if self.blaschke is None:
                raise InvalidInputError("wold-one requires a Blaschke product")
        if self.variant == "wold-two":
            if not -1.0 <= self.alpha < 0.0:
                raise InvalidInputError("wold-two requires alpha in [-1, 0)")
            if self.N is None or int(self.N) < 1:
                raise InvalidInputError("wold-two requires a positive crossover N")
            if self.blaschke is None:
                raise InvalidInputError("wold-two requires a Blaschke product")
            object.__setattr__(self, "N", int(self.N))

    @property
    def is_wold(self) -> bool:
        return self.variant != "alpha-standard"

    def level_weights(self, levels: int) -> np.ndarray:
        """Per-block weights for the first `levels` blocks."""
        k = np.arange(levels, dtype=np.float64)
        if self.variant == "wold-two":
            w = (k + 1.0) ** self.alpha
            w[: self.N] = float(self.N) ** self.alpha
            return w
        return (k + 1.0) ** self.alpha

    def to_json(self) -> dict:
        out = {"variant": self.variant, "alpha": self.alpha, "N": self.N}
        if self.blaschke is not None:
            out["blaschke"] = self.blaschke.to_json()
        return out

    @classmethod
    def from_json(cls, data: dict) -> "NormSpec":
        b = data.get("blaschke")
        return cls(
            variant=data.get("variant", "alpha-standard"),
            alpha=float(data.get("alpha", 0.0)),
            N=data.get("N"),
            blaschke=FiniteBlaschke.from_json(b) if b else None,
        )


def standard_spec(alpha: float = 0.0) -> NormSpec:
    return NormSpec("alpha-standard", alpha)


@dataclass(frozen=True)
class WoldCoordinates:
    """Block coordinates: row k holds h_k in the model-space basis of the source."""

    source: FiniteBlaschke
    coords: np.ndarray  # (levels, deg B) complex
    residual: float  # flat norm of what the kept levels fail to capture
    warning: str | None = None

    @property
    def levels(self) -> int:
        return self.coords.shape[0]

    def block_norms_sq(self) -> np.ndarray:
        return np.sum(np.abs(self.coords) ** 2, axis=1)

    def to_json(self) -> dict:
        return {
            "levels": self.levels,
            "coords": [[[c.real, c.imag] for c in row] for row in self.coords],
            "residual": self.residual,
            "warning": self.warning,
        }


def padding_degrees(B: FiniteBlaschke, tol: float = 1e-16) -> int:
    """Extra truncation room so dropped basis tails stay below tol.

    The model-space elements of B decay like the largest zero modulus per
    degree; iterating the conjugate backdivision re-imports whatever tail
    the working window cut off, so the window is widened until that import
    is negligible.
    """
    r = B.max_zero_modulus
    if r == 0.0:
        return 0
    return min(int(math.ceil(math.log(tol) / math.log(r))), 512)


def working_degree(B: FiniteBlaschke, degree: int) -> int:
    """Internal truncation degree for decompositions requested at `degree`."""
    return max(degree, B.degree) + padding_degrees(B)


def tail_levels(B: FiniteBlaschke, degree: int, rtol: float = 1e-13) -> int:
    """Levels after which blocks of a degree-bounded input are below rtol.

    Each block consumes deg(B) polynomial degrees on average, so decay sets
    in after degree/deg(B) levels and then proceeds geometrically at a rate
    tied to the largest zero modulus; the 1.5 safety factor absorbs the
    polynomial prefactors of that estimate.
    """
    m = B.degree
    base = math.ceil((degree + 1) / m)
    r = B.max_zero_modulus
    if r == 0.0:
        return base
    decay_rate = (1.0 + r) / 2.0  # conservative geometric rate inside the disc
    extra = math.ceil(1.5 * math.log(rtol) / (m * math.log(decay_rate)))
    return base + max(extra, 0)


def wold_decompose(
    f: TruncatedSeries,
    B: FiniteBlaschke,
    levels: int,
    *,
    strict: bool = False,
    rtol: float = DECOMPOSE_RTOL,
) -> WoldCoordinates:
    """Peel off `levels` blocks of f along powers of B.

    Each step projects onto the model space and removes the block with the
    conjugate-symbol backdivision, which inverts multiplication by B exactly
    on its range.  The returned residual is the flat norm of what remains;
    it exceeds rtol * |f| only when `levels` is too small for the input, in
    which case a warning is attached (an error under strict mode).
    """
    if levels < 1:
        raise InvalidInputError("levels must be positive")
    m = B.degree
    work = working_degree(B, f.degree)
    E = model_space_basis(B, work).matrix()  # (work+1, m)
    Tc = conj_mult_matrix(B, work)
    g = f.truncate(work).coeffs.astype(np.complex128, copy=True)
    coords = np.zeros((levels, m), dtype=np.complex128)
    for k in range(levels):
        coords[k] = E.conj().T @ g
        g = Tc @ (g - E @ coords[k])
    residual = float(np.linalg.norm(g))
    scale = h2_norm(f)
    warning = None
    if residual > rtol * max(scale, 1e-300):
        warning = (
            f"truncation-insufficient: residual {residual:.3e} exceeds "
            f"{rtol:.1e} * |f| after {levels} levels"
        )
        if strict:
            raise TruncationError(warning)
    return WoldCoordinates(B, coords, residual, warning)


def wold_decompose_auto(
    f: TruncatedSeries,
    B: FiniteBlaschke,
    *,
    rtol: float = 1e-13,
    max_levels: int = 8192,
    strict: bool = False,
) -> WoldCoordinates:
    """Decompose with as many levels as the input needs (down to rtol)."""
    m = B.degree
    work = working_degree(B, f.degree)
    E = model_space_basis(B, work).matrix()
    Tc = conj_mult_matrix(B, work)
    g = f.truncate(work).coeffs.astype(np.complex128, copy=True)
    scale = max(h2_norm(f), 1e-300)
    rows = []
    residual = float(np.linalg.norm(g))
    while residual > rtol * scale and len(rows) < max_levels:
        c = E.conj().T @ g
        rows.append(c)
        g = Tc @ (g - E @ c)
        residual = float(np.linalg.norm(g))
    if not rows:
        rows.append(np.zeros(m, dtype=np.complex128))
    warning = None
    if residual > DECOMPOSE_RTOL * scale:
        warning = (
            f"truncation-insufficient: residual {residual:.3e} after "
            f"{len(rows)} levels"
        )
        if strict:
            raise TruncationError(warning)
    return WoldCoordinates(B, np.array(rows), residual, warning)


def coordinate_matrix(
    B: FiniteBlaschke,
    degree: int,
    levels: int | None,
    *,
    rtol: float = 1e-14,
    max_levels: int = 4096,
) -> np.ndarray:
    """Block coordinates of every coefficient basis vector, shape (levels, m, D+1).

    Columns are iterated at the padded working degree so the coordinates are
    accurate even when the requested degree is small.  With levels=None the
    iteration runs until every column's remainder drops below rtol.
    """
    m = B.degree
    work = working_degree(B, degree)
    E = model_space_basis(B, work).matrix()
    Tc = conj_mult_matrix(B, work)
    G = np.zeros((work + 1, degree + 1), dtype=np.complex128)
    G[: degree + 1] = np.eye(degree + 1)
    rows = []
    k = 0
    while True:
        block = E.conj().T @ G
        rows.append(block)
        G = Tc @ (G - E @ block)
        k += 1
        if levels is not None:
            if k >= levels:
                break
        elif k >= max_levels or float(np.max(np.linalg.norm(G, axis=0))) <= rtol:
            break
    return np.array(rows)


def wold_reconstruct(w: WoldCoordinates, degree: int) -> TruncatedSeries:
    """Sum of B^k times block k, truncated at the requested degree."""
    B = w.source
    E = model_space_basis(B, degree).matrix()
    Bc = blaschke_taylor(B, degree).coeffs
    power = np.zeros(degree + 1, dtype=np.complex128)
    power[0] = 1.0
    acc = np.zeros(degree + 1, dtype=np.complex128)
    for k in range(w.levels):
        h_k = E @ w.coords[k]
        acc += np.convolve(power, h_k)[: degree + 1]
        power = np.convolve(power, Bc)[: degree + 1]
    return TruncatedSeries(acc)


def space_norm(f: TruncatedSeries, spec: NormSpec, *, strict: bool = False) -> float:
    """Norm of f under the requested variant."""
    if spec.variant == "alpha-standard":
        return norm_alpha(f, spec.alpha)
    w = wold_decompose_auto(f, spec.blaschke, strict=strict)
    weights = spec.level_weights(w.levels)
    return float(np.sqrt(np.sum(weights * w.block_norms_sq())))


@dataclass(frozen=True)
class NormParameters:
    """Crossover index and lower-bound data for the modified norm."""

    gamma: float
    N: int
    s: float
    beta: float  # sup of |B| on the radius-s circle
    contraction: float  # beta / gamma, strictly below one

    def to_json(self) -> dict:
        return {
            "gamma": self.gamma,
            "N": self.N,
            "s": self.s,
            "beta": self.beta,
            "contraction": self.contraction,
        }


def gamma_two(N: int, alpha: float) -> float:
    """The modified-norm lower bound (1 - 1/(N+1))**(-alpha/2)."""
    return (1.0 - 1.0 / (N + 1.0)) ** (-alpha / 2.0)


def select_parameters(B: FiniteBlaschke, alpha: float, s: float) -> NormParameters:
    """Smallest crossover N making the lower bound beat sup |B| on radius s."""
    if not -1.0 <= alpha < 0.0:
        raise InvalidInputError("parameter selection applies to alpha in [-1, 0)")
    if not 0.0 < s < 1.0:
        raise InvalidInputError("radius must lie in (0, 1)")
    if B.max_zero_modulus >= s:
        raise PreconditionError(
            f"radius {s} must contain every zero; largest modulus {B.max_zero_modulus}"
        )
    beta = sup_on_circle(B, s)
    N = 1
    while gamma_two(N, alpha) <= beta:
        N += 1
    gamma = gamma_two(N, alpha)
    return NormParameters(gamma=gamma, N=N, s=s, beta=beta, contraction=beta / gamma)


def suggest_radius(B: FiniteBlaschke) -> float:
    """Halfway between the outermost zero and the boundary."""
    return (1.0 + B.max_zero_modulus) / 2.0


def random_series(rng: Lcg64, degree: int) -> TruncatedSeries:
    """Series with coefficients uniform on the complex square [-1,1) x [-1,1)."""
    return TruncatedSeries(
        np.array([rng.complex_uniform() for _ in range(degree + 1)])
    )


@dataclass(frozen=True)
class LowerBoundReport:
    """Outcome of seeded lower-bound trials for multiplication by B."""

    gamma: float
    min_ratio: float
    witness: TruncatedSeries | None
    violations: tuple
    tight_ratio: float | None = None  # achieved by the crossover-level witness
    passed: bool = True

    def to_json(self) -> dict:
        return {
            "gamma": self.gamma,
            "min_ratio": self.min_ratio,
            "witness": self.witness.to_json() if self.witness is not None else None,
            "violations": list(self.violations),
            "tight_ratio": self.tight_ratio,
            "passed": self.passed,
        }


def verify_lower_bound(
    B: FiniteBlaschke,
    spec: NormSpec,
    trials: int,
    seed: int,
    *,
    degree: int = 48,
    tol: float = 1e-9,
) -> LowerBoundReport:
    """Check |B f| >= gamma |f| in the spec norm over seeded random inputs.

    gamma is 1 for the one-sided norm and the crossover bound for the
    modified norm, where the input B**(N-1) h with h in the model space
    achieves the bound exactly and is always included as a witness trial.
    Products are formed at an extended degree so their discarded tails sit
    far below the verification tolerance.
    """
    if not spec.is_wold:
        raise PreconditionError("lower-bound verification needs a block-norm spec")
    if spec.blaschke != B:
        raise PreconditionError("spec must carry the Blaschke product under test")
    gamma = 1.0 if spec.variant == "wold-one" else gamma_two(spec.N, spec.alpha)
    pad = tail_levels(B, 0, rtol=1e-14) * B.degree + B.degree
    ratios = []
    witness = None
    min_ratio = np.inf
    for t in range(trials):
        rng = Lcg64(trial_seed(seed, t))
        f = random_series(rng, degree)
        bf = series_mul(f, blaschke_taylor(B, degree + pad), degree + pad)
        ratio = space_norm(bf, spec) / space_norm(f, spec)
        ratios.append(ratio)
        if ratio < min_ratio:
            min_ratio = ratio
            witness = f
    tight_ratio = None
    if spec.variant == "wold-two":
        # crossover-level witness: a model-space element pushed to level N-1
        # sits on the weight step, so its ratio equals gamma exactly; the
        # element needs a working degree far past its tail
        rng = Lcg64(trial_seed(seed, trials))
        work = spec.N * B.degree + pad
        E = model_space_basis(B, work).basis
        h = TruncatedSeries(
            np.sum([rng.complex_uniform() * e.coeffs for e in E], axis=0)
        )
        f = h
        Bc = blaschke_taylor(B, work + pad)
        for _ in range(spec.N - 1):
            f = series_mul(f, Bc, work)
        bf = series_mul(f, Bc, work + pad)
        tight_ratio = space_norm(bf, spec) / space_norm(f, spec)
        ratios.append(tight_ratio)
        if tight_ratio < min_ratio:
            min_ratio = tight_ratio
            witness = f
    violations = tuple(
        {"trial": i, "ratio": r} for i, r in enumerate(ratios) if r < gamma - tol
    )
    return LowerBoundReport(
        gamma=gamma,
        min_ratio=float(min_ratio),
        witness=witness,
        violations=violations,
        tight_ratio=tight_ratio,
        passed=not violations,
    )
