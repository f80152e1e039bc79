"""Lyapunov steady state, stability, and Gaussian entanglement measures.

Covariance matrices are 6x6 (or 4x4 after pair reduction) real symmetric
ndarrays over quadratures ordered (X_n, Y_n, X_m, Y_m, q, p), vacuum
variance 1/2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EigenFailure, SingularSystem, Unphysical, Unstable
from .model import build_diffusion, build_drift, solve_steady_state
from .params import SystemParams

# quadrature rows/columns of each bipartition
PAIRS = {
    "nm": (0, 1, 2, 3),
    "mb": (2, 3, 4, 5),
    "nb": (0, 1, 4, 5),
}

# numerical tolerances (see the acceptance suite)
LYAP_RESIDUAL = 1e-9
ROUTE_AGREEMENT = 1e-8
PHYSICALITY_SLACK = 1e-8


def symplectic_form(n_modes: int) -> np.ndarray:
    """Block-diagonal symplectic form Omega = diag([[0, 1], [-1, 0]], ...)."""
    block = np.array([[0.0, 1.0], [-1.0, 0.0]])
    out = np.zeros((2 * n_modes, 2 * n_modes))
    for k in range(n_modes):
        out[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = block
    return out


def stability_margin(a: np.ndarray) -> float:
    """Largest eigenvalue real part of the drift matrix; stable iff < 0."""
    try:
        eigenvalues = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(f"eigenvalue computation failed: {exc}") from exc
    return float(np.max(eigenvalues.real))


def solve_lyapunov(a: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Solve a V + V a^T + d = 0 by dense Kronecker-sum vectorization.

    Requires a stable ``a`` (checked). Returns the symmetrized solution; the
    relative residual ||aV + Va^T + d||_F / ||d||_F is validated against
    LYAP_RESIDUAL by the caller-facing pipeline tests, not re-checked here.
    """
    margin = stability_margin(a)
    if margin >= 0:
        raise Unstable(margin)
    n = a.shape[0]
    lhs = np.kron(np.eye(n), a) + np.kron(a, np.eye(n))
    try:
        flat = np.linalg.solve(lhs, -d.reshape(-1))
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(f"vectorized Lyapunov solve failed: {exc}") from exc
    v = flat.reshape(n, n)
    return 0.5 * (v + v.T)


def lyapunov_residual(a: np.ndarray, d: np.ndarray, v: np.ndarray) -> float:
    """Relative Frobenius residual of the Lyapunov equation."""
    return float(
        np.linalg.norm(a @ v + v @ a.T + d) / np.linalg.norm(d)
    )


def symplectic_eigenvalues(v: np.ndarray) -> np.ndarray:
    """Positive symplectic spectrum of a 2n x 2n covariance matrix."""
    n_modes = v.shape[0] // 2
    omega = symplectic_form(n_modes)
    spectrum = np.linalg.eigvals(1j * omega @ v)
    values = np.sort(np.abs(spectrum))
    # eigenvalues come in +-nu pairs, so each nu appears twice in sorted
    # order; keep one representative of each adjacent pair
    return values[::2]


def is_physical(v: np.ndarray, slack: float = PHYSICALITY_SLACK) -> bool:
    """True when every symplectic eigenvalue is >= 1/2 - slack."""
    return bool(np.min(symplectic_eigenvalues(v)) >= 0.5 - slack)


def reduce_to_pair(v: np.ndarray, pair: str) -> np.ndarray:
    """4x4 covariance of one bipartition, rows/cols per PAIRS, order kept."""
    idx = PAIRS[pair]
    return v[np.ix_(idx, idx)]


def _nu_spectral(v4: np.ndarray) -> float:
    """Minimum symplectic eigenvalue after partially transposing mode 1."""
    p = np.diag([1.0, -1.0, 1.0, 1.0])
    vt = p @ v4 @ p
    omega = symplectic_form(2)
    spectrum = np.abs(np.linalg.eigvals(1j * omega @ vt))
    return float(np.min(spectrum))


def _nu_closed_form(v4: np.ndarray) -> float:
    """Closed-form minimum PT symplectic eigenvalue via block determinants."""
    block_a = np.linalg.det(v4[:2, :2])
    block_b = np.linalg.det(v4[2:, 2:])
    block_c = np.linalg.det(v4[:2, 2:])
    sigma = block_a + block_b - 2.0 * block_c
    disc = sigma * sigma - 4.0 * np.linalg.det(v4)
    if disc < 0:
        # degenerate PT spectrum; clamp the tiny negative round-off
        if disc < -ROUTE_AGREEMENT * max(1.0, sigma * sigma):
            raise Unphysical(f"PT discriminant {disc:.3e} < 0")
        disc = 0.0
    nu_sq = 0.5 * (sigma - np.sqrt(disc))
    if nu_sq <= 0:
        raise Unphysical(f"PT symplectic eigenvalue squared {nu_sq:.3e} <= 0")
    return float(np.sqrt(nu_sq))


def log_negativity(v4: np.ndarray) -> tuple[float, float]:
    """Logarithmic negativity and minimum PT symplectic eigenvalue of a 4x4 CM.

    nu is computed along two independent routes (partial-transpose spectrum
    and the block-determinant closed form) which must agree to
    ROUTE_AGREEMENT (scaled for far-from-unity spectra); the closed form is
    authoritative, being continuous through spectral degeneracies. Returns
    (max(0, -ln 2 nu), nu).
    """
    v4 = np.asarray(v4, dtype=float)
    nu = _nu_closed_form(v4)
    nu_check = _nu_spectral(v4)
    scale = max(1.0, abs(nu))
    if abs(nu - nu_check) > ROUTE_AGREEMENT * scale:
        raise Unphysical(
            f"PT symplectic eigenvalue routes disagree: {nu!r} vs {nu_check!r}"
        )
    return max(0.0, -float(np.log(2.0 * nu))), nu


def contrast_ratio(e_plus: float, e_minus: float) -> float:
    """Bidirectional contrast |e+ - e-| / (e+ + e-), with 0/0 -> 0."""
    if e_plus < 0 or e_minus < 0:
        raise ValueError("negativities must be >= 0")
    total = e_plus + e_minus
    if total == 0.0:
        return 0.0
    return abs(e_plus - e_minus) / total


@dataclass(frozen=True)
class PairResult:
    """Negativities and minimum PT symplectic eigenvalues of all three pairs."""

    e_nm: float
    e_mb: float
    e_nb: float
    nu_nm: float
    nu_mb: float
    nu_nb: float

    def negativity(self, pair: str) -> float:
        return getattr(self, f"e_{pair}")


@dataclass(frozen=True)
class NonrecipResult:
    """Contrast ratios plus the two branch PairResults they derive from."""

    n_nm: float
    n_mb: float
    n_nb: float
    plus: PairResult
    minus: PairResult

    def contrast(self, pair: str) -> float:
        return getattr(self, f"n_{pair}")


def steady_covariance(params: SystemParams) -> np.ndarray:
    """Full pipeline to the 6x6 steady-state covariance matrix.

    Raises Unstable / NonConvergence from the underlying steps and
    Unphysical if the solved covariance violates the uncertainty bound.
    """
    steady = solve_steady_state(params)
    a = build_drift(params, steady)
    d = build_diffusion(params)
    v = solve_lyapunov(a, d)
    if not is_physical(v):
        raise Unphysical("steady-state covariance violates the symplectic bound")
    return v


def entangle_with_margin(params: SystemParams) -> tuple[PairResult, float]:
    """Negativities of all three pairs plus the stability margin used."""
    steady = solve_steady_state(params)
    a = build_drift(params, steady)
    margin = stability_margin(a)
    if margin >= 0:
        raise Unstable(margin)
    d = build_diffusion(params)
    v = solve_lyapunov(a, d)
    if not is_physical(v):
        raise Unphysical("steady-state covariance violates the symplectic bound")
    values = {}
    for pair in PAIRS:
        e, nu = log_negativity(reduce_to_pair(v, pair))
        values[f"e_{pair}"] = e
        values[f"nu_{pair}"] = nu
    return PairResult(**values), margin


def entangle_all(params: SystemParams) -> PairResult:
    """Three bipartite logarithmic negativities at one parameter point."""
    return entangle_with_margin(params)[0]


def nonrecip_with_margin(
    params: SystemParams, delta_B_magnitude: float
) -> tuple[NonrecipResult, float]:
    """Branch contrasts plus the worse (max) of the two branch margins.

    Everything except the Barnett shift sign is held fixed. Unstable is
    re-raised with the failing branch tagged.
    """
    magnitude = abs(delta_B_magnitude)
    results = {}
    margins = []
    for sign, label in ((+1.0, "+"), (-1.0, "-")):
        branch = params.with_updates(delta_B=sign * magnitude)
        try:
            result, margin = entangle_with_margin(branch)
        except Unstable as exc:
            raise Unstable(exc.margin, branch=label) from None
        results[label] = result
        margins.append(margin)
    plus, minus = results["+"], results["-"]
    result = NonrecipResult(
        n_nm=contrast_ratio(plus.e_nm, minus.e_nm),
        n_mb=contrast_ratio(plus.e_mb, minus.e_mb),
        n_nb=contrast_ratio(plus.e_nb, minus.e_nb),
        plus=plus,
        minus=minus,
    )
    return result, max(margins)


def nonrecip_all(params: SystemParams, delta_B_magnitude: float) -> NonrecipResult:
    """Contrast ratios between the +|delta_B| and -|delta_B| branches."""
    return nonrecip_with_margin(params, delta_B_magnitude)[0]
