"""Steady state, drift matrix, and diffusion matrix of the linearized model.

The quadrature basis is (X_n, Y_n, X_m, Y_m, q, p) with X = (a + a^\\dagger)/
sqrt(2), so vacuum variance is 1/2. Matrices are plain float ndarrays; shape
and sparsity contracts live in the constructing functions below.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import NonConvergence
from .params import GAMMA_GYRO, EffectiveDrive, MicroscopicDrive, SystemParams

HBAR = 1.054571817e-34
KB = 1.380649e-23

# fixed-point controls for the microscopic steady state
FP_TOL = 1e-12
FP_MAX_ITER = 10_000
FP_RESIDUAL = 1e-10


def thermal_occupancy(omega: float, temperature: float) -> float:
    """Mean thermal occupancy N_b = 1/(exp(hbar w / k_B T) - 1).

    Returns 0 exactly at T = 0; underflows gracefully for large hbar w / k_B T.
    """
    if omega <= 0:
        raise ValueError("omega must be > 0")
    if temperature < 0:
        raise ValueError("temperature must be >= 0")
    if temperature == 0:
        return 0.0
    x = HBAR * omega / (KB * temperature)
    if x > 700.0:
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def field_to_frequency(field: float) -> float:
    """Magnetic field (tesla) to magnon angular frequency (rad/s)."""
    return GAMMA_GYRO * field


def barnett_field(delta_B: float) -> float:
    """Barnett shift (rad/s) to the equivalent magnetic field (tesla)."""
    return delta_B / GAMMA_GYRO


@dataclass(frozen=True)
class SteadyState:
    """Classical steady-state amplitudes and the resulting couplings.

    m_s, n_s are dimensionless mode amplitudes; q_s, p_s the mechanical
    displacement and momentum (p_s is always 0). coupling_G_eff = sqrt(2) i
    g m_s is the effective magnomechanical coupling in rad/s; delta_m_eff the
    converged effective magnon detuning; iterations the number of fixed-point
    steps used (0 in effective drive mode).

    In effective drive mode g is unavailable, so m_s is reported in
    G-normalized form (-i G / sqrt(2), the purely imaginary amplitude that
    reproduces coupling_G_eff = G with g absorbed) and q_s is 0.
    """

    m_s: complex
    n_s: complex
    q_s: float
    p_s: float
    coupling_G_eff: complex
    delta_m_eff: float
    iterations: int


def _magnon_amplitude(params: SystemParams, epsilon_l: float, delta_m_eff: float) -> complex:
    """m_s from the steady-state formula at a given effective detuning."""
    dn = params.delta_n
    kn = params.kappa_n
    km = params.kappa_m
    J = params.coupling_J
    num = epsilon_l * (1j * dn + kn)
    den = J * J + (1j * dn + kn) * (1j * (delta_m_eff + params.delta_B) + km)
    return num / den


def _cavity_amplitude(params: SystemParams, m_s: complex) -> complex:
    """n_s exactly as printed: -J m_s (dn + 2 chi e^{i beta}) / (dn^2 - 4 chi^2).

    The printed expression has a removable blow-up at |delta_n| = 2 chi; nan
    is returned there rather than raising, since n_s feeds nothing downstream.
    """
    dn = params.delta_n
    den = dn * dn - 4.0 * params.chi * params.chi
    if den == 0.0:
        return complex(float("nan"), float("nan"))
    return -params.coupling_J * m_s * (dn + 2.0 * params.chi * cmath.exp(1j * params.beta)) / den


def solve_steady_state(params: SystemParams) -> SteadyState:
    """Solve the classical steady state for either drive mode.

    Effective mode: coupling_G is taken as the (real, >= 0) effective
    coupling directly; no iteration. Microscopic mode: fixed-point iteration
    of m_s <-> q_s with the mechanical frequency shift g q_s folded into the
    effective detuning, 0.5 damping when the update oscillates, and a
    relative tolerance of FP_TOL on q_s.
    """
    if isinstance(params.drive, EffectiveDrive):
        G = params.drive.coupling_G
        m_s = -1j * G / math.sqrt(2.0)
        return SteadyState(
            m_s=m_s,
            n_s=_cavity_amplitude(params, m_s),
            q_s=0.0,
            p_s=0.0,
            coupling_G_eff=complex(G),
            delta_m_eff=params.delta_m_eff,
            iterations=0,
        )

    drive: MicroscopicDrive = params.drive
    g0 = drive.g0
    eps = drive.epsilon_l
    omega_b = params.omega_b

    q = 0.0
    m_s = 0.0 + 0.0j
    prev_step = 0.0
    for iteration in range(1, FP_MAX_ITER + 1):
        delta_m_eff = drive.delta_m_bare + g0 * q
        m_s = _magnon_amplitude(params, eps, delta_m_eff)
        q_new = -g0 * abs(m_s) ** 2 / omega_b
        step = q_new - q
        if step * prev_step < 0:
            q_new = q + 0.5 * step
            step = q_new - q
        if abs(step) <= FP_TOL * max(1.0, abs(q)):
            q = q_new
            break
        prev_step = step
        q = q_new
    else:
        raise NonConvergence(
            f"steady-state fixed point did not converge in {FP_MAX_ITER} iterations"
        )

    delta_m_eff = drive.delta_m_bare + g0 * q
    m_s = _magnon_amplitude(params, eps, delta_m_eff)
    residual = abs(-g0 * abs(m_s) ** 2 / omega_b - q) / max(1.0, abs(q))
    if residual > FP_RESIDUAL:
        raise NonConvergence(
            f"steady-state residual {residual:.3e} above {FP_RESIDUAL:.0e}"
        )
    return SteadyState(
        m_s=m_s,
        n_s=_cavity_amplitude(params, m_s),
        q_s=q,
        p_s=0.0,
        coupling_G_eff=math.sqrt(2.0) * 1j * g0 * m_s,
        delta_m_eff=delta_m_eff,
        iterations=iteration,
    )


def build_drift(params: SystemParams, steady: SteadyState) -> np.ndarray:
    """Assemble the 6x6 drift matrix over (X_n, Y_n, X_m, Y_m, q, p).

    The effective coupling enters as G = |coupling_G_eff| (real working
    regime); its sign is a local phonon rotation with no observable effect.
    The magnon rows use the total detuning delta_m_eff + delta_B.
    """
    kn = params.kappa_n
    km = params.kappa_m
    dn = params.delta_n
    dm = steady.delta_m_eff + params.delta_B
    J = params.coupling_J
    chi = params.chi
    beta = params.beta
    G = abs(steady.coupling_G_eff)

    a = np.zeros((6, 6))
    a[0, 0] = -kn + 2.0 * chi * math.cos(beta)
    a[0, 1] = dn + 2.0 * chi * math.sin(beta)
    a[0, 3] = J
    a[1, 0] = -dn + 2.0 * chi * math.sin(beta)
    a[1, 1] = -kn - 2.0 * chi * math.cos(beta)
    a[1, 2] = -J
    a[2, 1] = J
    a[2, 2] = -km
    a[2, 3] = dm
    a[2, 4] = -G
    a[3, 0] = -J
    a[3, 2] = -dm
    a[3, 3] = -km
    a[4, 5] = params.omega_b
    a[5, 3] = G
    a[5, 4] = -params.omega_b
    a[5, 5] = -params.gamma_b
    return a


def build_diffusion(params: SystemParams) -> np.ndarray:
    """Diagonal diffusion matrix diag(kn, kn, km, km, 0, gb(2 N_b + 1)).

    Cavity and magnon baths are vacuum; temperature enters only through the
    phonon channel.
    """
    n_b = thermal_occupancy(params.omega_b, params.temperature)
    return np.diag(
        [
            params.kappa_n,
            params.kappa_n,
            params.kappa_m,
            params.kappa_m,
            0.0,
            params.gamma_b * (2.0 * n_b + 1.0),
        ]
    )
