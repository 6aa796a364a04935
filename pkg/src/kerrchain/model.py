"""Mean-field sector solver for a Kerr-nonlinear coupled-cavity chain.

Each momentum sector (k, n) reduces to a 2x2 problem on the states with
n photons / no atomic excitation and n-1 photons / one atomic excitation.
The Kerr medium enters through a self-consistent photon density n0 that
shifts the bare photon dispersion.
"""

from dataclasses import dataclass
import functools
import math

import numpy as np

# Apery's constant, zeta(3)
ZETA3 = 1.2020569031595942854


class ConvergenceError(RuntimeError):
    """Raised when the photon-density fixed point cannot be located."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class ModelParams:
    """Physical couplings, all energies in units of the atom-light coupling g.

    g     atom-light coupling (the global energy unit)
    eps   atomic transition frequency
    gamma Kerr constant
    t     nearest-neighbour hopping amplitude (longer-range decays as 1/d^3)
    L     chain length (even, so the band minimum k = L/2 exists)
    """

    g: float = 1.0
    eps: float = 0.0
    gamma: float = 0.0
    t: float = 0.0
    L: int = 1000

    def __post_init__(self):
        if self.g <= 0:
            raise ValueError("g must be positive")
        if self.eps < 0:
            raise ValueError("eps must be non-negative")
        if self.gamma < 0:
            raise ValueError("gamma must be non-negative")
        if self.t < 0:
            raise ValueError("t must be non-negative")
        if self.L < 2 or self.L % 2 != 0:
            raise ValueError("L must be an even integer >= 2")


@dataclass(frozen=True)
class NumericsConfig:
    series_tol: float = 1e-12
    fixpoint_tol: float = 1e-12
    fixpoint_max_iter: int = 10_000
    damping: float = 0.5
    root_tol: float = 1e-10

    def __post_init__(self):
        if min(self.series_tol, self.fixpoint_tol, self.root_tol) <= 0:
            raise ValueError("tolerances must be strictly positive")
        if not 0 < self.damping <= 1:
            raise ValueError("damping must lie in (0, 1]")
        if self.fixpoint_max_iter < 1:
            raise ValueError("fixpoint_max_iter must be positive")


DEFAULT_NUMERICS = NumericsConfig()


@dataclass(frozen=True)
class SectorState:
    """Converged mean-field solution of one (k, n) sector."""

    k: float
    n: int
    omega_k: float
    n0: float
    omega_bar: float
    chi: float
    alpha: float
    beta: float
    energy: float


@functools.lru_cache(maxsize=None)
def _cosine_series(theta, n_terms):
    """Partial sum of cos(d*theta)/d^3 over d = 1..n_terms."""
    d = np.arange(1, n_terms + 1, dtype=float)
    return float(np.sum(np.cos(d * theta) / d**3))


def dispersion(k, params, cfg=DEFAULT_NUMERICS):
    """Photon band omega_k = 2t [ sum_d cos(2 pi k d / L)/d^3 - zeta(3) ].

    The series is truncated once the integral tail bound
    sum_{d>D} 1/d^3 < 1/(2 D^2) drops below series_tol / (2t).
    k may be fractional; only the phase 2 pi k / L matters.
    """
    if not 0 <= k <= params.L:
        raise ValueError(f"k = {k} outside [0, {params.L}]")
    t = params.t
    if t == 0.0:
        return 0.0
    theta = 2.0 * math.pi * k / params.L
    # need D > sqrt(t / series_tol); round up to a power of two so the
    # cached partial sums are reused across nearby t values
    n_min = max(64.0, math.sqrt(t / cfg.series_tol))
    n_terms = 1 << math.ceil(math.log2(n_min))
    return 2.0 * t * (_cosine_series(theta, n_terms) - ZETA3)


def hopping_from_cavity_params(omega_z, omega_x, u_mean):
    """Hopping amplitude from the cavity frequencies and mean spacing."""
    if omega_z <= 0 or omega_x <= 0 or u_mean <= 0:
        raise ValueError("cavity parameters must be strictly positive")
    return omega_z**2 / (2.0 * omega_x * u_mean**3)


def sector_energy_given_omegabar(n, omega_bar, params):
    """Ground-state data of the 2x2 sector block at a fixed shifted frequency.

    Returns (chi, alpha, beta, energy) where alpha multiplies |0, n> and
    beta multiplies |1, n-1>.  The n = 0 sector is a single state with
    energy 0.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    delta = 0.5 * (omega_bar - params.eps)
    if n == 0:
        return abs(delta), 1.0, 0.0, 0.0
    gsn = params.g * math.sqrt(n)
    chi = math.hypot(gsn, delta)
    beta = math.sqrt((chi + delta) / (2.0 * chi))
    alpha = gsn / math.sqrt(2.0 * chi * (chi + delta))
    energy = omega_bar * n - delta - chi
    return chi, alpha, beta, energy


def _beta_sq(n, omega_bar, params):
    _, _, beta, _ = sector_energy_given_omegabar(n, omega_bar, params)
    return beta * beta


def _self_consistent_n0(n, omega_k, params, cfg):
    """Solve n0 = n - beta(omega_k + gamma*n0)^2 on [n-1, n].

    Damped iteration from n0 = n; bisection fallback (the residual
    changes sign across the bracket because beta^2 lies in [0, 1]).
    """
    gamma = params.gamma
    lam = cfg.damping
    x = float(n)
    for _ in range(cfg.fixpoint_max_iter):
        fx = n - _beta_sq(n, omega_k + gamma * x, params)
        if abs(x - fx) < cfg.fixpoint_tol:
            return x
        x = (1.0 - lam) * x + lam * fx

    last_residual = abs(x - (n - _beta_sq(n, omega_k + gamma * x, params)))
    lo, hi = float(n - 1), float(n)
    for _ in range(cfg.fixpoint_max_iter):
        mid = 0.5 * (lo + hi)
        resid = mid - (n - _beta_sq(n, omega_k + gamma * mid, params))
        if abs(resid) < cfg.fixpoint_tol:
            return mid
        if resid > 0.0:
            hi = mid
        else:
            lo = mid
    raise ConvergenceError(
        f"photon-density fixed point did not converge for n={n}, "
        f"omega_k={omega_k}: last residual {last_residual:.3e}",
        residual=last_residual,
    )


def solve_sector(k, n, params, cfg=DEFAULT_NUMERICS):
    """Solve one (k, n) sector self-consistently and return its state."""
    if n < 0:
        raise ValueError("n must be non-negative")
    omega_k = dispersion(k, params, cfg)
    if n == 0:
        n0 = 0.0
    elif params.gamma == 0.0:
        # Kerr term off: the fixed point is closed-form
        n0 = n - _beta_sq(n, omega_k, params)
    else:
        n0 = _self_consistent_n0(n, omega_k, params, cfg)
    omega_bar = omega_k + params.gamma * n0
    chi, alpha, beta, energy = sector_energy_given_omegabar(n, omega_bar, params)
    return SectorState(
        k=k, n=n, omega_k=omega_k, n0=n0, omega_bar=omega_bar,
        chi=chi, alpha=alpha, beta=beta, energy=energy,
    )


def spectrum_over_k(n, params, cfg=DEFAULT_NUMERICS, k_samples=201):
    """Sector energies on an even k-grid over [0, L], as (k, E) rows."""
    if k_samples < 2:
        raise ValueError("k_samples must be at least 2")
    ks = np.linspace(0.0, params.L, k_samples)
    energies = [solve_sector(k, n, params, cfg).energy for k in ks]
    return np.column_stack([ks, energies])
