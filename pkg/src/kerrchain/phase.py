"""Mott-insulator / superfluid transition observables.

Chemical potentials come from sector-energy differences at the band
extremes (maximum at k = 0, minimum at k = L/2); the Mott lobe for a
given filling n closes where the particle and hole potentials meet.
"""

from dataclasses import dataclass, replace
import math

import numpy as np

from .model import ConvergenceError, DEFAULT_NUMERICS, solve_sector


@dataclass(frozen=True)
class LobeBoundary:
    """Upper/lower Mott-lobe boundary traced along a hopping grid.

    points is an (m, 3) array of rows (t, mu_plus, mu_minus); closed
    flags the rows past lobe closure (mu_plus <= mu_minus).
    """

    n: int
    eps: float
    gamma: float
    points: np.ndarray
    closed: np.ndarray


@dataclass(frozen=True)
class CriticalPoint:
    """Lobe-closure hopping t_c with bisection certificates."""

    n: int
    eps: float
    gamma: float
    t_c: float
    gap_residual: float
    bracket_width: float
    status: str = "ok"


def chemical_potentials(n, params, cfg=DEFAULT_NUMERICS):
    """Particle and hole chemical potentials (mu_plus, mu_minus) at filling n.

    Each sector energy carries its own self-consistent photon density.
    """
    if n < 1:
        raise ValueError("chemical potentials need n >= 1")
    k_min = params.L // 2
    mu_plus = (solve_sector(k_min, n + 1, params, cfg).energy
               - solve_sector(k_min, n, params, cfg).energy)
    mu_minus = (solve_sector(0, n, params, cfg).energy
                - solve_sector(0, n - 1, params, cfg).energy)
    return mu_plus, mu_minus


def trace_lobe(n, eps, gamma, t_grid, params, cfg=DEFAULT_NUMERICS):
    """Evaluate both lobe boundaries on a hopping grid.

    Points past closure are kept and flagged, so full curves can be drawn.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.size == 0:
        raise ValueError("t_grid must be non-empty")
    if np.any(t_grid < 0):
        raise ValueError("t_grid must be non-negative")
    if t_grid.size > 1 and np.any(np.diff(t_grid) <= 0):
        raise ValueError("t_grid must be strictly increasing")

    rows = []
    for t in t_grid:
        p = replace(params, t=float(t), eps=eps, gamma=gamma)
        mu_p, mu_m = chemical_potentials(n, p, cfg)
        rows.append((t, mu_p, mu_m))
    points = np.array(rows)
    closed = points[:, 1] <= points[:, 2]
    return LobeBoundary(n=n, eps=eps, gamma=gamma, points=points, closed=closed)


def critical_hopping(n, eps, gamma, params, cfg=DEFAULT_NUMERICS):
    """Locate the lobe closure t_c by bracketing + bisection on the MI gap.

    The upper bracket is expanded by doubling from 0.05 g until the gap
    goes negative, then bisected down to root_tol.
    """
    if n < 1:
        raise ValueError("critical hopping needs n >= 1")

    def gap(t):
        p = replace(params, t=t, eps=eps, gamma=gamma)
        mu_p, mu_m = chemical_potentials(n, p, cfg)
        return mu_p - mu_m

    if gap(0.0) <= 0.0:
        raise ValueError(
            f"no MI gap at t=0 for n={n}, eps={eps}, gamma={gamma}")

    lo, hi = 0.0, 0.05 * params.g
    for _ in range(40):
        if gap(hi) < 0.0:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise ConvergenceError(
            f"lobe does not close within bracket expansion (t up to {hi:g})")

    while hi - lo > cfg.root_tol:
        mid = 0.5 * (lo + hi)
        if gap(mid) < 0.0:
            hi = mid
        else:
            lo = mid
    t_c = 0.5 * (lo + hi)
    return CriticalPoint(
        n=n, eps=eps, gamma=gamma, t_c=t_c,
        gap_residual=abs(gap(t_c)), bracket_width=hi - lo,
    )


def tc_sweep(n_list, eps_grid, gamma_list, params, cfg=DEFAULT_NUMERICS):
    """Critical hopping over the Cartesian grid, rows ordered (n, gamma, eps).

    Per-row failures are recorded in the row status; the sweep continues.
    """
    n_list = list(n_list)
    gamma_list = list(gamma_list)
    eps_grid = np.asarray(eps_grid, dtype=float)
    if not n_list or not gamma_list or eps_grid.size == 0:
        raise ValueError("sweep grids must be non-empty")
    if eps_grid.size > 1 and np.any(np.diff(eps_grid) <= 0):
        raise ValueError("eps_grid must be strictly increasing")

    rows = []
    for n in n_list:
        for gamma in gamma_list:
            for eps in eps_grid:
                try:
                    rows.append(critical_hopping(n, float(eps), gamma, params, cfg))
                except (ValueError, ConvergenceError) as exc:
                    rows.append(CriticalPoint(
                        n=n, eps=float(eps), gamma=gamma,
                        t_c=math.nan, gap_residual=math.nan,
                        bracket_width=math.nan, status=str(exc),
                    ))
    return rows
