"""Brute-force exact diagonalization of the full cavity-chain Hamiltonian.

Independent oracle for the mean-field engine: the original spin-form
Hamiltonian (atoms as two-level systems, no fermionic replacement) is
assembled on tiny periodic chains with a per-cavity photon cutoff and
diagonalized densely.  At t = 0 the chain decouples into single-cavity
Jaynes-Cummings + Kerr blocks with known analytic levels.
"""

from dataclasses import dataclass
import itertools
import math

import numpy as np
import scipy.linalg

from .model import ZETA3

DIM_CAP = 20_000


@dataclass(frozen=True)
class FockBasis:
    """Product basis (atom_j, photons_j) for an L_ed-site chain.

    states enumerates every configuration with atom_j in {0, 1} and
    photons_j in [0, n_max]; dim = (2 (n_max + 1))^L_ed.
    """

    L_ed: int
    n_max: int
    states: tuple

    @property
    def dim(self):
        return len(self.states)

    @classmethod
    def build(cls, L_ed, n_max):
        if not 1 <= L_ed <= 3:
            raise ValueError("L_ed must be 1, 2 or 3")
        if n_max < 0:
            raise ValueError("n_max must be non-negative")
        site = [(a, m) for a in (0, 1) for m in range(n_max + 1)]
        states = tuple(itertools.product(site, repeat=L_ed))
        return cls(L_ed=L_ed, n_max=n_max, states=states)

    def index(self):
        return {s: i for i, s in enumerate(self.states)}

    def total_excitations(self):
        """Per-state total excitation number (photons + excited atoms)."""
        return np.array([sum(a + m for a, m in s) for s in self.states])


@dataclass(frozen=True)
class EDResult:
    eigenvalues: np.ndarray
    sector_minima: dict


def build_hamiltonian(basis, params):
    """Assemble the dense symmetric Hamiltonian matrix on the Fock basis.

    Periodic boundary, hopping range d = 1..L_ed//2 (min-image distances)
    with amplitude t/d^3, on-site frequency omega = -2 t zeta(3).  Hops
    that would exceed the photon cutoff contribute no matrix element.
    """
    if basis.dim > DIM_CAP:
        raise ValueError(f"basis dimension {basis.dim} exceeds cap {DIM_CAP}")
    L = basis.L_ed
    n_max = basis.n_max
    g, eps, gamma, t = params.g, params.eps, params.gamma, params.t
    omega = -2.0 * t * ZETA3

    index = basis.index()
    H = np.zeros((basis.dim, basis.dim))

    def hop(state, src, dst, amp):
        """Photon move src -> dst; returns (target index, amplitude) or None."""
        a_src, m_src = state[src]
        a_dst, m_dst = state[dst]
        if m_src == 0 or m_dst + 1 > n_max:
            return None
        new = list(state)
        new[src] = (a_src, m_src - 1)
        new[dst] = (a_dst, m_dst + 1)
        return index[tuple(new)], amp * math.sqrt(m_src) * math.sqrt(m_dst + 1)

    for i, state in enumerate(basis.states):
        H[i, i] = sum(omega * m + eps * a + gamma * m * (m - 1)
                      for a, m in state)
        # atom-photon exchange: a^dag sigma^- + a sigma^+
        for j, (a, m) in enumerate(state):
            if a == 1 and m + 1 <= n_max:
                new = list(state)
                new[j] = (0, m + 1)
                H[index[tuple(new)], i] += g * math.sqrt(m + 1)
            if a == 0 and m >= 1:
                new = list(state)
                new[j] = (1, m - 1)
                H[index[tuple(new)], i] += g * math.sqrt(m)
        # photon hopping, both directions so H is built symmetric
        for d in range(1, L // 2 + 1):
            t_d = t / d**3
            if t_d == 0.0:
                continue
            for j in range(L):
                jd = (j + d) % L
                for src, dst in ((jd, j), (j, jd)):
                    res = hop(state, src, dst, t_d)
                    if res is not None:
                        H[res[0], i] += res[1]
    return H


def diagonalize(matrix, excitations=None):
    """Full dense spectrum; optional per-excitation-sector minima.

    excitations, when given, assigns a conserved total-excitation number
    to each basis index; sector minima come from diagonalizing the
    corresponding blocks.
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError("matrix must be square")
    if matrix.shape[0] > DIM_CAP:
        raise ValueError("matrix dimension exceeds cap")
    if not np.allclose(matrix, matrix.T, atol=1e-12, rtol=0.0):
        raise ValueError("matrix is not symmetric")

    eigenvalues = np.sort(scipy.linalg.eigvalsh(matrix))
    sector_minima = {}
    if excitations is not None:
        excitations = np.asarray(excitations)
        for N in np.unique(excitations):
            idx = np.flatnonzero(excitations == N)
            block = matrix[np.ix_(idx, idx)]
            sector_minima[int(N)] = float(scipy.linalg.eigvalsh(block).min())
    return EDResult(eigenvalues=eigenvalues, sector_minima=sector_minima)


def single_cavity_jc_kerr_spectrum(n, params):
    """Analytic (E_minus, E_plus) doublet of one decoupled cavity at filling n.

    The 2x2 block on {|0, n>, |1, n-1>} has diagonals
    (omega n + gamma n(n-1), omega (n-1) + eps + gamma (n-1)(n-2)) and
    off-diagonal g sqrt(n); omega = -2 t zeta(3) vanishes at t = 0.
    """
    if n < 1:
        raise ValueError("the doublet needs n >= 1")
    omega = -2.0 * params.t * ZETA3
    d1 = omega * n + params.gamma * n * (n - 1)
    d2 = omega * (n - 1) + params.eps + params.gamma * (n - 1) * (n - 2)
    avg = 0.5 * (d1 + d2)
    rad = math.hypot(0.5 * (d1 - d2), params.g * math.sqrt(n))
    return avg - rad, avg + rad


def jc_kerr_levels(n, params):
    """All single-cavity levels in the excitation-n sector (t = 0 limit)."""
    if n == 0:
        return [0.0]
    return list(single_cavity_jc_kerr_spectrum(n, params))


def analytic_chain_levels(L_ed, N, params):
    """Sorted t = 0 chain levels in total sector N as sums of cavity levels."""
    def site_sums(sites, total):
        if sites == 1:
            for e in jc_kerr_levels(total, params):
                yield e
            return
        for n1 in range(total + 1):
            for e1 in jc_kerr_levels(n1, params):
                for rest in site_sums(sites - 1, total - n1):
                    yield e1 + rest
    return sorted(site_sums(L_ed, N))
