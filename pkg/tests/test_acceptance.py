"""Acceptance suite: one test per release criterion, each printing a
pass/fail line with its measured figure of merit.

Run with `pytest tests/test_acceptance.py -v -s` to see the report.
"""

import concurrent.futures
import math
import time

import numpy as np
import pytest
from scipy.optimize import brentq

from kerrchain.cli import main, read_csv
from kerrchain.model import (
    ModelParams,
    ZETA3,
    dispersion,
    sector_energy_given_omegabar,
    solve_sector,
)
from kerrchain.phase import chemical_potentials, critical_hopping, tc_sweep


def report(num, label, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"criterion {num:2d} [{status}] {label}" + (f" ({detail})" if detail else ""))
    assert ok, f"criterion {num}: {label} ({detail})"


def test_01_dispersion_exactness():
    start = time.perf_counter()
    p = ModelParams(t=1.0)
    w0 = dispersion(0, p)
    whalf = dispersion(p.L // 2, p)
    d = np.arange(1, 1_000_001, dtype=float)
    brute = 2.0 * (np.sum(np.cos(d * math.pi) / d**3) - ZETA3)
    elapsed = time.perf_counter() - start
    ok = (abs(w0) < 1e-10
          and abs(whalf + 3.5 * ZETA3) < 1e-8
          and abs(whalf - brute) < 1e-8
          and elapsed < 1.0)
    report(1, "dispersion endpoints vs analytic identity", ok,
           f"|w0|={abs(w0):.2e}, |dw|={abs(whalf + 3.5 * ZETA3):.2e}, {elapsed:.2f}s")


def test_02_sector_energy_oracle():
    start = time.perf_counter()
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(1000):
        n = int(rng.integers(1, 9))
        omega_bar = rng.uniform(-10, 10)
        eps = rng.uniform(0, 2)
        block = np.array([[omega_bar * n, math.sqrt(n)],
                          [math.sqrt(n), omega_bar * (n - 1) + eps]])
        ground = np.linalg.eigvalsh(block).min()
        _, _, _, energy = sector_energy_given_omegabar(
            n, omega_bar, ModelParams(eps=eps))
        worst = max(worst, abs(energy - ground))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-12 and elapsed < 1.0
    report(2, "1000 random sectors vs 2x2 eigensolver", ok,
           f"worst={worst:.2e}, {elapsed:.2f}s")


def test_03_zero_hopping_limit():
    mu_p, mu_m = chemical_potentials(1, ModelParams(t=0.0))
    gap = mu_p - mu_m
    ok = (abs(mu_p + (math.sqrt(2) - 1)) < 1e-12
          and abs(mu_m + 1.0) < 1e-12
          and abs(gap - (2 - math.sqrt(2))) < 1e-12)
    report(3, "t=0 chemical potentials analytic", ok,
           f"mu+={mu_p:.12f}, mu-={mu_m:.12f}")


def test_04_critical_point_oracle():
    start = time.perf_counter()
    cp = critical_hopping(1, 0.0, 0.0, ModelParams())

    step = 1e-5
    t = max(0.0, round(cp.t_c / step - 5) * step)
    while True:
        mu_p, mu_m = chemical_potentials(1, ModelParams(t=t))
        if mu_p - mu_m < 0:
            break
        t += step
    scan_ok = abs(cp.t_c - t) <= step

    def closure(x):
        return math.sqrt(2 + x * x / 4) - math.sqrt(1 + x * x / 4) - 1 + x

    t_ref = brentq(closure, 0.0, 1.0, xtol=1e-14) / (3.5 * ZETA3)
    elapsed = time.perf_counter() - start
    ok = scan_ok and abs(cp.t_c - t_ref) < 1e-6 and elapsed < 5.0
    report(4, "t_c(n=1) vs dense scan and scalar-equation root", ok,
           f"t_c={cp.t_c:.6f}, ref={t_ref:.6f}, {elapsed:.2f}s")


def test_05_paper_trends_full_sweep():
    start = time.perf_counter()
    eps_grid = np.linspace(0.0, 1.5, 50)
    rows = tc_sweep([1, 3, 6], eps_grid, [0.0, 0.005, 0.01], ModelParams())
    elapsed = time.perf_counter() - start
    table = {(cp.n, cp.gamma, round(cp.eps, 12)): cp.t_c for cp in rows}
    eps_keys = [round(e, 12) for e in eps_grid]

    mono_eps = all(
        table[(n, g, a)] >= table[(n, g, b)]
        for n in (1, 3, 6) for g in (0.0, 0.005, 0.01)
        for a, b in zip(eps_keys, eps_keys[1:]))
    kerr_up = all(table[(n, 0.01, e)] > table[(n, 0.0, e)]
                  for n in (1, 3, 6) for e in eps_keys)
    n_down = all(table[(6, g, e)] < table[(3, g, e)] < table[(1, g, e)]
                 for g in (0.0, 0.005, 0.01) for e in eps_keys)
    amplified = all(
        (table[(6, 0.01, e)] - table[(6, 0.0, e)])
        > (table[(1, 0.01, e)] - table[(1, 0.0, e)])
        for e in eps_keys)
    ok = (all(cp.status == "ok" for cp in rows)
          and mono_eps and kerr_up and n_down and amplified
          and elapsed < 60.0)
    # (a) is known to fail at this grid resolution: t_c(eps) has a genuine
    # ~5e-6 rise near eps=0 for n >= 3 (d(gap)/d(eps) > 0 at eps=0),
    # invisible at figure scale; asserted as stated regardless
    report(5, "tc-sweep trends: (a) eps down, (b) gamma up, (c) n down, "
              "(d) Kerr amplified", ok,
           f"a={mono_eps}, b={kerr_up}, c={n_down}, d={amplified}, "
           f"450 points in {elapsed:.1f}s")


def test_06_spectrum_shape(tmp_path):
    out = tmp_path / "spectrum.csv"
    assert main(["spectrum", "--out", str(out)]) == 0
    _, _, rows = read_csv(out)
    data = np.array(rows)
    small = data[data[:, 1] == 0.001]
    large = data[data[:, 1] == 0.2]
    ok = (np.ptp(small[:, 5]) < 0.005
          and large[np.argmin(large[:, 5]), 0] == 0.5
          and large[np.argmax(large[:, 5]), 0] in (0.0, 1.0))
    report(6, "spectrum near-flat at t=0.001, band extrema at t=0.2", ok,
           f"bandwidth(t=0.001)={np.ptp(small[:, 5]):.2e}")


def test_07_lobe_shape(tmp_path):
    out = tmp_path / "lobes.csv"
    assert main(["lobes", "--n", "1,2,3", "--t-grid", "0:0.18:80",
                 "--out", str(out)]) == 0
    _, _, rows = read_csv(out)
    data = np.array(rows)
    closes_once = True
    for n in (1, 2, 3):
        for gamma in (0.0, 0.01):
            sel = data[(data[:, 0] == n) & (data[:, 2] == gamma)]
            flags = sel[:, 6]
            closes_once &= int(np.sum(np.diff(flags) != 0)) == 1

    def mu_minus_t0(n, gamma):
        sel = data[(data[:, 0] == n) & (data[:, 2] == gamma)]
        return sel[0, 5]

    d1 = mu_minus_t0(1, 0.01) - mu_minus_t0(1, 0.0)
    d3 = mu_minus_t0(3, 0.01) - mu_minus_t0(3, 0.0)
    ok = closes_once and d1 > 0 and d3 > d1
    report(7, "lobes close exactly once; Kerr shift grows with n", ok,
           f"shift(n=1)={d1:.4f}, shift(n=3)={d3:.4f}")


def test_08_self_consistency_certificate():
    rng = np.random.default_rng(99)
    worst_resid = 0.0
    worst_norm = 0.0
    for _ in range(200):
        p = ModelParams(t=rng.uniform(0, 0.3), eps=rng.uniform(0, 1.5),
                        gamma=rng.uniform(0, 0.02))
        n = int(rng.integers(1, 8))
        s = solve_sector(float(rng.uniform(0, p.L)), n, p)
        _, _, beta, _ = sector_energy_given_omegabar(n, s.omega_bar, p)
        worst_resid = max(worst_resid, abs(s.n0 - (n - beta**2)))
        worst_norm = max(worst_norm, abs(s.alpha**2 + s.beta**2 - 1))
    ok = worst_resid < 1e-12 and worst_norm < 1e-12
    report(8, "self-consistency and normalization certificates", ok,
           f"resid={worst_resid:.2e}, norm={worst_norm:.2e}")


def test_09_ed_validation():
    from kerrchain.ed import (FockBasis, analytic_chain_levels,
                              build_hamiltonian, diagonalize)
    start = time.perf_counter()
    worst_level = 0.0
    worst_comm = 0.0
    basis = FockBasis.build(2, 6)
    exc = basis.total_excitations()
    Nmat = np.diag(exc.astype(float))
    for gamma in (0.0, 0.01):
        for eps in (0.0, 1.0):
            p = ModelParams(t=0.0, eps=eps, gamma=gamma)
            H = build_hamiltonian(basis, p)
            worst_comm = max(worst_comm, float(np.abs(H @ Nmat - Nmat @ H).max()))
            for N in range(5):
                idx = np.flatnonzero(exc == N)
                got = np.sort(np.linalg.eigvalsh(H[np.ix_(idx, idx)]))
                ref = analytic_chain_levels(2, N, p)
                worst_level = max(worst_level, float(np.abs(got - ref).max()))
    minima = {}
    for n_max in (5, 7):
        b = FockBasis.build(2, n_max)
        H = build_hamiltonian(b, ModelParams(t=0.05))
        res = diagonalize(H, b.total_excitations())
        minima[n_max] = [res.sector_minima[N] for N in (0, 1, 2)]
    cut = max(abs(a - b) for a, b in zip(minima[5], minima[7]))
    elapsed = time.perf_counter() - start
    ok = worst_level < 1e-10 and worst_comm < 1e-12 and cut < 1e-8 and elapsed < 30.0
    report(9, "ED vs analytic JC+Kerr sums, conservation, cutoff stability", ok,
           f"dE={worst_level:.2e}, comm={worst_comm:.2e}, cut={cut:.2e}, {elapsed:.1f}s")


def test_10_determinism(tmp_path):
    # byte-identical CSV across repeated runs
    args = ["tc-sweep", "--n", "1", "--gamma", "0,0.01", "--eps-grid", "0:1:3"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    files_ok = a.read_bytes() == b.read_bytes()

    # serial vs parallel sector solves must agree bit for bit
    p = ModelParams(t=0.13, eps=0.2, gamma=0.01)
    cells = [(k, n) for n in (1, 2, 3) for k in np.linspace(0, p.L, 17)]
    serial = [solve_sector(k, n, p) for k, n in cells]
    with concurrent.futures.ThreadPoolExecutor(max_workers=8) as pool:
        parallel = list(pool.map(lambda cell: solve_sector(*cell, p), cells))
    solves_ok = all(s == q for s, q in zip(serial, parallel))
    ok = files_ok and solves_ok
    report(10, "byte-identical reruns; serial == parallel", ok)
