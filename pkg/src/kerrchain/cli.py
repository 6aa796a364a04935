"""Command-line front end emitting reproducible CSV datasets.

Subcommands: dispersion | spectrum | lobes | tc-sweep | ed-check.
Every CSV starts with a '#'-prefixed metadata block echoing the full run
configuration, so each artifact is self-describing and re-plottable.
Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 I/O error.
"""

import argparse
import math
import sys

import numpy as np

from . import ed
from .model import (ConvergenceError, ModelParams, NumericsConfig,
                    dispersion, solve_sector, spectrum_over_k)
from .phase import chemical_potentials, critical_hopping, tc_sweep, trace_lobe

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2
EXIT_IO = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _fmt(value):
    if isinstance(value, (float, np.floating)):
        return f"{value:.17g}"
    return str(value)


def _parse_grid(spec, name):
    """Grid flag: either 'lo:hi:count' (inclusive linspace) or 'a,b,c'."""
    try:
        if ":" in spec:
            lo, hi, count = spec.split(":")
            return np.linspace(float(lo), float(hi), int(count))
        return np.array([float(x) for x in spec.split(",")])
    except (ValueError, TypeError):
        raise UsageError(f"cannot parse --{name} value {spec!r}")


def _parse_list(spec, name, cast=float):
    try:
        return [cast(x) for x in spec.split(",")]
    except (ValueError, TypeError):
        raise UsageError(f"cannot parse --{name} value {spec!r}")


def write_csv(path, meta, header, rows):
    """Write metadata + header + rows; the file is built fully in memory
    first so a failing path never leaves a partial artifact."""
    lines = [f"# {key} = {_fmt(value)}" for key, value in meta.items()]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    with open(path, "w", newline="") as fh:
        fh.write(text)


def read_csv(path):
    """Re-parse an emitted CSV into (meta, header, float-matrix-ish rows)."""
    meta, header, rows = {}, None, []
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                key, _, value = line[1:].partition("=")
                meta[key.strip()] = value.strip()
            elif header is None:
                header = line.split(",")
            elif line:
                rows.append([_maybe_float(v) for v in line.split(",")])
    return meta, header, rows


def _maybe_float(text):
    try:
        return float(text)
    except ValueError:
        return text


def _plot_script_path(out_path):
    stem = out_path[:-4] if out_path.endswith(".csv") else out_path
    return stem + "_plot.py"


_PLOT_TEMPLATE = """\
#!/usr/bin/env python
# Auto-generated companion plot script; reads only the CSV next to it.
import matplotlib.pyplot as plt
import numpy as np

rows = []
with open({csv!r}) as fh:
    for line in fh:
        if line.startswith("#"):
            continue
        parts = line.strip().split(",")
        if parts and parts[0] == {first_col!r}:
            header = parts
            continue
        if parts and parts[0]:
            rows.append(parts)
cols = {{name: i for i, name in enumerate(header)}}
data = rows

{body}
plt.tight_layout()
plt.savefig({png!r}, dpi=150)
print("wrote", {png!r})
"""


def _emit_plot_script(out_path, header, body):
    path = _plot_script_path(out_path)
    text = _PLOT_TEMPLATE.format(
        csv=out_path, first_col=header[0], body=body,
        png=(out_path[:-4] if out_path.endswith(".csv") else out_path) + ".png")
    with open(path, "w") as fh:
        fh.write(text)
    return path


def _model_flags(sub, t_default="0", multi_t=False):
    sub.add_argument("--t", default=t_default,
                     help="hopping t/g" + (" (comma list)" if multi_t else ""))
    sub.add_argument("--eps", type=float, default=0.0, help="atomic frequency eps/g")
    sub.add_argument("--gamma", default="0", help="Kerr constant gamma/g")
    sub.add_argument("--L", type=int, default=1000, help="chain length (even)")


def _numerics_flags(sub):
    sub.add_argument("--series-tol", type=float, default=1e-12)
    sub.add_argument("--fixpoint-tol", type=float, default=1e-12)
    sub.add_argument("--root-tol", type=float, default=1e-10)


def _out_flags(sub, default_out):
    sub.add_argument("--out", default=default_out, help="output CSV path")
    sub.add_argument("--plot-script", action="store_true",
                     help="also emit a companion matplotlib script")


def build_parser():
    parser = _Parser(prog="kerrchain",
                     description="Phase diagram of a Kerr-nonlinear cavity chain")
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p = subs.add_parser("dispersion", help="photon band omega_k on a k-grid")
    _model_flags(p, t_default="0.2")
    p.add_argument("--n", type=int, default=1, help=argparse.SUPPRESS)
    p.add_argument("--k-samples", type=int, default=201)
    _numerics_flags(p)
    _out_flags(p, "dispersion.csv")

    p = subs.add_parser("spectrum", help="sector energies E_k^n over the band")
    _model_flags(p, t_default="0.001,0.2", multi_t=True)
    p.add_argument("--n", type=int, default=1, help="excitation number")
    p.add_argument("--k-samples", type=int, default=201)
    _numerics_flags(p)
    _out_flags(p, "spectrum.csv")

    p = subs.add_parser("lobes", help="Mott-lobe boundaries over a t-grid")
    p.add_argument("--n", default="1,2,3", help="lobe indices (comma list)")
    p.add_argument("--eps", type=float, default=0.0)
    p.add_argument("--gamma", default="0,0.01", help="Kerr constants (comma list)")
    p.add_argument("--L", type=int, default=1000)
    p.add_argument("--t-grid", default=None,
                   help="'lo:hi:count' or comma list; default 0..1.2*t_c(n=1), 200 pts")
    _numerics_flags(p)
    _out_flags(p, "lobes.csv")

    p = subs.add_parser("tc-sweep", help="critical hopping over (n, gamma, eps)")
    p.add_argument("--n", default="1,3,6", help="lobe indices (comma list)")
    p.add_argument("--gamma", default="0,0.005,0.01", help="Kerr constants (comma list)")
    p.add_argument("--eps-grid", default="0:1.5:50", help="'lo:hi:count' or comma list")
    p.add_argument("--L", type=int, default=1000)
    _numerics_flags(p)
    _out_flags(p, "tc_sweep.csv")

    p = subs.add_parser("ed-check", help="exact-diagonalization validation suite")
    p.add_argument("--ed-L", type=int, default=2, help="ED chain length (1-3)")
    p.add_argument("--ed-nmax", type=int, default=6, help="photon cutoff per cavity")
    p.add_argument("--n-sectors", type=int, default=4,
                   help="compare excitation sectors N <= this")
    p.add_argument("--eps", default="0,1", help="eps values (comma list)")
    p.add_argument("--gamma", default="0,0.01", help="gamma values (comma list)")
    p.add_argument("--t", type=float, default=0.05,
                   help="hopping for the small-t discrepancy report")
    _out_flags(p, "ed_check.csv")
    return parser


def _numerics_from(args):
    return NumericsConfig(series_tol=args.series_tol,
                          fixpoint_tol=args.fixpoint_tol,
                          root_tol=args.root_tol)


def _meta(args, extra=None):
    meta = {"subcommand": args.subcommand}
    # the output path is deliberately not echoed so identical runs emit
    # byte-identical content regardless of where they land
    for key, value in sorted(vars(args).items()):
        if key not in ("subcommand", "func", "out"):
            meta[key] = value
    if extra:
        meta.update(extra)
    return meta


def cmd_dispersion(args):
    cfg = _numerics_from(args)
    t = float(args.t)
    params = ModelParams(t=t, eps=args.eps, gamma=float(args.gamma), L=args.L)
    if args.k_samples < 2:
        raise UsageError("--k-samples must be at least 2")
    ks = np.linspace(0.0, params.L, args.k_samples)
    rows = [(k / params.L, t, dispersion(k, params, cfg)) for k in ks]
    header = ["k_over_L", "t_over_g", "omega_over_g"]
    write_csv(args.out, _meta(args), header, rows)
    if args.plot_script:
        _emit_plot_script(args.out, header, _DISPERSION_PLOT)
    return EXIT_OK


def cmd_spectrum(args):
    cfg = _numerics_from(args)
    t_values = _parse_list(args.t, "t")
    gamma = float(args.gamma)
    if args.k_samples < 2:
        raise UsageError("--k-samples must be at least 2")
    rows = []
    for t in t_values:
        params = ModelParams(t=t, eps=args.eps, gamma=gamma, L=args.L)
        for k, energy in spectrum_over_k(args.n, params, cfg, args.k_samples):
            rows.append((k / params.L, t, args.eps, gamma, args.n, energy))
    header = ["k_over_L", "t_over_g", "eps_over_g", "gamma_over_g", "n", "E_over_g"]
    write_csv(args.out, _meta(args), header, rows)
    if args.plot_script:
        _emit_plot_script(args.out, header, _SPECTRUM_PLOT)
    return EXIT_OK


def cmd_lobes(args):
    cfg = _numerics_from(args)
    n_values = _parse_list(args.n, "n", int)
    gamma_values = _parse_list(args.gamma, "gamma")
    params = ModelParams(L=args.L)
    if args.t_grid is not None:
        t_grid = _parse_grid(args.t_grid, "t-grid")
        if t_grid.size == 0:
            raise UsageError("--t-grid is empty")
    else:
        cp = critical_hopping(1, args.eps, 0.0, params, cfg)
        t_grid = np.linspace(0.0, 1.2 * cp.t_c, 200)
    rows = []
    for n in n_values:
        for gamma in gamma_values:
            lobe = trace_lobe(n, args.eps, gamma, t_grid, params, cfg)
            for (t, mu_p, mu_m), flag in zip(lobe.points, lobe.closed):
                rows.append((n, args.eps, gamma, t, mu_p, mu_m, int(flag)))
    header = ["n", "eps_over_g", "gamma_over_g", "t_over_g",
              "mu_plus_over_g", "mu_minus_over_g", "closed_flag"]
    write_csv(args.out, _meta(args), header, rows)
    if args.plot_script:
        _emit_plot_script(args.out, header, _LOBES_PLOT)
    return EXIT_OK


def cmd_tc_sweep(args):
    cfg = _numerics_from(args)
    n_values = _parse_list(args.n, "n", int)
    gamma_values = _parse_list(args.gamma, "gamma")
    eps_grid = _parse_grid(args.eps_grid, "eps-grid")
    if eps_grid.size == 0:
        raise UsageError("--eps-grid is empty")
    params = ModelParams(L=args.L)
    points = tc_sweep(n_values, eps_grid, gamma_values, params, cfg)
    rows = [(cp.n, cp.gamma, cp.eps, cp.t_c, cp.gap_residual, cp.status)
            for cp in points]
    header = ["n", "gamma_over_g", "eps_over_g", "tc_over_g",
              "gap_residual", "status"]
    write_csv(args.out, _meta(args), header, rows)
    if args.plot_script:
        _emit_plot_script(args.out, header, _TC_PLOT)
    if all(cp.status != "ok" for cp in points):
        print("tc-sweep: every grid point failed", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_ed_check(args):
    eps_values = _parse_list(args.eps, "eps")
    gamma_values = _parse_list(args.gamma, "gamma")
    n_max = args.ed_nmax
    max_sector = args.n_sectors
    if max_sector > n_max:
        print(f"warning: sectors N <= {max_sector} exceed the photon cutoff "
              f"n_max = {n_max}; comparing N <= {n_max} only")
        max_sector = n_max

    basis = ed.FockBasis.build(args.ed_L, n_max)
    excitations = basis.total_excitations()
    report = []
    rows = []
    worst = 0.0
    worst_comm = 0.0
    for gamma in gamma_values:
        for eps in eps_values:
            params = ModelParams(t=0.0, eps=eps, gamma=gamma)
            H = ed.build_hamiltonian(basis, params)
            worst_comm = max(worst_comm, _commutator_norm(H, excitations))
            for N in range(max_sector + 1):
                idx = np.flatnonzero(excitations == N)
                block_eigs = np.sort(np.linalg.eigvalsh(H[np.ix_(idx, idx)]))
                exact = ed.analytic_chain_levels(args.ed_L, N, params)
                for i, (e_num, e_ref) in enumerate(zip(block_eigs, exact)):
                    diff = abs(e_num - e_ref)
                    worst = max(worst, diff)
                    rows.append((gamma, eps, N, i, e_num, e_ref, diff))
    agreement_ok = worst < 1e-10
    comm_ok = worst_comm < 1e-12
    report.append(f"t=0 agreement: {'PASS' if agreement_ok else 'FAIL'} "
                  f"(max |dE| = {worst:.3e}, tolerance 1e-10)")
    report.append(f"excitation conservation: {'PASS' if comm_ok else 'FAIL'} "
                  f"(max |[H,N]| = {worst_comm:.3e}, tolerance 1e-12)")

    # cutoff stability of the small-t ground energies (exploratory scale)
    t = args.t
    e_lo = _sector_ground_energies(args.ed_L, n_max - 1, t, 2)
    e_hi = _sector_ground_energies(args.ed_L, n_max + 1, t, 2)
    cut_shift = max(abs(a - b) for a, b in zip(e_lo, e_hi))
    cut_ok = cut_shift < 1e-8
    report.append(f"cutoff stability (n_max {n_max - 1} -> {n_max + 1} at "
                  f"t={t:g}): {'PASS' if cut_ok else 'FAIL'} "
                  f"(max shift {cut_shift:.3e}, tolerance 1e-8)")

    # mean-field vs ED per-site discrepancy at filling n=1: the fermionic
    # approximation is not variational, so this is reported, not asserted
    L_ed = args.ed_L
    e_ed = _sector_ground_energies(L_ed, n_max, t, L_ed)[L_ed] / L_ed
    mf_params = ModelParams(t=t, L=L_ed if L_ed % 2 == 0 else 2)
    mf = float(np.mean([solve_sector(k, 1, mf_params).energy
                        for k in range(mf_params.L)]))
    report.append(f"small-t mean-field vs ED per-site (filling n=1, t={t:g}): "
                  f"mf={mf:.6f}, ed={e_ed:.6f}, diff={mf - e_ed:+.3e} (reported only)")

    header = ["gamma_over_g", "eps_over_g", "sector_N", "level",
              "E_ed_over_g", "E_analytic_over_g", "abs_diff"]
    write_csv(args.out, _meta(args), header, rows)
    for line in report:
        print(line)
    if not (agreement_ok and comm_ok and cut_ok):
        return EXIT_NUMERIC
    return EXIT_OK


def _commutator_norm(H, excitations):
    N = np.diag(excitations.astype(float))
    return float(np.abs(H @ N - N @ H).max())


def _sector_ground_energies(L_ed, n_max, t, max_sector):
    basis = ed.FockBasis.build(L_ed, n_max)
    H = ed.build_hamiltonian(basis, ModelParams(t=t))
    result = ed.diagonalize(H, basis.total_excitations())
    return [result.sector_minima[N] for N in range(max_sector + 1)]


_DISPERSION_PLOT = """\
k = np.array([float(r[cols["k_over_L"]]) for r in data])
w = np.array([float(r[cols["omega_over_g"]]) for r in data])
plt.plot(k, w)
plt.xlabel("k / L")
plt.ylabel("omega_k / g")
"""

_SPECTRUM_PLOT = """\
ts = sorted({float(r[cols["t_over_g"]]) for r in data})
for t in ts:
    sel = [r for r in data if float(r[cols["t_over_g"]]) == t]
    k = np.array([float(r[cols["k_over_L"]]) for r in sel])
    e = np.array([float(r[cols["E_over_g"]]) for r in sel])
    plt.plot(k, e, label=f"t/g = {t:g}")
plt.xlabel("k / L")
plt.ylabel("E / g")
plt.legend()
"""

_LOBES_PLOT = """\
keys = sorted({(float(r[cols["n"]]), float(r[cols["gamma_over_g"]])) for r in data})
for n, gamma in keys:
    sel = [r for r in data if float(r[cols["n"]]) == n
           and float(r[cols["gamma_over_g"]]) == gamma]
    t = np.array([float(r[cols["t_over_g"]]) for r in sel])
    up = np.array([float(r[cols["mu_plus_over_g"]]) for r in sel])
    lo = np.array([float(r[cols["mu_minus_over_g"]]) for r in sel])
    style = "-" if gamma else "--"
    plt.plot(t, up, style, label=f"n={n:g}, gamma/g={gamma:g}")
    plt.plot(t, lo, style)
plt.xlabel("t / g")
plt.ylabel("mu / g")
plt.legend(fontsize=7)
"""

_TC_PLOT = """\
keys = sorted({(float(r[cols["n"]]), float(r[cols["gamma_over_g"]])) for r in data})
for n, gamma in keys:
    sel = [r for r in data if float(r[cols["n"]]) == n
           and float(r[cols["gamma_over_g"]]) == gamma
           and r[cols["status"]] == "ok"]
    e = np.array([float(r[cols["eps_over_g"]]) for r in sel])
    tc = np.array([float(r[cols["tc_over_g"]]) for r in sel])
    plt.plot(e, tc, label=f"n={n:g}, gamma/g={gamma:g}")
plt.xlabel("eps / g")
plt.ylabel("t_c / g")
plt.legend(fontsize=7)
"""

_COMMANDS = {
    "dispersion": cmd_dispersion,
    "spectrum": cmd_spectrum,
    "lobes": cmd_lobes,
    "tc-sweep": cmd_tc_sweep,
    "ed-check": cmd_ed_check,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.subcommand](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        path = getattr(exc, "filename", None) or ""
        print(f"I/O error writing {path}: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
