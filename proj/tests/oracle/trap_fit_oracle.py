#!/usr/bin/env python3
"""Reference trap energies, shift curves and fit spread for the Rb87+Rb85 pair.

The trapped-pair relation is solved with mpmath (hyp2f1 plus bracketed
root finding), independently of the C++ code. The fit spread is estimated by
Monte Carlo over 1000 noise replicas, each fitted against a spline of the
exact model in the unknown length.

Writes tests/data/trap_oracle.csv, shift_curve_oracle.csv and fit_spread_oracle.csv.
"""
import csv
import os

import mpmath as mp
import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import minimize_scalar

mp.mp.dps = 20
HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "data")

H = mp.mpf("6.62607015e-34")
HBAR = H / (2 * mp.pi)
AMU = mp.mpf("1.66053906660e-27")
A0 = mp.mpf("5.29177210903e-11")
M87 = mp.mpf("86.90918053") * AMU
M85 = mp.mpf("84.911789738") * AMU
MU = M87 * M85 / (M87 + M85)

ETA = mp.mpf(165) / 27
SWEEP = [15 + i * mp.mpf(15) / 9 for i in range(10)]
A_TRUE = 314.8
A_REF = 213.0
SIGMA = 1.0


def big_f(x, n):
    half = mp.mpf(1) / 2
    s = -2 * mp.sqrt(mp.pi) * mp.gamma(x) * mp.rgamma(x - half)
    pre = mp.sqrt(mp.pi) * mp.gamma(x) * mp.rgamma(x + half)
    for m in range(1, n):
        s += pre * mp.hyp2f1(1, x, x + half, mp.expjpi(mp.mpf(2 * m) / n))
    return mp.re(s)


def trap(f_r_khz, f_ax_khz):
    n = int(mp.nint(mp.mpf(f_r_khz) / f_ax_khz))
    omega_unit = 2 * mp.pi * mp.mpf(f_r_khz) * 1000 / n
    length_a0 = mp.sqrt(HBAR / (MU * omega_unit)) / A0
    return n, length_a0, mp.mpf(f_r_khz) / n


def energy(a_a0, f_r_khz, f_ax_khz):
    """Branch-0 energy for a > 0: x = -eps/2 in (-1, 0)."""
    n, length, _ = trap(f_r_khz, f_ax_khz)
    g = lambda x: big_f(x, n) + mp.sqrt(mp.pi) * length / a_a0
    lo, hi = mp.mpf(-1) + mp.mpf("1e-9"), mp.mpf("-1e-9")
    glo = g(lo)
    # uneven split keeps midpoints off x = -1/2, where hyp2f1 has c = 0
    for _ in range(90):
        mid = lo + (hi - lo) * mp.mpf("0.382")
        gm = g(mid)
        if (gm > 0) == (glo > 0):
            lo, glo = mid, gm
        else:
            hi = mid
    return -2 * (lo + hi) / 2


def shift_87(a_init, f_ax):
    f_r = ETA * f_ax
    _, _, f_unit = trap(f_r, f_ax)
    return float((energy(A_REF, f_r, f_ax) - energy(a_init, f_r, f_ax)) * f_unit)


def main():
    os.makedirs(DATA, exist_ok=True)
    with open(os.path.join(DATA, "trap_oracle.csv"), "w", newline="") as fh:
        fh.write("# branch-0 energies for the Rb87+Rb85 pair, mpmath\n")
        w = csv.writer(fh)
        w.writerow(["f_r_khz", "f_ax_khz", "a_a0", "eps"])
        for f_r, f_ax in [(165, 27), (100, 100), (120, 40), (150, 50)]:
            for a in [20.0, 100.0, 213.0, 229.4, 314.8, 450.0]:
                w.writerow([f_r, f_ax, a, mp.nstr(energy(a, f_r, f_ax), 15)])

    grid = np.arange(230.0, 400.0 + 1e-9, 5.0)
    table = np.array([[shift_87(a, f) for a in grid] for f in SWEEP])
    splines = [CubicSpline(grid, row) for row in table]
    nominal = np.array([float(s(A_TRUE)) for s in splines])
    slope = np.array([float(s(A_TRUE, 1)) for s in splines])
    sigma_lin = 1.0 / np.sqrt(np.sum(slope ** 2) / SIGMA ** 2)

    rng = np.random.default_rng(7)
    hats, chi2s = [], []
    for _ in range(1000):
        data = nominal + rng.normal(0.0, SIGMA, nominal.size)
        chi2 = lambda a: float(np.sum((np.array([s(a) for s in splines]) - data) ** 2)) / SIGMA ** 2
        r = minimize_scalar(chi2, bounds=(grid[1], grid[-2]), method="bounded",
                            options={"xatol": 1e-6})
        hats.append(r.x)
        chi2s.append(r.fun)
    hats, chi2s = np.array(hats), np.array(chi2s)
    dof = nominal.size - 1
    within = np.abs(hats - A_TRUE) <= 15.0
    chi_ok = (chi2s / dof >= 0.2) & (chi2s / dof <= 3.0)

    with open(os.path.join(DATA, "fit_spread_oracle.csv"), "w", newline="") as fh:
        fh.write("# Rb87 |1,-1>->|2,-2>, eta=165/27, 10 points 15..30 kHz, sigma 1 kHz, a_true 314.8\n")
        w = csv.writer(fh)
        w.writerow(["sigma_a_linear", "sigma_a_mc", "mean_a_mc", "frac_within_15",
                    "frac_chi2_ok", "frac_both"])
        w.writerow([f"{sigma_lin:.6g}", f"{np.std(hats, ddof=1):.6g}", f"{np.mean(hats):.6g}",
                    f"{np.mean(within):.4f}", f"{np.mean(chi_ok):.4f}",
                    f"{np.mean(within & chi_ok):.4f}"])
    with open(os.path.join(DATA, "shift_curve_oracle.csv"), "w", newline="") as fh:
        fh.write("# Rb87 shift at a_initial 314.8, a_final 213, eta=165/27, mpmath\n")
        w = csv.writer(fh)
        w.writerow(["f_ax_khz", "shift_khz"])
        for f, s in zip(SWEEP, nominal):
            w.writerow([mp.nstr(f, 17), f"{s:.10g}"])

if __name__ == "__main__":
    main()
