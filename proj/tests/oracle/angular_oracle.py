#!/usr/bin/env python3
"""Reference Clebsch-Gordan values and frame-transform elements from sympy.

Writes tests/data/cg_oracle.csv and tests/data/frame_oracle.csv. All angular
momenta are stored as twice their value.
"""
import csv
import itertools
import os

from sympy import Rational
from sympy.physics.quantum.cg import CG

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "data")
H = Rational(1, 2)


def half_range(j):
    m = -j
    while m <= j:
        yield m
        m += 1


def cg(j1, m1, j2, m2, j, m):
    return CG(j1, m1, j2, m2, j, m).doit()


def cg_table():
    rows = []
    for j1, j2 in [(H, H), (H, 3 * H), (H, 5 * H), (3 * H, 5 * H), (1, 2), (3 * H, 3 * H)]:
        j = abs(j1 - j2)
        while j <= j1 + j2:
            for m1 in half_range(j1):
                for m2 in half_range(j2):
                    if abs(m1 + m2) <= j:
                        rows.append((j1, m1, j2, m2, j, m1 + m2, cg(j1, m1, j2, m2, j, m1 + m2)))
            j += 1
    return rows


def frame(i1, i2, big_m):
    s = H
    frag = []
    for f1 in [i1 - s, i1 + s]:
        for f2 in [i2 - s, i2 + s]:
            for mf1 in half_range(f1):
                mf2 = big_m - mf1
                if abs(mf2) <= f2:
                    frag.append((f1, mf1, f2, mf2))
    eigen = []
    for S in [0, 1]:
        for I in half_range(i1 + i2):
            if I < abs(i1 - i2):
                continue
            for ms in half_range(S):
                mi = big_m - ms
                if abs(mi) <= I:
                    eigen.append((S, ms, I, mi))
    assert len(frag) == len(eigen)
    out = []
    for (f1, mf1, f2, mf2), (S, ms, I, mi) in itertools.product(frag, eigen):
        total = 0
        for ms1 in [-s, s]:
            ms2 = ms - ms1
            mi1, mi2 = mf1 - ms1, mf2 - ms2
            if abs(ms2) > s or abs(mi1) > i1 or abs(mi2) > i2:
                continue
            total += (cg(s, ms1, i1, mi1, f1, mf1) * cg(s, ms2, i2, mi2, f2, mf2)
                      * cg(s, ms1, s, ms2, S, ms) * cg(i1, mi1, i2, mi2, I, mi))
        out.append((i1, i2, big_m, f1, mf1, f2, mf2, S, ms, I, mi, total))
    return out


def tw(x):
    return int(2 * x)


def main():
    os.makedirs(DATA, exist_ok=True)
    with open(os.path.join(DATA, "cg_oracle.csv"), "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["j1x2", "m1x2", "j2x2", "m2x2", "jx2", "mx2", "value"])
        for r in cg_table():
            w.writerow([tw(v) for v in r[:6]] + [repr(float(r[6].evalf(30)))])
    with open(os.path.join(DATA, "frame_oracle.csv"), "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["i1x2", "i2x2", "Mx2", "f1x2", "mf1x2", "f2x2", "mf2x2",
                    "sx2", "msx2", "ix2", "mix2", "value"])
        for i1, i2 in [(3 * H, 5 * H), (3 * H, 3 * H)]:
            for big_m in [-4, -3, -2]:
                for r in frame(i1, i2, big_m):
                    w.writerow([tw(v) for v in r[:11]] + [repr(float(r[11]))])


if __name__ == "__main__":
    main()
