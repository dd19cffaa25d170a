#!/usr/bin/env python3
# Copyright 2026 The rbdo-ouq Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

# Independent arbitrary-precision oracles for the frozen constants used in the
# C++ unit tests. Run: python3 tests/oracles/frozen_values.py
from mpmath import mp, mpf, pi, exp, log, ncdf, erfinv, sqrt

mp.dps = 40


def normal_quantile(p):
    return sqrt(2) * erfinv(2 * mpf(p) - 1)


def classical(points, weights, b):
    return sum(mpf(w) * mpf(y) ** b for y, w in zip(points, weights))


def central(points, weights, b):
    m = classical(points, weights, 1)
    return sum(mpf(w) * (mpf(y) - m) ** b for y, w in zip(points, weights))


print("classical_moment([0.2,0.5,0.9],[0.3,0.4,0.3],3) =",
      mp.nstr(classical(["0.2", "0.5", "0.9"], ["0.3", "0.4", "0.3"], 3), 20))
print("central_moment([0,1],[0.6,0.4],3) =",
      mp.nstr(central([0, 1], ["0.6", "0.4"], 3), 20))

# Second raw moment range on [0,1] given mean 0.5, brute force over two-point
# measures x1 < 0.5 < x2 with the weight solved from the mean.
lo, hi = mpf(1), mpf(0)
n = 400
for i in range(n + 1):
    x1 = mpf(i) / n
    for j in range(n + 1):
        x2 = mpf(j) / n
        if not (x1 <= mpf("0.5") <= x2) or x1 == x2:
            continue
        w2 = (mpf("0.5") - x1) / (x2 - x1)
        c2 = (1 - w2) * x1 ** 2 + w2 * x2 ** 2
        lo, hi = min(lo, c2), max(hi, c2)
print("raw second moment range given mean 0.5 =", mp.nstr(lo, 12), mp.nstr(hi, 12))

print("Phi^-1(exp(-1)) =", mp.nstr(normal_quantile(exp(-1)), 20))
for beta in [1, 2, 3, 4, 4.75, 5]:
    print(f"Phi(-{beta}) =", mp.nstr(ncdf(-mpf(beta)), 20))
print("Phi(1) =", mp.nstr(ncdf(1), 20))


def column_g(b, Pp, Pe, d0, y0, E, tb=15, th=10, L=7500):
    b, Pp, Pe, d0, y0, E = map(mpf, (b, Pp, Pe, d0, y0, E))
    h = b
    A = 2 * b * tb + h * th
    W = h * mpf(th) ** 3 / (6 * b) + b ** 2 * tb / 3
    I = h * mpf(th) ** 3 / 12 + b ** 3 * tb / 6
    Pb = pi ** 2 * E * I / mpf(L) ** 2
    P = Pp + Pe
    return A, W, I, Pb, 1 - (P / (y0 * A) + P * d0 / (y0 * W) * Pb / (Pb - P))


A, W, I, Pb, g = column_g("324.6", 200e3, 300e3, 60, 400, 210000)
print("A(324.6) =", mp.nstr(A, 20), " W =", mp.nstr(W, 20), " I =", mp.nstr(I, 20))
print("P_b(324.6, E=210000) =", mp.nstr(Pb, 20))
print("g(reference point) =", mp.nstr(g, 20))


# Feasible 4-point measure for the three-moment load model on [100, 500] kN:
# random search over points and weights, first hit printed (kN units).
import random

random.seed(7)
boxes = [(209.4, 279.0), (2251.91, 9007.66), (121775.0, 974204.0)]
for trial in range(200000):
    pts = sorted(random.uniform(100, 500) for _ in range(4))
    ws = [random.random() for _ in range(4)]
    s = sum(ws)
    ws = [w / s for w in ws]
    m = sum(w * y for y, w in zip(pts, ws))
    c2 = sum(w * (y - m) ** 2 for y, w in zip(pts, ws))
    c3 = sum(w * (y - m) ** 3 for y, w in zip(pts, ws))
    if all(lo <= v <= hi for v, (lo, hi) in zip((m, c2, c3), boxes)):
        # Round for transcription, then re-check the rounded measure.
        pts = [round(p, 3) for p in pts]
        ws = [round(w, 4) for w in ws[:3]]
        ws.append(round(1 - sum(ws), 4))
        m = sum(w * y for y, w in zip(pts, ws))
        c2 = sum(w * (y - m) ** 2 for y, w in zip(pts, ws))
        c3 = sum(w * (y - m) ** 3 for y, w in zip(pts, ws))
        ok = all(lo <= v <= hi for v, (lo, hi) in zip((m, c2, c3), boxes))
        print("feasible 4-point load measure (kN):", pts, ws, "rounded still feasible:", ok)
        print("  its moments:", m, c2, c3, "after", trial + 1, "trials")
        break

from mpmath import quad, npdf, inf


def lognormal_plus_normal(u1):
    r = mpf("3.6") - u1 / 2
    return npdf(u1) * (ncdf(-log(r) / mpf("0.3")) if r > 0 else 1)


print("P[exp(0.3 u0) + 0.5 u1 >= 3.6] =",
      mp.nstr(quad(lognormal_plus_normal, [-inf, -2, 0, 2, 4, 7.2, inf]), 20))
