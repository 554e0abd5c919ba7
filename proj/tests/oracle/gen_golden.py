# SPDX-License-Identifier: Apache-2.0
#
# icfade: finite-blocklength bounds for infinite constellations over fading
# Copyright (C) 2026 The icfade Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------

# Regenerates the frozen reference values used by the unit tests.
# Needs mpmath only. Run: python3 gen_golden.py

import mpmath as mp

mp.mp.dps = 30


def qinv(e):
    return -mp.sqrt(2) * mp.erfinv(2 * e - 1)


def closed_forms():
    mlnh = -mp.euler / 2
    var = mp.pi**2 / 24
    awgn = -mp.log(2 * mp.pi * mp.e) / 2
    print("rayleigh E ln h", mlnh, "var", var)
    print("awgn capacity", awgn, "rayleigh capacity", awgn + mlnh)
    print("qinv 0.01", qinv(0.01), "qinv 0.1", qinv(0.1))
    print("awgn n=100 eps=0.01 third order",
          awgn - mp.sqrt(mp.mpf(0.5) / 100) * qinv(0.01) + mp.log(100) / 200)
    v = mp.mpf(1) / 2 + var
    print("rayleigh n=400 eps=0.1 normal approx", awgn + mlnh - mp.sqrt(v / 400) * qinv(0.1))
    print("rayleigh loss dB", -20 / mp.log(10) * mlnh)
    print("complex dispersion", 1 + 4 * var)
    for m in [0.5, 1, 2, 4, 8, 16, 32, 64]:
        print("nakagami", m, (mp.digamma(m) - mp.log(m)) / 2, mp.psi(1, m) / 4 + mp.mpf(1) / 2)


def eta(i, u):
    d = lambda y: mp.ncdf(y + u / 2) - mp.ncdf(y - u / 2)
    f = lambda y: d(y) * mp.log(d(y)) ** i
    return (-1) ** i * 2 * mp.quad(f, [0, u / 2, u / 2 + 3, u / 2 + 12])


def eta_table():
    for u in [0.01, 0.05, 0.125, 0.25, 0.5, 1, 2, 5, 10, 1000]:
        print("eta", u, *(mp.nstr(eta(i, u), 15) for i in (1, 2, 3)))
    u = mp.mpf(1000)
    print("awgn uniform-cube MI a/sigma=1e3",
          mp.log(u) - mp.log(2 * mp.pi * mp.e) / 2 + eta(1, u) / u)


def chi_l1():
    def logf(n, y):
        n = mp.mpf(n)
        return ((n - 1) / 2 * mp.log(n / 2) - mp.loggamma(n / 2) + mp.sqrt(n / 2) * y
                - n / 2 * mp.exp(mp.sqrt(2 / n) * y))
    for n in [10, 40, 160, 640]:
        diff = lambda y: mp.exp(logf(n, y)) - mp.npdf(y)
        grid = mp.linspace(-40, 20, 601)
        cuts = [mp.findroot(diff, (lo, hi), solver="anderson")
                for lo, hi in zip(grid, grid[1:]) if diff(lo) * diff(hi) < 0]
        pts = [mp.mpf(-60)] + cuts + [mp.mpf(30)]
        l1 = sum(abs(mp.quad(diff, [lo, hi])) for lo, hi in zip(pts, pts[1:]))
        print("l1", n, mp.nstr(l1, 15))


def rayleigh_power_constrained_dispersion(snr_db):
    s = mp.mpf(10) ** (mp.mpf(snr_db) / 10)
    w = lambda k: mp.quad(lambda g: mp.exp(-g) * k(g), [0, 1, 10, mp.inf])
    m1 = w(lambda g: mp.log1p(s * g) / 2)
    m2 = w(lambda g: (mp.log1p(s * g) / 2) ** 2)
    e = w(lambda g: 1 / (1 + s * g))
    return m2 - m1**2 + (1 - e**2) / 2


if __name__ == "__main__":
    closed_forms()
    eta_table()
    chi_l1()
    print("rayleigh V_pc 50 dB", mp.nstr(rayleigh_power_constrained_dispersion(50), 15))
