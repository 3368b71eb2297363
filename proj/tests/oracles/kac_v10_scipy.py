"""Kac d = 10 expected-depth integral over r < tan(pi/2 - 1e-4), by nested
scipy.integrate.quad on the eight-fold symmetric polar form.

phi_d uses the rational form in double precision, switching to 50-digit
mpmath arithmetic within 1e-3 of s = 1.
"""

import warnings

import mpmath as mp
import numpy as np
from scipy.integrate import IntegrationWarning, quad

D = 10
N = D + 1
U_MAX = np.pi / 2 - 1e-4
mp.mp.dps = 50


def phi(s):
    if abs(s - 1) < 1e-12:
        return D * (D + 2) / 12.0
    if abs(s - 1) < 1e-3:
        t = mp.mpf(s)
        return float(1 / (t * t - 1) ** 2 - N * N * t ** (2 * D) / (t ** (2 * N) - 1) ** 2)
    return 1 / (s * s - 1) ** 2 - N * N * s ** (2 * D) / (s ** (2 * N) - 1) ** 2


def radial(theta):
    c, s = np.cos(theta), np.sin(theta)
    ridges = [np.arctan(1 / c)]
    if s > 0 and np.arctan(1 / s) < U_MAX:
        ridges.append(np.arctan(1 / s))

    def g(u):
        r = np.tan(u)
        return np.sqrt(c * c * phi(r * c) + s * s * phi(r * s)) * (1 + r * r)

    return quad(g, 0, U_MAX, points=ridges, limit=400, epsabs=1e-11)[0]


def main():
    warnings.simplefilter("ignore", IntegrationWarning)
    value = quad(radial, 0, np.pi / 4, points=[1e-3, 1e-2], limit=200, epsabs=1e-10)[0]
    print(f"{value * 4 / np.pi ** 2:.12f}")


if __name__ == "__main__":
    main()
