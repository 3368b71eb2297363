"""Brute-force polar midpoint sum for the Kac d = 10 expected-depth integral.

Plain midpoint rule on a 4000 x 4000 grid in (u, theta), r = tan(u),
u in (0, pi/2 - 1e-4), theta in (0, 2 pi). phi_d uses the rational form in
extended precision, with its value at s = 1 substituted in a tiny window.
"""

import sys

import numpy as np

D = 10
N_U = int(sys.argv[1]) if len(sys.argv) > 1 else 4000
N_THETA = int(sys.argv[2]) if len(sys.argv) > 2 else N_U
U_MAX = np.pi / 2 - 1e-4


def phi(s):
    s = s.astype(np.longdouble)
    n = D + 1
    out = np.empty_like(s)
    near = np.abs(s - 1) < 1e-6
    far = ~near
    t = s[far]
    out[far] = 1 / (t * t - 1) ** 2 - n * n * t ** (2 * D) / (t ** (2 * n) - 1) ** 2
    out[near] = D * (D + 2) / 12.0
    return out


def main():
    du = U_MAX / N_U
    dtheta = 2 * np.pi / N_THETA
    theta = (np.arange(N_THETA) + 0.5) * dtheta
    c = np.abs(np.cos(theta)).astype(np.longdouble)
    s = np.abs(np.sin(theta)).astype(np.longdouble)
    total = np.longdouble(0)
    for i in range(N_U):
        u = (i + 0.5) * du
        r = np.longdouble(np.tan(u))
        g = np.sqrt(c * c * phi(r * c) + s * s * phi(r * s))
        total += g.sum() * (1 + r * r)
    value = total * du * dtheta / (2 * np.pi ** 2)
    print(f"{float(value):.12f}")


if __name__ == "__main__":
    main()
