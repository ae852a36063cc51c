"""Independent high-precision reference values, frozen into the C++ tests.

Spectral lattice sum evaluated with mpmath at 40 digits. On the grating line
(y = 0, x = 0) the symmetric pairs decay algebraically and the series is
accelerated with mpmath.nsum; elsewhere it is summed directly until the
evanescent terms are below 1e-40. The triplet transmittance is solved with
mpmath's LU on the same entries.

    python3 tests/oracles/oracle.py
"""

import mpmath as mp

mp.mp.dps = 40
TWO_PI = 2 * mp.pi


def chi(alpha, beta):
    s = beta**2 - alpha**2
    return mp.sqrt(s) if s > 0 else 1j * mp.sqrt(-s)


def term(alpha0, beta, x, y, n, d=1):
    a = alpha0 + TWO_PI * n / d
    c = chi(a, beta)
    t = mp.sqrt(beta**2 + a**2)
    y = abs(y)
    return (mp.exp(1j * (a * x + c * y)) / (2j * d * c) + mp.exp(1j * a * x) * mp.exp(-t * y) / (2 * d * t))


def greens(alpha0, beta, x, y, d=1):
    alpha0, beta, x, y = map(mp.mpf, (alpha0, beta, x, y))
    pref = -1 / (2 * beta**2)
    if y == 0:
        pair = lambda k: term(alpha0, beta, x, 0, int(k), d) + term(alpha0, beta, x, 0, -int(k), d)
        # first orders summed exactly, algebraic tail accelerated
        head = term(alpha0, beta, x, 0, 0, d) + mp.fsum(pair(k) for k in range(1, 50))
        tail = mp.nsum(lambda k: pair(k), [50, mp.inf])
        return pref * (head + tail)
    total = term(alpha0, beta, x, y, 0, d)
    n = 1
    while True:
        p = term(alpha0, beta, x, y, n, d) + term(alpha0, beta, x, y, -n, d)
        total += p
        if n > 5 and abs(p) < mp.mpf(10) ** -42:
            break
        n += 1
    return pref * total


def triplet_transmittance(alpha0, beta, eta, xi):
    alpha0, beta, eta, xi = map(mp.mpf, (alpha0, beta, eta, xi))
    pins = [(0, eta), (xi, 0), (0, -eta)]
    M = mp.matrix(3, 3)
    for r, (xr, yr) in enumerate(pins):
        for c, (xc, yc) in enumerate(pins):
            M[r, c] = greens(alpha0, beta, xr - xc, yr - yc)
    chi0 = chi(alpha0, beta)
    u = mp.matrix([-mp.exp(1j * (alpha0 * xj - chi0 * yj)) for xj, yj in pins])
    A = mp.lu_solve(M, u)
    # order-0 transmitted amplitude below the stack (phase referenced to y = 0)
    coef = -1 / (4j * beta**2 * chi0)
    t0 = 1 + sum(A[j] * coef * mp.exp(-1j * alpha0 * xj) * mp.exp(1j * chi0 * yj) for j, (xj, yj) in enumerate(pins))
    r0 = sum(A[j] * coef * mp.exp(-1j * alpha0 * xj) * mp.exp(-1j * chi0 * yj) for j, (xj, yj) in enumerate(pins))
    return abs(t0) ** 2, abs(r0) ** 2


def beta_g(theta_deg, guess):
    """Single-grating total reflection: with one propagating order |r_0| = 1 iff Re G(0, 0) = 0."""
    th = mp.radians(theta_deg)
    return mp.findroot(lambda b: mp.re(greens(b * mp.sin(th), b, 0, 0)), guess)


def show(label, z):
    z = mp.mpc(z)
    print(f"{label}: re={mp.nstr(z.real, 20)} im={mp.nstr(z.imag, 20)}")


if __name__ == "__main__":
    show("G(0,2; 0,0.5)", greens(0, 2, 0, 0.5))
    show("G(0,2; 0,0)", greens(0, 2, 0, 0))
    show("G(1.808735,3.61747; 0,0)", greens("1.808735", "3.61747", 0, 0))
    show("G(1.808735,3.61747; -0.252,1)", greens("1.808735", "3.61747", "-0.252", 1))
    show("G(1.808735,3.61747; 0,2)", greens("1.808735", "3.61747", 0, 2))
    show("G(2.1,3.5; 0.3,0.05)", greens("2.1", "3.5", "0.3", "0.05"))
    show("G(-0.7,1.3; 0.75,0.2)", greens("-0.7", "1.3", "0.75", "0.2"))
    t, r = triplet_transmittance("2.1", "3.5", 1, 0)
    print("triplet(2.1,3.5,eta=1,xi=0): T =", mp.nstr(t, 20), "R =", mp.nstr(r, 20))
    t, r = triplet_transmittance("1.5", "3.3", "0.9", "0.3")
    print("triplet(1.5,3.3,eta=0.9,xi=0.3): T =", mp.nstr(t, 20), "R =", mp.nstr(r, 20))
    for deg, guess in ((0, 4.456), (30, 3.5994), (60, 2.9472)):
        print(f"beta_g({deg} deg) =", mp.nstr(beta_g(deg, guess), 20))
    for b in ("0.1", "0.05", "0.01"):
        # normal incidence, one propagating order: r_0 = -1 / (4 beta^2 chi_0 G(0, 0)) up to phase
        bb = mp.mpf(b)
        print(f"R_single(beta={b}) =", mp.nstr(abs(1 / (4 * bb**3 * greens(0, bb, 0, 0))) ** 2, 20))
