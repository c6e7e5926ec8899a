"""Reference values frozen into the C++ tests (mpmath, 30 digits).

Run: python3 compute_oracles.py
"""
from mpmath import mp, mpf, gamma, quad, sqrt, nsum, inf, cosh, expm1, log1p

mp.dps = 30


def ml(a, b, z):
    a, b, z = mpf(a), mpf(b), mpf(z)
    return nsum(lambda k: z**k / gamma(a * k + b), [0, inf])


def sigma(mu, w, t):
    mu, w, t = mpf(mu), mpf(w), mpf(t)
    return (ml(mu, 1, w) - ml(mu, 1, w * t**mu)) / w


def green(mu, w, t, tau):
    mu, w, t, tau = mpf(mu), mpf(w), mpf(t), mpf(tau)
    a = ml(mu, 1, w * t**mu) / ml(mu, 1, w)
    k = lambda s: s ** (mu - 1) * ml(mu, mu, w * s**mu) if s > 0 else mpf(0)
    return a * k(1 - tau) - (k(t - tau) if tau <= t else 0)


def show(name, value):
    print(f"{name:40s} {mp.nstr(value, 20)}")


show("gamma(2.9)", gamma(mpf("2.9")))
show("E_{1.9,1.9}(2)", ml("1.9", "1.9", 2))
show("E_{1.9,1}(2)", ml("1.9", 1, 2))
show("E_{1.9,2.9}(2)", ml("1.9", "2.9", 2))
show("E_{1.5,1}(3)", ml("1.5", 1, 3))
show("E_{1.5,2.5}(1)", ml("1.5", "2.5", 1))
show("E_{1.2,0.7}(10)", ml("1.2", "0.7", 10))
show("sigma(1.9,2,0.5)", sigma("1.9", 2, "0.5"))
show("sigma(1.9,2,0.999)", sigma("1.9", 2, "0.999"))
show("G(1.9,2,0,0)", green("1.9", 2, 0, 0))
show("G(1.9,2,0.5,0.25)", green("1.9", 2, "0.5", "0.25"))
show("G(1.5,0.5,0.3,0.7)", green("1.5", "0.5", "0.3", "0.7"))
show("mass(1.9,2,0.5)", sigma("1.9", 2, "0.5") / ml("1.9", 1, 2))
show("mass(2,1,0)", (cosh(1) - 1) / cosh(1))
show("int_0^1 K(s) ds (1.9,2)", quad(lambda s: s ** mpf("0.9") * ml("1.9", "1.9", 2 * s ** mpf("1.9")), [0, 1]))

mu, w = mpf("1.9"), mpf(2)
sig = lambda t: sigma(mu, w, t)


def sig_complement(u):
    # sigma(1 - u) without forming 1 - u
    return nsum(lambda k: w ** (k - 1) * -expm1(mu * k * log1p(-u)) / gamma(mu * k + 1), [1, inf])


mp.dps = 40


def integrate_q(weight):
    # t = s^2 near 0 and t = 1 - s^2 near 1 remove the endpoint singularities;
    # q is symmetric, weight is a function of sigma(t)
    h = sqrt(mpf("0.5"))
    left = quad(lambda s: 2 * s * weight(sig(s * s)) / sqrt(sig(s * s) * sig_complement(s * s)), [0, h])
    right = quad(lambda s: 2 * s * weight(sig_complement(s * s)) / sqrt(sig(s * s) * sig_complement(s * s)), [0, h])
    return left + right


iq = integrate_q(lambda sg: 1)
iqu = integrate_q(lambda sg: sg ** mpf("-0.2"))
g = 1 / sig(mpf("0.5"))
E1, E2, Emm = ml(mu, 1, w), ml(mu, mu + 1, w), ml(mu, mu, w)
chi = iqu * (g / (w * E1)) ** mpf("-0.2")
show("int q / lambda", iq)
show("int q u(sigma) / lambda", iqu)
show("gamma coefficient", g)
show("chi coefficient", chi)
show("ratio denominator", chi * Emm)
show("window coefficient 1", (chi * Emm) ** mpf("1.25"))
show("window coefficient 2", w * E1 / (g * E2))
show("window hi at R = 1", min(1 / ((chi * Emm) ** mpf("1.25") * 3 ** mpf("1.25")), w * E1 / (g * E2)))
