"""Extended-precision reference values frozen into the C++ test suites.

Run with `python3 tests/oracles/oracles.py`. Everything here is computed
straight from the closed-form expressions with mpmath at 50 digits; none of
it shares code with the library.
"""
import mpmath as mp

mp.mp.dps = 50


def modified_ms(x, beta, alpha=1):
    return alpha * x * (1 - x) / (1 + beta * x) ** 11


def generalized_l(x, beta, L, alpha=1):
    return alpha * x * (1 - x ** L) / (1 + beta * x ** L) ** 11


def generalized_l_prime(x, beta, L, alpha=1):
    u = x ** L
    d = 1 + beta * u
    return alpha * ((1 - u - L * u) / d ** 11 - 11 * beta * L * u * (1 - u) / d ** 12)


def breakpoints(lo, hi, n=60):
    """Geometric breakpoints toward lo plus a uniform mesh."""
    geo = [lo + (hi - lo) * mp.mpf(10) ** (-mp.mpf(12) * (n - i) / n) for i in range(n + 1)]
    uni = [lo + (hi - lo) * mp.mpf(i) / 64 for i in range(65)]
    return sorted(set([lo] + geo + uni))


def integrate(f, lo, hi):
    """Gauss-Legendre on a mesh and on its bisection must agree to 1e-18."""
    pts = breakpoints(lo, hi)
    fine = sorted(set(pts + [(p + q) / 2 for p, q in zip(pts, pts[1:])]))
    a = mp.quad(f, pts, method="gauss-legendre")
    b = mp.quad(f, fine, method="gauss-legendre")
    assert abs(a - b) <= mp.mpf("1e-18") * abs(b) or abs(b) < mp.mpf("1e-300"), (a, b)
    return b


def gamma(B, x0):
    b = B * mp.e ** (-x0)
    if 4 * b >= 1:
        return mp.cosh(mp.pi / 2 * mp.sqrt(4 * b - 1)) ** 2
    return mp.cos(mp.pi / 2 * mp.sqrt(1 - 4 * b)) ** 2


def beta_k_squared(B, eta, x0, k):
    am = mp.pi * B * eta / k            # 2*pi*Omega_minus
    ap = mp.pi * (2 - B) * eta / k      # 2*pi*Omega_plus
    return (mp.sinh(am) ** 2 + gamma(B, x0)) / (mp.sinh(ap) ** 2 - mp.sinh(am) ** 2)


def show(label, value):
    print(f"{label:<48} {mp.nstr(value, 20)}")


show("modified_ms(0.5; beta=1000)", modified_ms(mp.mpf("0.5"), 1000))

# stationary point of log omega: 9 b x^2 - (10 b + 2) x + 1 = 0, smaller root
b = mp.mpf(1000)
show("hump x* (beta=1000)", ((10 * b + 2) - mp.sqrt((10 * b + 2) ** 2 - 36 * b)) / (18 * b))
xs = ((10 * b + 2) - mp.sqrt((10 * b + 2) ** 2 - 36 * b)) / (18 * b)
show("hump omega* (beta=1000)", modified_ms(xs, 1000))

show("beta_k^2(B=1e-3,x0=1e-2,k=1,eta=1)", beta_k_squared(mp.mpf("1e-3"), 1, mp.mpf("1e-2"), 1))

# thermal constant approximation, 41 log-spaced samples on [0.3, 0.7]
n = 41
ks = [mp.mpf("0.3") * (mp.mpf("0.7") / mp.mpf("0.3")) ** (mp.mpf(i) / (n - 1)) for i in range(n)]
vals = [beta_k_squared(mp.mpf("1e-3"), 1, mp.mpf("1e-2"), k) for k in ks]
mean = mp.fsum(vals) / n
show("thermal mean (B=1e-3,[0.3,0.7],n=41)", mean)
show("thermal max rel dev", max(abs(v - mean) / mean for v in vals))

pref = 1 / (2 * mp.pi ** 2)
f1000 = lambda x: x * modified_ms(x, 1000) ** 2 / 2
show("rho[0.5,1] modified_ms beta=1000", pref * integrate(f1000, mp.mpf("0.5"), 1))
show("rho[0,1]   modified_ms beta=1000", pref * integrate(f1000, 0, 1))

print("\nGeneralized-law scan, k_H = k_p/2, interpretation x beta_mode")
full = lambda x: beta_k_squared(mp.mpf("1e-3"), 1, mp.mpf("1e-2"), x)
for interp in ("iterated-inner", "chain-rule"):
    for mode in ("constant", "full"):
        for beta in ("1.05", "10.5"):
            for L in ("0.5", "1", "2"):
                bt, Lv = mp.mpf(beta), mp.mpf(L)
                g = (lambda x: 1) if mode == "constant" else full
                if interp == "iterated-inner":
                    f = lambda x: x * generalized_l(x, bt, Lv) ** 2 / 2 * g(x)
                else:
                    f = lambda x: x * generalized_l(x, bt, Lv) * generalized_l_prime(x, bt, Lv) * g(x)
                tail = integrate(f, mp.mpf("0.5"), 1)
                head = integrate(f, 0, mp.mpf("0.5"))
                show(f"{interp} {mode} beta={beta} L={L}", tail / (head + tail))
