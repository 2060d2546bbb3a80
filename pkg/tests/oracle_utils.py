"""Independent numerical oracles used by the test suite.

Everything here is deliberately brute-force: direct scipy quadrature of
the defining integrals, with none of the closed-form reductions used by
the package itself.
"""
import numpy as np
from scipy.integrate import quad
from scipy.special import k0e

# Two-particle angular basis functions, 0-based labels.
ANGULAR_FUNCS = [
    lambda t1, t2: 1.0,
    lambda t1, t2: abs(np.sin(t1 / 2.0)),
    lambda t1, t2: abs(np.sin(t2 / 2.0)),
    lambda t1, t2: abs(np.sin((t1 - t2) / 2.0)),
]


def gauss_axial(p):
    """integral exp(-p x^2) dx over the real line."""
    return np.sqrt(np.pi / p)


def coulomb_axial(p, a2):
    """integral 2 exp(-p x^2) / sqrt(x^2 + a^2) dx over the real line.

    Bessel identity: equals 2 exp(z) K0(z) with z = p a^2 / 2; the a -> 0
    limit is logarithmically divergent, so callers keep a^2 > 0.
    """
    z = 0.5 * p * a2
    return 2.0 * k0e(z)


def _nested_quad(f, singular_inner=None, tol=1e-9):
    """integral of f(t1, t2) over [-pi, pi]^2 by nested adaptive quad.

    singular_inner(t2) optionally lists inner (t1) break points.
    """
    def inner(t2):
        pts = None
        if singular_inner is not None:
            pts = [p for p in singular_inner(t2) if -np.pi < p < np.pi]
        val, _ = quad(lambda t1: f(t1, t2), -np.pi, np.pi, points=pts,
                      limit=200, epsabs=tol, epsrel=tol)
        return val

    val, _ = quad(inner, -np.pi, np.pi, limit=200, epsabs=tol, epsrel=tol)
    return val


def brute_trion_element(l, lp, A, B, C, r):
    """One full Coulomb matrix element by brute-force quadrature.

    A, B, C are the Gaussian pair sums of the three axial separations;
    l, lp are 0-based angular labels.  Channels: attraction on each
    electron-hole separation plus electron-electron repulsion.
    """
    D = A * B + A * C + B * C
    phi, phip = ANGULAR_FUNCS[l], ANGULAR_FUNCS[lp]
    norm = 1.0 / (4.0 * np.pi ** 2)
    total = 0.0
    for channel, E, sgn in ((0, B + C, -1.0), (1, A + C, -1.0),
                            (2, A + B, +1.0)):
        p = D / E

        def f(t1, t2, channel=channel, p=p):
            t = (t1, t2, t1 - t2)[channel]
            a2 = 4.0 * r * r * np.sin(t / 2.0) ** 2
            return phi(t1, t2) * phip(t1, t2) * coulomb_axial(p, a2)

        if channel == 0:
            sing = lambda t2: [0.0]
        elif channel == 1:
            def f_swapped(t1, t2, f=f):
                return f(t2, t1)
            # integrate with the singular angle innermost
            total += sgn * norm * gauss_axial(E) \
                * _nested_quad(f_swapped, lambda t2: [0.0])
            continue
        else:
            sing = lambda t2: [t2, t2 - 2.0 * np.pi, t2 + 2.0 * np.pi]
        total += sgn * norm * gauss_axial(E) * _nested_quad(f, sing)
    return total


def brute_repulsion_element(pa, pb, P, Q, r):
    """<a c|V|b d> with angular powers |sin(t/2)|^pa, |sin(t/2)|^pb on the
    two particles and axial Gaussian pair sums P (particle 1), Q (2)."""
    D = P * Q
    E = P + Q
    p = D / E

    def f(t1, t2):
        a2 = 4.0 * r * r * np.sin((t1 - t2) / 2.0) ** 2
        return (abs(np.sin(t1 / 2.0)) ** pa * abs(np.sin(t2 / 2.0)) ** pb
                * coulomb_axial(p, a2))

    norm = 1.0 / (4.0 * np.pi ** 2)
    sing = lambda t2: [t2, t2 - 2.0 * np.pi, t2 + 2.0 * np.pi]
    return norm * gauss_axial(E) * _nested_quad(f, sing)
