"""Closed-form angular integrals on the ring.

All matrix elements of the cylinder Coulomb interaction reduce to 1D
outer integrals whose integrands are periodic integrals of the form

    integral over [-pi, pi] of  g(theta) * exp(-q sin^2(theta/2)) dtheta

for angular weights g built from the basis functions {1, |sin(theta/2)|}.
Every weight needed here has a closed form in terms of scaled Bessel
functions and the Dawson function, except one (the autocorrelation of
|sin(theta/2)|) which is evaluated by fixed-order Gauss-Legendre
quadrature on a smooth integrand.
"""
import math

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import dawsn, i0e, i1e


def flat_weight(q):
    """integral exp(-q sin^2(t/2)) dt over [-pi, pi] = 2 pi e^{-q/2} I0(q/2)."""
    return 2.0 * np.pi * i0e(np.asarray(q, float) / 2.0)


def sin_weight(q):
    """integral |sin(t/2)| exp(-q sin^2(t/2)) dt = 4 F(sqrt(q)) / sqrt(q).

    F is the Dawson function; the q -> 0 limit is 4.
    """
    q = np.asarray(q, float)
    small = q < 1e-12
    qs = np.where(small, 1.0, q)
    out = 4.0 * dawsn(np.sqrt(qs)) / np.sqrt(qs)
    return np.where(small, 4.0 * (1.0 - 2.0 * q / 3.0), out)


def sin2_weight(q):
    """integral sin^2(t/2) exp(-q sin^2(t/2)) dt = pi e^{-q/2} (I0 - I1)(q/2)."""
    q = np.asarray(q, float) / 2.0
    return np.pi * (i0e(q) - i1e(q))


def cos_weight(q):
    """integral cos(t) exp(-q sin^2(t/2)) dt (= flat - 2 sin2)."""
    return flat_weight(q) - 2.0 * sin2_weight(q)


# Autocorrelation of |sin(t/2)|: c(v) = 2 sin(|v|/2) + (pi - |v|) cos(v/2).
# The weighted integral splits into 2*sin_weight plus a smooth remainder
# handled by Gauss-Legendre on [0, pi/2].
_GL_ORDER = 64
_gx, _gw = leggauss(_GL_ORDER)
_gu = 0.5 * (_gx + 1.0) * (np.pi / 2.0)
_gw = _gw * (np.pi / 4.0)
_gf = (np.pi - 2.0 * _gu) * np.cos(_gu) * _gw
_gs2 = np.sin(_gu) ** 2


# Large-q asymptotics of the same remainder: substituting s = sin(u) gives
# 4 int_0^1 (pi - 2 asin s) exp(-q s^2) ds; the asin part expands into a
# series in 1/q whose terms fall off factorially fast for q > 200.
_ASY_K = np.arange(13)
_ASY_C = np.array([math.comb(2 * k, k) / (4 ** k * (2 * k + 1))
                   * math.factorial(k) * 4.0 for k in _ASY_K])


def _sincorr_tail_asymptotic(q):
    x = 1.0 / q
    out = 2.0 * np.pi ** 1.5 * np.sqrt(x)
    return out - (_ASY_C * x[..., None] ** (_ASY_K + 1)).sum(axis=-1)


def sincorr_weight(q):
    """integral c(v) exp(-q sin^2(v/2)) dv with c the |sin| autocorrelation."""
    q = np.asarray(q, float)
    big = q > 200.0
    qs = np.where(big, 1.0, q)
    tail = 4.0 * np.exp(-qs[..., None] * _gs2) @ _gf
    qb = np.where(big, q, 1.0)
    tail = np.where(big, _sincorr_tail_asymptotic(qb), tail)
    return 2.0 * sin_weight(q) + tail


# --- two-particle angular weight tables -------------------------------------
# Angular basis (0-based labels): 0 -> 1, 1 -> |sin(t1/2)|, 2 -> |sin(t2/2)|,
# 3 -> |sin((t1-t2)/2)|.  For a Coulomb factor carrying angle t1 the
# integral over (t1, t2) of phi_l phi_l' exp(-q sin^2(t1/2)) factorizes into
# the closed forms above; entries below give (coefficient, profile).
_T1 = {
    (0, 0): (2.0 * np.pi, flat_weight), (0, 1): (2.0 * np.pi, sin_weight),
    (0, 2): (4.0, flat_weight), (0, 3): (4.0, flat_weight),
    (1, 1): (2.0 * np.pi, sin2_weight), (1, 2): (4.0, sin_weight),
    (1, 3): (4.0, sin_weight), (2, 2): (np.pi, flat_weight),
    (2, 3): (1.0, sincorr_weight), (3, 3): (np.pi, flat_weight),
}
# Coulomb factor on the relative angle t1 - t2.
_T12 = {
    (0, 0): (2.0 * np.pi, flat_weight), (0, 1): (4.0, flat_weight),
    (0, 2): (4.0, flat_weight), (0, 3): (2.0 * np.pi, sin_weight),
    (1, 1): (np.pi, flat_weight), (1, 2): (1.0, sincorr_weight),
    (1, 3): (4.0, sin_weight), (2, 2): (np.pi, flat_weight),
    (2, 3): (4.0, sin_weight), (3, 3): (2.0 * np.pi, sin2_weight),
}
# Swapping the two particles maps labels 1 <-> 2 and fixes 0, 3.
_SWAP = (0, 2, 1, 3)


def pair_weight(channel, l, lp, q):
    """Two-particle angular integral for one Coulomb channel.

    channel 0/1: attraction carrying angle theta_1 / theta_2;
    channel 2: repulsion carrying theta_1 - theta_2.
    Labels l, lp are 0-based.  Result is the raw integral over
    [-pi, pi]^2 (no 1/(2 pi)^2 normalization).
    """
    if channel == 1:
        l, lp = _SWAP[l], _SWAP[lp]
        tbl = _T1
    elif channel == 0:
        tbl = _T1
    else:
        tbl = _T12
    key = (l, lp) if (l, lp) in tbl else (lp, l)
    coef, prof = tbl[key]
    return coef * prof(q)


# --- single-particle convolution table (mean-field repulsion) ---------------
# Products of the one-particle angular set {1, |sin(t/2)|} give powers
# |sin(t/2)|^p with p in {0, 1, 2}.  The repulsion element needs the
# cross-correlation of two such powers against exp(-q sin^2(v/2)).
def power_corr_weight(p1, p2, q):
    """integral over (t1, t2) of |s(t1)|^p1 |s(t2)|^p2 exp(-q sin^2((t1-t2)/2))."""
    a0 = flat_weight(q)
    key = (min(p1, p2), max(p1, p2))
    if key == (0, 0):
        return 2.0 * np.pi * a0
    if key == (0, 1):
        return 4.0 * a0
    if key == (0, 2):
        return np.pi * a0
    if key == (1, 1):
        return sincorr_weight(q)
    if key == (1, 2):
        # |s| (*) s^2 = 2 + (2/3) cos v
        return 2.0 * a0 + (2.0 / 3.0) * cos_weight(q)
    if key == (2, 2):
        # s^2 (*) s^2 = pi/2 + (pi/4) cos v
        return (np.pi / 2.0) * a0 + (np.pi / 4.0) * cos_weight(q)
    raise ValueError(f"invalid angular powers ({p1}, {p2})")
