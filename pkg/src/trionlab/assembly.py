"""Assembly of the overlap, kinetic and potential matrices.

Axial Gaussian integrals are closed forms; Coulomb elements reduce to a
single outer integral of closed-form angular weights (see `angular` and
`quadrature`).  Angular factors carry the measure d(theta)/(2 pi) per
particle, matching the normalized angular kernel tables in `basis`.
"""
from dataclasses import dataclass

import numpy as np

from . import angular
from .basis import (ANGULAR_KINETIC, ANGULAR_KINETIC_MIXED, ANGULAR_OVERLAP,
                    AngularSet, BasisSpec)
from .quadrature import DEFAULT_QUAD, outer_rule

SQPI = np.sqrt(np.pi)


@dataclass(frozen=True)
class MatrixTriple:
    S: np.ndarray
    K: np.ndarray
    U: np.ndarray

    @property
    def H(self):
        return self.K + self.U


def mixing_weight(sigma, charge):
    """Mass-fraction weight of the mixed kinetic terms: 2 sigma/(1+sigma).

    charge '+' applies sigma -> 1/sigma, giving 2/(1+sigma).
    """
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    if charge == "-":
        return 2.0 * sigma / (1.0 + sigma)
    if charge == "+":
        if sigma == 0:
            raise ValueError("positive trion requires sigma > 0")
        return 2.0 / (1.0 + sigma)
    raise ValueError(f"unknown charge {charge!r}")


def _axial_arrays(basis):
    ax = basis.axial
    ai = np.asarray(ax.alphas_i, float)
    aj = np.asarray(ax.alphas_j, float)
    ak = np.asarray(ax.alphas_k, float)
    return ai, aj, ak


def _pair_tensors(ai, aj, ak):
    """Pairwise exponent sums broadcast to (i,i',j,j',k,k')."""
    A = (ai[:, None] + ai[None, :])[:, :, None, None, None, None]
    B = (aj[:, None] + aj[None, :])[None, None, :, :, None, None]
    C = (ak[:, None] + ak[None, :])[None, None, None, None, :, :]
    return A, B, C


def _flatten(T, n1, n2, n3, L):
    """(i,i',j,j',k,k',l,l') tensor -> (N, N) matrix, row index (i,j,k,l)."""
    M = T.transpose(0, 2, 4, 6, 1, 3, 5, 7)
    return np.ascontiguousarray(M.reshape(n1 * n2 * n3 * L, n1 * n2 * n3 * L))


def assemble_overlap(basis):
    """Full overlap matrix S (axial Gaussian overlap x angular table)."""
    ai, aj, ak = _axial_arrays(basis)
    A, B, C = _pair_tensors(ai, aj, ak)
    D = A * B + A * C + B * C
    L = basis.angular.size
    ST = (np.pi / np.sqrt(D))[..., None, None] * ANGULAR_OVERLAP[:L, :L]
    return _flatten(ST, len(ai), len(aj), len(ak), L)


def assemble_kinetic(basis, sigma, r, charge="-"):
    """Full kinetic matrix, including the 1/r^2 angular factor and the
    mass-fraction-weighted mixed terms."""
    if r <= 0:
        raise ValueError("radius must be positive")
    w = mixing_weight(sigma, charge)
    ai, aj, ak = _axial_arrays(basis)
    A, B, C = _pair_tensors(ai, aj, ak)
    D = A * B + A * C + B * C
    ST = np.pi / np.sqrt(D)
    D32 = D ** 1.5

    def bc(v, axis):
        shape = [1] * 6
        shape[axis] = len(v)
        return v.reshape(shape)

    ai0, ai1 = bc(ai, 0), bc(ai, 1)
    aj0, aj1 = bc(aj, 2), bc(aj, 3)
    ak0, ak1 = bc(ak, 4), bc(ak, 5)
    KT1 = 2.0 * np.pi * (ai0 * ai1 * (B + C) + (ai0 * ak1 + ai1 * ak0) * B
                         + ak0 * ak1 * (A + B)) / D32
    KT2 = 2.0 * np.pi * (aj0 * aj1 * (A + C) + (aj0 * ak1 + aj1 * ak0) * A
                         + ak0 * ak1 * (A + B)) / D32
    KTM = -2.0 * np.pi * (ak0 * ak1 * (A + B) + ai0 * aj0 * ak1
                          + ai1 * aj1 * ak0) / D32
    L = basis.angular.size
    ang = (ANGULAR_KINETIC + w * ANGULAR_KINETIC_MIXED)[:L, :L] / r ** 2
    K = ST[..., None, None] * ang \
        + (KT1 + KT2 + w * KTM)[..., None, None] * ANGULAR_OVERLAP[:L, :L]
    return _flatten(K, len(ai), len(aj), len(ak), L)


def _unique_pairs(al):
    """Unordered pair sums of one exponent list plus the scatter index."""
    n = len(al)
    iu, ju = np.triu_indices(n)
    sums = al[iu] + al[ju]
    back = np.empty((n, n), dtype=int)
    back[iu, ju] = np.arange(len(iu))
    back[ju, iu] = back[iu, ju]
    return sums, back


def assemble_potential(basis, r, quad=DEFAULT_QUAD, chunk=64):
    """Full Coulomb matrix U: two attraction channels plus repulsion.

    Elements depend on the exponents only through the three pair sums,
    so the kernels are evaluated once per unordered pair combination and
    scattered to the full matrix.  Chunking over the third pair axis
    bounds memory for large bases.
    """
    if r <= 0:
        raise ValueError("radius must be positive")
    ai, aj, ak = _axial_arrays(basis)
    n1, n2, n3 = len(ai), len(aj), len(ak)
    L = basis.angular.size
    _, wts, sinh2 = outer_rule(quad)
    Au, ia = _unique_pairs(ai)
    Bu, ib = _unique_pairs(aj)
    Cu, ic = _unique_pairs(ak)
    p1, p2, p3 = len(Au), len(Bu), len(Cu)
    Ap = Au[:, None, None]
    Bp = Bu[None, :, None]
    norm = 1.0 / (4.0 * np.pi ** 2)
    Uu = np.zeros((p1, p2, p3, L, L))
    for c0 in range(0, p3, chunk):
        Cs = Cu[None, None, c0:c0 + chunk]
        sl = slice(c0, c0 + Cs.shape[2])
        D = Ap * Bp + (Ap + Bp) * Cs
        for channel, E, sgn in ((0, Bp + Cs, -1.0), (1, Ap + Cs, -1.0),
                                (2, (Ap + Bp) * np.ones_like(Cs), +1.0)):
            q = (4.0 * r * r * D / E)[..., None] * sinh2
            pref = sgn * norm * (4.0 / SQPI) * np.pi / np.sqrt(E)
            for l in range(L):
                for lp in range(l, L):
                    J = angular.pair_weight(channel, l, lp, q) @ wts
                    Uu[:, :, sl, l, lp] += pref * J
                    if lp != l:
                        Uu[:, :, sl, lp, l] += pref * J
    U = Uu[np.ix_(ia.ravel(), ib.ravel(), ic.ravel())]
    U = U.reshape(n1, n1, n2, n2, n3, n3, L, L)
    return _flatten(U, n1, n2, n3, L)


def potential_element(kind, idx, idxp, basis, r, quad=DEFAULT_QUAD):
    """Single Coulomb matrix element; index tuples are (i, j, k, l) with
    0-based axial indices and 0-based angular labels."""
    ai, aj, ak = _axial_arrays(basis)
    i, j, k, l = idx
    ip, jp, kp, lp = idxp
    A = ai[i] + ai[ip]
    B = aj[j] + aj[jp]
    C = ak[k] + ak[kp]
    D = A * B + A * C + B * C
    _, wts, sinh2 = outer_rule(quad)
    norm = 1.0 / (4.0 * np.pi ** 2)
    if kind == "attraction":
        out = 0.0
        for channel, E in ((0, B + C), (1, A + C)):
            q = (4.0 * r * r * D / E) * sinh2
            J = angular.pair_weight(channel, l, lp, q) @ wts
            out -= norm * (4.0 / SQPI) * np.pi / np.sqrt(E) * J
        return out
    if kind == "repulsion":
        E = A + B
        q = (4.0 * r * r * D / E) * sinh2
        J = angular.pair_weight(2, l, lp, q) @ wts
        return norm * (4.0 / SQPI) * np.pi / np.sqrt(E) * J
    raise ValueError(f"unknown element kind {kind!r}")


def assemble_trion(basis, r, sigma, charge="-", quad=DEFAULT_QUAD):
    """Overlap, kinetic and Coulomb matrices of the three-body problem."""
    return MatrixTriple(assemble_overlap(basis),
                        assemble_kinetic(basis, sigma, r, charge),
                        assemble_potential(basis, r, quad))


# --- single-particle (electron-hole pair) problem ---------------------------
_EX_OVERLAP = np.array([[1.0, 2.0 / np.pi], [2.0 / np.pi, 0.5]])
_EX_KINETIC = np.array([[0.0, 0.0], [0.0, 0.125]])
_EX_PROFILES = {(0, 0): angular.flat_weight, (0, 1): angular.sin_weight,
                (1, 1): angular.sin2_weight}


def assemble_exciton(basis, r, quad=DEFAULT_QUAD):
    """Matrices of the relative electron-hole problem.

    Basis: Gaussians (from alphas_i) x angular {1, |sin(theta/2)|}
    (constant set only for the 1D model).
    """
    if r <= 0:
        raise ValueError("radius must be positive")
    al = np.asarray(basis.axial.alphas_i, float)
    L = 1 if basis.angular is AngularSet.CONSTANT else 2
    A = al[:, None] + al[None, :]
    s_ax = np.sqrt(np.pi / A)
    k_ax = 2.0 * al[:, None] * al[None, :] * SQPI / A ** 1.5
    S = np.kron(s_ax, _EX_OVERLAP[:L, :L])
    K = np.kron(k_ax, _EX_OVERLAP[:L, :L]) \
        + np.kron(s_ax, _EX_KINETIC[:L, :L]) / r ** 2
    _, wts, sinh2 = outer_rule(quad)
    q = (4.0 * r * r * A)[..., None] * sinh2
    n = len(al)
    U = np.zeros((n, L, n, L))
    for l in range(L):
        for lp in range(l, L):
            W = _EX_PROFILES[(l, lp)](q)
            J = W @ wts
            blk = -(2.0 / np.pi) * J
            U[:, l, :, lp] = blk
            U[:, lp, :, l] = blk
    return MatrixTriple(S, K, U.reshape(n * L, n * L))


# --- two-particle mean-field repulsion tensor -------------------------------
def repulsion_tensor(alphas, r, n_ang, quad=DEFAULT_QUAD):
    """<a c| V(x1-x2, t1-t2) |b d> over the single-particle basis.

    Orbitals a, b live on particle 1 and c, d on particle 2; returned
    with composite indices [(a,la), (b,lb), (c,lc), (d,ld)].
    """
    al = np.asarray(alphas, float)
    n = len(al)
    Q = al[:, None] + al[None, :]
    _, wts, sinh2 = outer_rule(quad)
    norm = 1.0 / (4.0 * np.pi ** 2)
    N = n * n_ang
    V = np.zeros((n, n_ang, n, n_ang, n, n_ang, n, n_ang))  # a,la,b,lb,c,lc,d,ld
    for a in range(n):
        for b in range(n):
            P = al[a] + al[b]
            D = P * Q
            E = P + Q
            q = (4.0 * r * r * D / E)[..., None] * sinh2
            pref = norm * (4.0 / SQPI) * np.pi / np.sqrt(E)
            for la in range(n_ang):
                for lb in range(n_ang):
                    for lc in range(n_ang):
                        for ld in range(n_ang):
                            W = angular.power_corr_weight(la + lb, lc + ld, q)
                            V[a, la, b, lb, :, lc, :, ld] = pref * (W @ wts)
    return V.reshape(N, N, N, N)
