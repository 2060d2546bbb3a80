"""Variational basis on the cylinder and its closed-form kernels.

Axial factors are Gaussians exp(-a x^2) in the two electron-hole
separations and in the electron-electron separation; angular factors are
drawn from {1, |sin(theta/2)|} per relative angle plus the correlation
function |sin((theta1-theta2)/2)|.  Lengths are in effective Bohr radii
and energies in effective Rydbergs throughout.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np


class AngularSet(Enum):
    CONSTANT = "constant"        # angularly flat wave function (1D model)
    EXCITON_PAIR = "exciton"     # {1, |sin(theta/2)|}
    FULL4 = "full4"              # {1, |s(t1)|, |s(t2)|, |s(t1-t2)|}

    @property
    def size(self):
        return {"constant": 1, "exciton": 2, "full4": 4}[self.value]


@dataclass(frozen=True)
class AxialBasis:
    alphas_i: tuple
    alphas_j: tuple
    alphas_k: tuple

    def __post_init__(self):
        for al in (self.alphas_i, self.alphas_j, self.alphas_k):
            if len(al) == 0:
                raise ValueError("empty exponent list")
            if any(a <= 0 for a in al):
                raise ValueError("exponents must be positive")


@dataclass(frozen=True)
class BasisSpec:
    axial: AxialBasis
    angular: AngularSet
    model: str  # "1d" | "2d"
    r0: float = 0.1

    def __post_init__(self):
        if self.model not in ("1d", "2d"):
            raise ValueError(f"unknown model {self.model!r}")
        if (self.model == "1d") != (self.angular is AngularSet.CONSTANT):
            raise ValueError("1d model requires (and is defined by) the "
                             "constant angular set")

    @property
    def size(self):
        ax = self.axial
        return len(ax.alphas_i) * len(ax.alphas_j) * len(ax.alphas_k) \
            * self.angular.size


def coulomb_potential(x, theta, r):
    """Cylinder Coulomb potential 2/sqrt(x^2 + 4 r^2 sin^2(theta/2))."""
    if r <= 0:
        raise ValueError("radius must be positive")
    x = np.asarray(x, float)
    theta = np.asarray(theta, float)
    d2 = x * x + 4.0 * r * r * np.sin(theta / 2.0) ** 2
    if np.any(d2 == 0):
        raise ValueError("potential is singular at x=0, theta=0 (mod 2 pi)")
    return 2.0 / np.sqrt(d2)


def axial_kernels(ai, aip, aj, ajp, ak, akp):
    """Closed-form axial overlap/kinetic kernels for one exponent tuple.

    Returns (S, K, KM): the Gaussian overlap, the kinetic form for the
    first separation coordinate, and the mixed-derivative kinetic form.
    With A = ai+aip, B = aj+ajp, C = ak+akp and D = AB+AC+BC:
        S  = pi / sqrt(D)
        K  = 2 pi [ai aip (B+C) + (ai akp + aip ak) B + ak akp (A+B)] / D^1.5
        KM = -2 pi [ak akp (A+B) + ai aj akp + aip ajp ak] / D^1.5
    """
    A, B, C = ai + aip, aj + ajp, ak + akp
    D = A * B + A * C + B * C
    S = np.pi / np.sqrt(D)
    K = 2.0 * np.pi * (ai * aip * (B + C) + (ai * akp + aip * ak) * B
                       + ak * akp * (A + B)) / D ** 1.5
    KM = -2.0 * np.pi * (ak * akp * (A + B) + ai * aj * akp
                         + aip * ajp * ak) / D ** 1.5
    return S, K, KM


# Normalized two-particle angular tables (labels 1..4 as in AngularSet.FULL4;
# all entries carry the 1/(2 pi)^2 measure).
_P = np.pi
ANGULAR_OVERLAP = np.array([
    [1.0, 2 / _P, 2 / _P, 2 / _P],
    [2 / _P, 0.5, 4 / _P**2, 4 / _P**2],
    [2 / _P, 4 / _P**2, 0.5, 4 / _P**2],
    [2 / _P, 4 / _P**2, 4 / _P**2, 0.5],
])
# Kinetic forms from the first-derivative quadratic form of each basis
# function: the single-angle factors cost 1/8 per acting derivative, and
# the relative-angle factor is hit by both one-particle derivatives.
ANGULAR_KINETIC = np.diag([0.0, 0.125, 0.125, 0.25])
ANGULAR_KINETIC_MIXED = np.diag([0.0, 0.0, 0.0, -0.125])


def angular_kernels(l, lp):
    """(overlap, kinetic, mixed-kinetic) angular kernels; labels 1-based."""
    if not (1 <= l <= 4 and 1 <= lp <= 4):
        raise ValueError("angular labels must be in 1..4")
    i, j = l - 1, lp - 1
    return (ANGULAR_OVERLAP[i, j], ANGULAR_KINETIC[i, j],
            ANGULAR_KINETIC_MIXED[i, j])


# --- presets ----------------------------------------------------------------
_EXCITON_ALPHAS = (0.143, 1.16, 4.98, 29.0, 250.0)
_TRION1D_ALPHAS = (0.0651, 0.145, 1.68, 9.65, 48.7)
_TRION2D_AIJ = (0.165, 1.68, 9.65, 48.7)
_TRION2D_AK = (0.0000171, 1.68, 9.98, 48.7)
_HF_ALPHAS = (0.0648, 0.195, 1.04, 5.28, 27.5, 99.3, 250.0)

_PRESETS = {
    "exciton1d": lambda: BasisSpec(
        AxialBasis(_EXCITON_ALPHAS, (1.0,), (1.0,)), AngularSet.CONSTANT, "1d"),
    "exciton2d": lambda: BasisSpec(
        AxialBasis(_EXCITON_ALPHAS, (1.0,), (1.0,)), AngularSet.EXCITON_PAIR, "2d"),
    "trion1d": lambda: BasisSpec(
        AxialBasis(_TRION1D_ALPHAS, _TRION1D_ALPHAS, _TRION1D_ALPHAS),
        AngularSet.CONSTANT, "1d"),
    "trion2d": lambda: BasisSpec(
        AxialBasis(_TRION2D_AIJ, _TRION2D_AIJ, _TRION2D_AK),
        AngularSet.FULL4, "2d"),
    "hf1d": lambda: BasisSpec(
        AxialBasis(_HF_ALPHAS, (1.0,), (1.0,)), AngularSet.CONSTANT, "1d"),
    "hf2d": lambda: BasisSpec(
        AxialBasis(_HF_ALPHAS, (1.0,), (1.0,)), AngularSet.EXCITON_PAIR, "2d"),
}


def preset_basis(kind):
    """Optimized exponent sets (reference radius r0 = 0.1)."""
    try:
        return _PRESETS[kind]()
    except KeyError:
        raise ValueError(f"unknown preset {kind!r}") from None


def scale_exponents(basis, r):
    """Rescale every axial exponent by (r0/r)^2 for use at radius r."""
    if r <= 0:
        raise ValueError("radius must be positive")
    f = (basis.r0 / r) ** 2
    ax = basis.axial
    scaled = AxialBasis(tuple(a * f for a in ax.alphas_i),
                        tuple(a * f for a in ax.alphas_j),
                        tuple(a * f for a in ax.alphas_k))
    return BasisSpec(scaled, basis.angular, basis.model, r0=basis.r0)
