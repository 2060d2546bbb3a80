"""Effective exciton units: Rydberg energy and Bohr length scales."""
from dataclasses import dataclass

RYDBERG_EV = 13.6
BOHR_ANGSTROM = 0.529


@dataclass(frozen=True)
class Environment:
    epsilon: float = 3.5

    def __post_init__(self):
        if self.epsilon < 1:
            raise ValueError("dielectric constant must be >= 1")


@dataclass(frozen=True)
class EffectiveUnits:
    rydberg: float   # eV
    bohr: float      # Angstrom

    def __post_init__(self):
        if self.rydberg <= 0 or self.bohr <= 0:
            raise ValueError("unit scales must be positive")


def effective_units(mu, env):
    """Ry* = 13.6 mu / eps^2 eV and a_B* = 0.529 eps / mu Angstrom."""
    if mu <= 0:
        raise ValueError("reduced mass must be positive")
    eps = env.epsilon
    return EffectiveUnits(RYDBERG_EV * mu / eps ** 2, BOHR_ANGSTROM * eps / mu)


def dimensionless_radius(r_angstrom, u):
    """Radius in units of the effective Bohr radius."""
    if r_angstrom <= 0:
        raise ValueError("radius must be positive")
    return r_angstrom / u.bohr


def to_physical_energy(e_rydberg, u):
    """Convert an energy in Ry* to eV."""
    return e_rydberg * u.rydberg
