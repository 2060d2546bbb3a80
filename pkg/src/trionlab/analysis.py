"""Derived results: probability distributions, parameter sweeps, fits.

All sweep functions return lists of plain dicts in deterministic order;
CSV/JSON serialization lives in the CLI.
"""
from dataclasses import dataclass

import numpy as np
from scipy.optimize import curve_fit

from . import tightbinding as tb
from .assembly import assemble_kinetic, assemble_overlap, assemble_potential
from .basis import preset_basis, scale_exponents
from .hartree_fock import hf_binding_energy, scf
from .quadrature import DEFAULT_QUAD
from .solver import (TrionResult, exciton_ground, exciton_spectrum,
                     solve_generalized, trion_spectrum)
from .units import (Environment, dimensionless_radius, effective_units,
                    to_physical_energy)

KBT_ROOM_EV = 0.026   # room-temperature scale defining detectability


# --- probability distributions ---------------------------------------------
@dataclass(frozen=True)
class ProbabilityGrid:
    theta: np.ndarray
    values: np.ndarray     # 1D (n,) for excitons, 2D (n, n) for trions
    r: float
    model: str
    method: str


def _angular_moment(coeffs, basis):
    """M[l, l'] = sum over axial indices of S_axial c c'."""
    ax = basis.axial
    ai = np.asarray(ax.alphas_i, float)
    aj = np.asarray(ax.alphas_j, float)
    ak = np.asarray(ax.alphas_k, float)
    L = basis.angular.size
    c = coeffs.reshape(len(ai), len(aj), len(ak), L)
    A = ai[:, None] + ai[None, :]
    B = aj[:, None] + aj[None, :]
    C = ak[:, None] + ak[None, :]
    D = (A[:, :, None, None, None, None] * B[None, None, :, :, None, None]
         + A[:, :, None, None, None, None] * C[None, None, None, None, :, :]
         + B[None, None, :, :, None, None] * C[None, None, None, None, :, :])
    ST = np.pi / np.sqrt(D)
    return np.einsum("iIjJkK,ijkl,IJKm->lm", ST, c, c)


def trion_probability(spectrum, basis, grid_size=201, r=None):
    """Angular ground-state density P(theta1, theta2), integral 1."""
    c = spectrum.coefficients[:, 0]
    M = _angular_moment(c, basis)
    th = np.linspace(-np.pi, np.pi, grid_size)
    t1, t2 = np.meshgrid(th, th, indexing="ij")
    L = basis.angular.size
    phis = [np.ones_like(t1), np.abs(np.sin(t1 / 2.0)),
            np.abs(np.sin(t2 / 2.0)), np.abs(np.sin((t1 - t2) / 2.0))][:L]
    P = np.zeros_like(t1)
    for l in range(L):
        for lp in range(L):
            P += M[l, lp] * phis[l] * phis[lp]
    P /= 4.0 * np.pi ** 2
    return ProbabilityGrid(th, P, r, basis.model, "full")


def exciton_probability(spectrum, basis, grid_size=201, method="full",
                        r=None):
    """Angular density P(theta) of a single-particle state, integral 1."""
    c = np.asarray(spectrum if isinstance(spectrum, np.ndarray)
                   else spectrum.coefficients[:, 0], float)
    al = np.asarray(basis.axial.alphas_i, float)
    L = min(basis.angular.size, 2)
    cm = c.reshape(len(al), L)
    A = al[:, None] + al[None, :]
    Sax = np.sqrt(np.pi / A)
    M = np.einsum("iI,il,Im->lm", Sax, cm, cm)
    th = np.linspace(-np.pi, np.pi, grid_size)
    phis = [np.ones_like(th), np.abs(np.sin(th / 2.0))][:L]
    P = np.zeros_like(th)
    for l in range(L):
        for lp in range(L):
            P += M[l, lp] * phis[l] * phis[lp]
    P /= 2.0 * np.pi
    return ProbabilityGrid(th, P, r, basis.model, method)


def hf_pair_probability(r, model="2d", grid_size=201, quad=DEFAULT_QUAD):
    """Mean-field P(theta1, theta2) = p(theta1) p(theta2) from the SCF orbital."""
    state = scf(r, model, quad=quad)
    basis = scale_exponents(preset_basis("hf" + model), r)
    p1 = exciton_probability(state.orbital_coeffs, basis, grid_size,
                             method="hf", r=r)
    return ProbabilityGrid(p1.theta, np.outer(p1.values, p1.values), r,
                           model, "hf")


def hf_difference(full_grid, hf_grid, guard=1e-12):
    """Percent difference 100 (P_hf - P_full) / P_full, guarded."""
    P = full_grid.values
    return np.where(np.abs(P) < guard, 0.0,
                    100.0 * (hf_grid.values - P) / np.where(P == 0, 1.0, P))


# --- power-law fit ----------------------------------------------------------
@dataclass(frozen=True)
class PowerLawFit:
    A: float
    p: float
    C: float
    residual: float

    def __call__(self, x):
        return self.A * np.asarray(x, float) ** self.p + self.C


def fit_power_law(x, y):
    """Least-squares fit y = A x^p + C, initialized from a log-log slope."""
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    slope, logA = np.polyfit(np.log(x), np.log(np.maximum(y, 1e-300)), 1)
    p0 = [np.exp(logA), slope, 0.0]
    popt, _ = curve_fit(lambda e, A, p, C: A * e ** p + C, x, y, p0=p0,
                        maxfev=20000)
    res = float(np.linalg.norm(popt[0] * x ** popt[1] + popt[2] - y))
    return PowerLawFit(float(popt[0]), float(popt[1]), float(popt[2]), res)


# --- sweeps -----------------------------------------------------------------
def binding_both_charges(r, sigma, model="2d", quad=DEFAULT_QUAD):
    """E_B for S- and S+ sharing one overlap/potential assembly."""
    basis = scale_exponents(preset_basis("trion" + model), r)
    S = assemble_overlap(basis)
    U = assemble_potential(basis, r, quad)
    e_x = exciton_ground(r, model, None, quad)
    out = {}
    for charge in ("-", "+"):
        if charge == "+" and sigma == 0:
            continue
        K = assemble_kinetic(basis, sigma, r, charge)
        spec = solve_generalized(K + U, S)
        e_t = float(spec.energies[0])
        out[charge] = TrionResult(e_t, e_x, e_x - e_t, model, sigma, charge, r)
    return out


def sweep_radius(r_grid=None, sigmas=(0.0,), models=("1d", "2d"),
                 methods=("full",), quad=DEFAULT_QUAD):
    """Rows (r, sigma, model, method, charge, E_X, E_T, E_B) in Ry*."""
    if r_grid is None:
        r_grid = np.linspace(0.02, 0.3, 30)
    rows = []
    for r in r_grid:
        for model in models:
            for method in methods:
                if method == "hf":
                    res, _ = hf_binding_energy(r, model, quad=quad)
                    rows.append(_result_row(res, "hf"))
                    continue
                for sigma in sigmas:
                    for charge, res in sorted(
                            binding_both_charges(r, sigma, model, quad).items()):
                        rows.append(_result_row(res, "full"))
    return rows


def _result_row(res, method):
    return {"r_aB": res.r, "sigma": res.sigma, "model": res.model,
            "method": method, "charge": res.charge, "E_X_Ry": res.E_X,
            "E_T_Ry": res.E_T, "E_B_Ry": res.E_B}


def sweep_sigma(r=0.1, sigmas=None, model="2d", quad=DEFAULT_QUAD):
    if sigmas is None:
        sigmas = np.linspace(0.0, 1.0, 11)
    rows = []
    for sigma in sigmas:
        for charge, res in sorted(
                binding_both_charges(r, float(sigma), model, quad).items()):
            rows.append(_result_row(res, "full"))
    return rows


def species_units(ch, env=Environment(), params=tb.DEFAULT_PARAMS):
    """Masses, effective units and dimensionless radius of one species."""
    masses = tb.effective_masses(ch, params)
    u = effective_units(masses.mu, env)
    r_ang = tb.radius(ch, params)
    return masses, u, r_ang, dimensionless_radius(r_ang, u)


def sweep_epsilon(ch, eps_grid=None, params=tb.DEFAULT_PARAMS,
                  quad=DEFAULT_QUAD):
    """Binding energies vs dielectric constant, plus power-law fits (eV)."""
    if eps_grid is None:
        eps_grid = np.linspace(2.0, 5.0, 13)
    masses = tb.effective_masses(ch, params)
    r_ang = tb.radius(ch, params)
    rows = []
    for eps in eps_grid:
        u = effective_units(masses.mu, Environment(float(eps)))
        r = dimensionless_radius(r_ang, u)
        res = binding_both_charges(r, 0.0, "2d", quad)["-"]
        rows.append({"epsilon": float(eps), "r_aB": r,
                     "E_B_eV": to_physical_energy(res.E_B, u),
                     "E_X_eV": to_physical_energy(-res.E_X, u)})
    eb_fit = fit_power_law([w["epsilon"] for w in rows],
                           [w["E_B_eV"] for w in rows])
    ex_fit = fit_power_law([w["epsilon"] for w in rows],
                           [w["E_X_eV"] for w in rows])
    return rows, eb_fit, ex_fit


def sweep_species(r_min=3.0, r_max=15.0, env=Environment(),
                  params=tb.DEFAULT_PARAMS, models=("1d", "2d"),
                  quad=DEFAULT_QUAD):
    """Physical binding energies of all semiconducting species in range."""
    rows = []
    for ch in tb.enumerate_species(r_min, r_max, params):
        masses, u, r_ang, r = species_units(ch, env, params)
        row = {"n": ch.n, "m": ch.m, "r_A": r_ang, "m_e_m0": masses.m_e,
               "m_h_m0": masses.m_h, "mu_m0": masses.mu,
               "sigma": masses.sigma, "Ry_eV": u.rydberg, "aB_A": u.bohr,
               "r_aB": r}
        for model in models:
            both = binding_both_charges(r, masses.sigma, model, quad)
            row[f"E_B_minus_{model}_meV"] = \
                to_physical_energy(both["-"].E_B, u) * 1e3
            row[f"E_B_plus_{model}_meV"] = \
                to_physical_energy(both["+"].E_B, u) * 1e3
        if "1d" in models and "2d" in models:
            e2, e1 = row["E_B_minus_2d_meV"], row["E_B_minus_1d_meV"]
            row["model_gap_pct"] = 100.0 * (e2 - e1) / e2
        if "2d" in models:
            row["detectable"] = row["E_B_minus_2d_meV"] > KBT_ROOM_EV * 1e3
        rows.append(row)
    return rows


def detectability_radius(rows):
    """Radius (Angstrom) where E_B (2D, S-) crosses the room-T threshold."""
    pts = sorted((row["r_A"], row["E_B_minus_2d_meV"]) for row in rows)
    thr = KBT_ROOM_EV * 1e3
    for (r1, e1), (r2, e2) in zip(pts[:-1], pts[1:]):
        if (e1 - thr) * (e2 - thr) <= 0 and e1 != e2:
            return r1 + (thr - e1) * (r2 - r1) / (e2 - e1)
    raise ValueError("threshold not crossed inside the sweep range")
