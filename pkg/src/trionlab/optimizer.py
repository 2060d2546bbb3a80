"""Steepest-descent optimization of the Gaussian exponents.

The search runs in log-exponent space (positivity by construction) with
a central-difference gradient and a backtracking line search, minimizing
the variational ground energy at the reference radius r0 = 0.1.
Tied exponent lists (e.g. the shared set of the symmetric-pair
coordinates) are optimized as single variables.
"""
from dataclasses import dataclass

import numpy as np

from .basis import AngularSet, AxialBasis, BasisSpec
from .hartree_fock import scf
from .quadrature import DEFAULT_QUAD
from .solver import exciton_ground, trion_energy


@dataclass(frozen=True)
class OptimizationRun:
    problem: str
    model: str
    initial: tuple            # tuple of exponent tuples (one per tied group)
    final: tuple
    history: tuple            # objective per accepted step, Ry*
    accepted: int
    rejected: int
    converged: bool


def _build_basis(problem, model, groups):
    if problem == "exciton":
        (al,) = groups
        ang = AngularSet.CONSTANT if model == "1d" else AngularSet.EXCITON_PAIR
        return BasisSpec(AxialBasis(al, (1.0,), (1.0,)), ang, model)
    if problem == "hf":
        (al,) = groups
        ang = AngularSet.CONSTANT if model == "1d" else AngularSet.EXCITON_PAIR
        return BasisSpec(AxialBasis(al, (1.0,), (1.0,)), ang, model)
    if problem == "trion":
        if model == "1d":
            (al,) = groups
            return BasisSpec(AxialBasis(al, al, al), AngularSet.CONSTANT, "1d")
        aij, ak = groups
        return BasisSpec(AxialBasis(aij, aij, ak), AngularSet.FULL4, "2d")
    raise ValueError(f"unknown problem {problem!r}")


def _objective(problem, model, groups, r0, quad):
    basis = _build_basis(problem, model, groups)
    if problem == "exciton":
        return exciton_ground(r0, model, basis, quad)
    if problem == "trion":
        return trion_energy(r0, 0.0, "-", model, basis, quad)
    state = scf(r0, model, basis, quad=quad)
    return state.E_T_HF


def optimize(problem, model, initial, r0=0.1, grad_step=1e-3, step0=0.25,
             e_tol=1e-6, max_steps=100, quad=DEFAULT_QUAD):
    """Minimize the ground energy over log-exponents.

    `initial` is a tuple of exponent tuples, one per tied group (one
    group everywhere except the 2D trion, which has two).
    """
    groups0 = tuple(tuple(float(a) for a in g) for g in initial)
    sizes = [len(g) for g in groups0]
    splits = np.cumsum(sizes)[:-1]

    def unpack(x):
        parts = np.split(np.exp(x), splits)
        return tuple(tuple(p) for p in parts)

    def f(x):
        return _objective(problem, model, unpack(x), r0, quad)

    x = np.log(np.concatenate([np.asarray(g) for g in groups0]))
    e = f(x)
    history = [e]
    accepted = rejected = 0
    converged = False
    for _ in range(max_steps):
        g = np.empty_like(x)
        for i in range(len(x)):
            xp, xm = x.copy(), x.copy()
            xp[i] += grad_step
            xm[i] -= grad_step
            g[i] = (f(xp) - f(xm)) / (2.0 * grad_step)
        gnorm = np.linalg.norm(g)
        if gnorm == 0:
            converged = True
            break
        step = step0
        direction = -g / gnorm
        improved = False
        while step > 1e-6:
            e_new = f(x + step * direction)
            if e_new < e:
                x = x + step * direction
                improved = True
                break
            rejected += 1
            step /= 2.0
        if not improved:
            converged = True
            break
        accepted += 1
        history.append(e_new)
        if e - e_new < e_tol:
            e = e_new
            converged = True
            break
        e = e_new
    return OptimizationRun(problem, model, groups0, unpack(x),
                           tuple(history), accepted, rejected, converged)
