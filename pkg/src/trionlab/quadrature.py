"""Quadrature controls for the Coulomb matrix elements.

The Coulomb kernel 2/sqrt(u) is removed analytically with the transform
1/sqrt(u) = (2/sqrt(pi)) * integral exp(-u t^2) dt over [0, inf).  After
the Gaussian axial integrals are done in closed form, a substitution
t = t0 sinh(u) flattens the remaining half-line integral so that a fixed
composite Gauss-Legendre rule converges to machine precision.  The
integrand decays like exp(-c sinh^2 u), so the default panel layout
(dense near 0, geometric further out) is far inside round-off by u = 32.
"""
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss

_DEFAULT_EDGES = (0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0)


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000
    angular_order: int = 64
    outer_order: int = 24
    outer_edges: tuple = _DEFAULT_EDGES

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.angular_order < 8 or self.outer_order < 8:
            raise ValueError("quadrature orders must be >= 8")
        if len(self.outer_edges) - 1 > self.max_subdivisions:
            raise ValueError("outer panel count exceeds max_subdivisions")

    def refined(self):
        """A strictly finer rule, for self-convergence checks."""
        edges = (0.0, 0.25) + tuple(e for e in self.outer_edges if e > 0) + (64.0,)
        return QuadratureSpec(self.rel_tol, self.abs_tol, self.max_subdivisions,
                              self.angular_order, self.outer_order + 8, edges)

    def key(self):
        """Stable identity tuple (feeds result-cache hashing)."""
        return (self.rel_tol, self.abs_tol, self.max_subdivisions,
                self.angular_order, self.outer_order, self.outer_edges)


DEFAULT_QUAD = QuadratureSpec()


def outer_rule(quad=DEFAULT_QUAD):
    """Nodes, weights and sinh^2(nodes) of the composite outer rule."""
    x, w = leggauss(quad.outer_order)
    nodes, weights = [], []
    for a, b in zip(quad.outer_edges[:-1], quad.outer_edges[1:]):
        nodes.append(0.5 * (b - a) * x + 0.5 * (a + b))
        weights.append(0.5 * (b - a) * w)
    u = np.concatenate(nodes)
    return u, np.concatenate(weights), np.sinh(u) ** 2
