"""Mean-field SCF solution of the two-electron trion."""
import numpy as np
import pytest

from trionlab import AngularSet, AxialBasis, BasisSpec, binding_energy, scf
from trionlab.assembly import assemble_exciton, repulsion_tensor
from trionlab.hartree_fock import hartree_matrix, hf_binding_energy
from trionlab.solver import exciton_ground

SMALL = BasisSpec(AxialBasis((0.07, 0.9, 6.0, 40.0), (1.0,), (1.0,)),
                  AngularSet.EXCITON_PAIR, "2d")


def test_hartree_matrix_zero_density():
    V4 = repulsion_tensor((0.4, 2.5), 0.13, 2)
    assert np.allclose(hartree_matrix(np.zeros(4), V4), 0.0)


def test_hartree_matrix_is_symmetric_psd_diagonal():
    V4 = repulsion_tensor((0.4, 2.5), 0.13, 2)
    rng = np.random.default_rng(3)
    chi = rng.normal(size=4)
    VH = hartree_matrix(chi, V4)
    assert np.allclose(VH, VH.T, atol=1e-12)
    # repulsion energy of any density with itself is positive
    assert chi @ VH @ chi > 0
    assert np.all(np.diag(VH) > 0)


def test_hartree_matrix_against_loop_contraction():
    """einsum contraction against an explicit double loop."""
    V4 = repulsion_tensor((0.4, 2.5), 0.13, 2)
    rng = np.random.default_rng(4)
    chi = rng.normal(size=4)
    VH = hartree_matrix(chi, V4)
    want = np.zeros((4, 4))
    for a in range(4):
        for b in range(4):
            for c in range(4):
                for d in range(4):
                    want[a, b] += V4[a, b, c, d] * chi[c] * chi[d]
    assert np.allclose(VH, want, atol=1e-12)


def test_scf_reduces_to_exciton_without_repulsion():
    """First iterate starts from the bare attraction problem: the first
    history entry is the exciton orbital energy in the same basis."""
    state = scf(0.15, basis=SMALL, max_iter=1)
    assert state.history[0] == pytest.approx(
        exciton_ground(0.15, basis=SMALL), rel=1e-12)


def test_scf_converges_with_small_residual():
    state = scf(0.2)
    assert state.converged
    assert abs(state.history[-1] - state.history[-2]) < 1e-8
    assert state.iterations <= 200
    # orbital is S-normalized
    from trionlab.basis import preset_basis, scale_exponents

    basis = scale_exponents(preset_basis("hf2d"), 0.2)
    t = assemble_exciton(basis, 0.2)
    c = state.orbital_coeffs
    assert c @ t.S @ c == pytest.approx(1.0, rel=1e-8)


def test_scf_deterministic():
    s1 = scf(0.1)
    s2 = scf(0.1)
    assert s1.E_T_HF == s2.E_T_HF
    assert np.array_equal(s1.orbital_coeffs, s2.orbital_coeffs)


def test_scf_energy_consistency():
    """E_T = 2 eps0 - <chi|V_H|chi> with the converged orbital."""
    from trionlab.basis import preset_basis, scale_exponents

    r = 0.25
    state = scf(r)
    basis = scale_exponents(preset_basis("hf2d"), r)
    V4 = repulsion_tensor(basis.axial.alphas_i, r, 2)
    chi = state.orbital_coeffs
    VH = hartree_matrix(chi, V4)
    assert state.E_T_HF == pytest.approx(
        2.0 * state.epsilon0 - chi @ VH @ chi, rel=1e-9)


def test_scf_validation():
    with pytest.raises(ValueError):
        scf(0.1, mixing=0.0)
    with pytest.raises(ValueError):
        scf(0.1, mixing=1.5)


def test_hf_underbinds_the_exact_trion():
    """Mean field misses correlation: E_B^HF below the variational E_B,
    but still positive (bound) at these radii."""
    for r in (0.1, 0.3):
        res, state = hf_binding_energy(r)
        exact = binding_energy(r, sigma=0.0).E_B
        assert state.converged
        assert 0.0 < res.E_B < exact


def test_hf_total_energy_above_exact_trion():
    """The single-determinant energy is variationally above the exact
    sigma = 0 trion ground energy."""
    from trionlab.solver import trion_energy

    r = 0.2
    res, _ = hf_binding_energy(r)
    assert res.E_T >= trion_energy(r, 0.0)
