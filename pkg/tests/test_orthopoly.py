import warnings

import numpy as np
import pytest
from hypothesis import assume, given

from spinrevival import (
    JacobiMatrix,
    SpectralData,
    SpectrumMismatch,
    eigendecompose,
    eval_chi,
    eval_monic,
    krawtchouk_chain,
    para_krawtchouk_chain,
    polynomial_table,
    spectral_data,
    weights_from_char,
)
from spinrevival.orthopoly import char_derivative, orthonormality_defect

from conftest import chains, persymmetric_chains
from oracles import dense_monic


def test_chi_initial_condition_and_two_site_value():
    chain = JacobiMatrix([0.5], [0.0, 0.0])
    assert eval_chi(chain, 0.5)[0] == 1.0
    assert eval_chi(chain, 0.5)[1] == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("n", [1, 2, 5, 8])
def test_krawtchouk_chi_n_alternates(n):
    chain = krawtchouk_chain(n)
    lam = eigendecompose(chain).eigenvalues
    chi_n = eval_chi(chain, lam)[-1]
    np.testing.assert_allclose(chi_n, (-1.0) ** (n + np.arange(n + 1)), atol=1e-10)


def test_weights_from_char_examples():
    np.testing.assert_allclose(weights_from_char(krawtchouk_chain(2), [-1, 0, 1]).weights,
                               [0.25, 0.5, 0.25], atol=1e-14)
    assert weights_from_char(JacobiMatrix([], [2.0]), [2.0]).weights.tolist() == [1.0]
    chain = para_krawtchouk_chain(3, 1.5)
    sd = spectral_data(eigendecompose(chain))
    np.testing.assert_allclose(weights_from_char(chain, sd.points).weights, sd.weights, rtol=1e-9)


def test_weights_from_char_rejects_wrong_spectrum():
    with pytest.raises(SpectrumMismatch):
        weights_from_char(krawtchouk_chain(2), [-1, 0, 1.1])


def test_orthonormality_defect_controls():
    chain = krawtchouk_chain(4)
    sd = spectral_data(eigendecompose(chain))
    table = polynomial_table(chain)
    assert orthonormality_defect(table, sd) < 1e-12
    wrong = SpectralData(sd.points, np.roll(sd.weights, 1))
    assert orthonormality_defect(table, wrong) > 0.1
    single = JacobiMatrix([], [0.3])
    assert orthonormality_defect(polynomial_table(single), spectral_data(eigendecompose(single))) == 0.0


def test_monic_matches_determinants():
    chain = para_krawtchouk_chain(6, 0.75, 1.0, -2.0)
    x = np.array([-1.3, 0.2, 2.9])
    P = eval_monic(chain, x)
    for l in range(chain.n + 2):
        ref = [dense_monic(chain.couplings, chain.fields, xi, l) for xi in x]
        np.testing.assert_allclose(P[l], ref, rtol=1e-10, atol=1e-10)


def test_table_monic_property():
    chain = krawtchouk_chain(5)
    table = polynomial_table(chain)
    np.testing.assert_allclose(table.monic, eval_monic(chain, table.points, degree=chain.n), rtol=1e-12, atol=1e-12)


def test_char_derivative_sign_pattern():
    x = np.array([0.0, 1.0, 3.0])
    np.testing.assert_allclose(char_derivative(x), [3.0, -2.0, 6.0])


def test_large_n_warns():
    with warnings.catch_warnings(record=True) as rec:
        warnings.simplefilter("always")
        eval_chi(krawtchouk_chain(70), 0.0)
    assert rec


@given(chains(max_n=20))
def test_characteristic_polynomial_vanishes_on_spectrum(chain):
    lam = eigendecompose(chain).eigenvalues
    P = eval_monic(chain, lam)
    lead = max(chain.scale, 1.0) ** (chain.n + 1)
    assert np.abs(P[-1]).max() <= 1e-8 * lead


@given(chains(max_n=16))
def test_char_weights_agree_with_eigenvectors(chain):
    eig = eigendecompose(chain)
    # the formula is ill-conditioned for modes localized away from site N
    assume(np.abs(eig.transition[:, chain.n]).min() > 1e-2)
    sd = spectral_data(eig)
    np.testing.assert_allclose(weights_from_char(chain, sd.points).weights, sd.weights, rtol=1e-9)
    assert orthonormality_defect(polynomial_table(chain), sd) < 1e-8


@given(persymmetric_chains())
def test_persymmetric_properties(chain):
    sd = spectral_data(eigendecompose(chain))
    # eigenvector accuracy degrades like eps * scale / gap
    tol = max(1e-12, 1e-14 * chain.scale / np.diff(sd.points).min())
    assert abs(sd.weights[0::2].sum() - 0.5) < tol
    assert abs(sd.weights[1::2].sum() - 0.5) < tol
    # mirror symmetry makes W[s, N] = +-sqrt(w_s); small weights mean the
    # forward recurrence for chi_N is ill-conditioned
    assume(sd.weights.min() > 1e-4)
    chi = eval_chi(chain, sd.points)
    n = chain.n
    sign = (-1.0) ** (n + np.arange(n + 1))
    np.testing.assert_allclose(chi[::-1], sign * chi, atol=1e-9 * np.abs(chi).max())
    np.testing.assert_allclose(chi[-1], sign, atol=1e-9)
