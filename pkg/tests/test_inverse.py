import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from spinrevival import (
    DegenerateRevival,
    InvalidSpectrumOrder,
    ReconstructionBreakdown,
    SpectralData,
    deform_chain,
    eigendecompose,
    fr_weights,
    gamma_from,
    is_persymmetric,
    krawtchouk_chain,
    pst_weights,
    reconstruct_jacobi,
    spectral_data,
    ZeroBoundaryWeight,
)
from spinrevival.deform import perturbed_positions
from spinrevival.inverse import GammaParam
from spinrevival.models import bilattice

from conftest import chains
from oracles import mp_pst_weights, mp_stieltjes

angles = st.floats(-math.pi / 4 + 1e-3, math.pi / 4 - 1e-3)
phases = st.floats(0, math.pi - 1e-9)


def test_gamma_limits():
    assert gamma_from(0.0, 1.1).gamma == 1.0
    assert gamma_from(0.3, math.pi / 2).gamma == pytest.approx(1.0, abs=1e-15)


def test_gamma_zero_phase_closed_form():
    th = math.pi / 8
    g = gamma_from(th, 0.0).gamma
    assert g == pytest.approx(math.tan(math.pi / 4 - th), rel=1e-14)
    # the reciprocal solves the relation with the opposite sign
    c = 1 / math.tan(math.pi / 4 - th)
    assert abs((c - 1 / c) + 2 * math.tan(2 * th)) > 1.0


def test_gamma_degenerate():
    with pytest.raises(DegenerateRevival):
        gamma_from(math.pi / 4, 0.2)
    with pytest.raises(DegenerateRevival):
        gamma_from(-math.pi / 4, 0.2)


def test_gamma_param_validates():
    with pytest.raises(ValueError):
        GammaParam(2.0, 0.1, 0.0)


@given(angles, phases)
def test_gamma_relation(theta, psi):
    g = gamma_from(theta, psi).gamma
    assert g > 0
    assert abs(g - 1 / g + 2 * math.tan(2 * theta) * math.cos(psi)) <= 1e-12 * max(1, g, 1 / g)


def test_pst_weight_examples():
    np.testing.assert_allclose(pst_weights([-1, 0, 1]).weights, [0.25, 0.5, 0.25], atol=1e-15)
    assert pst_weights([3.0]).weights.tolist() == [1.0]
    sd = pst_weights(bilattice(3, 1.5) - 1.25)
    assert abs(sd.weights[0::2].sum() - 0.5) < 1e-12 and abs(sd.weights[1::2].sum() - 0.5) < 1e-12


def test_pst_weights_reject_unordered():
    with pytest.raises(InvalidSpectrumOrder):
        pst_weights([0, 2, 1])


def test_fr_weights_gamma_one_is_pst():
    x = bilattice(5, 0.7)
    np.testing.assert_array_equal(fr_weights(x, 1.0).weights, pst_weights(x).weights)


@pytest.mark.parametrize("n", [3, 5, 4, 6])
def test_fr_weights_parity_ratio(n):
    x = np.arange(n + 1) - n / 2
    g = 2.0
    r = fr_weights(x, g).weights / pst_weights(x).weights
    even, odd = r[0::2], r[1::2]
    np.testing.assert_allclose(even, even[0], rtol=1e-13)
    np.testing.assert_allclose(odd, odd[0], rtol=1e-13)
    assert even[0] / odd[0] == pytest.approx(g**2 if n % 2 else 1 / g**2, rel=1e-13)


@pytest.mark.parametrize("n", [3, 4])
def test_fr_weights_match_deformed_chain(n):
    th = math.pi / 8
    K = krawtchouk_chain(n)
    w = spectral_data(eigendecompose(K)).weights
    wt = fr_weights(eigendecompose(K).eigenvalues, gamma_from(th, 0.0)).weights
    g = gamma_from(th, 0.0).gamma
    hi, lo = g * math.cos(2 * th), math.cos(2 * th) / g
    expect = np.where(np.arange(n + 1) % 2 == 0, hi, lo) if n % 2 else np.where(np.arange(n + 1) % 2 == 0, lo, hi)
    np.testing.assert_allclose(wt / w, expect, rtol=1e-12)
    D = deform_chain(K, th)
    np.testing.assert_allclose(spectral_data(eigendecompose(D)).weights, wt, rtol=1e-10)


def test_reconstruct_krawtchouk():
    x = np.arange(5) - 2.0
    chain = reconstruct_jacobi(pst_weights(x))
    l = np.arange(1, 5)
    np.testing.assert_allclose(chain.couplings, np.sqrt(l * (5 - l)) / 2, rtol=1e-13)
    np.testing.assert_allclose(chain.fields, 0, atol=1e-13)


def test_reconstruct_single_point():
    chain = reconstruct_jacobi(SpectralData([2.5], [1.0]))
    assert chain.n == 0 and chain.fields.tolist() == [2.5]


def test_reconstruct_centered_bilattice():
    d = 1.5
    chain = reconstruct_jacobi(pst_weights(bilattice(3, d) - (3 - 1 + d) / 2))
    h = math.sqrt(4 - d * d) / 2
    np.testing.assert_allclose(chain.couplings, [h, d, h], rtol=1e-13)
    np.testing.assert_allclose(chain.fields, 0, atol=1e-13)


def test_reconstruct_breakdown_on_clustered_points():
    with pytest.raises(ReconstructionBreakdown):
        reconstruct_jacobi(SpectralData([0.0, 1e-9, 1.0], [0.4, 0.2, 0.4]))


def test_reconstruct_matches_high_precision_stieltjes():
    rng = np.random.default_rng(7)
    x = np.sort(rng.uniform(-3, 3, 12))
    w = rng.uniform(0.1, 1, 12)
    B, J = mp_stieltjes(x, w)
    chain = reconstruct_jacobi(SpectralData.normalized(x, w))
    np.testing.assert_allclose(chain.couplings, J, rtol=1e-10)
    np.testing.assert_allclose(chain.fields, B, atol=1e-10)


@given(chains(max_n=24))
def test_round_trip(chain):
    try:
        sd = spectral_data(eigendecompose(chain))
    except ZeroBoundaryWeight:
        assume(False)
    # tiny weights make the inverse problem ill-conditioned in double precision
    assume(sd.weights.min() > 1e-6)
    back = reconstruct_jacobi(sd)
    assert back.allclose(chain, 1e-8)


@given(st.lists(st.floats(-10, 10), min_size=2, max_size=16, unique=True))
def test_pst_weights_always_persymmetric(pts):
    x = np.sort(np.array(pts))
    assume(np.diff(x).min() > 1e-2)
    chain = reconstruct_jacobi(pst_weights(x))
    assert is_persymmetric(chain, 1e-8 * chain.scale)
    mp_w = np.array([float(v) for v in mp_pst_weights(x)])
    np.testing.assert_allclose(pst_weights(x).weights, mp_w / mp_w.sum(), rtol=1e-10)


@given(st.integers(2, 14), st.floats(0.3, 1.7), st.floats(0.05, 0.7))
def test_fr_reconstruction_changes_only_central_entries(n, delta, theta):
    x = bilattice(n, delta)
    base = reconstruct_jacobi(pst_weights(x))
    fr = reconstruct_jacobi(fr_weights(x, gamma_from(theta, 0.0)))
    cpos, fpos = perturbed_positions(n)
    mask_J = np.ones(n, bool)
    mask_J[[k - 1 for k in cpos]] = False
    mask_B = np.ones(n + 1, bool)
    mask_B[fpos] = False
    scale = base.scale
    assert np.abs(fr.couplings - base.couplings)[mask_J].max(initial=0) < 1e-10 * scale
    assert np.abs(fr.fields - base.fields)[mask_B].max(initial=0) < 1e-10 * scale
    assert not is_persymmetric(fr, 1e-6 * scale)
