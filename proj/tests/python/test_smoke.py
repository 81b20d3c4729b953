import math

import numpy as np
import pytest

import specmil


def test_presets():
    assert set(specmil.presets()) == {"reacdiff1d", "reacdiff_cos", "heat2d", "burgers"}


def test_transform_round_trip():
    rng = np.random.default_rng(3)
    for shape in [(7,), (5, 5)]:
        v = rng.standard_normal(shape)
        c = specmil.to_spectral(v)
        assert c.shape == shape
        np.testing.assert_allclose(specmil.to_grid(c), v, atol=1e-12)


def test_sine_mode_is_a_unit_coefficient():
    n = 9
    x = np.arange(1, n + 1) / (n + 1)
    c = specmil.to_spectral(math.sqrt(2) * np.sin(3 * math.pi * x))
    expected = np.zeros(n)
    expected[2] = 1.0
    np.testing.assert_allclose(c, expected, atol=1e-13)


def test_semigroup_scales_by_eigenvalues():
    lam = specmil.eigenvalues(1, 4, kappa=0.5)
    np.testing.assert_allclose(lam, 0.5 * math.pi**2 * np.arange(1, 5) ** 2)
    c = specmil.apply_semigroup(np.ones(4), 0.1, kappa=0.5)
    np.testing.assert_allclose(c, np.exp(-0.1 * lam))


def test_random_variable_counts():
    assert specmil.count_random_variables("heat2d", "implicit_euler", 32) == 1073741824
    assert specmil.count_random_variables("heat2d", "milstein", 32) == 1048576


def test_run_is_seed_reproducible():
    a = specmil.run("reacdiff1d", "milstein", modes=8, seed=4)
    b = specmil.run("reacdiff1d", "milstein", modes=8, seed=4)
    c = specmil.run("reacdiff1d", "milstein", modes=8, seed=5)
    assert a["coefficients"].shape == (8,)
    assert a["steps"] == 64 and a["random_variables"] == 64 * 8
    np.testing.assert_array_equal(a["coefficients"], b["coefficients"])
    assert not np.array_equal(a["coefficients"], c["coefficients"])
    np.testing.assert_allclose(specmil.to_grid(a["coefficients"]), a["grid"], atol=1e-14)
    assert a["h_norm"] == pytest.approx(np.linalg.norm(a["coefficients"]))


def test_run_rejects_unknown_scheme():
    with pytest.raises(ValueError):
        specmil.run("reacdiff1d", "leapfrog", modes=4)


def test_small_convergence_study():
    config = """
    problem = reacdiff1d
    schemes = milstein
    ladder = 2, 4, 8
    ref_n = 16
    ref_m = 256
    ref_k = 16
    paths = 8
    seed = 3
    """
    report = specmil.converge(config)
    errors = [row["rms_error"] for row in report["rows"]]
    assert len(errors) == 3
    assert errors[0] > errors[1] > errors[2] > 0
    assert report["slopes"]["milstein"]["vs_N"] < -1.0
    assert report["csv"].startswith("scheme,N,M,K,random_variables,")


def test_identity_single_mode_is_exact():
    r = specmil.identity_test("reacdiff1d", modes=6, noise_modes=1, substeps=8, samples=50)
    assert r["max_abs_difference"] < 1e-12
