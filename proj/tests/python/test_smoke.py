import math

import numpy as np
import pytest

import entropylab as el


def test_umegaki_closed_form():
    rho = np.diag([1.0, 0.0]).astype(complex)
    sigma = np.eye(2, dtype=complex) / 2
    assert el.relative_entropy_umegaki(rho, sigma) == pytest.approx(math.log(2))
    assert math.isinf(el.relative_entropy_umegaki(sigma, rho))


def test_araki_matches_umegaki_for_maximally_entangled_vector():
    p = np.array([0.5, 0.3, 0.2])
    omega = np.zeros(9, dtype=complex)
    for i in range(3):
        omega[3 * i + i] = math.sqrt(p[i])
    sigma = np.diag([0.2, 0.2, 0.6]).astype(complex)
    phi = np.kron(sigma, np.eye(3) / 3)
    want = float(np.sum(p * np.log(p)) - np.sum(p * np.log(np.diag(sigma).real)))
    got = el.relative_entropy_spatial(omega, phi, [3, 3], [True, False])
    assert got == pytest.approx(want, rel=1e-12)


def test_spatial_derivative_eigenvalues():
    p, q = 0.3, 0.8
    psi = np.kron(np.diag([p, 1 - p]), np.eye(2) / 2).astype(complex)
    phip = np.kron(np.eye(2) / 2, np.diag([q, 1 - q])).astype(complex)
    ev = np.sort(np.linalg.eigvalsh(el.spatial_derivative(psi, phip, [2, 2], [True, False])))
    want = np.sort([p / q, p / (1 - q), (1 - p) / q, (1 - p) / (1 - q)])
    assert np.allclose(ev, want, rtol=1e-12)


def test_indices():
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    flip = [np.eye(4, dtype=complex), np.kron(sx, sx)]
    assert el.group_average_index([2, 2], flip) == pytest.approx(2.0, abs=1e-9)
    weyl = [np.kron(np.eye(2), u) for u in el.weyl_group(2)]
    assert el.group_average_index([2, 2], weyl) == pytest.approx(4.0, abs=1e-9)
    assert el.pimsner_popa([2, 2], flip, samples=100)["passed"]
    assert not el.pimsner_popa([2, 2], flip, samples=100, lambda_=0.6)["passed"]


def test_identities():
    assert el.verify_prop1(3, 7)[3] < 1e-6
    assert el.verify_cor_fun(7, entangled=True, d=2)[3] < 1e-6
    assert el.check_th515(1, seed=3, trials=5)["passed"]


def test_lattice_basics():
    c = el.ground_state_correlations(16)
    assert np.allclose(np.diag(c), 0.5)
    assert np.allclose(c @ c, c)
    assert el.region_entropy(16, [3]) == pytest.approx(math.log(2))
    assert el.lattice_region(8, [(0.0, math.pi)]) == [0, 1, 2, 3]
    assert el.cross_ratio([(0.0, math.pi / 2), (math.pi, 1.5 * math.pi)]) == pytest.approx(1.0)
    assert el.exact_entropy(8, [0, 1]) == pytest.approx(el.region_entropy(8, [0, 1]), abs=1e-10)


def test_deficit_and_fit():
    d = el.deficit(256, [(0.0, 5 * math.pi / 16), (math.pi / 2, 17 * math.pi / 16)])
    assert d["path_residual"] < 1e-12
    assert abs(d["D"]) < 1e-4
    c_hat, _, _ = el.central_charge_fit(512, [8, 16, 32, 64, 96, 128, 192, 256])
    assert abs(c_hat - 1.0) < 0.02
    v_inf = el.extrapolate([256, 512, 1024], [3 + 5 / 256, 3 + 5 / 512, 3 + 5 / 1024])[0]
    assert v_inf == pytest.approx(3.0, abs=1e-10)


def test_config_and_run(tmp_path):
    text = (
        "[experiment]\nkind = duality\nseed = 2\n[lattice]\nsizes = 32, 64, 128\n"
        "[region]\narcs = 0:5/16pi, 1/2pi:17/16pi\n[output]\ncache = false\n"
    )
    canon = el.canonical_config(text)
    assert el.canonical_config(canon) == canon
    assert len(el.config_hash(canon)) == 16
    rep = el.run_experiment(text, out_dir=tmp_path)
    assert rep["kind"] == "duality"
    assert {v["id"] for v in rep["verdicts"]} >= {"path_identity", "deficit_extrapolated"}
    assert (tmp_path / "summary.json").exists()
    with pytest.raises(el.ConfigError):
        el.canonical_config("[experiment]\nkind = duality\n[lattice]\nsizes = 33, 64, 128\n")
    assert "duality" in el.default_config_text("duality")
