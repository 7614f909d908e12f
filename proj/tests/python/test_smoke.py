"""Python smoke tests for the _renewalkit extension module."""

import json
import math
import os
import sys

import pytest

MODULE_DIR = os.environ.get("RENEWALKIT_MODULE_DIR")
PKG_DIR = os.environ.get("RENEWALKIT_PKG_DIR")
if MODULE_DIR:
    sys.path.insert(0, MODULE_DIR)
if PKG_DIR and PKG_DIR not in sys.path:
    sys.path.insert(0, PKG_DIR)

rk = pytest.importorskip("_renewalkit") if MODULE_DIR else pytest.importorskip("renewalkit")


def test_kappa_exact_boundaries():
    assert rk.kappa(3, 1.5) == 2
    assert rk.kappa(2, 0.4) == 5
    assert rk.kappa(4, 2.0) == 2


def test_smith_normal_form_identity_and_chain():
    u, s, v = rk.smith_normal_form([[2, 4], [6, 8]])
    assert s[0][0] == 2 and s[1][1] == 4
    # U M V == S
    m = [[2, 4], [6, 8]]
    prod = [[sum(u[i][k] * m[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    prod = [[sum(prod[i][k] * v[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    assert prod == s


def test_decompose_pm1_walk():
    law = {
        "dim": 1,
        "atoms": [
            {"point": ["-1"], "mass": "1/2"},
            {"point": ["1"], "mass": "1/2"},
        ],
    }
    dec = json.loads(rk.decompose(json.dumps(law)))
    assert dec["r"] == 1 and dec["nu"] == 1
    assert dec["q"] == "2" and dec["p"] == "1"


def test_is_aperiodic_witness():
    rep = rk.is_aperiodic([[-1], [1]])
    assert rep["aperiodic"] and rep["q"] == 2 and rep["p"] == 1
    rep2 = rk.is_aperiodic([[-2], [2]])
    assert not rep2["aperiodic"]


def test_stable_cf_and_rho():
    law = rk.isotropic_law(2, 1.5, 1.0)
    re, im = law.cf([1.0, 0.0])
    assert abs(re - math.exp(-1.0)) < 1e-12 and abs(im) < 1e-14
    r = rk.rho(law, 1, [1.0, 0.0], 0.5)
    r2 = rk.rho(law, 2, [0.0, 1.0], 0.5)
    assert not r["infinite"]
    assert abs(r2["value"] - r["value"] / 2.0) < 1e-9 * r["value"]


def test_density_grid_gaussian_center():
    law = rk.isotropic_law(2, 2.0, 1.0)
    g = rk.density_grid(law, extent=2.0, spacing=0.5)
    n = g["n"]
    center = g["values"][(n // 2) * n + n // 2]
    assert abs(center - 1.0 / (4.0 * math.pi)) < 1e-6
    assert abs(g["period_mass"] - 1.0) < 1e-8


def test_model_and_renewal_sum():
    model = rk.model_from_json(json.dumps({"family": "pareto_lattice", "d": 2, "alpha": 1.5, "box": 512}))
    assert model.is_lattice()
    assert model.pmf([0, 0]) > 0
    est = rk.renewal_sum(model, 12.0, [1.0, 0.0], 0.5, 3.0)
    assert est["method"] == "exact-convolution"
    assert est["value"] > 0


def test_experiment_run_and_replay(tmp_path):
    spec = {
        "scenario": "decompose",
        "seed": 5,
        "law": {
            "dim": 2,
            "atoms": [
                {"point": ["0", "0"], "mass": "1/3"},
                {"point": ["1", "0"], "mass": "1/3"},
                {"point": ["0", "1"], "mass": "1/3"},
            ],
        },
    }
    out = rk.run_experiment(json.dumps(spec), str(tmp_path / "out"))
    assert out["exit_code"] == 0
    rep = rk.replay_experiment(out["manifest"])
    assert rep["exit_code"] == 0 and rep["comparable"]
