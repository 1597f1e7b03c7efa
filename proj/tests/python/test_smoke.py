import math

import pytest

import flevy


def test_constants():
    assert flevy.alpha3(0.9) == pytest.approx(0.27, abs=5e-3)
    assert flevy.c1(0.3) + 2 * flevy.c2(0.3) == pytest.approx(flevy.alpha1(0.3), abs=1e-9)
    assert flevy.regime(0.75) == "three_quarters"
    with pytest.raises(ValueError):
        flevy.alpha2(0.9)
    with pytest.raises(ValueError):
        flevy.c1(0.2)


def test_brownian_mse():
    r = flevy.mse_euler(0.5, 2.0, 8)
    assert r["mse"] == pytest.approx(4.0 / 16.0, rel=1e-12)
    assert r["scheme"] == "euler"


def test_pair_close_to_exact():
    exact = flevy.mse_euler(0.6, 1.0, 16)["mse"]
    pair = flevy.mse_pair(0.6, 1.0, "euler", 16, "euler", 1024, 1024)
    assert pair == pytest.approx(exact, rel=0.05)


def test_samplers_are_reproducible():
    a = flevy.sample_path_pair(0.7, 1.0, 64, seed=3)
    b = flevy.sample_path_pair(0.7, 1.0, 64, seed=3)
    assert a == b and len(a[0]) == 65 and a[0][0] == 0.0
    r = flevy.rosenblatt(0.8, 5, resolution=1024, seed=1)
    assert len(r) == 5 and all(math.isfinite(x) for x in r)


def test_statistics_and_commands():
    values = flevy.scaled_errors(0.6, 1.0, 32, ref_factor=8, samples=1000, seed=5)
    s = flevy.summarize(values)
    assert s["count"] == 1000 and s["variance"] > 0
    assert set(flevy.normality(values)) >= {"pass", "ks_distance"}
    csv = flevy.run("constants", hurst=0.9)
    assert csv.splitlines()[0].startswith("H,regime,c1,c2")
