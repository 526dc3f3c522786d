import json
import math

import pytest

import szego_lab


def test_multiplicities():
    assert szego_lab.multiplicity([1, 2], 8, 16) == 1
    assert szego_lab.isotype_dimension([1, 2], 8, 16) == 17
    m = szego_lab.multiplicities([1, 1, 3], 5)
    assert sum(c * (n + 1) for n, c in enumerate(m)) == 6 * 6 * 16


def test_moment_map():
    v = szego_lab.moment_map([1, 2], [[0, 0, 1], [0, 0, -1]])
    assert v == pytest.approx([0.0, 0.0, -0.5], abs=1e-14)


def test_closed_forms():
    assert szego_lab.radial_moment(2.0) == pytest.approx(0.125, rel=1e-12)
    assert szego_lab.gaussian_J(1.0, 1.0).imag == pytest.approx(-1.5203469010662807, rel=1e-12)
    assert szego_lab.chain_ratio(1000.0, math.sqrt(45 / 32)) == pytest.approx(1.0, abs=2e-3)


def test_fit():
    k = [4.0, 8.0, 16.0, 32.0]
    f = szego_lab.fit_power_law(k, [2 * x**1.5 for x in k])
    assert f["exponent"] == pytest.approx(1.5)


def test_calibrate():
    r = szego_lab.calibrate([1, 2], [(8, 16), (12, 24)])
    assert r["snapped"] == 0.5


def test_run_loci(tmp_path):
    rc = szego_lab.run("loci", {"loci": {"samples": 10}}, str(tmp_path))
    assert rc == 0
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["pass"]


def test_bad_config():
    with pytest.raises(ValueError):
        szego_lab.run("dims", {"nonsense": 1})
