import math
import os
import pathlib

import pytest

import ladderlab as ll

GOLDEN = pathlib.Path(__file__).resolve().parents[2] / "golden" / "metaeq"


@pytest.fixture(scope="module")
def table(tmp_path_factory):
    cache = os.environ.get("LADDERLAB_PY_CACHE")
    if not cache:
        cache = str(tmp_path_factory.mktemp("cache") / "ladder.csv")
    return ll.LadderTable.load_or_build(cache, 4000.0)


def test_special_values():
    assert abs(ll.gamma(0.5) - math.sqrt(math.pi)) < 1e-12
    assert abs(ll.zeta(2.0) - math.pi**2 / 6) < 1e-10
    sn, cn, dn = ll.jacobi_sncndn(0.3 + 0.2j, 0.5)
    assert abs(sn * sn + cn * cn - 1) < 1e-9
    assert abs(dn * dn + 0.5 * sn * sn - 1) < 1e-9
    assert ll.zeta_critical_abs_sq(14.134725141734693) < 1e-6


def test_ladder_round_trip(table):
    assert table.phi1(0.0) == pytest.approx(ll.PHI_AT_ZERO)
    T = 1000.0
    x = table.reverse_iterate(T)
    assert x > T
    assert abs(table.phi1(x) - T) < 1e-8


def test_disconnected_set_ordering(table):
    d = ll.disconnected_set(300, 0.3, table)
    assert d["base"]["hi"] < d["lifted"]["lo"]
    assert d["rho"] > 0


def test_hybrid_exact(table):
    e = ll.epsilon(300, 0.3, table)
    assert e["hybrid_residual"] < 1e-8
    assert abs(e["epsilon"] - e["epsilon_prime"]) < 1e-9
    for t in e["triples"]:
        assert ll.mean_value_point(300, 0.3, t["l"], table)["residual"] < 1e-8


def test_equations_match_golden():
    eqs = ll.equations()
    assert len(eqs) == 15
    for eq in eqs:
        assert eq["sound"]
        golden = (GOLDEN / (eq["key"] + ".txt")).read_text()
        assert golden == ll.GOLDEN_VERSION + "\n" + eq["text"]


def test_crossbreed_accepts_labels():
    assert ll.crossbreed("5.5", "5.15") == ll.crossbreed("T5_5", "T5_15")
    with pytest.raises(ll.DomainError):
        ll.crossbreed("T4_5", "4.5")


def test_verify_meta(table):
    rows = ll.verify_meta(100, 0.3, table, samples=10, seed=7)
    assert len(rows) == 15
    for row in rows:
        assert row["assignments"] == 10
        assert row["max_residual"] < 1e-6
        assert row["perturbation_residual"] > 1e-5


def test_config_validation():
    ll.validate_config('{"U": 0.3}')
    with pytest.raises(ll.ConfigError, match="pi/4"):
        ll.validate_config('{"U": 0.8}')
    with pytest.raises(ll.ConfigError, match=r"\(0,1\)\^3"):
        ll.validate_config('{"ksq": [0.5, 1.0, 0.9]}')
