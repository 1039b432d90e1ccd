import numpy as np
import pytest

from src.core.config import SCENARIOS, ScenarioConfig
from src.core.errors import UsageError
from src.core.numerics import fsum_complex, make_rng, nearest_integer_distance


def test_scenario_config_validation():
    with pytest.raises(UsageError):
        ScenarioConfig(scenario='inconnu')
    with pytest.raises(UsageError):
        ScenarioConfig(scenario='winding', quad_order=7)
    with pytest.raises(UsageError):
        ScenarioConfig(scenario='winding', tolerance=0.0)
    with pytest.raises(UsageError):
        ScenarioConfig(scenario='winding', gauge_p=1)


def test_tolerance_scale():
    assert ScenarioConfig(scenario='cech', tolerance=1e-6).tolerance_scale == pytest.approx(1.0)
    assert ScenarioConfig(scenario='cech', tolerance=1e-3).tolerance_scale == pytest.approx(1e3)


def test_all_is_a_scenario():
    assert 'all' in SCENARIOS
    assert ScenarioConfig(scenario='all').with_scenario('cech').scenario == 'cech'


def test_from_sources_priority(tmp_path):
    config_file = tmp_path / 'scenario.env'
    config_file.write_text("SCENARIO=winding\nSEED=5\nQUAD_ORDER=16\n")

    cfg = ScenarioConfig.from_sources({'seed': 9, 'quad_order': None}, str(config_file))
    assert cfg.scenario == 'winding'
    assert cfg.seed == 9
    assert cfg.quad_order == 16


def test_from_sources_errors(tmp_path):
    with pytest.raises(UsageError):
        ScenarioConfig.from_sources({})
    with pytest.raises(UsageError):
        ScenarioConfig.from_sources({'scenario': 'cech'}, str(tmp_path / 'absent.env'))

    bad = tmp_path / 'bad.env'
    bad.write_text("SCENARIO=cech\nFOO=1\n")
    with pytest.raises(UsageError):
        ScenarioConfig.from_sources({}, str(bad))

    invalid = tmp_path / 'invalid.env'
    invalid.write_text("SCENARIO=cech\nSEED=abc\n")
    with pytest.raises(UsageError):
        ScenarioConfig.from_sources({}, str(invalid))


def test_fsum_complex_is_compensated():
    values = [1e16, 1.0, -1e16] * 3 + [1j]
    assert fsum_complex(values) == complex(3.0, 1.0)
    assert fsum_complex([]) == 0j


def test_make_rng_streams():
    a = make_rng(0, 'flux').normal(size=4)
    b = make_rng(0, 'flux').normal(size=4)
    c = make_rng(0, 'autre').normal(size=4)
    d = make_rng(1, 'flux').normal(size=4)
    np.testing.assert_array_equal(a, b)
    assert not np.allclose(a, c)
    assert not np.allclose(a, d)


def test_nearest_integer_distance():
    nearest, distance = nearest_integer_distance(2.0000001 + 0j)
    assert nearest == 2
    assert distance == pytest.approx(1e-7)
