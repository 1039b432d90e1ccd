"""Tests des suites, du rapport JSON, du registre et de la ligne de commande"""

import json
import math

import numpy as np
import pytest

import run_verify
from src.core.config import SCENARIOS
from src.core.errors import ConventionError, ReportWriteError
from src.suites import runner
from src.suites.base_suite import BaseSuite, Check, abs_error, raised
from src.suites.cocycle_suites import CechSuite, GroupCohomologySuite
from src.suites.report import CHECK_KEYS, CheckResult, VerificationReport, emit_report, to_jsonable


class _ToySuite(BaseSuite):
    scenario = 'cech'
    title = 'jouet'

    def __init__(self, cfg, checks):
        super().__init__(cfg, verbose=False)
        self._checks = checks

    def collect_checks(self):
        return self._checks


def _boom():
    raise RuntimeError("panne")


def _result(name, status):
    return CheckResult(name, 1.0, 1.0, 'derived', 0.0, 1e-6, 0.5, status)


# ---------------------------------------------------------------------------
# Check, abs_error, raised
# ---------------------------------------------------------------------------

def test_check_rejects_unknown_provenance():
    with pytest.raises(ConventionError):
        Check('x', lambda: 0, provenance='folklore')


@pytest.mark.parametrize('computed, expected, error', [
    (1.5, 1.0, 0.5),
    (1j, 0.0, 1.0),
    (True, True, 0.0),
    (False, True, 1.0),
    ('ExtensionError', 'ExtensionError', 0.0),
    ([1, 2, 4], [1, 2, 2], 1.0),
])
def test_abs_error(computed, expected, error):
    assert abs_error(computed, expected) == pytest.approx(error)


def test_raised_reports_exception_name():
    assert raised(_boom) == 'RuntimeError'
    assert raised(lambda: 1) == 'aucune'


# ---------------------------------------------------------------------------
# BaseSuite.evaluate
# ---------------------------------------------------------------------------

def test_evaluate_statuses(scenario_config):
    checks = [
        Check('ok', lambda: 1e-9),
        Check('ko', lambda: 1e-3),
        Check('exact', lambda: 2, expected=2, tolerance=0),
        Check('nan', lambda: float('nan')),
        Check('panne', _boom),
        Check('info', lambda: 'valeur', expected=None, tolerance=None),
    ]
    report = _ToySuite(scenario_config('cech'), checks).run()
    statuses = {c.name: c.status for c in report.checks}
    assert statuses == {'ok': 'pass', 'ko': 'fail', 'exact': 'pass', 'nan': 'fail', 'panne': 'error', 'info': 'info'}
    assert report.status == 'error'
    errored = next(c for c in report.checks if c.name == 'panne')
    assert errored.computed.startswith('RuntimeError')
    assert errored.abs_error is None


def test_evaluate_scales_tolerance(scenario_config):
    check = Check('echelle', lambda: 1e-5, tolerance=1e-6)
    strict = _ToySuite(scenario_config('cech'), [check]).run()
    loose = _ToySuite(scenario_config('cech', tolerance=1e-4), [check]).run()
    assert strict.checks[0].status == 'fail'
    assert loose.checks[0].status == 'pass'
    assert loose.checks[0].tolerance == pytest.approx(1e-4)


def test_info_checks_do_not_fail_report(scenario_config):
    report = _ToySuite(scenario_config('cech'), [Check('info', lambda: 3.0, expected=None, tolerance=None)]).run()
    assert report.passed


# ---------------------------------------------------------------------------
# Rapport
# ---------------------------------------------------------------------------

@pytest.mark.parametrize('statuses, expected', [
    (['pass', 'info'], 'pass'),
    (['pass', 'fail'], 'fail'),
    (['fail', 'error', 'pass'], 'error'),
    ([], 'pass'),
])
def test_report_status_precedence(statuses, expected):
    report = VerificationReport.from_results('cech', [_result(f'c{i}', s) for i, s in enumerate(statuses)])
    assert report.status == expected


def test_report_dict_layout():
    report = VerificationReport.from_results('cech', [_result('a', 'pass'), _result('b', 'fail')])
    payload = report.to_dict()
    assert payload['scenario'] == 'cech'
    assert payload['status'] == 'fail'
    for entry in payload['checks']:
        assert tuple(entry) == CHECK_KEYS
        assert 'status' not in entry
        assert entry['runtime_ms'] is None
    assert report.to_dict(record_timings=True)['checks'][0]['runtime_ms'] == pytest.approx(0.5)
    assert [c.name for c in report.failures()] == ['b']


def test_to_jsonable_complex_and_arrays():
    assert to_jsonable(1 - 2j) == [1.0, -2.0]
    assert to_jsonable(np.complex128(0.5j)) == [0.0, 0.5]
    assert to_jsonable(np.array([1, 2])) == [1, 2]
    assert to_jsonable({(0, 1): np.float64(0.25)}) == {'(0, 1)': 0.25}
    assert to_jsonable(np.bool_(True)) is True


def test_renamed_prefixes_name():
    assert _result('a', 'pass').renamed('cech').name == 'cech/a'


def test_emit_report_writes_json(tmp_path):
    report = VerificationReport.from_results(
        'cech', [CheckResult('z', 1 + 1j, 0.0, 'paper', math.sqrt(2), 1e-6, 1.0, 'fail')])
    target = emit_report(report, tmp_path / 'rapport.json')
    payload = json.loads(target.read_text(encoding='utf-8'))
    assert payload['checks'][0]['computed'] == [1.0, 1.0]
    assert list(tmp_path.iterdir()) == [target]


def test_emit_report_missing_directory(tmp_path):
    report = VerificationReport.from_results('cech', [_result('a', 'pass')])
    with pytest.raises(ReportWriteError):
        emit_report(report, tmp_path / 'absent' / 'rapport.json')
    assert not (tmp_path / 'absent').exists()


def test_emit_report_keeps_previous_file_on_failure(tmp_path, monkeypatch):
    target = tmp_path / 'rapport.json'
    target.write_text('ancien', encoding='utf-8')

    def failing_replace(src, dst):
        raise OSError("disque plein")

    monkeypatch.setattr('src.suites.report.os.replace', failing_replace)
    with pytest.raises(ReportWriteError):
        emit_report(VerificationReport.from_results('cech', []), target)
    assert target.read_text(encoding='utf-8') == 'ancien'
    assert list(tmp_path.iterdir()) == [target]


# ---------------------------------------------------------------------------
# Registre et exécution des scénarios
# ---------------------------------------------------------------------------

def test_registry_covers_every_scenario():
    assert set(runner.REGISTRY) == set(SCENARIOS) - {'all'}


@pytest.mark.parametrize('scenario', ['cech', 'group-cohomology', 'crossed-modules', 'kac-moody'])
def test_light_scenarios_pass(scenario_config, scenario):
    report = runner.run_scenario(scenario_config(scenario), verbose=False)
    assert report.passed, [(c.name, c.computed) for c in report.failures()]


def test_run_scenario_is_deterministic(scenario_config, tmp_path):
    first, second = tmp_path / 'a.json', tmp_path / 'b.json'
    runner.run_scenario(scenario_config('kac-moody', seed=7, output_path=str(first)), verbose=False)
    runner.run_scenario(scenario_config('kac-moody', seed=7, output_path=str(second)), verbose=False)
    assert first.read_bytes() == second.read_bytes()


@pytest.mark.parametrize('parallel', [False, True])
def test_run_all_prefixes_and_orders(scenario_config, monkeypatch, parallel):
    monkeypatch.setattr(runner, 'REGISTRY', {'group-cohomology': GroupCohomologySuite, 'cech': CechSuite})
    report = runner.run_scenario(scenario_config('all', parallel=parallel), verbose=False)
    assert report.scenario == 'all'
    assert report.passed
    prefixes = [c.name.split('/', 1)[0] for c in report.checks]
    assert prefixes == sorted(prefixes)
    assert set(prefixes) == {'cech', 'group-cohomology'}


def test_run_all_parallel_matches_sequential(scenario_config, monkeypatch):
    monkeypatch.setattr(runner, 'REGISTRY', {'group-cohomology': GroupCohomologySuite, 'cech': CechSuite})
    sequential = runner.run_scenario(scenario_config('all'), verbose=False).to_dict()
    parallel = runner.run_scenario(scenario_config('all', parallel=True), verbose=False).to_dict()
    assert sequential == parallel


# ---------------------------------------------------------------------------
# Ligne de commande
# ---------------------------------------------------------------------------

def test_cli_pass(tmp_path, capsys):
    target = tmp_path / 'cech.json'
    code = run_verify.main(['--scenario', 'cech', '--quiet', '--output', str(target)])
    assert code == run_verify.EXIT_PASS
    assert json.loads(target.read_text(encoding='utf-8'))['status'] == 'pass'
    assert f"Output: {target}" in capsys.readouterr().out


def test_cli_fail_on_impossible_tolerance():
    assert run_verify.main(['--scenario', 'kac-moody', '--quad-order', '8', '--tol', '1e-30', '--quiet']) == run_verify.EXIT_FAIL


@pytest.mark.parametrize('argv', [
    ['--scenario', 'inconnu'],
    ['--scenario', 'cech', '--quad-order', '4'],
    ['--scenario', 'cech', '--tol', '0'],
    ['--scenario', 'cech', '--gauge-p', '1'],
    ['--scenario', 'cech', '--seed', 'abc'],
    ['--quad-order', '16'],
])
def test_cli_usage_errors(argv, capsys):
    assert run_verify.main(argv) == run_verify.EXIT_USAGE
    assert 'Usage' in capsys.readouterr().err


def test_cli_missing_config_file(tmp_path):
    assert run_verify.main(['--scenario', 'cech', '--config', str(tmp_path / 'absent.env')]) == run_verify.EXIT_USAGE


def test_cli_config_file_is_overridden_by_options(tmp_path):
    config_file = tmp_path / 'scenario.env'
    config_file.write_text('SCENARIO=kac-moody\nQUAD_ORDER=4\n', encoding='utf-8')
    assert run_verify.main(['--config', str(config_file), '--scenario', 'cech', '--quad-order', '8', '--quiet']) == run_verify.EXIT_PASS


def test_cli_unwritable_output(tmp_path):
    target = tmp_path / 'absent' / 'rapport.json'
    assert run_verify.main(['--scenario', 'cech', '--quiet', '--output', str(target)]) == run_verify.EXIT_IO
