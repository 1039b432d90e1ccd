"""
Registre des scénarios et exécution (séquentielle ou parallèle)
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Type

from ..core.config import ScenarioConfig
from ..core.errors import UsageError
from .base_suite import BaseSuite
from .cocycle_suites import CechSuite, GroupCohomologySuite, InvarianceSuite, KacMoodySuite, MickelssonFaddeevSuite
from .crossed_suite import CrossedModuleSuite
from .report import VerificationReport, emit_report
from .schwinger_suite import SchwingerSuite
from .spectral_suite import SpectralFlowSuite
from .topology_suites import ChernSimonsSuite, MonopoleSuite, WindingSuite

REGISTRY: Dict[str, Type[BaseSuite]] = {
    suite.scenario: suite
    for suite in (
        KacMoodySuite, MickelssonFaddeevSuite, InvarianceSuite, SchwingerSuite, ChernSimonsSuite,
        WindingSuite, MonopoleSuite, SpectralFlowSuite, CrossedModuleSuite, GroupCohomologySuite, CechSuite,
    )
}


def _run_one(cfg: ScenarioConfig, verbose: bool) -> VerificationReport:
    return REGISTRY[cfg.scenario](cfg, verbose=verbose).run()


def run_all(cfg: ScenarioConfig, verbose: bool = True) -> VerificationReport:
    """Tous les scénarios ; rapport assemblé dans l'ordre des noms"""
    names = sorted(REGISTRY)
    configs = [cfg.with_scenario(name) for name in names]
    if cfg.parallel:
        with ThreadPoolExecutor(max_workers=len(names)) as pool:
            reports: List[VerificationReport] = list(pool.map(lambda c: _run_one(c, False), configs))
    else:
        reports = [_run_one(c, verbose) for c in configs]
    checks = [check.renamed(report.scenario) for report in reports for check in report.checks]
    return VerificationReport.from_results('all', checks)


def run_scenario(cfg: ScenarioConfig, verbose: bool = True) -> VerificationReport:
    """
    Exécute le scénario demandé et écrit le rapport si output_path est donné.

    Déterministe pour (scenario, seed, quad_order, gauge_p).
    """
    if cfg.scenario == 'all':
        report = run_all(cfg, verbose)
    elif cfg.scenario in REGISTRY:
        report = _run_one(cfg, verbose)
    else:
        raise UsageError(f"Scénario inconnu: {cfg.scenario}")

    if cfg.output_path:
        emit_report(report, cfg.output_path, record_timings=cfg.record_timings)
    return report
