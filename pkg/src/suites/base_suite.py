"""
BaseSuite - Classe de base pour les suites de vérification
"""

import math
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass
from datetime import datetime
from numbers import Number
from typing import Any, Callable, List, Optional

import numpy as np

from ..core.config import Config, ScenarioConfig
from ..core.errors import ConventionError
from ..core.numerics import make_rng
from .report import CheckResult, VerificationReport

PROVENANCES = ('paper', 'trivial', 'derived')


@dataclass(frozen=True)
class Check:
    """
    Check déclaré par une suite.

    tolerance est nominale (échelle 1e-6) : 0 pour un check exact, None pour
    une valeur seulement rapportée.
    """
    name: str
    compute: Callable[[], Any]
    expected: Any = 0.0
    provenance: str = 'derived'
    tolerance: Optional[float] = 1e-6

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ConventionError(f"Provenance inconnue: {self.provenance}")


def abs_error(computed: Any, expected: Any) -> float:
    """|computed − expected| pour des nombres, 0/1 pour les autres valeurs"""
    if isinstance(computed, (bool, np.bool_)) or isinstance(expected, (bool, np.bool_)):
        return 0.0 if bool(computed) == bool(expected) else 1.0
    if isinstance(computed, (Number, np.number)) and isinstance(expected, (Number, np.number)):
        return float(abs(complex(computed) - complex(expected)))
    return 0.0 if computed == expected else 1.0


def raised(fn: Callable[[], Any]) -> str:
    """Nom de l'exception levée par fn, 'aucune' sinon"""
    try:
        fn()
    except Exception as e:
        return type(e).__name__
    return 'aucune'


class BaseSuite(ABC):
    """Classe abstraite de base pour toutes les suites"""

    scenario: str = ''
    title: str = ''

    def __init__(self, cfg: ScenarioConfig, verbose: bool = True):
        self.cfg = cfg
        self.verbose = verbose
        self.start_time: Optional[datetime] = None
        self.end_time: Optional[datetime] = None

    def echo(self, message: str = ''):
        if self.verbose:
            print(message)

    def rng(self, stream: str) -> np.random.Generator:
        """Flux aléatoire propre au check (indépendant de l'ordre d'exécution)"""
        return make_rng(self.cfg.seed, f'{self.scenario}/{stream}')

    def run(self) -> VerificationReport:
        """Exécute le workflow complet de la suite"""
        self.start_time = datetime.now()
        self.echo("=" * 70)
        self.echo(f"{(self.title or self.scenario).upper()}")
        self.echo("=" * 70)

        self.echo("\n1. INITIALISATION")
        self.echo("-" * 50)
        self.initialize()

        self.echo("\n2. COLLECTE DES CHECKS")
        self.echo("-" * 50)
        checks = self.collect_checks()
        self.echo(f"  {len(checks)} checks")

        self.echo("\n3. EVALUATION")
        self.echo("-" * 50)
        results = [self.evaluate(check) for check in checks]

        self.echo("\n4. RAPPORT")
        self.echo("-" * 50)
        report = self.export(results)

        self.end_time = datetime.now()
        duration = (self.end_time - self.start_time).total_seconds()

        self.echo("\n" + "=" * 70)
        self.echo("RESUME")
        self.echo("=" * 70)
        self.print_summary(report)
        self.echo(f"\nDurée: {duration:.1f}s")
        self.echo("=" * 70)
        return report

    def initialize(self):
        """Initialise les ressources"""
        Config.ensure_dirs()
        self.echo(f"  quad_order={self.cfg.quad_order}  tol={self.cfg.tolerance:g}  "
                  f"seed={self.cfg.seed}  p={self.cfg.gauge_p}")

    @abstractmethod
    def collect_checks(self) -> List[Check]:
        pass

    def effective_tolerance(self, nominal: Optional[float]) -> Optional[float]:
        if nominal is None:
            return None
        return nominal * self.cfg.tolerance_scale

    def evaluate(self, check: Check) -> CheckResult:
        tolerance = self.effective_tolerance(check.tolerance)
        start = time.perf_counter()
        try:
            computed = check.compute()
        except Exception as e:
            runtime_ms = (time.perf_counter() - start) * 1000
            self.echo(f"  ❌ {check.name}: {type(e).__name__}: {e}")
            return CheckResult(check.name, f"{type(e).__name__}: {e}", check.expected, check.provenance,
                               None, tolerance, runtime_ms, 'error')
        runtime_ms = (time.perf_counter() - start) * 1000

        if tolerance is None:
            self.echo(f"  ℹ️  {check.name}: {_short(computed)}")
            return CheckResult(check.name, computed, check.expected, check.provenance,
                               None, None, runtime_ms, 'info')

        error = abs_error(computed, check.expected)
        passed = not math.isnan(error) and error <= tolerance
        marker = "✅" if passed else "❌"
        self.echo(f"  {marker} {check.name}: {_short(computed)} (écart {error:.2e}, tol {tolerance:.1e})")
        return CheckResult(check.name, computed, check.expected, check.provenance,
                           error, tolerance, runtime_ms, 'pass' if passed else 'fail')

    def export(self, results: List[CheckResult]) -> VerificationReport:
        report = VerificationReport.from_results(self.scenario, results)
        self.echo(f"  Statut: {report.status}")
        return report

    def print_summary(self, report: VerificationReport):
        counts = report.counts()
        self.echo(f"Checks: {len(report.checks)}")
        self.echo(f"  ✅ {counts.get('pass', 0)} réussis")
        self.echo(f"  ❌ {counts.get('fail', 0)} échecs")
        if counts.get('error'):
            self.echo(f"  ⚠️ {counts['error']} erreurs")


def _short(value: Any) -> str:
    if isinstance(value, (complex, np.complexfloating)):
        return f"{value.real:.6g}{value.imag:+.6g}j"
    if isinstance(value, (float, np.floating)):
        return f"{value:.6g}"
    text = str(value)
    return text if len(text) <= 60 else text[:57] + '...'
