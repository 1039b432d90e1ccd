"""
Rapport de vérification : sérialisation JSON et écriture atomique
"""

import json
import os
import tempfile
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from ..core.errors import ReportWriteError

CHECK_KEYS = ('name', 'computed', 'expected', 'provenance', 'abs_error', 'tolerance', 'runtime_ms')


@dataclass(frozen=True)
class CheckResult:
    """
    Résultat d'un check ; status ∈ {pass, fail, error, info}.

    status sert au résumé console et au statut du rapport, il n'est pas écrit
    dans les enregistrements JSON.
    """
    name: str
    computed: Any
    expected: Any
    provenance: str
    abs_error: Optional[float]
    tolerance: Optional[float]
    runtime_ms: float
    status: str

    def renamed(self, prefix: str) -> 'CheckResult':
        return CheckResult(f"{prefix}/{self.name}", self.computed, self.expected, self.provenance,
                           self.abs_error, self.tolerance, self.runtime_ms, self.status)


@dataclass
class VerificationReport:
    scenario: str
    status: str
    checks: List[CheckResult] = field(default_factory=list)

    @classmethod
    def from_results(cls, scenario: str, checks: List[CheckResult]) -> 'VerificationReport':
        statuses = {c.status for c in checks}
        if 'error' in statuses:
            status = 'error'
        elif 'fail' in statuses:
            status = 'fail'
        else:
            status = 'pass'
        return cls(scenario=scenario, status=status, checks=list(checks))

    @property
    def passed(self) -> bool:
        return self.status == 'pass'

    def counts(self) -> Dict[str, int]:
        return dict(Counter(c.status for c in self.checks))

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if c.status in ('fail', 'error')]

    def to_dict(self, record_timings: bool = False) -> Dict[str, Any]:
        checks = []
        for c in self.checks:
            entry = {
                'name': c.name,
                'computed': to_jsonable(c.computed),
                'expected': to_jsonable(c.expected),
                'provenance': c.provenance,
                'abs_error': to_jsonable(c.abs_error),
                'tolerance': to_jsonable(c.tolerance),
                'runtime_ms': round(c.runtime_ms, 3) if record_timings else None,
            }
            checks.append(entry)
        return {'scenario': self.scenario, 'status': self.status, 'checks': checks}


def to_jsonable(value: Any) -> Any:
    """Complexes en [re, im], scalaires et tableaux numpy en types Python"""
    if value is None or isinstance(value, (str, bool)):
        return value
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return str(value)


def emit_report(report: VerificationReport, path, record_timings: bool = False) -> Path:
    """
    Écrit le rapport JSON (UTF-8) via un fichier temporaire puis os.replace.

    Aucune écriture partielle : en cas d'échec la cible est inchangée.
    """
    target = Path(path)
    payload = json.dumps(report.to_dict(record_timings), indent=2, ensure_ascii=False)
    tmp_name = None
    try:
        fd, tmp_name = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix='.tmp')
        with os.fdopen(fd, 'w', encoding='utf-8') as fh:
            fh.write(payload + '\n')
        os.replace(tmp_name, target)
    except OSError as e:
        if tmp_name and os.path.exists(tmp_name):
            os.remove(tmp_name)
        raise ReportWriteError(f"Écriture du rapport impossible ({target}): {e}") from e
    return target


def print_report(report: VerificationReport):
    """Résumé lisible sur la sortie standard"""
    counts = report.counts()
    marker = {"pass": "✅", "fail": "❌", "error": "⚠️"}[report.status]
    print("=" * 70)
    print(f"RAPPORT {report.scenario.upper()} : {marker} {report.status}")
    print("=" * 70)
    print(f"  {len(report.checks)} checks : {counts.get('pass', 0)} réussis, "
          f"{counts.get('fail', 0)} échecs, {counts.get('error', 0)} erreurs, {counts.get('info', 0)} informatifs")
    failures = report.failures()
    if failures:
        print("\n  Checks en échec:")
        for c in failures:
            detail = f"écart {c.abs_error:.2e} > tol {c.tolerance:.1e}" if c.abs_error is not None else str(c.computed)
            print(f"    ❌ {c.name}: {detail}")
