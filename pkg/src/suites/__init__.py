"""Suites de vérification, registre des scénarios et rapports"""

from .report import VerificationReport, emit_report, print_report
from .runner import REGISTRY, run_scenario
