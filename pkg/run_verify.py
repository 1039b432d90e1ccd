#!/usr/bin/env python3
"""
Vérification numérique des cocycles de courants, formes de Chern-Simons et flot spectral

Usage:
    python run_verify.py --scenario winding                 # Un scénario
    python run_verify.py --scenario all --seed 7            # Tous les scénarios
    python run_verify.py --scenario all --parallel          # Scénarios en parallèle
    python run_verify.py --scenario monopole --output data/reports/monopole.json
    python run_verify.py --config scenario.env              # Fichier KEY=VALUE (les options CLI priment)

Scénarios:
    kac-moody, mickelsson-faddeev, invariance, schwinger-cases, chern-simons,
    winding, monopole, spectral-flow, crossed-modules, group-cohomology, cech, all

Codes de sortie:
    0 tous les checks passent, 1 check en échec, 2 usage, 3 écriture du rapport
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from src.core.config import SCENARIOS, ScenarioConfig
from src.core.errors import ReportWriteError, UsageError
from src.suites import print_report, run_scenario

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='verify', description=__doc__.splitlines()[1],
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument('--scenario', choices=SCENARIOS)
    parser.add_argument('--quad-order', dest='quad_order', type=int)
    parser.add_argument('--tol', dest='tolerance', type=float)
    parser.add_argument('--seed', type=int)
    parser.add_argument('--gauge-p', dest='gauge_p', type=int)
    parser.add_argument('--output', dest='output_path')
    parser.add_argument('--parallel', action='store_const', const=True, default=None)
    parser.add_argument('--config', dest='config_file')
    parser.add_argument('--quiet', action='store_true', help="Pas de sortie par suite")
    return parser


def main(argv=None) -> int:
    try:
        args = vars(build_parser().parse_args(argv))
        config_file = args.pop('config_file')
        quiet = args.pop('quiet')
        cfg = ScenarioConfig.from_sources(args, config_file)
    except UsageError as e:
        print(f"❌ Usage: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        report = run_scenario(cfg, verbose=not (quiet or cfg.parallel))
    except UsageError as e:
        print(f"❌ Usage: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ReportWriteError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_IO

    print_report(report)
    if cfg.output_path:
        print(f"\nOutput: {cfg.output_path}")
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == '__main__':
    sys.exit(main())
