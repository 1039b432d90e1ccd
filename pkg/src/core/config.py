"""
Configuration centralisée - Variables d'environnement et fichier de scénario
"""

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv, dotenv_values

from .errors import UsageError

load_dotenv()


def _as_bool(value: Optional[str]) -> bool:
    return str(value).strip().lower() in ('1', 'true', 'yes', 'on')


class Config:
    """Configuration centralisée du projet"""

    # Chemins
    BASE_DIR = Path(__file__).parent.parent.parent
    DATA_DIR = Path(os.getenv("VERIFY_DATA_DIR", str(BASE_DIR / "data")))

    # Quadrature et tolérances
    QUAD_ORDER = int(os.getenv("VERIFY_QUAD_ORDER", "32"))
    TOLERANCE = float(os.getenv("VERIFY_TOLERANCE", "1e-6"))
    FD_STEP = float(os.getenv("VERIFY_FD_STEP", "1e-3"))

    # Reproductibilité
    SEED = int(os.getenv("VERIFY_SEED", "0"))
    GAUGE_P = int(os.getenv("VERIFY_GAUGE_P", "2"))
    MATRIX_SAMPLES = int(os.getenv("VERIFY_MATRIX_SAMPLES", "100"))

    # Rapport
    OUTPUT_PATH = os.getenv("VERIFY_OUTPUT") or None
    RECORD_TIMINGS = _as_bool(os.getenv("VERIFY_RECORD_TIMINGS", "false"))

    # Tolérance de référence des checks (la tolérance effective est mise à l'échelle)
    NOMINAL_TOLERANCE = 1e-6

    @classmethod
    def ensure_dirs(cls):
        """Crée les dossiers nécessaires"""
        cls.DATA_DIR.mkdir(parents=True, exist_ok=True)
        (cls.DATA_DIR / "reports").mkdir(parents=True, exist_ok=True)


SCENARIOS = (
    'kac-moody', 'mickelsson-faddeev', 'invariance', 'schwinger-cases',
    'chern-simons', 'winding', 'monopole', 'spectral-flow',
    'crossed-modules', 'group-cohomology', 'cech', 'all',
)


@dataclass(frozen=True)
class ScenarioConfig:
    """Paramètres d'une exécution de scénario"""
    scenario: str
    quad_order: int = 32
    tolerance: float = 1e-6
    seed: int = 0
    gauge_p: int = 2
    output_path: Optional[str] = None
    parallel: bool = False
    matrix_samples: int = 100
    record_timings: bool = False

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise UsageError(f"Scénario inconnu: {self.scenario} (choix: {', '.join(SCENARIOS)})")
        if self.quad_order < 8:
            raise UsageError(f"quad_order doit être >= 8 (reçu {self.quad_order})")
        if not self.tolerance > 0:
            raise UsageError(f"tolerance doit être > 0 (reçu {self.tolerance})")
        if self.gauge_p < 2:
            raise UsageError(f"gauge_p doit être >= 2 (reçu {self.gauge_p})")

    @property
    def tolerance_scale(self) -> float:
        return self.tolerance / Config.NOMINAL_TOLERANCE

    def with_scenario(self, scenario: str) -> 'ScenarioConfig':
        return replace(self, scenario=scenario)

    @classmethod
    def defaults(cls, scenario: str) -> 'ScenarioConfig':
        """Valeurs issues de l'environnement (Config)"""
        return cls(
            scenario=scenario,
            quad_order=Config.QUAD_ORDER,
            tolerance=Config.TOLERANCE,
            seed=Config.SEED,
            gauge_p=Config.GAUGE_P,
            output_path=Config.OUTPUT_PATH,
            matrix_samples=Config.MATRIX_SAMPLES,
            record_timings=Config.RECORD_TIMINGS,
        )

    @classmethod
    def from_sources(cls, cli: Dict[str, Any], config_file: Optional[str] = None) -> 'ScenarioConfig':
        """
        Assemble la configuration.

        Priorité : option CLI > fichier de configuration (format KEY=VALUE) > environnement.
        """
        values: Dict[str, Any] = {}

        if config_file:
            path = Path(config_file)
            if not path.is_file():
                raise UsageError(f"Fichier de configuration introuvable: {config_file}")
            known = {f.name for f in fields(cls)}
            for key, raw in dotenv_values(path).items():
                name = key.strip().lower()
                if name not in known:
                    raise UsageError(f"Clé inconnue dans {config_file}: {key}")
                if raw is not None:
                    values[name] = raw

        for key, value in cli.items():
            if value is not None:
                values[key] = value

        if 'scenario' not in values:
            raise UsageError("Option --scenario obligatoire")

        base = cls.defaults(str(values['scenario']))
        try:
            return replace(
                base,
                quad_order=int(values.get('quad_order', base.quad_order)),
                tolerance=float(values.get('tolerance', base.tolerance)),
                seed=int(values.get('seed', base.seed)),
                gauge_p=int(values.get('gauge_p', base.gauge_p)),
                output_path=values.get('output_path', base.output_path),
                parallel=_as_bool(values.get('parallel', base.parallel)),
                matrix_samples=int(values.get('matrix_samples', base.matrix_samples)),
                record_timings=_as_bool(values.get('record_timings', base.record_timings)),
            )
        except (TypeError, ValueError) as e:
            raise UsageError(f"Valeur de configuration invalide: {e}") from e
