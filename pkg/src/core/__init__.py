from .config import Config, ScenarioConfig
