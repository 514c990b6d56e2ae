from config.logger import logger
from config.settings import SearchConfig, SimulationConfig

__all__ = ["SearchConfig", "SimulationConfig", "logger"]
