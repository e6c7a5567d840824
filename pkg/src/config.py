"""Configuration management for tatecoh."""

import os
from pathlib import Path
from typing import Any, Dict, Optional

import dotenv
import yaml

from src.utils.logger import setup_logger

# Set up logging
logger = setup_logger(__name__)

ENGINES = ("minimal", "free")

env_var_map = {
    # Syzygy engine
    "engine.default": "TATECOH_ENGINE",
    "engine.strip": "TATECOH_STRIP",

    # Tate tables
    "tate.degree_cap": "TATECOH_DEGREE_CAP",

    # Seeded searches (isomorphism certificates, free summand stripping)
    "search.seed": "TATECOH_SEED",
    "search.retries": "TATECOH_RETRIES",

    # Optional Ω-tower cache
    "cache.dir": "TATECOH_CACHE_DIR",

    # Application Configuration
    "app.log_level": "LOG_LEVEL",
}

defaults = {
    "engine.default": "minimal",
    "engine.strip": "true",
    "tate.degree_cap": "8",
    "search.seed": "20240601",
    "search.retries": "64",
    "cache.dir": "",
    "app.log_level": "INFO",
}


class Config:
    """Resolves settings from config.yaml, then the environment (.env), then defaults."""

    def __init__(self, config_file: str = "./config.yaml", auto_load: bool = True,
                 env_file: str = ".env"):
        self.config_file = Path(config_file)
        self.config: Dict[str, Any] = {}
        self.env_file = Path(env_file)

        if auto_load:
            self.load_config()
        self.load_env_file()

    def load_config(self) -> None:
        """Load configuration from YAML file if it exists."""
        if self.config_file.exists():
            with open(self.config_file, 'r') as f:
                self.config = yaml.safe_load(f) or {}
                logger.info(f"Loaded configuration from {self.config_file}")

    def load_env_file(self) -> None:
        """Load environment variables from .env file if it exists."""
        if self.env_file.exists():
            dotenv.load_dotenv(self.env_file, override=False)

    def save_config(self) -> None:
        """Save current configuration to YAML file."""
        with open(self.config_file, 'w') as f:
            yaml.dump(self.config, f, default_flow_style=False, indent=2)

    def get(self, key: str, default: Optional[str] = None) -> str:
        """
        Get configuration value.

        Args:
            key: Configuration key (supports dot notation like 'tate.degree_cap')
            default: Returned when neither YAML nor environment define the key

        Returns:
            Configuration value as a string
        """
        current: Any = self.config
        for k in key.split('.'):
            if not isinstance(current, dict) or k not in current:
                current = None
                break
            current = current[k]
        if current not in (None, ""):
            return str(current)

        env_var_name = env_var_map.get(key)
        if env_var_name and os.getenv(env_var_name):
            return os.getenv(env_var_name, "")

        if default is not None:
            return default
        return defaults.get(key, "")

    def set(self, key: str, value: Any, persist: bool = False) -> None:
        """Set configuration value; written to config.yaml only when persist is True."""
        keys = key.split('.')
        current = self.config
        for k in keys[:-1]:
            if k not in current or not isinstance(current[k], dict):
                current[k] = {}
            current = current[k]
        current[keys[-1]] = value
        if persist:
            self.save_config()

    def _get_int(self, key: str) -> int:
        raw = self.get(key)
        try:
            return int(raw)
        except ValueError:
            logger.warning(f"Invalid integer '{raw}' for {key}, using {defaults[key]}")
            return int(defaults[key])

    def get_engine(self) -> str:
        """Default syzygy engine, minimal or free."""
        engine = self.get("engine.default").strip().lower()
        if engine not in ENGINES:
            logger.warning(f"Unknown engine '{engine}', using minimal")
            return "minimal"
        return engine

    def get_degree_cap(self) -> int:
        return self._get_int("tate.degree_cap")

    def get_seed(self) -> int:
        return self._get_int("search.seed")

    def get_retries(self) -> int:
        return self._get_int("search.retries")

    def strip_enabled(self) -> bool:
        return self.get("engine.strip").strip().lower() in ("1", "true", "yes", "on")

    def get_cache_dir(self) -> Optional[Path]:
        """Directory of the Ω-tower cache, or None when caching is disabled."""
        raw = self.get("cache.dir").strip()
        return Path(raw) if raw else None

    def get_log_level(self) -> str:
        return self.get("app.log_level").upper()


# Global config instance
config = Config()
