import json
import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_FILE = Path(__file__).resolve().parent / "config.json"


@dataclass(frozen=True)
class MqttSettings:
    broker: str
    port: int
    username: str
    password: str
    topic: str
    enabled: bool


@dataclass(frozen=True)
class Settings:
    environment: str
    seed: int
    samples: int
    threads: int
    output_dir: Path
    log_level: str
    max_words: int
    max_candidates: int
    length_cap: int
    mqtt: MqttSettings


@lru_cache(maxsize=None)
def load_config(path=None):
    path = Path(path or os.getenv("CAYLEY_CONFIG", DEFAULT_CONFIG_FILE))
    try:
        with open(path) as f:
            return json.load(f)
    except FileNotFoundError as e:
        raise ConfigError(f"config file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"malformed config file {path}: {e}") from e


def get_settings(path=None):
    """Settings of the section named by ENVIRONMENT (default development)."""
    config = load_config(str(path) if path else None)
    if "development" not in config:
        raise ConfigError("config has no 'development' section")
    environment = os.getenv("ENVIRONMENT", "development")
    if environment not in config:
        logger.warning("unknown ENVIRONMENT %r, using development", environment)
        environment = "development"
    section = config[environment]
    try:
        budgets = section.get("BUDGETS", {})
        mqtt_config = section.get("MQTT", {})
        output_dir = os.getenv("CAYLEY_OUTPUT_DIR", section.get("OUTPUT_DIR", "results"))
        return Settings(
            environment=environment,
            seed=int(section.get("SEED", 1)),
            samples=int(section.get("SAMPLES", 2000)),
            threads=int(section.get("THREADS", 1)),
            output_dir=Path(output_dir),
            log_level=str(section.get("LOG_LEVEL", "WARNING")),
            max_words=int(budgets.get("MAX_WORDS", 2_000_000)),
            max_candidates=int(budgets.get("MAX_CANDIDATES", 200_000)),
            length_cap=int(budgets.get("LENGTH_CAP", 12)),
            mqtt=MqttSettings(
                broker=mqtt_config.get("BROKER", "127.0.0.1"),
                port=int(mqtt_config.get("PORT", 1883)),
                username=mqtt_config.get("USERNAME", ""),
                password=mqtt_config.get("PASSWORD", ""),
                topic=mqtt_config.get("TOPIC", "cayley/experiments"),
                enabled=bool(mqtt_config.get("ENABLED", False)),
            ),
        )
    except (TypeError, ValueError) as e:
        raise ConfigError(f"invalid value in config section {environment!r}: {e}") from e
