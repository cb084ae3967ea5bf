#!/usr/bin/env python3
"""
Verifier Configuration
Defaults for degree bound, trials and seeding, stored as JSON under the
user's home directory.
"""

import json
import logging
import os
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)

CONFIG_ENV = "QT_HOOK_VERIFIER_CONFIG"


class ConfigError(ValueError):
    pass


@dataclass
class VerifierConfig:
    deg: int = 6
    trials: int = 3
    seed: int = 0
    max_resample: int = 20
    report_dir: Optional[str] = None

    def __post_init__(self):
        if self.deg < 0:
            raise ConfigError(f"deg must be >= 0, got {self.deg}")
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.max_resample < 0:
            raise ConfigError(f"max_resample must be >= 0, got {self.max_resample}")

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VerifierConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"Unknown config keys: {', '.join(unknown)}")
        for name in ("deg", "trials", "seed", "max_resample"):
            if name in data and (not isinstance(data[name], int) or isinstance(data[name], bool)):
                raise ConfigError(f"{name} must be an integer, got {data[name]!r}")
        return cls(**data)

    def override(self, **values: Any) -> "VerifierConfig":
        """Copy with every non-None value replaced, as CLI flags do."""
        merged = asdict(self)
        merged.update({k: v for k, v in values.items() if v is not None})
        return VerifierConfig.from_dict(merged)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def default_config_path() -> Path:
    override = os.environ.get(CONFIG_ENV)
    if override:
        return Path(override)
    return Path.home() / ".qt-hook-verifier" / "config.json"


def load_config(path: Optional[Path] = None) -> VerifierConfig:
    """Load the verifier config, falling back to defaults when the file is missing or unreadable."""
    config_file = Path(path) if path else default_config_path()
    if not config_file.exists():
        logger.debug(f"No config at {config_file}, using defaults")
        return VerifierConfig()
    try:
        with open(config_file, "r") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        logger.warning(f"Failed to load config {config_file}: {e}; using defaults")
        return VerifierConfig()
    if not isinstance(data, dict):
        raise ConfigError(f"{config_file}: expected a JSON object")
    return VerifierConfig.from_dict(data)


def save_config(config: VerifierConfig, path: Optional[Path] = None) -> bool:
    config_file = Path(path) if path else default_config_path()
    try:
        config_file.parent.mkdir(parents=True, exist_ok=True)
        with open(config_file, "w") as f:
            json.dump(config.to_dict(), f, indent=2)
        return True
    except OSError as e:
        logger.error(f"Failed to save config: {e}")
        return False
