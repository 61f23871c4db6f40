"""Runtime settings read from the environment (and a local .env file)."""

import os
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, TypeVar

from dotenv import load_dotenv

from overtune.errors import ParameterError

# Load environment variables
load_dotenv()

T = TypeVar("T")

DEFAULT_MAX_UPLOAD_BYTES = 50 * 1024 * 1024  # 50MiB


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(text)


@dataclass(frozen=True)
class Settings:
    """Defaults shared by the CLI and the HTTP service."""

    epsilon: float = 0.001
    seed: int = 42
    threads: int = 1
    log_level: str = "INFO"
    max_upload_bytes: int = DEFAULT_MAX_UPLOAD_BYTES
    port: int = 8000
    reload: bool = False

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "Settings":
        """
        Build settings from environment variables, falling back to defaults.

        Raises:
            ParameterError: If a variable cannot be parsed or is out of range
                (INVALID_SETTING)
        """
        env = os.environ if environ is None else environ

        def read(name: str, parse: Callable[[str], T], default: T) -> T:
            raw = env.get(name)
            if raw is None or not raw.strip():
                return default
            try:
                return parse(raw.strip())
            except ValueError:
                raise ParameterError(f"invalid value for {name}: {raw!r}", "INVALID_SETTING")

        settings = cls(
            epsilon=read("OVERTUNE_EPSILON", float, cls.epsilon),
            seed=read("OVERTUNE_SEED", int, cls.seed),
            threads=read("OVERTUNE_THREADS", int, cls.threads),
            log_level=read("OVERTUNE_LOG_LEVEL", str.upper, cls.log_level),
            max_upload_bytes=read("OVERTUNE_MAX_UPLOAD_BYTES", int, cls.max_upload_bytes),
            port=read("PORT", int, cls.port),
            reload=read("APP_RELOAD", _parse_bool, cls.reload),
        )
        settings.validate()
        return settings

    def validate(self) -> None:
        if not self.epsilon > 0:
            raise ParameterError(f"OVERTUNE_EPSILON must be positive, got {self.epsilon!r}", "INVALID_SETTING")
        if self.threads < 1:
            raise ParameterError(f"OVERTUNE_THREADS must be >= 1, got {self.threads}", "INVALID_SETTING")
        if self.max_upload_bytes < 1:
            raise ParameterError(
                f"OVERTUNE_MAX_UPLOAD_BYTES must be >= 1, got {self.max_upload_bytes}",
                "INVALID_SETTING",
            )
        if self.log_level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ParameterError(f"unknown log level {self.log_level!r}", "INVALID_SETTING")
