"""Service configuration from key=value files and environment overrides.

Config files are plain ``key = value`` lines with ``#`` comments. Every
key can also be set through the environment as ``CLICKRANK_<KEY>``, which
wins over the file.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from .errors import InvalidInputError
from .events import DEFAULT_SESSION_TIMEOUT_MINUTES
from .textstats import DEFAULT_KEYWORD_COUNT
from .users import DEFAULT_TOKEN_LIFETIME_MINUTES

ENV_PREFIX = "CLICKRANK_"


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8080
    data_dir: Path = Path("data")
    session_timeout_minutes: float = DEFAULT_SESSION_TIMEOUT_MINUTES
    keyword_k: int = DEFAULT_KEYWORD_COUNT
    stopword_file: Path | None = None
    token_lifetime_minutes: float = DEFAULT_TOKEN_LIFETIME_MINUTES
    static_dir: Path | None = None

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.keyword_k < 1:
            raise InvalidInputError("keyword_k must be at least 1")
        if self.session_timeout_minutes <= 0:
            raise InvalidInputError("session_timeout_minutes must be positive")
        if self.token_lifetime_minutes <= 0:
            raise InvalidInputError("token_lifetime_minutes must be positive")
        if not 0 < self.port < 65536:
            raise InvalidInputError("port must be in 1..65535")

    @property
    def corpus_path(self) -> Path:
        return self.data_dir / "corpus.json"

    @property
    def users_path(self) -> Path:
        return self.data_dir / "users.jsonl"

    @property
    def events_path(self) -> Path:
        return self.data_dir / "events.jsonl"


_PARSERS = {
    "host": str,
    "port": int,
    "data_dir": Path,
    "session_timeout_minutes": float,
    "keyword_k": int,
    "stopword_file": Path,
    "token_lifetime_minutes": float,
    "static_dir": Path,
}


def _parse_file(path: Path) -> dict[str, str]:
    values: dict[str, str] = {}
    for line_no, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise InvalidInputError(f"{path}:{line_no}: expected key = value")
        key, _, value = stripped.partition("=")
        values[key.strip().lower()] = value.strip()
    return values


def load_config(
    path: str | Path | None = None,
    env: dict[str, str] | None = None,
) -> ServiceConfig:
    """Build a config from an optional file, applying environment overrides."""
    env = os.environ if env is None else env
    raw: dict[str, str] = {}
    if path is not None:
        raw.update(_parse_file(Path(path)))
    for name in _PARSERS:
        override = env.get(ENV_PREFIX + name.upper())
        if override is not None:
            raw[name] = override
    unknown = set(raw) - set(_PARSERS)
    if unknown:
        raise InvalidInputError(f"unknown config keys: {sorted(unknown)}")
    kwargs = {}
    for key, value in raw.items():
        try:
            kwargs[key] = _PARSERS[key](value)
        except ValueError as exc:
            raise InvalidInputError(f"bad value for {key}: {value!r}") from exc
    return ServiceConfig(**kwargs)
