"""Summary configuration: defaults, ``key = value`` config files, validation."""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass, field
from typing import Optional

from .errors import ConfigError

CONFIG_ENV = "XMLSUMM_CONFIG"


@dataclass(frozen=True)
class SummaryConfig:
    size: int = 10
    alpha: float = 1.0
    beta: float = 0.7
    lam: float = 0.49
    mu: float = 0.48
    centroid_m: int = 5
    entity_paths: tuple[str, ...] = ()
    long_text_threshold: float = 20
    tie_epsilon: float = 1e-9
    seed: int = 0
    stopword_file: Optional[str] = None

    def validate(self) -> "SummaryConfig":
        if self.size < 1:
            raise ConfigError("size must be >= 1")
        for name in ("alpha", "beta"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ConfigError(f"{name} must be in [0,1]")
        if self.lam < 0 or self.mu < 0:
            raise ConfigError("lambda and mu must be >= 0")
        if self.lam + self.mu > 1 + 1e-12:
            raise ConfigError("lambda + mu must be <= 1")
        if self.centroid_m < 1:
            raise ConfigError("centroid-m must be >= 1")
        if self.long_text_threshold < 0:
            raise ConfigError("long-text-threshold must be >= 0")
        if self.tie_epsilon < 0:
            raise ConfigError("tie-epsilon must be >= 0")
        return self

    def replace(self, **changes) -> "SummaryConfig":
        return dataclasses.replace(self, **changes)

    def is_entity(self, tag) -> bool:
        """True if ``tag``'s path ends with one of the configured entity paths."""
        path = tuple(tag.path)
        for entry in self.entity_paths:
            segments = tuple(s for s in entry.strip("/").split("/") if s)
            if segments and path[-len(segments):] == segments:
                return True
        return False


# config-file / flag key -> (field name, converter)
def _entities(text: str) -> tuple[str, ...]:
    return tuple(p.strip() for p in text.split(",") if p.strip())


KEYS = {
    "size": ("size", int),
    "alpha": ("alpha", float),
    "beta": ("beta", float),
    "lambda": ("lam", float),
    "mu": ("mu", float),
    "centroid-m": ("centroid_m", int),
    "entities": ("entity_paths", _entities),
    "long-text-threshold": ("long_text_threshold", float),
    "tie-epsilon": ("tie_epsilon", float),
    "seed": ("seed", int),
    "stopwords": ("stopword_file", str),
}


def convert(key: str, raw: str):
    key = key.strip().lstrip("-").replace("_", "-")
    if key not in KEYS:
        raise ConfigError(f"unknown config key: {key}")
    name, conv = KEYS[key]
    try:
        return name, conv(raw.strip())
    except ValueError:
        raise ConfigError(f"invalid value for {key}: {raw.strip()!r}") from None


def parse_config_text(text: str, origin: str = "<config>") -> dict:
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{origin}:{lineno}: expected 'key = value'")
        key, raw = line.split("=", 1)
        name, value = convert(key, raw)
        values[name] = value
    return values


def load_config_file(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config_text(fh.read(), os.fspath(path))
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror}") from None


def resolve_config(overrides: Optional[dict] = None, env=None) -> SummaryConfig:
    """Defaults, then the file named by ``XMLSUMM_CONFIG``, then ``overrides``."""
    env = os.environ if env is None else env
    values = {}
    path = env.get(CONFIG_ENV)
    if path:
        values.update(load_config_file(path))
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return SummaryConfig(**values).validate()
