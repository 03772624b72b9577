"""Application configuration.

A single JSON file (documented in the README) feeds nested dataclasses.
Unknown keys are rejected so typos fail at startup, and every key can be
overridden through ``ZIATRIP_<SECTION>__<KEY>`` environment variables.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass, field
from pathlib import Path


@dataclass
class TravelConfig:
    walk_kmh: float = 4.5
    drive_kmh: float = 40.0


@dataclass
class ChunkingConfig:
    max_tokens: int = 400
    overlap: int = 80


@dataclass
class CrawlConfig:
    delay_seconds: float = 1.0
    max_pages: int = 100
    max_depth: int = 3
    user_agent: str = "ziatrip-crawler/0.1"
    workers: int = 1


@dataclass
class RetrievalConfig:
    k: int = 6
    budget_tokens: int = 1200
    embed_dim: int = 64


@dataclass
class PlannerConfig:
    day_start: int = 540   # 09:00, minutes from midnight
    day_end: int = 1140    # 19:00
    pace_caps: dict = field(default_factory=lambda: {"relaxed": 3, "normal": 5, "intense": 7})
    iteration_cap: int = 1000
    similarity_bonus: float = 0.0
    mode: str = "walk"
    candidate_limit: int = 50


@dataclass
class ProviderConfig:
    kind: str = "mock"          # mock | http
    base_url: str = ""
    model: str = ""
    api_key_env: str = ""
    timeout_seconds: float = 15.0
    max_retries: int = 2
    wire_format: str = "openai"  # openai | cohere (embedding adapters)


@dataclass
class DialogueConfig:
    default_year: int = 2026
    languages: tuple = ("it", "en")


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8080
    trust_forwarded_headers: bool = False


@dataclass
class AppConfig:
    data_dir: str = "data"
    travel: TravelConfig = field(default_factory=TravelConfig)
    chunking: ChunkingConfig = field(default_factory=ChunkingConfig)
    crawl: CrawlConfig = field(default_factory=CrawlConfig)
    retrieval: RetrievalConfig = field(default_factory=RetrievalConfig)
    planner: PlannerConfig = field(default_factory=PlannerConfig)
    dialogue: DialogueConfig = field(default_factory=DialogueConfig)
    service: ServiceConfig = field(default_factory=ServiceConfig)
    chat_provider: ProviderConfig = field(default_factory=ProviderConfig)
    embedding_provider: ProviderConfig = field(default_factory=ProviderConfig)
    places_provider: ProviderConfig = field(default_factory=ProviderConfig)

    @property
    def data_path(self) -> Path:
        return Path(self.data_dir)


_SECTIONS = {
    "travel": TravelConfig,
    "chunking": ChunkingConfig,
    "crawl": CrawlConfig,
    "retrieval": RetrievalConfig,
    "planner": PlannerConfig,
    "dialogue": DialogueConfig,
    "service": ServiceConfig,
    "chat_provider": ProviderConfig,
    "embedding_provider": ProviderConfig,
    "places_provider": ProviderConfig,
}


def _build_section(cls, data: dict, path: str):
    known = {f.name: f for f in dataclasses.fields(cls)}
    unknown = set(data) - set(known)
    if unknown:
        raise ValueError(f"unknown config key(s) {sorted(unknown)} under '{path}'")
    return cls(**data)


def config_from_dict(data: dict) -> AppConfig:
    """Build an AppConfig, rejecting unknown keys at any level."""
    top_known = {f.name for f in dataclasses.fields(AppConfig)}
    unknown = set(data) - top_known
    if unknown:
        raise ValueError(f"unknown config key(s) {sorted(unknown)}")
    kwargs = {}
    for key, value in data.items():
        if key in _SECTIONS:
            if not isinstance(value, dict):
                raise ValueError(f"config section '{key}' must be an object")
            kwargs[key] = _build_section(_SECTIONS[key], value, key)
        else:
            kwargs[key] = value
    return AppConfig(**kwargs)


def _coerce(current, raw: str):
    if isinstance(current, bool):
        return raw.lower() in ("1", "true", "yes", "on")
    if isinstance(current, int):
        return int(raw)
    if isinstance(current, float):
        return float(raw)
    if isinstance(current, (dict, tuple, list)):
        return json.loads(raw)
    return raw


def apply_env_overrides(cfg: AppConfig, environ=None) -> AppConfig:
    """Apply ZIATRIP_<SECTION>__<KEY> / ZIATRIP_<KEY> overrides in place."""
    environ = environ if environ is not None else os.environ
    for name, raw in environ.items():
        if not name.startswith("ZIATRIP_"):
            continue
        spec = name[len("ZIATRIP_"):].lower()
        if "__" in spec:
            section, key = spec.split("__", 1)
            target = getattr(cfg, section, None)
            if target is None or not hasattr(target, key):
                raise ValueError(f"environment override {name} names an unknown config key")
            setattr(target, key, _coerce(getattr(target, key), raw))
        else:
            if not hasattr(cfg, spec) or spec in _SECTIONS:
                raise ValueError(f"environment override {name} names an unknown config key")
            setattr(cfg, spec, _coerce(getattr(cfg, spec), raw))
    return cfg


def load_config(path: str | Path | None = None, environ=None) -> AppConfig:
    """Load configuration from a JSON file (optional) plus environment overrides."""
    if path is None:
        cfg = AppConfig()
    else:
        with open(path, encoding="utf-8") as fh:
            cfg = config_from_dict(json.load(fh))
    return apply_env_overrides(cfg, environ)
