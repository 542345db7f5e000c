"""Run configuration: a flat JSON document whose fields double as CLI flags."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Mapping

from .integration import DEFAULT_ESSENTIAL_WEIGHTS, ConfigError
from .similarity import DEFAULT_EMAX, SIMILARITIES


@dataclass(frozen=True)
class RunConfig:
    input: str | None = None
    reflection_layers: tuple[str, ...] | None = None
    # None: the default friendship/kinship/soulmates weights, unless
    # ground_truth is set, in which case no essentiality network is built.
    essential_weights: Mapping[str, float] | None = None
    ground_truth: str | None = None
    similarity: str = "jaccard"
    emax: float = DEFAULT_EMAX
    seed: int = 0
    resolution: float = 1.0
    out: str = "out"
    expected_es_edge_counts: tuple[int, ...] | None = None

    def __post_init__(self):
        if not self.emax > 0:
            raise ConfigError(f"emax must be positive, got {self.emax}")
        if not self.resolution > 0:
            raise ConfigError(f"resolution must be positive, got {self.resolution}")
        if self.similarity not in SIMILARITIES:
            raise ConfigError(
                f"unknown similarity {self.similarity!r}; choose from {sorted(SIMILARITIES)}"
            )
        if self.essential_weights is not None:
            for name, w in self.essential_weights.items():
                if not w > 0:
                    raise ConfigError(f"essential weight for {name!r} must be positive")
        if self.reflection_layers is not None:
            object.__setattr__(self, "reflection_layers", tuple(self.reflection_layers))
        if self.expected_es_edge_counts is not None:
            object.__setattr__(
                self, "expected_es_edge_counts", tuple(self.expected_es_edge_counts)
            )

    @property
    def resolved_essential_weights(self) -> dict[str, float]:
        if self.essential_weights is not None:
            return dict(self.essential_weights)
        if self.ground_truth is not None:
            return {}
        return dict(DEFAULT_ESSENTIAL_WEIGHTS)

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        for key in ("reflection_layers", "expected_es_edge_counts"):
            if d[key] is not None:
                d[key] = list(d[key])
        if d["essential_weights"] is not None:
            d["essential_weights"] = dict(d["essential_weights"])
        return d

    def merged(self, **overrides: Any) -> "RunConfig":
        """Copy with every non-None override applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


FIELD_NAMES = {f.name for f in fields(RunConfig)}


def config_from_dict(doc: Mapping[str, Any]) -> RunConfig:
    unknown = set(doc) - FIELD_NAMES
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    try:
        return RunConfig(**doc)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None


def load_config(path: str | Path) -> RunConfig:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from None
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: config must be a JSON object")
    return config_from_dict(doc)


def parse_layer_list(text: str) -> tuple[str, ...]:
    return tuple(name.strip() for name in text.split(",") if name.strip())


def parse_weights(text: str) -> dict[str, float]:
    """``name=w,name=w``; an empty string means no weights."""
    weights: dict[str, float] = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        name, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(f"expected name=weight, got {item!r}")
        try:
            weights[name.strip()] = float(value)
        except ValueError:
            raise ConfigError(f"bad weight in {item!r}") from None
    return weights
