"""Suite configuration read from ``key = value`` text files."""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Optional


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    max_order_oracle: int = 60
    max_order_exhaustive_tuples: int = 24
    max_order_sampled_tuples: int = 120
    max_order_normal_pairs: int = 48
    sample_count: int = 1000
    identity_samples: int = 10_000
    seed: int = 0
    oracle_budget: int = 2 ** 20
    profile_m_max: int = 3
    engel_n_max: int = 5
    tp_max: int = 5
    strategy: str = "auto"
    jobs: int = 1
    timings: bool = False
    report_path: Optional[str] = None

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_text(cls, text: str) -> "Config":
        types = {f.name: f.type for f in fields(cls)}
        values = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            if key not in types:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
            values[key] = _coerce(types[key], value, lineno)
        return cls(**values)

    @classmethod
    def from_file(cls, path) -> "Config":
        return cls.from_text(Path(path).read_text())


def _coerce(kind, value, lineno):
    kind = str(kind)
    try:
        if kind == "int":
            return int(value)
        if kind == "bool":
            low = value.lower()
            if low not in ("true", "false", "1", "0", "yes", "no"):
                raise ValueError(value)
            return low in ("true", "1", "yes")
    except ValueError:
        raise ConfigError(f"line {lineno}: bad {kind} value {value!r}") from None
    return value
