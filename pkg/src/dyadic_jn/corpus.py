"""Pinned function corpus and seeded random step functions for the checks."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .grid import FunctionSpec, StepFunction, make_grid, sample


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    dim: int
    depth: int
    spec: FunctionSpec

    def build(self) -> StepFunction:
        return sample(self.spec, self.dim, self.depth)

    def to_dict(self) -> dict:
        return {"id": self.id, "dim": self.dim, "depth": self.depth, "spec": self.spec.to_dict()}


def load_manifest(path: str | Path | None = None) -> list[CorpusEntry]:
    if path is None:
        text = resources.files("dyadic_jn").joinpath("data/corpus.json").read_text()
    else:
        path = Path(path)
        if not path.exists():
            raise ValidationError(f"manifest not found: {path}")
        text = path.read_text()
    try:
        doc = json.loads(text)
        return [
            CorpusEntry(e["id"], int(e["dim"]), int(e["depth"]), FunctionSpec.from_dict(e["spec"]))
            for e in doc["functions"]
        ]
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise ValidationError(f"malformed corpus manifest: {exc}") from None


def random_step(seed: int, dim: int, depth: int) -> StepFunction:
    """A seeded random step function; every third seed draws from a small integer set to force ties."""
    rng = np.random.default_rng(seed)
    n = 2 ** (dim * depth)
    kind = seed % 3
    if kind == 0:
        values = rng.uniform(-1.0, 1.0, n)
    elif kind == 1:
        values = rng.integers(-3, 4, n).astype(float)
    else:
        values = rng.standard_cauchy(n)
    return StepFunction(make_grid(dim, depth), values)
