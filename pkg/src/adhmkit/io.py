"""
UTF-8 JSON encodings of configurations, gluing contexts, monoids and reports.

Complex matrices are stored row-major as nested lists of ``[re, im]`` pairs.
Floats are written with Python's shortest round-trip ``repr``, so decoding
reproduces every entry exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .adhm import AdhmConfig, BlowupConfig, Config
from .errors import ConfigInvalid
from .gluing import GluingContext


def matrix_to_json(m: np.ndarray) -> list:
    return [[[float(v.real), float(v.imag)] for v in row] for row in np.asarray(m, dtype=complex)]


def matrix_from_json(obj, rows: int, cols: int) -> np.ndarray:
    try:
        arr = np.array(obj, dtype=float).reshape(rows, cols, 2)
    except (TypeError, ValueError) as exc:
        raise ConfigInvalid(f"matrix is not a {rows}x{cols} grid of [re, im]: {exc}") from exc
    return arr[..., 0] + 1j * arr[..., 1]


def config_to_json(cfg: Config) -> dict:
    out = {"kind": cfg.kind, "k": cfg.k, "r": cfg.r}
    out.update({name: matrix_to_json(m) for name, m in cfg.matrices().items()})
    return out


def config_from_json(obj: dict) -> Config:
    """Inverse of :func:`config_to_json`; shapes are checked against ``k`` and ``r``."""
    try:
        kind, k, r = obj["kind"], int(obj["k"]), int(obj["r"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigInvalid(f"config needs kind, k and r: {exc}") from exc
    shapes = {"a1": (k, k), "a2": (k, k), "b": (k, r), "c": (r, k)}
    if kind == "blowup":
        shapes["d"] = (k, k)
        cls = BlowupConfig
    elif kind == "adhm":
        cls = AdhmConfig
    else:
        raise ConfigInvalid(f"unknown kind {kind!r}")
    try:
        mats = {name: matrix_from_json(obj[name], *shape) for name, shape in shapes.items()}
    except KeyError as exc:
        raise ConfigInvalid(f"missing matrix {exc}") from exc
    return cls(**mats)


def context_to_json(ctx: GluingContext) -> dict:
    def flat(p):
        return [float(v) for z in p for v in (z.real, z.imag)]
    return {"x": flat(ctx.x), "y": flat(ctx.y), "delta": ctx.delta, "tol": ctx.tol}


def context_from_json(obj: dict) -> GluingContext:
    def point(v):
        if len(v) != 4:
            raise ConfigInvalid("points are encoded as [re, im, re, im]")
        return (complex(v[0], v[1]), complex(v[2], v[3]))
    try:
        return GluingContext(point(obj["x"]), point(obj["y"]), float(obj["delta"]),
                             float(obj.get("tol", 1e-8)))
    except (KeyError, TypeError) as exc:
        raise ConfigInvalid(f"malformed gluing context: {exc}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def read_json(path) -> object:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigInvalid(f"{path}: invalid JSON ({exc})") from exc


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj) + "\n", encoding="utf-8")
