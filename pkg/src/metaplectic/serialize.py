"""JSON / CSV serialization of model data.

Complex numbers are stored as ``[re, im]`` pairs and scaling dimensions as
``"num/den"`` strings. Keys are sorted and lists follow the canonical label
order, so identical inputs give byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from .f_symbols import FStore
from .modular import ModularData
from .params import Params
from .r_symbols import RStore

SCHEMA_VERSION = "1.0"


def _c(z: complex) -> list[float]:
    z = complex(z)
    # normalise -0.0 so equal values always serialise identically
    return [z.real + 0.0, z.imag + 0.0]


def _key(ring, labels) -> str:
    return ",".join(ring.name(x) for x in labels)


def modular_to_dict(ring, md: ModularData) -> dict[str, Any]:
    return {
        "pivotal": [int(x) for x in md.pivotal.eps],
        "qdims": [float(x) + 0.0 for x in md.qdims],
        "S": [[_c(z) for z in row] for row in md.s],
        "T": [_c(z) for z in md.t],
        "total_dim_sq": md.total_dim,
    }


def model_to_dict(fstore: FStore, rstore: RStore, md: ModularData | None = None) -> dict[str, Any]:
    ring = fstore.ring
    P = fstore.params
    out: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "params": {"p": P.p, "r": P.r, "kappa": P.kappa, "lambda": rstore.params.lam},
        "labels": [ring.name(a) for a in ring.labels],
        "fusion": [[ring.name(x) for x in t] for t in ring.gamma],
        "F": {
            _key(ring, quad): {
                "rows": [ring.name(e) for e in m.rows],
                "cols": [ring.name(f) for f in m.cols],
                "matrix": [[float(v) + 0.0 for v in row] for row in m.entries],
            }
            for quad, m in fstore.table.items()
        },
        "R": {_key(ring, t): _c(v) for t, v in rstore.table.items()},
        "scaling_dims": {ring.name(a): f"{h.numerator}/{h.denominator}" for a, h in rstore.h.items()},
    }
    if md is not None:
        out["modular"] = modular_to_dict(ring, md)
    return out


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_model(path: str | Path, fstore: FStore, rstore: RStore, md: ModularData | None = None) -> str:
    text = dumps(model_to_dict(fstore, rstore, md))
    Path(path).write_text(text)
    return text


def load_model(source: str | Path) -> dict[str, Any]:
    """Parse a model file back into numpy / Fraction values.

    Returned keys: ``params`` (a :class:`Params`), ``labels``, ``F``
    (tuple-of-names -> ndarray), ``R`` (tuple-of-names -> complex),
    ``scaling_dims`` and, when present, ``modular``.
    """
    raw = json.loads(Path(source).read_text())
    if raw.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {raw.get('schema_version')!r}")
    pr = raw["params"]
    out: dict[str, Any] = {
        "params": Params(pr["p"], pr["r"], pr["kappa"], pr["lambda"]),
        "labels": raw["labels"],
        "fusion": [tuple(t) for t in raw["fusion"]],
        "F": {tuple(k.split(",")): np.array(v["matrix"], dtype=float) for k, v in raw["F"].items()},
        "R": {tuple(k.split(",")): complex(*v) for k, v in raw["R"].items()},
        "scaling_dims": {k: Fraction(v) for k, v in raw["scaling_dims"].items()},
    }
    if "modular" in raw:
        m = raw["modular"]
        out["modular"] = {
            "pivotal": m["pivotal"],
            "qdims": np.array(m["qdims"]),
            "S": np.array([[complex(*z) for z in row] for row in m["S"]]),
            "T": np.array([complex(*z) for z in m["T"]]),
        }
    return out


def matrix_csv(labels: list[str], matrix: np.ndarray) -> str:
    """Square complex matrix as CSV with ``re+imj`` cells and a label header."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([""] + labels)
    for name, row in zip(labels, matrix):
        w.writerow([name] + [repr(complex(z) + 0j) for z in row])
    return buf.getvalue()


def diagonal_csv(labels: list[str], diag: np.ndarray) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "re", "im"])
    for name, z in zip(labels, diag):
        re, im = _c(z)
        w.writerow([name, repr(re), repr(im)])
    return buf.getvalue()
