"""Single-entry perturbations of F- and R-stores, used as negative controls."""

from __future__ import annotations

from types import MappingProxyType

import numpy as np

from .f_symbols import FMatrix, FStore, ZeroChannelError
from .fusion_ring import FusionRing
from .r_symbols import RStore


def mutate_f(store: FStore, key: tuple[int, ...], value: float | None = None) -> FStore:
    """Copy of ``store`` with F_{abc}^{d;ef} negated (or set to ``value``).

    Only that one quadruple changes; rotated partners are left alone.
    """
    a, b, c, d, e, f = key
    if key not in store.symbols:
        raise ZeroChannelError(key)
    old = store.table[a, b, c, d]
    entries = np.array(old.entries, dtype=float)
    x, y = old.rows.index(e), old.cols.index(f)
    entries[x, y] = -entries[x, y] if value is None else value
    table = dict(store.table)
    table[a, b, c, d] = FMatrix(old.rows, old.cols, entries)
    symbols = dict(store.symbols)
    symbols[key] = float(entries[x, y])
    return FStore(store.params, store.ring, MappingProxyType(table), MappingProxyType(symbols))


def mutate_r(store: RStore, triple: tuple[int, int, int], value: complex | None = None) -> RStore:
    if triple not in store.table:
        raise KeyError(triple)
    table = dict(store.table)
    table[triple] = -table[triple] if value is None else value
    return RStore(store.params, store.ring, MappingProxyType(table), store.h)


def negate_on(store: RStore, triples) -> RStore:
    """Negate R on every triple in ``triples``."""
    triples = set(triples)
    table = {t: (-v if t in triples else v) for t, v in store.table.items()}
    return RStore(store.params, store.ring, MappingProxyType(table), store.h)


def parse_mutation(text: str, ring: FusionRing) -> tuple[str, tuple[int, ...], tuple[int, int] | None]:
    """Parse ``F:a,b,c,d:x,y`` (row/column positions) or ``R:a,b,c``."""
    kind, _, rest = text.partition(":")
    kind = kind.strip().upper()
    if kind not in ("F", "R") or not rest:
        raise ValueError(f"mutation must look like F:a,b,c,d:row,col or R:a,b,c (got {text!r})")
    labels_part, _, pos_part = rest.partition(":")
    labels = tuple(ring.parse(tok) for tok in labels_part.split(","))
    want = 4 if kind == "F" else 3
    if len(labels) != want:
        raise ValueError(f"{kind} mutation needs {want} labels, got {len(labels)}")
    if kind == "R":
        if pos_part:
            raise ValueError("R mutation takes no row/column part")
        if not ring.admissible(*labels):
            raise ValueError(f"R triple {labels_part} is not admissible")
        return kind, labels, None
    try:
        x, y = (int(v) for v in pos_part.split(","))
    except ValueError:
        raise ValueError(f"F mutation needs a row,col position (got {pos_part!r})") from None
    return kind, labels, (x, y)


def apply_mutation(text: str, fstore: FStore, rstore: RStore) -> tuple[FStore, RStore]:
    kind, labels, pos = parse_mutation(text, fstore.ring)
    if kind == "R":
        return fstore, mutate_r(rstore, labels)  # type: ignore[arg-type]
    if labels not in fstore.table:
        raise ValueError(f"no F-matrix for quadruple {text.split(':')[1]}")
    mat = fstore.table[labels]
    x, y = pos  # type: ignore[misc]
    if not (0 <= x < len(mat.rows) and 0 <= y < len(mat.cols)):
        raise ValueError(f"position {x},{y} outside the {len(mat.rows)}x{len(mat.cols)} matrix")
    return mutate_f(fstore, labels + (mat.rows[x], mat.cols[y])), rstore
