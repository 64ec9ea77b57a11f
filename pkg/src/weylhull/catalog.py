"""Named generalized Cartan matrices used in examples and tests."""
from __future__ import annotations

from .gcm import block_diagonal

CATALOG: dict[str, list[list[int]]] = {
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    "B2": [[2, -1], [-2, 2]],
    "G2": [[2, -1], [-3, 2]],
    "A3": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    "A1~": [[2, -2], [-2, 2]],
    "H23": [[2, -3], [-3, 2]],
    "A1+A1~": block_diagonal([[2]], [[2, -2], [-2, 2]]),
}


def cartan(name: str) -> list[list[int]]:
    try:
        return [list(r) for r in CATALOG[name]]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(CATALOG)}") from None
