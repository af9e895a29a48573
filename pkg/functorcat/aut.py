"""
FIBRA - Automorphism groups of finite spaces.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Tuple

import numpy as np
from loguru import logger

from core.errors import InvalidObjectError
from finspace.homeo import iter_homeomorphisms
from finspace.space import ContinuousMap, FinSpace


@dataclass(frozen=True)
class AutGroup:
    """Aut(F): self-homeomorphisms of F in lexicographic order of their image tuples.

    `table[a, b]` is the index of elements[a] o elements[b]; index 0 is the identity.
    """

    space: FinSpace
    elements: Tuple[ContinuousMap, ...]
    table: np.ndarray = field(repr=False)
    inverse: Tuple[int, ...] = field(repr=False)
    _index: Dict[Tuple[int, ...], int] = field(repr=False, compare=False, hash=False)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> int:
        return 0

    def index_of(self, h: ContinuousMap) -> int:
        try:
            return self._index[h.image]
        except KeyError:
            raise InvalidObjectError(f"{h!r} is not an automorphism of the fiber") from None

    def mul(self, a: int, b: int) -> int:
        """Index of elements[a] o elements[b]."""
        return int(self.table[a, b])

    def __hash__(self) -> int:
        return hash((self.space, len(self.elements)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AutGroup):
            return NotImplemented
        return self.space == other.space


@lru_cache(maxsize=256)
def aut_group(F: FinSpace) -> AutGroup:
    elements = tuple(iter_homeomorphisms(F, F))
    index = {h.image: k for k, h in enumerate(elements)}
    n = len(elements)
    table = np.zeros((n, n), dtype=np.int64)
    for a, ha in enumerate(elements):
        for b, hb in enumerate(elements):
            table[a, b] = index[tuple(ha.image[v] for v in hb.image)]
    table.setflags(write=False)
    inverse = tuple(int(np.flatnonzero(table[a] == 0)[0]) for a in range(n))
    logger.debug(f"aut_group: |Aut(F)| = {n} for a {len(F)}-point fiber")
    return AutGroup(F, elements, table, inverse, index)
