"""
FIBRA - Standard constructions: product, non-Hausdorff cone and suspension, disjoint union.
"""

from typing import Tuple

import numpy as np

from core.errors import LabelCollisionError
from finspace.space import ContinuousMap, FinSpace, Label

CONE_POINT: Label = "+"
SUSPENSION_POINTS: Tuple[Label, Label] = ("+", "-")


def product(X: FinSpace, Y: FinSpace) -> FinSpace:
    """X x Y with the componentwise order; points (x, y) in X-major order."""
    labels = [(x, y) for x in X.labels for y in Y.labels]
    return FinSpace(labels, np.kron(X.leq, Y.leq).astype(bool))


def product_projections(X: FinSpace, Y: FinSpace, XY: FinSpace) -> Tuple[ContinuousMap, ContinuousMap]:
    """The two projections out of XY = product(X, Y)."""
    m = len(Y)
    first = ContinuousMap(XY, X, [k // m for k in range(len(XY))], check=False) if m else ContinuousMap(XY, X, [], check=False)
    second = ContinuousMap(XY, Y, [k % m for k in range(len(XY))], check=False) if m else ContinuousMap(XY, Y, [], check=False)
    return first, second


def pairing(f: ContinuousMap, g: ContinuousMap, XY: FinSpace) -> ContinuousMap:
    """<f, g>: Z -> X x Y."""
    m = len(g.cod)
    return ContinuousMap(f.dom, XY, [a * m + b for a, b in zip(f.image, g.image)], check=False)


def _with_new_points(X: FinSpace, new: Tuple[Label, ...]) -> FinSpace:
    for lab in new:
        if lab in X:
            raise LabelCollisionError(f"label {lab!r} already used in the space")
    n, k = len(X), len(new)
    leq = np.zeros((n + k, n + k), dtype=bool)
    leq[:n, :n] = X.leq
    leq[:n, n:] = True
    leq[np.arange(n, n + k), np.arange(n, n + k)] = True
    return FinSpace(list(X.labels) + list(new), leq)


def cone(X: FinSpace, apex: Label = CONE_POINT) -> FinSpace:
    """Non-Hausdorff cone: X plus a maximum."""
    return _with_new_points(X, (apex,))


def suspension(X: FinSpace, poles: Tuple[Label, Label] = SUSPENSION_POINTS) -> FinSpace:
    """Non-Hausdorff suspension: X plus two incomparable points above all of X."""
    return _with_new_points(X, tuple(poles))


def disjoint_union(X: FinSpace, Y: FinSpace) -> FinSpace:
    clash = set(X.labels) & set(Y.labels)
    if clash:
        raise LabelCollisionError(f"labels shared by both summands: {sorted(map(str, clash))}")
    n, m = len(X), len(Y)
    leq = np.zeros((n + m, n + m), dtype=bool)
    leq[:n, :n] = X.leq
    leq[n:, n:] = Y.leq
    return FinSpace(list(X.labels) + list(Y.labels), leq)
