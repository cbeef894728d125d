from math import factorial

import numpy as np

from facevol import SimplexSpec, lex_pairs


def perturbed_regular(n: int, rng: np.random.Generator, spread: float = 0.1) -> SimplexSpec:
    """Random realizable spec: unit squared lengths jittered by +-spread."""
    dim = n * (n + 1) // 2
    return SimplexSpec.from_vector(n, (1.0 + rng.uniform(-spread, spread, dim)).tolist())


def coordinate_volume_sq(points: np.ndarray, face) -> float:
    """Independent oracle: squared volume from coordinates via the edge Gram matrix."""
    pts = np.asarray(points, dtype=float)[[v - 1 for v in face]]
    m = len(face) - 1
    if m == 0:
        return 1.0
    edges = pts[1:] - pts[0]
    gram = edges @ edges.T
    return float(np.linalg.det(gram)) / factorial(m) ** 2


def spec_from_points(points: np.ndarray) -> SimplexSpec:
    pts = np.asarray(points, dtype=float)
    n = pts.shape[1]
    lengths = {}
    for i, j in lex_pairs(n):
        d = pts[i - 1] - pts[j - 1]
        lengths[(i, j)] = float(d @ d)
    return SimplexSpec(n, lengths)
