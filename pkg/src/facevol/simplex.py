"""Simplices given by squared edge lengths.

A simplex on vertices 1..n+1 is described by the squared lengths of its
binomial(n+1,2) edges.  Squared volumes of faces come from Cayley-Menger
determinants; when every squared length is an int or Fraction the
determinant is evaluated exactly, otherwise in floating point.

Faces of dimension d are keyed by their complementary (n-d)-subset of the
vertex set, in lexicographic order.  That ordering is shared with the
Kneser adjacency matrices so incidence patterns line up without any
permutation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial, sqrt

import numpy as np

from .exact import fraction_determinant

REALIZABILITY_EIG_TOL = 1e-10  # relative to trace of the Gram matrix
ZERO_VOLUME_REL_TOL = 1e-12


class RealizabilityError(ValueError):
    """Distance data does not embed in Euclidean space."""

    def __init__(self, message, face=None):
        super().__init__(message)
        self.face = face


def lex_pairs(n: int) -> list[tuple[int, int]]:
    """Edges (i,j), 1 <= i < j <= n+1, in lexicographic order."""
    return list(combinations(range(1, n + 2), 2))


def k_subsets(n: int, k: int) -> list[tuple[int, ...]]:
    """k-subsets of {1,...,n+1} as sorted tuples, in lexicographic order."""
    return list(combinations(range(1, n + 2), k))


def face_complement(n: int, key: tuple[int, ...]) -> tuple[int, ...]:
    """Vertex set of the face keyed by its complementary subset."""
    drop = set(key)
    return tuple(v for v in range(1, n + 2) if v not in drop)


def _is_exact(value) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


@dataclass(frozen=True)
class SimplexSpec:
    """An n-simplex described by squared edge lengths.

    squared_lengths maps each pair (i,j), 1 <= i < j <= n+1, to a
    nonnegative number.  Values may be floats or exact ints/Fractions;
    realizability is a separate check, not an invariant.
    """

    n: int
    squared_lengths: dict[tuple[int, int], float | Fraction]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")
        expected = lex_pairs(self.n)
        if set(self.squared_lengths) != set(expected):
            raise ValueError(
                f"need exactly the {comb(self.n + 1, 2)} pairs (i,j), "
                f"1 <= i < j <= {self.n + 1}"
            )
        for pair, value in self.squared_lengths.items():
            if value < 0:
                raise ValueError(f"squared length for {pair} is negative: {value}")
        # normalize to lexicographic insertion order
        object.__setattr__(
            self, "squared_lengths", {p: self.squared_lengths[p] for p in expected}
        )

    @property
    def is_exact(self) -> bool:
        return all(_is_exact(v) for v in self.squared_lengths.values())

    def edge(self, i: int, j: int):
        if i == j:
            raise IndexError(f"edge endpoints must differ, got ({i},{j})")
        key = (i, j) if i < j else (j, i)
        try:
            return self.squared_lengths[key]
        except KeyError:
            raise IndexError(f"vertex pair {key} outside 1..{self.n + 1}") from None

    def vector(self) -> np.ndarray:
        """Squared lengths as a float vector in lexicographic pair order."""
        return np.array([float(v) for v in self.squared_lengths.values()])

    @classmethod
    def from_vector(cls, n: int, values) -> "SimplexSpec":
        pairs = lex_pairs(n)
        values = list(values)
        if len(values) != len(pairs):
            raise ValueError(f"expected {len(pairs)} squared lengths, got {len(values)}")
        return cls(n, dict(zip(pairs, values)))


@dataclass(frozen=True)
class FaceVolumeVector:
    """Volumes of all dimension-`face_dim` faces, keyed by complement subsets."""

    n: int
    face_dim: int
    values: dict[tuple[int, ...], float]

    def keys(self) -> list[tuple[int, ...]]:
        return list(self.values)

    def vector(self) -> np.ndarray:
        return np.array([self.values[k] for k in self.values])

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class RealizabilityCertificate:
    realizable: bool
    min_eigenvalue: float
    tolerance: float

    def __bool__(self) -> bool:
        return self.realizable


def regular_simplex(n: int) -> SimplexSpec:
    """All squared edge lengths equal to 1 (exact)."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    return SimplexSpec(n, {pair: 1 for pair in lex_pairs(n)})


def vertices_to_spec(vertices) -> SimplexSpec:
    """Squared pairwise distances of n+1 points in n-dimensional space."""
    pts = np.asarray(vertices, dtype=float)
    if pts.ndim != 2 or pts.shape[0] != pts.shape[1] + 1:
        raise ValueError(f"expected n+1 points with n coordinates, got shape {pts.shape}")
    n = pts.shape[1]
    lengths = {}
    for i, j in lex_pairs(n):
        diff = pts[i - 1] - pts[j - 1]
        lengths[(i, j)] = float(diff @ diff)
    return SimplexSpec(n, lengths)


def relabel(spec: SimplexSpec, perm: dict[int, int]) -> SimplexSpec:
    """Apply a vertex permutation {old: new} to a spec."""
    lengths = {}
    for (i, j), value in spec.squared_lengths.items():
        a, b = perm[i], perm[j]
        lengths[(min(a, b), max(a, b))] = value
    return SimplexSpec(spec.n, lengths)


def build_cm_matrix(spec: SimplexSpec, face) -> np.ndarray:
    """Cayley-Menger matrix of the sub-simplex spanned by `face`.

    For a face with m+1 vertices this is the (m+2) x (m+2) symmetric matrix
    with zero diagonal, a border of ones in row/column 0, and squared edge
    lengths elsewhere.  Exact specs yield an exact (object dtype) matrix.
    """
    face = tuple(sorted(face))
    if len(face) < 2:
        raise ValueError(f"face needs at least 2 vertices, got {face}")
    if len(set(face)) != len(face):
        raise ValueError(f"face has repeated vertices: {face}")
    if face[0] < 1 or face[-1] > spec.n + 1:
        raise IndexError(f"face {face} outside vertex range 1..{spec.n + 1}")
    order = len(face) + 1
    exact = spec.is_exact
    cm = np.zeros((order, order), dtype=object if exact else float)
    cm[0, 1:] = 1
    cm[1:, 0] = 1
    for a, i in enumerate(face, start=1):
        for b, j in enumerate(face, start=1):
            if a < b:
                value = spec.edge(i, j)
                cm[a, b] = value
                cm[b, a] = value
    return cm


def cm_determinant(cm: np.ndarray):
    """Determinant of a Cayley-Menger matrix, exact when entries are exact."""
    if cm.dtype == object:
        return fraction_determinant([list(row) for row in cm])
    return float(np.linalg.det(cm))


def squared_volume(spec: SimplexSpec, face):
    """Squared m-volume of the face via the Cayley-Menger determinant.

    V^2 = (-1)^(m+1) / (2^m (m!)^2) * det C.  Points (m=0) have squared
    volume 1 by convention; the value may be negative for data that does
    not embed, callers decide how to treat that.
    """
    face = tuple(sorted(face))
    m = len(face) - 1
    if m < 0:
        raise ValueError("face must have at least one vertex")
    if m == 0:
        if face[0] < 1 or face[0] > spec.n + 1:
            raise IndexError(f"vertex {face[0]} outside 1..{spec.n + 1}")
        return Fraction(1) if spec.is_exact else 1.0
    det = cm_determinant(build_cm_matrix(spec, face))
    denom = 2**m * factorial(m) ** 2
    if isinstance(det, Fraction):
        return Fraction((-1) ** (m + 1), denom) * det
    return (-1) ** (m + 1) / denom * det


def _volume_scale(spec: SimplexSpec, face) -> float:
    """Magnitude of the largest monomial of the squared-volume polynomial."""
    m = len(face) - 1
    if m < 1:
        return 1.0
    qmax = max(max(float(spec.edge(i, j)) for i, j in combinations(face, 2)), 1.0)
    return qmax**m / (2**m * factorial(m) ** 2)


def gram_matrix(spec: SimplexSpec) -> np.ndarray:
    """Gram matrix relative to base vertex 1: G_ij = (q_1i + q_1j - q_ij)/2."""
    n = spec.n
    g = np.empty((n, n))
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            qi = float(spec.edge(1, i + 1))
            qj = float(spec.edge(1, j + 1))
            qij = 0.0 if i == j else float(spec.edge(i + 1, j + 1))
            g[i - 1, j - 1] = g[j - 1, i - 1] = 0.5 * (qi + qj - qij)
    return g


def is_realizable(spec: SimplexSpec) -> RealizabilityCertificate:
    """Check that the distance data embeds in Euclidean space.

    The spec is realizable iff its Gram matrix (base vertex 1) is positive
    semidefinite; we accept eigenvalues down to -1e-10 * trace(G) so that
    boundary cases (degenerate but embeddable data) pass.
    """
    g = gram_matrix(spec)
    eigs = np.linalg.eigvalsh(g)
    tol = REALIZABILITY_EIG_TOL * max(float(np.trace(g)), 1e-300)
    return RealizabilityCertificate(
        realizable=bool(eigs[0] >= -tol),
        min_eigenvalue=float(eigs[0]),
        tolerance=tol,
    )


def _first_negative_face(spec: SimplexSpec):
    """Smallest (then lexicographically first) face with negative squared volume."""
    for size in range(3, spec.n + 2):
        for face in combinations(range(1, spec.n + 2), size):
            sq = float(squared_volume(spec, face))
            if sq < -ZERO_VOLUME_REL_TOL * _volume_scale(spec, face):
                return face
    return tuple(range(1, spec.n + 2))


def all_face_volumes(spec: SimplexSpec, face_dim: int) -> FaceVolumeVector:
    """Volumes of every dimension-`face_dim` face, keyed by complement subsets.

    Raises RealizabilityError (carrying an offending face) if the spec does
    not embed.  Degenerate faces get volume exactly 0.
    """
    n = spec.n
    if not 0 <= face_dim <= n:
        raise ValueError(f"face_dim must be in 0..{n}, got {face_dim}")
    if not is_realizable(spec):
        raise RealizabilityError(
            "spec is not realizable", face=_first_negative_face(spec)
        )
    values = {}
    for key in k_subsets(n, n - face_dim):
        face = face_complement(n, key)
        sq = float(squared_volume(spec, face))
        if sq < -ZERO_VOLUME_REL_TOL * _volume_scale(spec, face):
            raise RealizabilityError(
                f"face {face} has negative squared volume {sq}", face=face
            )
        values[key] = sqrt(sq) if sq > 0 else 0.0
    return FaceVolumeVector(n=n, face_dim=face_dim, values=values)


# --- JSON interchange -------------------------------------------------------

def _value_to_json(value):
    if isinstance(value, bool):
        raise TypeError("squared lengths cannot be booleans")
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value)
        return f"{value.numerator}/{value.denominator}"
    return value


def _value_from_json(raw):
    if isinstance(raw, str):
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"bad squared length: {raw!r}") from None
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise ValueError(f"bad squared length: {raw!r}")
    if isinstance(raw, float) and not np.isfinite(raw):
        raise ValueError(f"bad squared length: {raw!r}")
    return raw


def spec_to_json(spec: SimplexSpec) -> dict:
    """{"n": ..., "squared_lengths": [...]} with entries in lexicographic pair order."""
    return {
        "n": spec.n,
        "squared_lengths": [
            _value_to_json(v) for v in spec.squared_lengths.values()
        ],
    }


def spec_from_json(data: dict) -> SimplexSpec:
    try:
        n = data["n"]
        raw = data["squared_lengths"]
    except (KeyError, TypeError):
        raise ValueError('simplex JSON needs keys "n" and "squared_lengths"') from None
    if not isinstance(n, int):
        raise ValueError(f'"n" must be an integer, got {n!r}')
    return SimplexSpec.from_vector(n, [_value_from_json(x) for x in raw])


def load_spec(path) -> SimplexSpec:
    with open(path) as fh:
        return spec_from_json(json.load(fh))


def save_spec(spec: SimplexSpec, path) -> None:
    with open(path, "w") as fh:
        json.dump(spec_to_json(spec), fh, indent=2)
        fh.write("\n")
