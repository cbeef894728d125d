"""Jacobian of the edge-lengths -> codimension-2 face-volumes map.

Rows are (n-2)-faces keyed by complementary 2-subsets, columns are edges,
both in lexicographic order.  Entries are derivatives with respect to the
plain (not squared) edge length, obtained by cofactor differentiation of
the Cayley-Menger determinant; a central-difference Jacobian serves as an
independent cross-check.  At the all-unit-edges simplex the Jacobian is a
known constant times the Kneser adjacency matrix for k=2, which makes its
rank (hence local algebraic independence of the face volumes) certifiable.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial, sqrt

import numpy as np

from .kneser import build_kneser_adjacency
from .simplex import (
    RealizabilityError,
    SimplexSpec,
    ZERO_VOLUME_REL_TOL,
    _volume_scale,
    all_face_volumes,
    build_cm_matrix,
    face_complement,
    is_realizable,
    k_subsets,
    lex_pairs,
    regular_simplex,
    squared_volume,
)

DEFAULT_RANK_THRESHOLD = 1e-8
FD_STEP_FACTOR = 1e-6


class DegenerateFaceError(ValueError):
    """A face has zero volume, so the volume derivative is undefined."""

    def __init__(self, message, face=None):
        super().__init__(message)
        self.face = face


class BoundaryError(ValueError):
    """A finite-difference perturbation left the realizable region."""


@dataclass(frozen=True)
class RegularPointConstants:
    """Constants tied to the all-unit-edges simplex.

    nu is the (n-2)-volume of a regular unit (n-2)-simplex; scale is the
    common value of every nonzero Jacobian entry there, 2*nu/(n-1) =
    1/((n-2)! * sqrt(n-1) * 2^((n-4)/2)).
    """

    n: int
    nu: float
    scale: float


def regular_point_constants(n: int) -> RegularPointConstants:
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    nu = sqrt(n - 1) / (factorial(n - 2) * 2 ** ((n - 2) / 2))
    return RegularPointConstants(n=n, nu=nu, scale=2.0 / (n - 1) * nu)


def face_volume(spec: SimplexSpec, face) -> float:
    return sqrt(max(float(squared_volume(spec, face)), 0.0))


def volume_gradient(spec: SimplexSpec, face) -> dict[tuple[int, int], float]:
    """Derivatives of the face volume with respect to its plain edge lengths.

    dV/dl_e = 2 * s_m * cof_e * l_e / V, where s_m is the Cayley-Menger
    prefactor and cof_e the cofactor at one of the two symmetric positions
    of l_e^2.  Edges not inside the face have derivative 0 and are omitted.
    """
    face = tuple(sorted(face))
    m = len(face) - 1
    if m < 1:
        return {}
    sq = float(squared_volume(spec, face))
    if sq <= ZERO_VOLUME_REL_TOL * _volume_scale(spec, face):
        raise DegenerateFaceError(f"face {face} is degenerate", face=face)
    vol = sqrt(sq)
    cm = build_cm_matrix(spec, face).astype(float)
    prefactor = (-1) ** (m + 1) / (2**m * factorial(m) ** 2)
    position = {v: idx + 1 for idx, v in enumerate(face)}
    grad = {}
    for a_idx in range(m + 1):
        for b_idx in range(a_idx + 1, m + 1):
            i, j = face[a_idx], face[b_idx]
            a, b = position[i], position[j]
            minor = np.delete(np.delete(cm, a, axis=0), b, axis=1)
            cof = (-1) ** (a + b) * float(np.linalg.det(minor))
            length = sqrt(float(spec.edge(i, j)))
            grad[(i, j)] = 2.0 * prefactor * cof * length / vol
    return grad


def analytic_jacobian(spec: SimplexSpec) -> np.ndarray:
    """Jacobian of all (n-2)-face volumes with respect to plain edge lengths."""
    n = spec.n
    if not is_realizable(spec):
        raise RealizabilityError("spec is not realizable")
    keys = k_subsets(n, 2)
    edges = lex_pairs(n)
    col = {edge: idx for idx, edge in enumerate(edges)}
    jac = np.zeros((len(keys), len(edges)))
    for row, key in enumerate(keys):
        for edge, value in volume_gradient(spec, face_complement(n, key)).items():
            jac[row, col[edge]] = value
    return jac


def fd_jacobian(spec: SimplexSpec, step: float | None = None) -> np.ndarray:
    """Central-difference Jacobian, perturbing each plain edge length by +-step."""
    n = spec.n
    lengths = np.sqrt(spec.vector())
    if step is None:
        step = FD_STEP_FACTOR * float(lengths.mean())
    if not step > 0:
        raise ValueError(f"step must be positive, got {step}")

    def volumes_at(ls: np.ndarray) -> np.ndarray:
        perturbed = SimplexSpec.from_vector(n, (ls**2).tolist())
        try:
            return all_face_volumes(perturbed, n - 2).vector()
        except RealizabilityError as exc:
            raise BoundaryError(
                f"perturbation by step {step} left the realizable region"
            ) from exc

    jac = np.empty((len(lengths), len(lengths)))
    for idx in range(len(lengths)):
        bumped = lengths.copy()
        bumped[idx] = lengths[idx] + step
        upper = volumes_at(bumped)
        bumped[idx] = lengths[idx] - step
        lower = volumes_at(bumped)
        jac[:, idx] = (upper - lower) / (2.0 * step)
    return jac


def jacobian_rank(spec: SimplexSpec, rel_threshold: float = DEFAULT_RANK_THRESHOLD):
    """Numerical rank and min/max singular value ratio of the Jacobian.

    Full rank binomial(n+1,2) certifies local algebraic independence of the
    codimension-2 face volumes at this spec.
    """
    svals = np.linalg.svd(analytic_jacobian(spec), compute_uv=False)
    largest = float(svals[0])
    if largest == 0.0:
        return 0, 0.0
    rank = int(np.sum(svals > rel_threshold * largest))
    return rank, float(svals[-1]) / largest


def verify_regular_point(n: int, tol: float = 1e-9) -> dict:
    """Compare the Jacobian at the all-unit simplex against scale * Kneser(k=2).

    Returns a report with the max entrywise deviation plus the rank
    certificate at that point.
    """
    constants = regular_point_constants(n)
    jac = analytic_jacobian(regular_simplex(n))
    pattern = build_kneser_adjacency(n, 2).matrix.astype(float)
    deviation = float(np.abs(jac - constants.scale * pattern).max())
    rank, ratio = jacobian_rank(regular_simplex(n))
    return {
        "n": n,
        "constant": constants.scale,
        "max_abs_deviation": deviation,
        "rank": rank,
        "sv_ratio": ratio,
        "tol": tol,
        "passed": bool(deviation <= tol and rank == comb(n + 1, 2)),
    }


def euler_identity_check(spec: SimplexSpec, face_dim: int) -> float:
    """Max over faces of |sum_e l_e * dV/dl_e - face_dim * V|.

    Volume is homogeneous of degree face_dim in the edge lengths, so the
    residual vanishes for realizable data up to round-off.
    """
    n = spec.n
    if not 1 <= face_dim <= n:
        raise ValueError(f"face_dim must be in 1..{n}, got {face_dim}")
    if not is_realizable(spec):
        raise RealizabilityError("spec is not realizable")
    worst = 0.0
    for face in k_subsets(n, face_dim + 1):
        grad = volume_gradient(spec, face)
        weighted = sum(
            sqrt(float(spec.edge(i, j))) * g for (i, j), g in grad.items()
        )
        residual = abs(weighted - face_dim * face_volume(spec, face))
        worst = max(worst, residual)
    return worst
