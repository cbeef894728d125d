"""Recover edge lengths from codimension-2 face volumes.

Damped Gauss-Newton on the plain edge lengths: each step solves the
regularized normal equations, backtracks by halving if it would leave the
realizable region, and is accepted only when the residual does not
increase.  Multi-start probing exposes targets with several preimages,
e.g. both members of a mirror pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .jacobian import DegenerateFaceError, analytic_jacobian
from .simplex import (
    FaceVolumeVector,
    RealizabilityError,
    SimplexSpec,
    all_face_volumes,
    is_realizable,
    spec_to_json,
)

SQUARED_LENGTH_FLOOR = 1e-9
STEP_STALL = 1e-15
CLUSTER_TOL = 1e-6
START_RANGE = (0.25, 4.0)


@dataclass(frozen=True)
class InverseProblem:
    n: int
    target: FaceVolumeVector
    start: SimplexSpec
    damping: float = 0.0  # initial mu; 0 picks 1e-3 * trace(J'J)/dim
    max_iters: int = 100
    tol: float = 1e-10


@dataclass
class SolveResult:
    solution: SimplexSpec
    residual_norm: float
    iterations: int
    converged: bool
    trajectory: list[float] = field(default_factory=list)


def _spec_from_lengths(n: int, lengths: np.ndarray) -> SimplexSpec:
    squared = np.maximum(lengths**2, SQUARED_LENGTH_FLOOR)
    return SimplexSpec.from_vector(n, squared.tolist())


def solve(problem: InverseProblem) -> SolveResult:
    """Damped Gauss-Newton iteration for target = face volumes of dim n-2."""
    n = problem.n
    dim = comb(n + 1, 2)
    target = problem.target.vector()
    if problem.target.face_dim != n - 2 or len(target) != dim:
        raise ValueError(f"target must hold the {dim} face volumes of dimension {n - 2}")
    if not is_realizable(problem.start):
        raise RealizabilityError("start spec is not realizable")

    lengths = np.sqrt(problem.start.vector())
    spec = _spec_from_lengths(n, lengths)
    values = all_face_volumes(spec, n - 2).vector()
    norm = float(np.linalg.norm(values - target))
    trajectory = [norm]
    mu = problem.damping
    iterations = 0

    for _ in range(problem.max_iters):
        if norm <= problem.tol:
            break
        try:
            jac = analytic_jacobian(spec)
        except (DegenerateFaceError, RealizabilityError):
            break
        normal = jac.T @ jac
        if mu <= 0.0:
            mu = 1e-3 * float(np.trace(normal)) / dim

        step = np.linalg.solve(normal + mu * np.eye(dim), jac.T @ (target - values))
        # halve until back inside the realizable region
        while np.linalg.norm(step) > STEP_STALL:
            trial = _spec_from_lengths(n, lengths + step)
            if is_realizable(trial):
                break
            step = step / 2.0
        if np.linalg.norm(step) <= STEP_STALL:
            break

        trial = _spec_from_lengths(n, lengths + step)
        trial_values = all_face_volumes(trial, n - 2).vector()
        trial_norm = float(np.linalg.norm(trial_values - target))
        if trial_norm <= norm:
            lengths = np.sqrt(trial.vector())
            spec = trial
            values = trial_values
            norm = trial_norm
            trajectory.append(norm)
            iterations += 1
            mu = mu / 10.0
        else:
            mu = mu * 10.0
            if mu > 1e12:
                break

    return SolveResult(
        solution=spec,
        residual_norm=norm,
        iterations=iterations,
        converged=bool(norm <= problem.tol),
        trajectory=trajectory,
    )


def result_to_json(result: SolveResult) -> dict:
    """Solution in simplex JSON form plus residual/iteration metadata."""
    data = spec_to_json(result.solution)
    data["residual"] = result.residual_norm
    data["iterations"] = result.iterations
    data["converged"] = result.converged
    return data


def random_realizable_spec(n: int, rng: np.random.Generator, max_tries: int = 10000) -> SimplexSpec:
    """Squared lengths log-uniform in [0.25, 4], rejected until realizable."""
    low, high = np.log(START_RANGE[0]), np.log(START_RANGE[1])
    dim = comb(n + 1, 2)
    for _ in range(max_tries):
        squared = np.exp(rng.uniform(low, high, size=dim))
        spec = SimplexSpec.from_vector(n, squared.tolist())
        if is_realizable(spec):
            return spec
    raise RuntimeError(f"no realizable draw in {max_tries} tries for n={n}")


def basin_probe(
    n: int,
    target: FaceVolumeVector,
    num_starts: int,
    seed: int,
    max_iters: int = 200,
    tol: float = 1e-10,
) -> list[SolveResult]:
    """Run seeded multi-start solves and cluster the converged solutions.

    Solutions whose sorted squared-length vectors differ by at most 1e-6
    (sup norm) count as the same preimage; one representative per cluster
    is returned, in order of first discovery.
    """
    if num_starts < 1:
        raise ValueError(f"num_starts must be >= 1, got {num_starts}")
    rng = np.random.default_rng(seed)
    representatives: list[SolveResult] = []
    signatures: list[np.ndarray] = []
    for _ in range(num_starts):
        start = random_realizable_spec(n, rng)
        result = solve(
            InverseProblem(n=n, target=target, start=start, max_iters=max_iters, tol=tol)
        )
        if not result.converged:
            continue
        signature = np.sort(result.solution.vector())
        if all(np.max(np.abs(signature - seen)) > CLUSTER_TOL for seen in signatures):
            signatures.append(signature)
            representatives.append(result)
    return representatives
