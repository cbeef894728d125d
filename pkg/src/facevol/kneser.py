"""Exact spectra of Kneser graphs K(n+1,k) and line graphs of complete graphs.

Vertices are the k-subsets of {1,...,n+1} in lexicographic order; two
subsets are adjacent iff disjoint.  Eigenvalues, multiplicities and
determinants are certified with exact integer arithmetic: an annihilating
polynomial product proves the listed eigenvalues exhaust the spectrum, and
a Vandermonde solve on power traces recovers multiplicities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .exact import exact_matmul, int_determinant, solve_fraction_system
from .simplex import k_subsets

MAX_ORDER_DEFAULT = 5000


@dataclass(frozen=True)
class KneserAdjacency:
    """Exact 0/1 adjacency matrix of K(n+1,k), lexicographic subset order."""

    n: int
    k: int
    subsets: tuple[tuple[int, ...], ...]
    matrix: np.ndarray

    @property
    def order(self) -> int:
        return len(self.subsets)

    @property
    def degree(self) -> int:
        return comb(self.n + 1 - self.k, self.k)


@dataclass(frozen=True)
class SpectrumSpec:
    """Integer eigenvalues with their multiplicities."""

    eigenvalues: tuple[int, ...]
    multiplicities: tuple[int, ...]


def build_kneser_adjacency(n: int, k: int, max_order: int = MAX_ORDER_DEFAULT) -> KneserAdjacency:
    """Adjacency matrix of K(n+1,k): entry (E,F) = 1 iff E and F are disjoint."""
    if not 1 <= k <= n + 1:
        raise ValueError(f"k must be in 1..{n + 1}, got {k}")
    order = comb(n + 1, k)
    if order > max_order:
        raise ValueError(
            f"order {order} exceeds limit {max_order}; pass max_order to override"
        )
    subsets = k_subsets(n, k)
    sets = [set(s) for s in subsets]
    m = np.zeros((order, order), dtype=np.int64)
    for a in range(order):
        for b in range(a + 1, order):
            if not sets[a] & sets[b]:
                m[a, b] = m[b, a] = 1
    return KneserAdjacency(n=n, k=k, subsets=tuple(subsets), matrix=m)


def predicted_eigenvalues(n: int, k: int) -> list[int]:
    """The k+1 integers (-1)^i * binomial(n-k-i+1, k-i), i = 0..k."""
    if not (2 <= k and 2 * k <= n + 1):
        raise ValueError(f"need 2 <= k <= (n+1)/2, got n={n}, k={k}")
    return [(-1) ** i * comb(n - k - i + 1, k - i) for i in range(k + 1)]


def multiplicities_from_traces(adj: KneserAdjacency, eigenvalues) -> list[int]:
    """Recover multiplicities from power traces, exactly.

    Solves sum_i m_i * lam_i^p = trace(M^p) for p = 0..len(eigenvalues)-1
    over the rationals and certifies that the solution is a nonnegative
    integer vector.  Raises ValueError for repeated eigenvalues and
    ArithmeticError if certification fails.
    """
    lams = [int(lam) for lam in eigenvalues]
    if len(set(lams)) != len(lams):
        raise ValueError(f"eigenvalues must be pairwise distinct: {lams}")
    traces = []
    power = np.eye(adj.order, dtype=np.int64)
    for _ in range(len(lams)):
        traces.append(int(np.trace(power)))
        power = exact_matmul(power, adj.matrix)
    rows = [[Fraction(lam) ** p for lam in lams] for p in range(len(lams))]
    solution = solve_fraction_system(rows, [Fraction(t) for t in traces])
    mults = []
    for lam, m in zip(lams, solution):
        if m.denominator != 1 or m < 0:
            raise ArithmeticError(
                f"multiplicity for eigenvalue {lam} is not a nonnegative integer: {m}"
            )
        mults.append(int(m))
    return mults


def predicted_spectrum(n: int, k: int, max_order: int = MAX_ORDER_DEFAULT) -> SpectrumSpec:
    """Eigenvalues of K(n+1,k) with multiplicities.

    For k=2 the multiplicities have the closed form (1, n, (n+1)(n-2)/2);
    for k>2 they are recovered by the exact trace solve.
    """
    lams = predicted_eigenvalues(n, k)
    if k == 2:
        mults = [1, n, (n + 1) * (n - 2) // 2]
    else:
        adj = build_kneser_adjacency(n, k, max_order=max_order)
        mults = multiplicities_from_traces(adj, lams)
    return SpectrumSpec(eigenvalues=tuple(lams), multiplicities=tuple(mults))


def verify_annihilation(adj: KneserAdjacency, spectrum: SpectrumSpec) -> bool:
    """True iff the product of (M - lam*I) over the spectrum is exactly zero."""
    eye = np.eye(adj.order, dtype=np.int64)
    product = eye
    for lam in spectrum.eigenvalues:
        product = exact_matmul(product, adj.matrix - int(lam) * eye)
    return not np.any(product != 0)


def exact_determinant(adj: KneserAdjacency) -> int:
    """Signed determinant of the adjacency matrix, exact."""
    return int_determinant(adj.matrix.tolist())


def line_graph_adjacency(n: int) -> np.ndarray:
    """Adjacency of L(K_{n+1}) on 2-subsets: 1 iff the subsets share one element."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    subsets = k_subsets(n, 2)
    order = len(subsets)
    a = np.zeros((order, order), dtype=np.int64)
    for i in range(order):
        for j in range(i + 1, order):
            if len(set(subsets[i]) & set(subsets[j])) == 1:
                a[i, j] = a[j, i] = 1
    return a


def line_graph_complement_check(n: int) -> bool:
    """Certify A + M + I = all-ones and the eigenvalue translation it implies.

    A is the line graph of the complete graph on n+1 vertices, M the
    Kneser adjacency for k=2.  The translation sends the line-graph
    eigenvalues t = (2n-2, -2, n-3) to binomial(n+1,2)-t1-1 and -t_i-1.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    a = line_graph_adjacency(n)
    m = build_kneser_adjacency(n, 2).matrix
    order = a.shape[0]
    identity_holds = bool(
        np.array_equal(a + m + np.eye(order, dtype=np.int64), np.ones((order, order), dtype=np.int64))
    )
    t1, t2, t3 = 2 * n - 2, -2, n - 3
    translated = [comb(n + 1, 2) - t1 - 1, -t2 - 1, -t3 - 1]
    translation_holds = translated == [comb(n - 1, 2), 1, 2 - n]
    return identity_holds and translation_holds


def spectrum_report(n: int, k: int, max_order: int = MAX_ORDER_DEFAULT) -> dict:
    """Full exact certificate: eigenvalues (descending), multiplicities, det, annihilation."""
    adj = build_kneser_adjacency(n, k, max_order=max_order)
    spectrum = predicted_spectrum(n, k, max_order=max_order)
    pairs = sorted(
        zip(spectrum.eigenvalues, spectrum.multiplicities), key=lambda p: -p[0]
    )
    return {
        "n": n,
        "k": k,
        "eigenvalues": [int(lam) for lam, _ in pairs],
        "multiplicities": [int(m) for _, m in pairs],
        "det": str(exact_determinant(adj)),
        "annihilation": verify_annihilation(adj, spectrum),
    }
