"""Legendre-Gauss-Lobatto collocation operators on the reference interval [-1, 1]."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Degree cap: keeps the Newton solve, barycentric products and Vandermonde
# inversion comfortably inside double-precision conditioning.
MAX_DEGREE = 512

_NEWTON_TOL = 1e-15
_NEWTON_MAXIT = 100


@dataclass(frozen=True)
class OperatorSet:
    """All collocation matrices for one polynomial degree N.

    Treated as read-only after construction; safe to share across threads.

    Attributes
    ----------
    N : polynomial degree (nodes run 0..N)
    nodes : N+1 LGL nodes in [-1, 1], ascending
    weights : N+1 positive quadrature weights
    M : diagonal mass matrix, diag(weights)
    D : dense nodal differentiation matrix
    B : boundary matrix diag(-1, 0, ..., 0, 1)
    V : Vandermonde matrix of the normalized Legendre basis at the nodes
    Vinv : inverse of V (nodal -> modal transform)
    """

    N: int
    nodes: np.ndarray
    weights: np.ndarray
    M: np.ndarray
    D: np.ndarray
    B: np.ndarray
    V: np.ndarray
    Vinv: np.ndarray


def _legendre_pair(n: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return (P_n(x), P_{n-1}(x)) by the three-term recurrence, n >= 1."""
    p_prev = np.ones_like(x)
    p = np.array(x, dtype=float, copy=True)
    for k in range(1, n):
        p, p_prev = ((2 * k + 1) * x * p - k * p_prev) / (k + 1), p
    return p, p_prev


def lgl_nodes_weights(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Legendre-Gauss-Lobatto nodes and quadrature weights for degree ``n``.

    The interior nodes are the roots of P_n', found by Newton iteration
    seeded with Chebyshev-Gauss-Lobatto points. The resulting rule is exact
    for polynomials of degree <= 2n - 1.

    Parameters
    ----------
    n : polynomial degree, at least 1

    Returns
    -------
    (nodes, weights) : two arrays of length n + 1
    """
    if n < 1:
        raise ValueError("degree must be >= 1 (a single node has no boundary matrix)")
    if n > MAX_DEGREE:
        raise ValueError(f"degree {n} exceeds the configured maximum {MAX_DEGREE}")

    nodes = np.empty(n + 1)
    nodes[0], nodes[n] = -1.0, 1.0
    if n >= 2:
        x = -np.cos(np.pi * np.arange(1, n) / n)
        for _ in range(_NEWTON_MAXIT):
            p, p_prev = _legendre_pair(n, x)
            # dP_n and d2P_n from the standard identities; x is interior so
            # the 1 - x^2 factors are safe.
            omx2 = 1.0 - x * x
            dp = n * (p_prev - x * p) / omx2
            d2p = (2.0 * x * dp - n * (n + 1) * p) / omx2
            step = dp / d2p
            x -= step
            if np.max(np.abs(step)) <= _NEWTON_TOL:
                break
        else:
            raise RuntimeError(f"LGL Newton iteration failed to converge for n={n}")
        # symmetrize: pairs become exact negatives, middle node exactly 0
        x = 0.5 * (x - x[::-1])
        nodes[1:n] = x

    pn = _legendre_pair(n, nodes)[0]
    weights = 2.0 / (n * (n + 1) * pn * pn)
    return nodes, weights


def legendre_normalized(j: int, xi):
    """Evaluate the degree-``j`` Legendre polynomial normalized to unit L2 norm.

    Uses the three-term recurrence; accepts a scalar or an array of points.
    """
    if j < 0:
        raise ValueError("mode index must be non-negative")
    x = np.asarray(xi, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    p_prev = np.ones_like(x)
    if j == 0:
        out = np.sqrt(0.5) * p_prev
    else:
        p = x.copy()
        for k in range(1, j):
            p, p_prev = ((2 * k + 1) * x * p - k * p_prev) / (k + 1), p
        out = np.sqrt(j + 0.5) * p
    return float(out[0]) if scalar else out


def _legendre_table(n: int, x: np.ndarray) -> np.ndarray:
    """Columns j = 0..n of the normalized Legendre basis at points ``x``."""
    tab = np.empty((x.size, n + 1))
    tab[:, 0] = 1.0
    if n >= 1:
        tab[:, 1] = x
    for k in range(1, n):
        tab[:, k + 1] = ((2 * k + 1) * x * tab[:, k] - k * tab[:, k - 1]) / (k + 1)
    return tab * np.sqrt(np.arange(n + 1) + 0.5)


def derivative_matrix(nodes: np.ndarray) -> np.ndarray:
    """Nodal differentiation matrix via barycentric weights.

    Entry (i, j) is the derivative of the j-th Lagrange cardinal polynomial
    at node i. Diagonal entries use the negative-sum trick, which pins the
    row sums (the derivative of a constant) at the roundoff floor.
    """
    x = np.asarray(nodes, dtype=float)
    m = x.size
    diff = x[:, None] - x[None, :]
    off = ~np.eye(m, dtype=bool)
    if np.any(diff[off] == 0.0):
        raise ValueError("duplicate nodes")
    np.fill_diagonal(diff, 1.0)
    w = 1.0 / np.prod(diff, axis=1)
    dmat = (w[None, :] / w[:, None]) / diff
    np.fill_diagonal(dmat, 0.0)
    np.fill_diagonal(dmat, -np.sum(dmat, axis=1))
    return dmat


def vandermonde(nodes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vandermonde matrix of the normalized Legendre basis and its inverse.

    V maps modal coefficients to nodal values; Vinv is obtained by LU-based
    solves against the identity rather than an explicit inversion formula.
    """
    x = np.asarray(nodes, dtype=float)
    n = x.size - 1
    vmat = _legendre_table(n, x)
    ident = np.eye(n + 1)
    try:
        vinv = np.linalg.solve(vmat, ident)
    except np.linalg.LinAlgError as exc:
        raise ArithmeticError(
            f"Vandermonde matrix numerically singular at degree {n} "
            f"(condition estimate {np.linalg.cond(vmat):.3e})"
        ) from exc
    resid = np.max(np.abs(vmat @ vinv - ident))
    if resid > 1e-8:
        raise ArithmeticError(
            f"Vandermonde inversion residual {resid:.3e} at degree {n} "
            f"(condition estimate {np.linalg.cond(vmat):.3e})"
        )
    return vmat, vinv


def interpolation_matrix(nodes: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """Matrix evaluating the nodal interpolant at arbitrary target points.

    Second-form barycentric interpolation; target points that coincide with
    a node reproduce the nodal value exactly.
    """
    x = np.asarray(nodes, dtype=float)
    xt = np.asarray(targets, dtype=float)
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    w = 1.0 / np.prod(diff, axis=1)

    dist = xt[:, None] - x[None, :]
    hit = dist == 0.0
    dist[hit] = 1.0
    terms = w[None, :] / dist
    mat = terms / np.sum(terms, axis=1)[:, None]
    rows_hit = np.any(hit, axis=1)
    mat[rows_hit] = 0.0
    mat[hit] = 1.0
    return mat


def discrete_inner(u: np.ndarray, v: np.ndarray, m: np.ndarray) -> float:
    """Quadrature inner product sum_i u_i M_ii v_i.

    ``m`` may be the diagonal mass matrix or the bare weight vector.
    """
    w = np.diag(m) if np.ndim(m) == 2 else np.asarray(m)
    return float(np.sum(u * w * v))


def discrete_norm(u: np.ndarray, m: np.ndarray) -> float:
    """Quadrature norm induced by :func:`discrete_inner`."""
    return float(np.sqrt(discrete_inner(u, u, m)))


def sbp_residual(ops: OperatorSet) -> float:
    """Max-abs entry of M D + (M D)^T - B; a construction self-check."""
    md = ops.M @ ops.D
    return float(np.max(np.abs(md + md.T - ops.B)))


def build_operators(n: int, check: bool = True) -> OperatorSet:
    """Construct the full operator set for degree ``n``.

    With ``check`` enabled the summation-by-parts identity is verified to
    roundoff before returning.
    """
    nodes, weights = lgl_nodes_weights(n)
    mass = np.diag(weights)
    dmat = derivative_matrix(nodes)
    bmat = np.zeros((n + 1, n + 1))
    bmat[0, 0] = -1.0
    bmat[n, n] = 1.0
    vmat, vinv = vandermonde(nodes)
    ops = OperatorSet(N=n, nodes=nodes, weights=weights, M=mass, D=dmat,
                      B=bmat, V=vmat, Vinv=vinv)
    if check:
        resid = sbp_residual(ops)
        if resid > 1e-9:
            raise ArithmeticError(f"summation-by-parts residual {resid:.3e} at degree {n}")
    return ops
