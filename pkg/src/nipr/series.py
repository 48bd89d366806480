"""Matrix power series and eigenvalue-branch analysis.

Given exact Taylor coefficients of a Hermitian matrix family H(x) as x -> 0+,
every eigenvalue branch behaves like c * x**k for some integer k >= 0 and
c != 0 (or is identically zero through the available terms).  The branch
orders and leading coefficients are extracted by recursive Schur-complement
reduction onto the kernel of the leading coefficient.  This decides limit
conditions of the form ``liminf x**-k * lambda_min(H(x)) > 0`` without any
sampling.
"""

from __future__ import annotations

import numpy as np

from .ratmat import RationalMatrix


def matrix_taylor(R: RationalMatrix, p, nterms):
    """Taylor coefficients of R at the point p, as a list of complex arrays."""
    m = R.size
    out = [np.zeros((m, m), dtype=complex) for _ in range(nterms)]
    for i in range(m):
        for j in range(m):
            c = R.entries[i][j].taylor(p, nterms)
            for k in range(nterms):
                out[k][i, j] = c[k]
    return out


def matrix_laurent_inf(R: RationalMatrix, nterms):
    """Coefficients c_k of R(w) = sum_k c_k w**-k for large |w| (proper R)."""
    m = R.size
    out = [np.zeros((m, m)) for _ in range(nterms)]
    for i in range(m):
        for j in range(m):
            c = R.entries[i][j].laurent_at_inf(nterms)
            for k in range(nterms):
                out[k][i, j] = c[k]
    return out


def _herm(M):
    return 0.5 * (M + M.conj().T)


def _inv_series(A, nterms):
    """Coefficients of A(x)**-1 given coefficients of A(x), A[0] invertible."""
    T0 = np.linalg.inv(A[0])
    out = [T0]
    for k in range(1, nterms):
        acc = np.zeros_like(T0)
        for j in range(1, min(k, len(A) - 1) + 1):
            acc = acc + A[j] @ out[k - j]
        out.append(-T0 @ acc)
    return out


def branch_orders(coeffs, tol):
    """Orders and leading coefficients of the eigenvalue branches of H(x).

    Parameters
    ----------
    coeffs : list of Hermitian arrays
        Taylor coefficients H_0, H_1, ... of H(x) = sum H_k x**k.
    tol : float
        Absolute cutoff below which an eigenvalue of a reduced coefficient
        counts as zero.

    Returns
    -------
    list of (order, leading) pairs, one per eigenvalue branch.  Branches that
    stay in the kernel through all supplied coefficients come out with
    ``order = len(coeffs)`` and ``leading = 0.0``.
    """
    coeffs = [_herm(np.asarray(M, dtype=complex)) for M in coeffs]
    return _reduce_branches(coeffs, 0, tol)


def _reduce_branches(coeffs, depth, tol):
    H0 = coeffs[0]
    n = H0.shape[0]
    if n == 0:
        return []
    lam, vec = np.linalg.eigh(H0)
    out = [(depth, float(v)) for v in lam if abs(v) > tol]
    kdim = int(np.sum(np.abs(lam) <= tol))
    if kdim == 0:
        return out
    if len(coeffs) == 1:
        return out + [(depth + 1, 0.0)] * kdim
    kmask = np.abs(lam) <= tol
    V = vec[:, kmask]     # kernel basis
    U = vec[:, ~kmask]    # range basis
    nterms = len(coeffs)
    if U.shape[1] == 0:
        S = [V.conj().T @ coeffs[k] @ V for k in range(1, nterms)]
    else:
        A = [U.conj().T @ coeffs[k] @ U for k in range(nterms)]
        B = [U.conj().T @ coeffs[k] @ V for k in range(nterms)]
        C = [V.conj().T @ coeffs[k] @ V for k in range(nterms)]
        Ainv = _inv_series(A, nterms)
        # Schur complement C - B* A^-1 B; B starts at order 1 so the product
        # starts at order 2 and the complement itself at order 1.
        S = []
        for k in range(1, nterms):
            acc = C[k].astype(complex)
            for a in range(1, k):
                for b in range(k - a + 1):
                    cidx = k - a - b
                    if cidx >= 1:
                        acc = acc - B[a].conj().T @ Ainv[b] @ B[cidx]
            S.append(_herm(acc))
    if not S:
        return out + [(depth + 1, 0.0)] * kdim
    return out + _reduce_branches(S, depth + 1, tol)


def decay_condition(coeffs, max_order, tol):
    """Decide liminf x**max_order * lambda_min(H(x)) > 0 as x -> 0+.

    Every eigenvalue branch must have a positive leading coefficient and
    vanishing order at most ``max_order``.

    Returns
    -------
    ok : bool
    margin : float
        The limit value: +inf when every branch has order below ``max_order``,
        otherwise the smallest leading coefficient among branches sitting at
        exactly ``max_order``; 0 or negative on failure.
    worst : int
        Largest branch order encountered.
    """
    branches = branch_orders(coeffs, tol)
    if not branches:
        return False, 0.0, 0
    worst = max(o for o, _ in branches)
    neg = [c for _, c in branches if c <= 0.0]
    if neg or worst > max_order:
        bad = min(neg) if neg else 0.0
        return False, float(bad), worst
    at_max = [c for o, c in branches if o == max_order]
    margin = float(min(at_max)) if at_max else np.inf
    return True, margin, worst
