"""State-space realizations: conversion, minimality, spectra, bilinear maps."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT, Config
from .errors import EigenvalueAtMinusOne, EigenvalueAtPlusOne, ImproperInput
from .poly import RationalScalar, poly_from_roots_real, polyadd
from .ratmat import CT, DT, RationalMatrix, rm_infinity_expansion, rm_poles, rm_residues_at


@dataclass
class StateSpace:
    """Real quadruple (A, B, C, D) with a CT/DT domain tag; n = 0 is a gain."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray
    domain: str

    def __post_init__(self):
        self.A = np.atleast_2d(np.asarray(self.A, dtype=float))
        self.D = np.atleast_2d(np.asarray(self.D, dtype=float))
        m = self.D.shape[0]
        n = self.A.shape[0] if self.A.size else 0
        if self.A.size == 0:
            self.A = np.zeros((0, 0))
        self.B = np.asarray(self.B, dtype=float).reshape(n, m) if n else np.zeros((0, m))
        self.C = np.asarray(self.C, dtype=float).reshape(m, n) if n else np.zeros((m, 0))
        if self.A.shape != (n, n) or self.D.shape != (m, m):
            raise ValueError("inconsistent state-space dimensions")

    @property
    def order(self) -> int:
        return self.A.shape[0]

    @property
    def size(self) -> int:
        return self.D.shape[0]


def spectrum(ss: StateSpace):
    """Eigenvalues of the state matrix."""
    if ss.order == 0:
        return []
    return sorted(np.linalg.eigvals(ss.A), key=lambda v: (v.real, v.imag))


def tf_of(ss: StateSpace) -> RationalMatrix:
    """Transfer matrix C (xI - A)^-1 B + D via the Leverrier-Faddeev recursion."""
    n, m = ss.order, ss.size
    if n == 0:
        return RationalMatrix.constant(ss.D, ss.domain)
    F = np.eye(n)
    char = [1.0]  # descending coefficients of det(xI - A)
    markov = [ss.C @ F @ ss.B]  # descending numerator coefficients of C adj B
    for k in range(1, n + 1):
        M = ss.A @ F
        ck = -np.trace(M) / k
        char.append(ck)
        F = M + ck * np.eye(n)
        if k < n:
            markov.append(ss.C @ F @ ss.B)
    den = np.array(char[::-1])  # ascending
    entries = []
    for i in range(m):
        row = []
        for j in range(m):
            num = np.array([Nk[i, j] for Nk in markov][::-1])
            num = polyadd(num, ss.D[i, j] * den)
            row.append(RationalScalar(num, den))
        entries.append(row)
    return RationalMatrix(entries, ss.domain)


# ---------------------------------------------------------------------------
# staircase reductions


def _orth(M, tol):
    """Orthonormal basis of the column space, rank decided at tol * smax."""
    if M.size == 0:
        return np.zeros((M.shape[0], 0))
    U, s, _ = np.linalg.svd(M, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((M.shape[0], 0))
    r = int(np.sum(s > tol * s[0]))
    return U[:, :r]


def _reachable_basis(A, B, rel):
    n = A.shape[0]
    V = _orth(B, rel)
    for _ in range(n):
        if V.shape[1] >= n:
            break
        W = _orth(np.hstack([V, A @ V]), rel)
        if W.shape[1] == V.shape[1]:
            break
        V = W
    return V


def reachable_reduction(A, B, C, rel):
    V = _reachable_basis(A, B, rel)
    return V.T @ A @ V, V.T @ B, C @ V


def observable_reduction(A, B, C, rel):
    Ar, Cr_t, Br_t = reachable_reduction(A.T, C.T, B.T, rel)
    return Ar.T, Br_t.T, Cr_t.T


def is_minimal(ss: StateSpace, cfg: Config = DEFAULT) -> bool:
    """True iff the realization is both reachable and observable."""
    n = ss.order
    if n == 0:
        return True
    reach = _reachable_basis(ss.A, ss.B, cfg.rank_rel).shape[1]
    obsv = _reachable_basis(ss.A.T, ss.C.T, cfg.rank_rel).shape[1]
    return reach == n and obsv == n


def _minreal_ss(A, B, C, D, domain, rel) -> StateSpace:
    A, B, C = reachable_reduction(A, B, C, rel)
    A, B, C = observable_reduction(A, B, C, rel)
    return StateSpace(A, B, C, D, domain)


# ---------------------------------------------------------------------------
# realization from a rational matrix


def _gilbert_blocks(R: RationalMatrix, pole_list, cfg: Config):
    """Gilbert blocks for simple poles; returns (A, B, C) lists."""
    m = R.size
    Ab, Bb, Cb = [], [], []
    for p, _ in pole_list:
        if p.imag < -cfg.root_cluster * (1.0 + abs(p)):
            continue  # conjugate handled with its partner
        res = rm_residues_at(R, p, cfg).residue_A1
        if abs(p.imag) <= cfg.root_cluster * (1.0 + abs(p)):
            Rm = np.real(res)
            U, s, Vt = np.linalg.svd(Rm)
            r = int(np.sum(s > cfg.rank_rel * max(s[0], 1e-300)))
            if r == 0:
                continue
            sq = np.sqrt(s[:r])
            Ab.append(p.real * np.eye(r))
            Bb.append(sq[:, None] * Vt[:r, :])
            Cb.append(U[:, :r] * sq[None, :])
        else:
            U, s, Vh = np.linalg.svd(res)
            r = int(np.sum(s > cfg.rank_rel * max(s[0], 1e-300)))
            if r == 0:
                continue
            sq = np.sqrt(s[:r])
            B1 = sq[:, None] * Vh[:r, :]
            C1 = U[:, :r] * sq[None, :]
            sg, om = p.real, p.imag
            Ab.append(np.block([
                [sg * np.eye(r), -om * np.eye(r)],
                [om * np.eye(r), sg * np.eye(r)],
            ]))
            Bb.append(np.sqrt(2.0) * np.vstack([np.real(B1), np.imag(B1)]))
            Cb.append(np.sqrt(2.0) * np.hstack([np.real(C1), -np.imag(C1)]))
    return Ab, Bb, Cb


def _block_companion(R: RationalMatrix, pole_list, cfg: Config):
    """Controllable canonical form from a common scalar denominator."""
    m = R.size
    rts = []
    for p, mult in pole_list:
        rts.extend([p] * mult)
    den = poly_from_roots_real(rts)  # monic, ascending, degree n
    n = den.size - 1
    # entry numerators against the common denominator
    Ncoef = [np.zeros((m, m)) for _ in range(n)]
    dpoly = RationalScalar(den, [1.0], reduce=False)
    for i in range(m):
        for j in range(m):
            e = R.entries[i][j]
            prod = RationalScalar(e.num, [1.0], reduce=False) * (
                dpoly / RationalScalar(e.den, [1.0], reduce=False)
            )
            if prod.den_degree != 0:
                raise ValueError("common denominator did not clear an entry")
            c = prod.num / prod.den[0]
            for k in range(min(c.size, n)):
                Ncoef[k][i, j] = c[k]
    A = np.zeros((n * m, n * m))
    for blk in range(n - 1):
        A[blk * m:(blk + 1) * m, (blk + 1) * m:(blk + 2) * m] = np.eye(m)
    for blk in range(n):
        A[(n - 1) * m:, blk * m:(blk + 1) * m] = -den[blk] * np.eye(m)
    B = np.zeros((n * m, m))
    B[(n - 1) * m:, :] = np.eye(m)
    C = np.hstack(Ncoef) if n else np.zeros((m, 0))
    return A, B, C


def minimal_realization(R: RationalMatrix, cfg: Config = DEFAULT) -> StateSpace:
    """Minimal state-space realization of a proper rational matrix.

    Gilbert's construction when all poles are simple, otherwise a block
    controllable canonical form followed by staircase reduction.
    """
    if not R.is_proper():
        raise ImproperInput("minimal_realization requires a proper rational matrix")
    D = R.value_at_inf()
    strict = R - RationalMatrix.constant(D, R.domain)
    pole_list = rm_poles(strict, cfg)
    if not pole_list:
        return StateSpace(np.zeros((0, 0)), np.zeros((0, R.size)), np.zeros((R.size, 0)), D, R.domain)
    if all(mult == 1 for _, mult in pole_list):
        Ab, Bb, Cb = _gilbert_blocks(strict, pole_list, cfg)
        if not Ab:
            return StateSpace(np.zeros((0, 0)), np.zeros((0, R.size)), np.zeros((R.size, 0)), D, R.domain)
        n = sum(a.shape[0] for a in Ab)
        A = np.zeros((n, n))
        B = np.zeros((n, R.size))
        C = np.zeros((R.size, n))
        at = 0
        for a, b, c in zip(Ab, Bb, Cb):
            k = a.shape[0]
            A[at:at + k, at:at + k] = a
            B[at:at + k, :] = b
            C[:, at:at + k] = c
            at += k
        ss = StateSpace(A, B, C, D, R.domain)
        if is_minimal(ss, cfg):
            return ss
        return _minreal_ss(A, B, C, D, R.domain, cfg.rank_rel)
    A, B, C = _block_companion(strict, pole_list, cfg)
    return _minreal_ss(A, B, C, D, R.domain, cfg.rank_rel)


# ---------------------------------------------------------------------------
# bilinear state-space maps


def cayley_ss(ss: StateSpace, cfg: Config = DEFAULT) -> StateSpace:
    """Bilinear domain swap at the state-space level.

    DT -> CT realizes G((1+s)/(1-s)); CT -> DT realizes G((z-1)/(z+1)).  The
    sqrt(2) input/output scaling makes the two maps exact inverses.
    """
    n = ss.order
    if n == 0:
        return StateSpace(ss.A, ss.B, ss.C, ss.D, CT if ss.domain == DT else DT)
    I = np.eye(n)
    if ss.domain == DT:
        M = ss.A + I
        if abs(np.linalg.det(M)) <= 1e-12 * max(1.0, np.linalg.norm(M, 2)) ** n:
            raise EigenvalueAtMinusOne("state matrix has an eigenvalue at -1")
        Minv = np.linalg.inv(M)
        Ac = Minv @ (ss.A - I)
        Bc = np.sqrt(2.0) * (Minv @ ss.B)
        Cc = np.sqrt(2.0) * (ss.C @ Minv)
        Dc = ss.D - ss.C @ Minv @ ss.B
        return StateSpace(Ac, Bc, Cc, Dc, CT)
    M = I - ss.A
    if abs(np.linalg.det(M)) <= 1e-12 * max(1.0, np.linalg.norm(M, 2)) ** n:
        raise EigenvalueAtPlusOne("state matrix has an eigenvalue at +1")
    Minv = np.linalg.inv(M)
    Ad = (I + ss.A) @ Minv
    Bd = np.sqrt(2.0) * (Minv @ ss.B)
    Cd = np.sqrt(2.0) * (ss.C @ Minv)
    Dd = ss.D + ss.C @ Minv @ ss.B
    return StateSpace(Ad, Bd, Cd, Dd, DT)
