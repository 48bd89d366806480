"""Structural maps between the positive-real and negative-imaginary classes."""

from __future__ import annotations

import numpy as np

from .analysis_ct import classify_csspr, classify_cssni
from .config import DEFAULT, Config
from .errors import (
    AsymmetricD,
    AsymmetricOffset,
    CancellationFailure,
    EigenvalueAtMinusOne,
    EpsilonSearchFailed,
    ImproperInput,
    PoleAtMinusOne,
)
from .poly import RationalScalar, roots
from .ratmat import CT, DT, RationalMatrix, rm_eval, rm_poles
from .realization import StateSpace, is_minimal


def _require_symmetric_constant(M, what):
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if np.linalg.norm(M - M.T, 2) > 1e-10 * (1.0 + np.linalg.norm(M, 2)):
        if what == "offset":
            raise AsymmetricOffset("offset matrix must be symmetric")
        raise AsymmetricD("constant matrix D must be symmetric")
    return M


def ct_ni_to_pr(G: RationalMatrix, cfg: Config = DEFAULT) -> RationalMatrix:
    """F(s) = s * (G(s) - G(inf)); maps NI transfer matrices to PR ones."""
    if not G.is_proper():
        raise ImproperInput("the NI-to-PR map needs a proper matrix")
    s = RationalScalar([0.0, 1.0])
    return (G - RationalMatrix.constant(G.value_at_inf(), CT)).scalar_mul(s)


def ct_pr_to_ni(F: RationalMatrix, D, cfg: Config = DEFAULT) -> RationalMatrix:
    """G(s) = (1/s) F(s) + D; maps PR transfer matrices to NI ones."""
    D = _require_symmetric_constant(D, "D")
    inv_s = RationalScalar([1.0], [0.0, 1.0])
    return F.scalar_mul(inv_s) + RationalMatrix.constant(D, CT)


def _epsilon_max(R: RationalMatrix, cfg: Config) -> float:
    mags = [abs(p.real) for p, _ in rm_poles(R, cfg)]
    if not mags:
        return 1.0
    return 0.5 * min(mags)


def csspr_to_cssni(F: RationalMatrix, D, cfg: Config = DEFAULT):
    """G = F(s)/(s + eps) + D for a certified eps with G strongly strict NI.

    eps starts at half the pole-abscissa margin and halves until the
    transformed system passes classify_cssni.
    """
    D = _require_symmetric_constant(D, "D")
    eps = _epsilon_max(F, cfg)
    history = []
    for _ in range(30):
        shift = RationalScalar([1.0], [eps, 1.0])
        G = F.scalar_mul(shift) + RationalMatrix.constant(D, CT)
        ok = classify_cssni(G, cfg).verdict
        history.append((eps, ok))
        if ok:
            return G, eps
        eps *= 0.5
    raise EpsilonSearchFailed("no eps in (0, eps_max] certified the NI verdict", history=history)


def cssni_to_csspr(G: RationalMatrix, cfg: Config = DEFAULT):
    """F = (s + eps) * (G(s) - G(inf)) for a certified eps with F strongly strict PR."""
    if not G.is_proper():
        raise ImproperInput("the NI-to-PR map needs a proper matrix")
    core = G - RationalMatrix.constant(G.value_at_inf(), CT)
    eps = _epsilon_max(G, cfg)
    history = []
    for _ in range(30):
        shift = RationalScalar([eps, 1.0])
        F = core.scalar_mul(shift)
        ok = classify_csspr(F, cfg).verdict
        history.append((eps, ok))
        if ok:
            return F, eps
        eps *= 0.5
    raise EpsilonSearchFailed("no eps in (0, eps_max] certified the PR verdict", history=history)


# ---------------------------------------------------------------------------
# discrete time


def _check_no_pole_at(R, z0, cfg, exc, msg):
    for p, _ in rm_poles(R, cfg):
        if abs(p - z0) <= cfg.root_cluster * 2:
            raise exc(msg)


def dt_ni_to_pr(G: RationalMatrix, cfg: Config = DEFAULT) -> RationalMatrix:
    """F(z) = (z-1)/(z+1) * [G(z) - G(-1)]; maps discrete NI to discrete PR.

    The apparent pole at z = -1 cancels against the zero of G(z) - G(-1);
    the cancellation is verified explicitly.
    """
    if not G.is_proper():
        raise ImproperInput("the NI-to-PR map needs a proper matrix")
    _check_no_pole_at(G, -1.0, cfg, PoleAtMinusOne, "G has a pole at z = -1")
    Gm1 = np.real(rm_eval(G, -1.0, cfg))
    blaschke = RationalScalar([-1.0, 1.0], [1.0, 1.0])
    F = (G - RationalMatrix.constant(Gm1, DT)).scalar_mul(blaschke)
    for row in F.entries:
        for e in row:
            for r in roots(e.den):
                if abs(r + 1.0) <= 1e-6:
                    raise CancellationFailure("residual pole at z = -1 after the map")
    return F


def dt_pr_to_ni(F: RationalMatrix, offset, cfg: Config = DEFAULT) -> RationalMatrix:
    """G0(z) = (z+1)/(z-1) F(z) + offset; inverse of the discrete NI-to-PR map."""
    offset = _require_symmetric_constant(offset, "offset")
    inv_blaschke = RationalScalar([1.0, 1.0], [-1.0, 1.0])
    return F.scalar_mul(inv_blaschke) + RationalMatrix.constant(offset, DT)


def dt_ni_to_pr_ss(ss: StateSpace, cfg: Config = DEFAULT):
    """State-space form of the discrete NI-to-PR map.

    Returns (StateSpace, minimal_flag); the realization keeps (A, B) and maps
    C -> C(A-I)(A+I)^-1, D -> C(A+I)^-1 B.  It is minimal exactly when A has
    no eigenvalue at 1 (given a minimal input).
    """
    if ss.domain != DT:
        raise ValueError("input must be discrete time")
    n = ss.order
    if n == 0:
        out = StateSpace(ss.A, ss.B, ss.C, np.zeros_like(ss.D), DT)
        return out, True
    I = np.eye(n)
    M = ss.A + I
    if abs(np.linalg.det(M)) <= 1e-12 * max(1.0, np.linalg.norm(M, 2)) ** n:
        raise EigenvalueAtMinusOne("state matrix has an eigenvalue at -1")
    Minv = np.linalg.inv(M)
    Cn = ss.C @ (ss.A - I) @ Minv
    Dn = ss.C @ Minv @ ss.B
    out = StateSpace(ss.A, ss.B, Cn, Dn, DT)
    return out, is_minimal(out, cfg)
