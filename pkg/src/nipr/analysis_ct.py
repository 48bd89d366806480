"""Continuous-time classifiers: C-PR / C-SSPR / C-WSPR and C-NI / C-SSNI / C-WSNI."""

from __future__ import annotations

import numpy as np

from .boundary import (
    boundary_det_zeros,
    ct_grid,
    defect_ct,
    grid_psd_scan,
    herm,
    is_nsd,
    is_pd,
    is_psd,
    ppart_ct,
)
from .config import DEFAULT, Config
from .errors import ImproperInput, MultiplicityTooHigh
from .poly import RationalScalar, cluster_roots, degree, roots
from .ratmat import RationalMatrix, rm_infinity_expansion, rm_is_symmetric, rm_poles, rm_residues_at
from .report import Condition, StrictnessLimits, finish_report
from .series import decay_condition, matrix_laurent_inf, matrix_taylor


def _is_boundary(p, tol):
    return abs(p.real) <= tol * (1.0 + abs(p))


def _split_poles(R, cfg):
    """Poles split into (open RHP, imaginary axis, open LHP)."""
    tol = cfg.root_cluster
    rhp, axis, lhp = [], [], []
    for p, mult in rm_poles(R, cfg):
        if _is_boundary(p, tol):
            axis.append((p, mult))
        elif p.real > 0:
            rhp.append((p, mult))
        else:
            lhp.append((p, mult))
    return rhp, axis, lhp


def _hermitian_enough(M, rel=1e-7):
    M = np.asarray(M)
    return np.linalg.norm(M - M.conj().T, 2) <= rel * (1.0 + np.linalg.norm(M, 2))


def _symmetry_condition(G, cfg):
    ok = rm_is_symmetric(G)
    return Condition("symmetry", ok, {} if ok else {"note": "G != G^T as rational identity"})


def _ni_inf_coeffs(G, nterms=8):
    """Coefficients N_k with i[G(iw)-G(iw)*] = sum N_k w^-k for large w."""
    W = defect_ct(G)
    cw = matrix_laurent_inf(W, nterms)
    return [np.real(herm((1j) ** (1 - k) * cw[k].astype(complex))) for k in range(nterms)], W


def _pr_inf_coeffs(F, nterms=8):
    H = ppart_ct(F)
    ch = matrix_laurent_inf(H, nterms)
    return [np.real(herm((1j) ** (-k) * ch[k].astype(complex))) for k in range(nterms)], H


# ---------------------------------------------------------------------------
# positive real


def classify_cpr(F: RationalMatrix, cfg: Config = DEFAULT):
    """Positive realness via the boundary characterization.

    Checks: no open-RHP poles; PSD Hermitian part on the imaginary axis;
    imaginary-axis poles simple with Hermitian PSD residue; pole at infinity
    at most simple with PSD coefficient.
    """
    conds = []
    pole_data = []
    rhp, axis, _ = _split_poles(F, cfg)
    conds.append(Condition("no-rhp-poles", not rhp, {"poles": rhp} if rhp else {}))

    H = ppart_ct(F)
    params = np.concatenate([[0.0], ct_grid(cfg)])
    worst, tworst, _n = grid_psd_scan(H, params, lambda t: 1j * t, 1.0, cfg)
    conds.append(Condition("boundary-psd", worst >= 0.0, {"worst_margin": worst, "omega": tworst}))

    axis_ok, axis_wit = True, {}
    for p, mult in axis:
        if p.imag < 0:
            continue
        if mult > 1:
            axis_ok, axis_wit = False, {"pole": p, "multiplicity": mult}
            break
        pd = rm_residues_at(F, p, cfg)
        pole_data.append(pd)
        K = pd.residue_A1
        if not (_hermitian_enough(K) and is_psd(K, cfg.psd_rel)):
            axis_ok, axis_wit = False, {"pole": p, "residue": K}
            break
    conds.append(Condition("imaginary-axis-poles", axis_ok, axis_wit))

    ix = rm_infinity_expansion(F, cfg)
    K_inf = None
    if ix.polynomial_degree == 0:
        conds.append(Condition("pole-at-infinity", True, {}))
    elif ix.polynomial_degree == 1:
        K_inf = ix.poly_coeffs[0]
        ok = _hermitian_enough(K_inf) and is_psd(K_inf, cfg.psd_rel)
        conds.append(Condition("pole-at-infinity", ok, {"K_inf": K_inf}))
    else:
        conds.append(Condition("pole-at-infinity", False, {"degree": ix.polynomial_degree}))

    limits = StrictnessLimits(K_inf=K_inf)
    return finish_report("cpr", conds, cfg, limits=limits, pole_data=pole_data)


def _strict_boundary_pr(F, cfg):
    """Conditions 1-2 shared by C-WSPR and C-SSPR."""
    if not F.is_proper():
        raise ImproperInput("strict PR classification requires a proper matrix")
    conds = []
    poles = rm_poles(F, cfg)
    hurwitz = all(p.real < -cfg.root_cluster * (1.0 + abs(p)) for p, _ in poles)
    conds.append(Condition("hurwitz-poles", hurwitz, {} if hurwitz else {"poles": poles}))

    H = ppart_ct(F)
    params = np.concatenate([[0.0], ct_grid(cfg)])
    worst, tworst, _n = grid_psd_scan(H, params, lambda t: 1j * t, 1.0, cfg)
    zeros, ident_zero = boundary_det_zeros(H, "ct_real_axis", cfg)
    ok = worst >= 0.0 and not zeros and not ident_zero
    conds.append(
        Condition(
            "strict-boundary-sign",
            ok,
            {"worst_margin": worst, "omega": tworst, "det_zeros": zeros, "identically_zero": ident_zero},
        )
    )
    return conds, H


def classify_cwspr(F: RationalMatrix, cfg: Config = DEFAULT):
    """Weak strict positive realness: Hurwitz poles and strict boundary sign."""
    conds, _H = _strict_boundary_pr(F, cfg)
    return finish_report("cwspr", conds, cfg)


def classify_csspr(F: RationalMatrix, cfg: Config = DEFAULT):
    """Strong strict positive realness.

    Adds the decay condition at infinity (the Hermitian part may vanish no
    faster than w**-2, all eigenvalue directions positive) and full normal
    rank of F(s) + F(-s)^T.
    """
    conds, H = _strict_boundary_pr(F, cfg)
    coeffs, _ = _pr_inf_coeffs(F)
    ok, margin, worst_order = decay_condition(coeffs, 2, 1e-11 * (1.0 + max(np.linalg.norm(c, 2) for c in coeffs)))
    wit = {"sigma0_margin": margin, "worst_order": worst_order}
    if not ok and worst_order > 2:
        wit["omega2_limit"] = 0.0
    conds.append(Condition("decay-at-infinity", ok, wit))

    zeros, ident_zero = boundary_det_zeros(H, "ct_real_axis", cfg)
    conds.append(Condition("full-normal-rank", not ident_zero, {"identically_zero": ident_zero}))
    _ = zeros
    limits = StrictnessLimits(sigma0_margin=margin)
    return finish_report("csspr", conds, cfg, limits=limits)


# ---------------------------------------------------------------------------
# negative imaginary


def classify_cni(G: RationalMatrix, cfg: Config = DEFAULT):
    """Negative imaginary classification via the five boundary conditions."""
    conds = []
    pole_data = []
    if cfg.require_symmetry:
        conds.append(_symmetry_condition(G, cfg))
    rhp, axis, _ = _split_poles(G, cfg)
    conds.append(Condition("no-rhp-poles", not rhp, {"poles": rhp} if rhp else {}))

    W = defect_ct(G)
    worst, tworst, _n = grid_psd_scan(W, ct_grid(cfg), lambda t: 1j * t, 1j, cfg)
    conds.append(Condition("boundary-sign", worst >= 0.0, {"worst_margin": worst, "omega": tworst}))

    tol = cfg.root_cluster
    axis_ok, axis_wit = True, {}
    origin_ok, origin_wit = True, {}
    for p, mult in axis:
        if p.imag < -tol * (1.0 + abs(p)):
            continue
        at_origin = abs(p) <= tol
        if at_origin:
            if mult > 2:
                origin_ok, origin_wit = False, {"multiplicity": mult}
                continue
            pd = rm_residues_at(G, 0.0, cfg)
            pole_data.append(pd)
            A1, A2 = pd.residue_A1, pd.quad_residue_A2
            if not (_hermitian_enough(A1) and is_psd(A1, cfg.psd_rel)
                    and _hermitian_enough(A2) and is_psd(A2, cfg.psd_rel)):
                origin_ok, origin_wit = False, {"A1": A1, "A2": A2}
            continue
        if mult > 1:
            axis_ok, axis_wit = False, {"pole": p, "multiplicity": mult}
            continue
        pd = rm_residues_at(G, p, cfg)
        pole_data.append(pd)
        K0 = pd.normalized_K0
        if not (_hermitian_enough(K0) and is_psd(K0, cfg.psd_rel)):
            axis_ok, axis_wit = False, {"pole": p, "K0": K0}
    conds.append(Condition("imaginary-axis-poles", axis_ok, axis_wit))
    conds.append(Condition("pole-at-origin", origin_ok, origin_wit))

    ix = rm_infinity_expansion(G, cfg)
    if ix.polynomial_degree == 0:
        conds.append(Condition("pole-at-infinity", True, {}))
    elif ix.polynomial_degree <= 2:
        ok = all(_hermitian_enough(A) and is_nsd(A, cfg.psd_rel) for A in ix.poly_coeffs)
        conds.append(Condition("pole-at-infinity", ok, {"coeffs": ix.poly_coeffs}))
    else:
        conds.append(Condition("pole-at-infinity", False, {"degree": ix.polynomial_degree}))
    return finish_report("cni", conds, cfg, pole_data=pole_data)


def _strict_boundary_ni(G, cfg):
    """Conditions (i)-(ii) shared by C-WSNI and C-SSNI."""
    if not G.is_proper():
        raise ImproperInput("strict NI classification requires a proper matrix")
    conds = []
    if cfg.require_symmetry:
        conds.append(_symmetry_condition(G, cfg))
    poles = rm_poles(G, cfg)
    hurwitz = all(p.real < -cfg.root_cluster * (1.0 + abs(p)) for p, _ in poles)
    conds.append(Condition("hurwitz-poles", hurwitz, {} if hurwitz else {"poles": poles}))

    W = defect_ct(G)
    worst, tworst, _n = grid_psd_scan(W, ct_grid(cfg), lambda t: 1j * t, 1j, cfg)
    zeros, ident_zero = boundary_det_zeros(W, "ct_open_upper", cfg)
    ok = worst >= 0.0 and not zeros and not ident_zero
    conds.append(
        Condition(
            "strict-boundary-sign",
            ok,
            {"worst_margin": worst, "omega": tworst, "det_zeros": zeros, "identically_zero": ident_zero},
        )
    )
    return conds, W


def classify_cwsni(G: RationalMatrix, cfg: Config = DEFAULT):
    """Weak strict negative imaginary: Hurwitz poles, strict defect on (0, inf)."""
    conds, _W = _strict_boundary_ni(G, cfg)
    return finish_report("cwsni", conds, cfg)


def classify_cssni(G: RationalMatrix, cfg: Config = DEFAULT):
    """Strong strict negative imaginary.

    Adds: defect decays no faster than w**-3 at infinity (sigma0 margin from
    the exact asymptotic expansion); Q = lim (1/w) i[G - G*] positive definite
    at the origin; full normal rank of the defect.
    """
    conds, W = _strict_boundary_ni(G, cfg)
    coeffs, _ = _ni_inf_coeffs(G)
    scale = 1.0 + max(np.linalg.norm(c, 2) for c in coeffs)
    ok, margin, worst_order = decay_condition(coeffs, 3, 1e-11 * scale)
    conds.append(Condition("decay-at-infinity", ok, {"sigma0_margin": margin, "worst_order": worst_order}))

    hurwitz = all(p.real < 0 for p, _ in rm_poles(G, cfg))
    Q = None
    if hurwitz:
        T = matrix_taylor(W, 0.0, 2)
        Q = -np.real(herm(T[1]))
        # the limit (1/w) i[G - G*] only exists when the defect vanishes at 0
        vanishes = np.linalg.norm(T[0], 2) <= 1e-7 * (1.0 + np.linalg.norm(Q, 2))
        ok_q = vanishes and is_pd(Q, cfg.strict_rel)
        conds.append(Condition("slope-at-origin", ok_q, {"Q": Q}))
    else:
        conds.append(Condition("slope-at-origin", False, {"note": "boundary pole prevents the limit"}))

    _zeros, ident_zero = boundary_det_zeros(W, "ct_open_upper", cfg)
    conds.append(Condition("full-normal-rank", not ident_zero, {"identically_zero": ident_zero}))
    limits = StrictnessLimits(Q=Q, sigma0_margin=margin)
    return finish_report("cssni", conds, cfg, limits=limits)


# ---------------------------------------------------------------------------
# scalar structure validators


def scalar_ni_structure_checks(g: RationalScalar, cfg: Config = DEFAULT):
    """Structural facts a scalar NI candidate must satisfy.

    Reports the relative degree, the zeros, and the multiplicity of any zero
    at the origin; flags violations of the necessary conditions for strictly
    proper NI (relative degree <= 2, closed-LHP zeros) and for strict-NI
    candidacy with g(0) = 0 (simple origin zero).
    """
    rel_deg = g.relative_degree()
    zs = list(roots(g.num))
    origin_mult = 0
    for z0, m in cluster_roots(np.asarray(zs), tol=cfg.root_cluster):
        if abs(z0) <= cfg.root_cluster:
            origin_mult = m
    rhp_zeros = [z for z in zs if z.real > cfg.root_cluster * (1.0 + abs(z))]
    return {
        "relative_degree": rel_deg,
        "zeros": zs,
        "origin_zero_multiplicity": origin_mult,
        "ni_candidate": (degree(g.num) < 0) or (rel_deg <= 2 and not rhp_zeros) or not g.is_strictly_proper(),
        "ssni_candidate_origin": origin_mult <= 1,
    }
