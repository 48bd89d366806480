"""Square rational transfer-function matrices and their pole/residue data."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT, Config
from .errors import MultiplicityTooHigh, PoleProximity
from .poly import (
    RationalScalar,
    cluster_roots,
    deflate,
    degree,
    polydivmod,
    polyval,
    roots,
    trim,
)

CT = "ct"
DT = "dt"


@dataclass
class PoleDatum:
    """Laurent data of a matrix pole of multiplicity <= 2.

    ``normalized_K0`` uses the domain convention: i*A1 for continuous-time
    boundary poles, (i/p)*A1 for discrete-time unit-circle poles.
    """

    location: complex
    multiplicity: int
    residue_A1: np.ndarray
    quad_residue_A2: np.ndarray
    normalized_K0: np.ndarray


@dataclass
class InfinityExpansion:
    """G = proper_part + sum_i poly_coeffs[i-1] * s**i."""

    poly_coeffs: list  # list of real m x m arrays, index k holds A_{k+1}
    proper_part: "RationalMatrix"

    @property
    def polynomial_degree(self) -> int:
        return len(self.poly_coeffs)


class RationalMatrix:
    """m x m grid of reduced rational scalars with a CT/DT domain tag."""

    def __init__(self, entries, domain):
        if domain not in (CT, DT):
            raise ValueError(f"unknown domain tag {domain!r}")
        m = len(entries)
        for row in entries:
            if len(row) != m:
                raise ValueError("rational matrix must be square")
        self.entries = [
            [e if isinstance(e, RationalScalar) else RationalScalar.constant(e) for e in row]
            for row in entries
        ]
        self.domain = domain

    # ------------------------------------------------------------------
    @property
    def size(self) -> int:
        return len(self.entries)

    @staticmethod
    def from_scalar(r: RationalScalar, domain) -> "RationalMatrix":
        return RationalMatrix([[r]], domain)

    @staticmethod
    def constant(M, domain) -> "RationalMatrix":
        M = np.atleast_2d(np.asarray(M, dtype=float))
        return RationalMatrix(
            [[RationalScalar.constant(M[i, j]) for j in range(M.shape[1])] for i in range(M.shape[0])],
            domain,
        )

    @staticmethod
    def identity(m, domain) -> "RationalMatrix":
        return RationalMatrix.constant(np.eye(m), domain)

    def transpose(self) -> "RationalMatrix":
        m = self.size
        return RationalMatrix([[self.entries[j][i] for j in range(m)] for i in range(m)], self.domain)

    def __add__(self, other):
        other = self._coerce(other)
        m = self.size
        return RationalMatrix(
            [[self.entries[i][j] + other.entries[i][j] for j in range(m)] for i in range(m)],
            self.domain,
        )

    def __sub__(self, other):
        other = self._coerce(other)
        m = self.size
        return RationalMatrix(
            [[self.entries[i][j] - other.entries[i][j] for j in range(m)] for i in range(m)],
            self.domain,
        )

    def __neg__(self):
        return RationalMatrix([[-e for e in row] for row in self.entries], self.domain)

    def __matmul__(self, other):
        other = self._coerce(other)
        m = self.size
        out = []
        for i in range(m):
            row = []
            for j in range(m):
                acc = RationalScalar.zero()
                for k in range(m):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return RationalMatrix(out, self.domain)

    def scalar_mul(self, r) -> "RationalMatrix":
        r = r if isinstance(r, RationalScalar) else RationalScalar.constant(r)
        return RationalMatrix([[r * e for e in row] for row in self.entries], self.domain)

    def _coerce(self, other) -> "RationalMatrix":
        if isinstance(other, RationalMatrix):
            if other.size != self.size:
                raise ValueError("size mismatch")
            return other
        return RationalMatrix.constant(np.asarray(other), self.domain)

    # ------------------------------------------------------------------
    def is_proper(self) -> bool:
        return all(e.is_proper() for row in self.entries for e in row)

    def value_at_inf(self) -> np.ndarray:
        m = self.size
        return np.array([[self.entries[i][j].value_at_inf() for j in range(m)] for i in range(m)])

    def coeff_scale(self) -> float:
        return max(e.scale() for row in self.entries for e in row)

    def equals(self, other, rel=1e-7) -> bool:
        other = self._coerce(other)
        m = self.size
        return all(
            self.entries[i][j].equals(other.entries[i][j], rel=rel) for i in range(m) for j in range(m)
        )

    def __repr__(self):
        return f"RationalMatrix({self.size}x{self.size}, domain={self.domain})"


# ---------------------------------------------------------------------------
# operations


def rm_eval(R: RationalMatrix, p, cfg: Config = DEFAULT) -> np.ndarray:
    """Evaluate R at a point; raises PoleProximity near entry poles."""
    m = R.size
    out = np.zeros((m, m), dtype=complex)
    for i in range(m):
        for j in range(m):
            e = R.entries[i][j]
            dv = polyval(e.den, p)
            scale = float(np.max(np.abs(e.den))) * max(1.0, abs(p)) ** max(e.den_degree, 0)
            if abs(dv) <= cfg.pole_proximity * scale:
                raise PoleProximity(f"evaluation at {p} is too close to a pole of entry ({i},{j})")
            out[i, j] = polyval(e.num, p) / dv
    return out


def rm_eval_many(R: RationalMatrix, points, cfg: Config = DEFAULT):
    """Vectorized evaluation: returns (values, ok_mask).

    values has shape (npts, m, m); pole-proximate points are flagged False in
    ok_mask instead of raising.
    """
    points = np.asarray(points, dtype=complex)
    m = R.size
    vals = np.zeros((points.size, m, m), dtype=complex)
    ok = np.ones(points.size, dtype=bool)
    for i in range(m):
        for j in range(m):
            e = R.entries[i][j]
            dv = polyval(e.den, points)
            scale = float(np.max(np.abs(e.den))) * np.maximum(1.0, np.abs(points)) ** max(e.den_degree, 0)
            bad = np.abs(dv) <= cfg.pole_proximity * scale
            ok &= ~bad
            safe = np.where(bad, 1.0, dv)
            vals[:, i, j] = polyval(e.num, points) / safe
    return vals, ok


def rm_poles(R: RationalMatrix, cfg: Config = DEFAULT):
    """Union of entry poles with matrix multiplicity = max entry multiplicity."""
    found = []  # list of [location, mult]
    for row in R.entries:
        for e in row:
            for loc, mult in cluster_roots(roots(e.den), tol=cfg.root_cluster):
                hit = None
                for item in found:
                    if abs(item[0] - loc) <= cfg.root_cluster * (1.0 + abs(loc)):
                        hit = item
                        break
                if hit is None:
                    found.append([loc, mult])
                else:
                    hit[1] = max(hit[1], mult)
    # exact conjugate pairing
    for item in found:
        loc = item[0]
        if loc.imag > 0:
            for other in found:
                if other is item:
                    continue
                if abs(np.conj(loc) - other[0]) <= cfg.root_cluster * (1.0 + abs(loc)):
                    mid = 0.5 * (loc + np.conj(other[0]))
                    item[0] = mid
                    other[0] = np.conj(mid)
    return sorted(((complex(l), int(m)) for l, m in found), key=lambda t: (abs(t[0]), t[0].real, t[0].imag))


def _entry_multiplicity(e: RationalScalar, p, cfg: Config) -> int:
    mult = 0
    for loc, m in cluster_roots(roots(e.den), tol=cfg.root_cluster):
        if abs(loc - p) <= cfg.root_cluster * (1.0 + abs(p)):
            mult = m
    return mult


def rm_residues_at(R: RationalMatrix, p, cfg: Config = DEFAULT) -> PoleDatum:
    """Matrix residue data at a pole of multiplicity <= 2, by deflation."""
    p = complex(p)
    m = R.size
    mult = 0
    for loc, k in rm_poles(R, cfg):
        if abs(loc - p) <= cfg.root_cluster * (1.0 + abs(p)):
            mult = k
            p = loc  # snap to the clustered location
    if mult == 0:
        raise ValueError(f"{p} is not a pole of the matrix")
    if mult > 2:
        raise MultiplicityTooHigh(f"pole at {p} has multiplicity {mult}")
    A1 = np.zeros((m, m), dtype=complex)
    A2 = np.zeros((m, m), dtype=complex)
    for i in range(m):
        for j in range(m):
            e = R.entries[i][j]
            k = _entry_multiplicity(e, p, cfg)
            if k == 0:
                continue
            q = np.asarray(e.den, dtype=complex)
            for _ in range(k):
                q = deflate(q, p)
            nv = polyval(np.asarray(e.num, dtype=complex), p)
            qv = polyval(q, p)
            if k == 1:
                A1[i, j] = nv / qv
            else:
                A2[i, j] = nv / qv
                ndv = polyval(np.polynomial.polynomial.polyder(np.asarray(e.num, dtype=complex)), p)
                qdv = polyval(np.polynomial.polynomial.polyder(q), p)
                A1[i, j] = (ndv * qv - nv * qdv) / (qv * qv)
    if R.domain == CT:
        K0 = 1j * A1
    else:
        K0 = (1j / p) * A1 if p != 0 else 1j * A1
    return PoleDatum(p, mult, A1, A2, K0)


def rm_infinity_expansion(R: RationalMatrix, cfg: Config = DEFAULT) -> InfinityExpansion:
    """Split off the polynomial part at infinity (constant term stays proper)."""
    m = R.size
    k = 0
    quot = [[np.zeros(1) for _ in range(m)] for _ in range(m)]
    proper = [[None] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            e = R.entries[i][j]
            if e.num_degree > e.den_degree:
                q, r = polydivmod(e.num, e.den)
                quot[i][j] = q
                k = max(k, degree(q))
                const = q[0] if q.size else 0.0
                proper[i][j] = RationalScalar(r, e.den) + RationalScalar.constant(const)
            else:
                proper[i][j] = e
    coeffs = []
    for d in range(1, k + 1):
        A = np.zeros((m, m))
        for i in range(m):
            for j in range(m):
                q = quot[i][j]
                if degree(q) >= d:
                    A[i, j] = q[d]
        coeffs.append(A)
    return InfinityExpansion(coeffs, RationalMatrix(proper, R.domain))


def rm_mobius(R: RationalMatrix, a, b, c, d, flip_domain=False) -> RationalMatrix:
    """Entrywise composition with w -> (a*w + b)/(c*w + d)."""
    new_domain = R.domain
    if flip_domain:
        new_domain = DT if R.domain == CT else CT
    return RationalMatrix(
        [[e.substitute_mobius(a, b, c, d) for e in row] for row in R.entries], new_domain
    )


def rm_cayley(R: RationalMatrix) -> RationalMatrix:
    """Bilinear domain swap.

    DT -> CT substitutes z = (1+s)/(1-s); CT -> DT substitutes s = (z-1)/(z+1).
    The two maps are mutual inverses, so applying this twice is the identity.
    """
    if R.domain == DT:
        return rm_mobius(R, 1.0, 1.0, -1.0, 1.0, flip_domain=True)
    return rm_mobius(R, 1.0, -1.0, 1.0, 1.0, flip_domain=True)


def rm_is_symmetric(R: RationalMatrix, rel=DEFAULT.coeff_rel) -> bool:
    m = R.size
    scale = max(1.0, R.coeff_scale())
    for i in range(m):
        for j in range(i + 1, m):
            if not R.entries[i][j].equals(R.entries[j][i], rel=rel * scale):
                return False
    return True


def hermitian_defect(R: RationalMatrix, p, cfg: Config = DEFAULT) -> float:
    """||M - M*|| of the evaluated matrix at p."""
    M = rm_eval(R, p, cfg)
    return float(np.linalg.norm(M - M.conj().T, 2))


def _det_rational(R: RationalMatrix) -> RationalScalar:
    m = R.size
    if m == 1:
        return R.entries[0][0]
    det = RationalScalar.zero()
    for j in range(m):
        minor = [
            [R.entries[i][k] for k in range(m) if k != j] for i in range(1, m)
        ]
        sub = _det_rational(RationalMatrix(minor, R.domain))
        term = R.entries[0][j] * sub
        det = det + term if j % 2 == 0 else det - term
    return det


def rm_full_normal_rank(M: RationalMatrix, cfg: Config = DEFAULT) -> bool:
    """True iff det M is not identically zero.

    Fast path: random evaluations clearly away from zero.  Slow path: the
    symbolic determinant, declared zero only when its numerator vanishes and
    random evaluations confirm.
    """
    m = M.size
    rng = np.random.default_rng(20240817)
    scale = max(M.coeff_scale(), 1.0)
    for _ in range(6):
        p = complex(rng.uniform(0.5, 3.0), rng.uniform(0.5, 3.0))
        try:
            val = rm_eval(M, p, cfg)
        except PoleProximity:
            continue
        if abs(np.linalg.det(val)) > 1e-6:
            return True
    det = _det_rational(M)
    if det.is_zero(rel=1e-8 * scale):
        return False
    # confirm by sampling: guards against accidental coefficient survival
    hits = 0
    tries = 0
    for _ in range(40):
        p = complex(rng.uniform(-4.0, 4.0), rng.uniform(0.2, 4.0))
        dv = polyval(det.den, p)
        if abs(dv) < 1e-12:
            continue
        tries += 1
        if abs(polyval(det.num, p) / dv) > 1e-10:
            hits += 1
    return hits > 0 if tries else True
