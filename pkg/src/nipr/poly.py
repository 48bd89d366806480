"""Floating-point polynomials and reduced rational scalars.

Coefficients are stored in ascending degree order as numpy arrays.  Public
rational scalars keep real coefficients; internal helpers accept complex
arrays (deflation at complex poles).  Reduction of a rational scalar cancels
matched numerator/denominator roots within the documented clustering
tolerance and leaves the denominator monic.
"""

from __future__ import annotations

import numpy as np
import numpy.polynomial.polynomial as npp

from .config import DEFAULT, Config
from .errors import DegenerateMap, RootFindingFailure


# ---------------------------------------------------------------------------
# raw coefficient helpers


def trim(c, rel=0.0):
    """Drop trailing (leading-degree) coefficients that are zero.

    With rel > 0 coefficients below rel*max|c| count as zero.
    """
    c = np.atleast_1d(np.asarray(c))
    if c.size == 0:
        return np.zeros(1, dtype=c.dtype if c.dtype.kind == "c" else float)
    scale = np.max(np.abs(c))
    if scale == 0.0:
        return np.zeros(1, dtype=float)
    cut = rel * scale
    k = c.size
    while k > 1 and abs(c[k - 1]) <= cut:
        k -= 1
    return np.array(c[:k])


def degree(c) -> int:
    c = trim(c)
    if c.size == 1 and c[0] == 0:
        return -1  # the zero polynomial
    return c.size - 1


def polyval(c, x):
    return npp.polyval(x, np.asarray(c))


def polymul(a, b):
    return npp.polymul(np.asarray(a), np.asarray(b))


def polyadd(a, b):
    return npp.polyadd(np.asarray(a), np.asarray(b))


def polysub(a, b):
    return npp.polysub(np.asarray(a), np.asarray(b))


def polyder(c):
    return npp.polyder(np.asarray(c))


def polydivmod(n, d):
    """Quotient and remainder of n/d (ascending coefficients)."""
    n = trim(n)
    d = trim(d)
    if degree(d) < 0:
        raise ZeroDivisionError("division by the zero polynomial")
    if degree(n) < degree(d):
        return np.zeros(1), n
    q, r = npp.polydiv(n, d)
    return trim(q), trim(r, rel=1e-13)


def roots(c):
    """Roots via the companion-matrix eigensolve (ascending input)."""
    c = trim(c)
    if degree(c) <= 0:
        return np.zeros(0, dtype=complex)
    try:
        r = np.roots(c[::-1])
    except np.linalg.LinAlgError as exc:  # pragma: no cover - rare
        raise RootFindingFailure(str(exc)) from exc
    return np.asarray(r, dtype=complex)


def cluster_roots(rts, tol=DEFAULT.root_cluster):
    """Merge nearby roots into (location, multiplicity) pairs.

    Conjugate pairs are symmetrized so they come out exactly conjugate, and
    near-real roots are snapped onto the real axis.
    """
    rts = np.asarray(rts, dtype=complex)
    out = []
    used = np.zeros(rts.size, dtype=bool)
    order = np.argsort(np.abs(rts))
    for i in order:
        if used[i]:
            continue
        group = [i]
        used[i] = True
        for j in order:
            if used[j]:
                continue
            if abs(rts[j] - rts[i]) <= tol * (1.0 + abs(rts[i])):
                group.append(j)
                used[j] = True
        loc = np.mean(rts[group])
        out.append([loc, len(group)])
    # a multiplicity-m root scatters by ~eps**(1/m) under rounding, which for
    # m >= 3 exceeds tol.  Merge connected groups of clusters that fall within
    # the scatter radius of a root of their combined multiplicity, but only
    # when that combined multiplicity is at least 3: an isolated close pair is
    # either genuinely distinct or a double root, and doubles stay within tol.
    changed = True
    while changed:
        changed = False
        for i in range(len(out)):
            group = [i]
            total = out[i][1]
            for j in range(len(out)):
                if j == i or j in group:
                    continue
                radius = max(tol, 1e-13 ** (1.0 / max(3, total + out[j][1])))
                if any(abs(out[j][0] - out[g][0]) <= radius * (1.0 + abs(out[j][0])) for g in group):
                    group.append(j)
                    total += out[j][1]
            if len(group) > 1 and total >= 3:
                loc = sum(out[g][1] * out[g][0] for g in group) / total
                out = [c for g, c in enumerate(out) if g not in group]
                out.append([loc, total])
                changed = True
                break
    # snap near-real roots
    for item in out:
        loc = item[0]
        if abs(loc.imag) <= tol * (1.0 + abs(loc)):
            item[0] = complex(loc.real, 0.0)
    # symmetrize conjugate pairs
    done = [False] * len(out)
    for i, (loc, mult) in enumerate(out):
        if done[i] or loc.imag == 0.0:
            continue
        for j, (loc2, mult2) in enumerate(out):
            if j == i or done[j]:
                continue
            if abs(np.conj(loc) - loc2) <= tol * (1.0 + abs(loc)) and mult2 == mult:
                mid = 0.5 * (loc + np.conj(loc2))
                out[i][0] = mid
                out[j][0] = np.conj(mid)
                done[i] = done[j] = True
                break
    return [(complex(l), int(m)) for l, m in out]


def poly_from_roots_real(rts, lead=1.0):
    """Real polynomial with the given roots; conjugate pairs give quadratics."""
    rts = list(np.asarray(rts, dtype=complex))
    c = np.array([float(np.real(lead))])
    remaining = rts[:]
    while remaining:
        r = remaining.pop(0)
        if abs(r.imag) <= 1e-9 * (1.0 + abs(r)):
            c = polymul(c, np.array([-r.real, 1.0]))
            continue
        # find the conjugate partner; an unmatched near-real root falls back
        # to its real part instead of stealing an unrelated root
        best, bestd = None, np.inf
        for k, q in enumerate(remaining):
            d = abs(np.conj(r) - q)
            if d < bestd:
                best, bestd = k, d
        if best is None or bestd > 1e-6 * (1.0 + abs(r)):
            c = polymul(c, np.array([-r.real, 1.0]))
            continue
        remaining.pop(best)
        c = polymul(c, np.array([abs(r) ** 2, -2.0 * r.real, 1.0]))
    return np.real_if_close(c).astype(float)


def poly_from_roots(rts, lead=1.0):
    c = np.array([lead], dtype=complex)
    for r in np.asarray(rts, dtype=complex):
        c = polymul(c, np.array([-r, 1.0]))
    return c


def _synth_div(c, p):
    """Synthetic division of c by (x - p): returns (quotient, remainder)."""
    c = np.asarray(c, dtype=complex)
    n = c.size
    if n == 1:
        return np.zeros(0, dtype=complex), complex(c[0])
    q = np.zeros(n - 1, dtype=complex)
    acc = c[n - 1]
    for j in range(n - 2, -1, -1):
        q[j] = acc
        acc = c[j] + acc * p
    return q, complex(acc)


def deflate(c, r):
    """Divide c by (x - r), dropping the remainder."""
    q, _ = _synth_div(c, r)
    return q


def shift_poly(c, p):
    """Coefficients of c(p + x) in powers of x (Taylor recentering)."""
    c = np.asarray(c, dtype=complex)
    out = np.zeros(c.size, dtype=complex)
    work = c.copy()
    for k in range(c.size):
        work, rem = _synth_div(work, p)
        out[k] = rem
        if work.size == 0:
            break
    return out


# ---------------------------------------------------------------------------
# rational scalars


class RationalScalar:
    """A reduced real-coefficient rational function num/den with monic den."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1.0,), reduce=True, cfg: Config = DEFAULT):
        num = trim(np.asarray(num, dtype=float))
        den = trim(np.asarray(den, dtype=float))
        if degree(den) < 0:
            raise ZeroDivisionError("denominator is identically zero")
        if reduce:
            num, den = _reduce(num, den, cfg)
        lead = den[-1]
        self.num = num / lead
        self.den = den / lead

    # construction helpers -------------------------------------------------
    @staticmethod
    def constant(c) -> "RationalScalar":
        return RationalScalar([float(c)], [1.0], reduce=False)

    @staticmethod
    def zero() -> "RationalScalar":
        return RationalScalar.constant(0.0)

    # queries --------------------------------------------------------------
    def is_zero(self, rel=DEFAULT.coeff_rel) -> bool:
        scale = max(1.0, float(np.max(np.abs(self.den))))
        return bool(np.max(np.abs(self.num)) <= rel * scale)

    @property
    def num_degree(self) -> int:
        return degree(self.num)

    @property
    def den_degree(self) -> int:
        return degree(self.den)

    def is_proper(self) -> bool:
        return self.num_degree <= self.den_degree

    def is_strictly_proper(self) -> bool:
        return self.num_degree < self.den_degree

    def relative_degree(self) -> int:
        return self.den_degree - self.num_degree

    def value_at_inf(self) -> float:
        """Limit at infinity; requires properness."""
        if self.num_degree < self.den_degree:
            return 0.0
        if self.num_degree == self.den_degree:
            return float(self.num[-1] / self.den[-1])
        raise ValueError("not proper; no finite value at infinity")

    def __call__(self, x):
        return polyval(self.num, x) / polyval(self.den, x)

    def scale(self) -> float:
        return float(max(np.max(np.abs(self.num)), np.max(np.abs(self.den))))

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        num = polyadd(polymul(self.num, other.den), polymul(other.num, self.den))
        return RationalScalar(num, polymul(self.den, other.den))

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return RationalScalar(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self.__add__(-_coerce(other))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = _coerce(other)
        return RationalScalar(polymul(self.num, other.num), polymul(self.den, other.den))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        other = _coerce(other)
        return RationalScalar(polymul(self.num, other.den), polymul(self.den, other.num))

    def __rtruediv__(self, other):
        return _coerce(other).__truediv__(self)

    def derivative(self) -> "RationalScalar":
        num = polysub(polymul(polyder(self.num), self.den), polymul(self.num, polyder(self.den)))
        return RationalScalar(num, polymul(self.den, self.den))

    def equals(self, other, rel=1e-7) -> bool:
        """Rational identity check: self - other == 0 within tolerance."""
        diff = self - _coerce(other)
        scale = max(self.scale(), _coerce(other).scale(), 1.0)
        return bool(np.max(np.abs(diff.num)) <= rel * scale * max(1.0, np.max(np.abs(diff.den))))

    def substitute_mobius(self, a, b, c, d) -> "RationalScalar":
        """Compose with w -> (a*w + b)/(c*w + d) and clear denominators."""
        if abs(a * d - b * c) <= 1e-12 * (1.0 + abs(a * d) + abs(b * c)):
            raise DegenerateMap(f"ad - bc ~ 0 for map ({a},{b},{c},{d})")
        up = np.array([b, a], dtype=float)     # a*w + b
        dn = np.array([d, c], dtype=float)     # c*w + d
        n_deg, d_deg = degree(self.num), degree(self.den)
        big = max(n_deg, d_deg)
        pw_up = [np.array([1.0])]
        pw_dn = [np.array([1.0])]
        for _ in range(big):
            pw_up.append(polymul(pw_up[-1], up))
            pw_dn.append(polymul(pw_dn[-1], dn))
        new_num = np.zeros(1)
        for k in range(n_deg + 1):
            new_num = polyadd(new_num, self.num[k] * polymul(pw_up[k], pw_dn[big - k]))
        new_den = np.zeros(1)
        for k in range(d_deg + 1):
            new_den = polyadd(new_den, self.den[k] * polymul(pw_up[k], pw_dn[big - k]))
        return RationalScalar(new_num, new_den)

    def taylor(self, p, nterms) -> np.ndarray:
        """Taylor coefficients of self at p (p must not be a pole)."""
        n = shift_poly(self.num, p)
        d = shift_poly(self.den, p)
        return _series_div(n, d, nterms)

    def laurent_at_inf(self, nterms) -> np.ndarray:
        """Coefficients c_k of sum_k c_k x^-k, k = 0..nterms-1 (proper input)."""
        if not self.is_proper():
            raise ValueError("laurent_at_inf requires a proper rational")
        dd = degree(self.den)
        # num(1/t) * t^dd and den(1/t) * t^dd are the zero-padded reversals
        num_pad = np.zeros(dd + 1)
        num_pad[: self.num.size] = self.num
        rnum = num_pad[::-1]
        rden = self.den[::-1]
        return np.real(_series_div(rnum.astype(complex), rden.astype(complex), nterms))

    def __repr__(self):
        return f"RationalScalar(num={list(self.num)}, den={list(self.den)})"


def _coerce(x) -> RationalScalar:
    if isinstance(x, RationalScalar):
        return x
    if np.isscalar(x):
        return RationalScalar.constant(float(x))
    raise TypeError(f"cannot coerce {type(x)!r} to RationalScalar")


def _series_div(n, d, nterms):
    """Power-series coefficients of n/d up to nterms (d[0] != 0)."""
    n = np.asarray(n, dtype=complex)
    d = np.asarray(d, dtype=complex)
    if abs(d[0]) == 0.0:
        raise ZeroDivisionError("series division at a pole")
    out = np.zeros(nterms, dtype=complex)
    for k in range(nterms):
        acc = n[k] if k < n.size else 0.0
        for j in range(1, min(k, d.size - 1) + 1):
            acc -= d[j] * out[k - j]
        out[k] = acc / d[0]
    return out


def _reduce(num, den, cfg: Config):
    """Cancel matched numerator/denominator roots (float-safe GCD)."""
    if degree(num) < 0:
        return np.zeros(1), np.ones(1)
    if degree(num) == 0 or degree(den) == 0:
        return num, den
    rn = list(roots(num))
    rd = list(roots(den))
    keep_n, cancelled = [], 0
    for r in rn:
        hit = None
        for k, q in enumerate(rd):
            if abs(r - q) <= cfg.root_cluster * (1.0 + abs(q)):
                hit = k
                break
        if hit is None:
            keep_n.append(r)
        else:
            rd.pop(hit)
            cancelled += 1
    if cancelled == 0:
        return num, den
    new_num = poly_from_roots_real(keep_n, lead=num[-1])
    new_den = poly_from_roots_real(rd, lead=den[-1])
    return new_num, new_den
