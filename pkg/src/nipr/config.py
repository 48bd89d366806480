"""Tolerance and grid configuration shared by all classifiers.

Every verdict-producing function accepts an optional ``Config``; reports embed
the effective configuration so that verdicts are reproducible.
"""

from dataclasses import dataclass, asdict, replace


@dataclass(frozen=True)
class Config:
    # polynomial / rational arithmetic
    root_cluster: float = 1e-7      # roots merge when |r1-r2| <= root_cluster*(1+|r|)
    gcd_rel: float = 1e-10          # relative cutoff in approximate GCD reduction
    coeff_rel: float = 1e-9         # coefficient comparisons after normalization
    pole_proximity: float = 1e-9    # |den(p)| below this (relative) means "at a pole"

    # cone checks
    psd_rel: float = 1e-8           # non-strict: lambda_min >= -psd_rel*(1+||M||)
    strict_rel: float = 1e-9        # strict: lambda_min >= strict_rel*||M|| and ||M|| > 0

    # rank decisions
    rank_rel: float = 1e-8

    # frequency grids
    grid_points_ct: int = 2000      # log grid on [omega_min, omega_max]
    grid_points_dt: int = 4096      # uniform on the relevant arc
    omega_min: float = 1e-6
    omega_max: float = 1e6
    refine_rounds: int = 30         # bisection refinement around eigenvalue dips

    # classification policy
    require_symmetry: bool = True   # enforce symmetric transfer matrices for NI

    def with_overrides(self, **kw) -> "Config":
        return replace(self, **kw)

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT = Config()
