"""Classification of positive-real and negative-imaginary rational transfer
matrices, with state-space certificates and feedback stability analysis."""

from .config import Config, DEFAULT
from .errors import (
    AsymmetricD,
    AsymmetricOffset,
    CancellationFailure,
    DegenerateMap,
    EigenvalueAtMinusOne,
    EigenvalueAtPlusOne,
    EpsilonSearchFailed,
    IllPosed,
    ImproperInput,
    MultiplicityTooHigh,
    NiprError,
    NonMinimalRealization,
    PoleAtMinusOne,
    PoleAtPlusMinusOne,
    PoleProximity,
    PreconditionViolated,
    RootFindingFailure,
)
from .poly import RationalScalar
from .ratmat import (
    CT,
    DT,
    InfinityExpansion,
    PoleDatum,
    RationalMatrix,
    rm_cayley,
    rm_eval,
    rm_eval_many,
    rm_full_normal_rank,
    rm_infinity_expansion,
    rm_is_symmetric,
    rm_mobius,
    rm_poles,
    rm_residues_at,
)
from .realization import StateSpace, cayley_ss, is_minimal, minimal_realization, spectrum, tf_of
from .report import CircleLimits, ClassificationReport, Condition, StrictnessLimits
from .analysis_ct import (
    classify_cni,
    classify_cpr,
    classify_cssni,
    classify_csspr,
    classify_cwsni,
    classify_cwspr,
    scalar_ni_structure_checks,
)
from .analysis_dt import (
    circle_limits,
    classify_dni,
    classify_dpr,
    classify_dssni,
    classify_dsspr,
    classify_dwsni,
    gain_order_check,
)
from .transforms import (
    csspr_to_cssni,
    cssni_to_csspr,
    ct_ni_to_pr,
    ct_pr_to_ni,
    dt_ni_to_pr,
    dt_ni_to_pr_ss,
    dt_pr_to_ni,
)
from .nilemma import (
    FEASIBLE,
    FeasibilityCertificate,
    INCONCLUSIVE,
    INFEASIBLE,
    dni_lemma_check,
    dpr_lemma_check,
    dual_dni_lemma_check,
)
from .interconnect import (
    InterconnectResult,
    PartitionedSystem,
    internal_stability,
    ni_stability_test,
    redheffer_star,
    star_class_preservation,
)
from .docio import document_of, load_document, parse_document, save_document

__version__ = "0.1.0"
