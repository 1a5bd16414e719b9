"""Exact computation in BS(1,q) and a Stallings-type group: geodesics,
Cayley balls, almost-convexity scans, and verified path constructions."""

from .ball_engine import BallIndex, bridge_length, build_ball, distance
from .bs_arith import BsElement, BsGroupModel, BsParams, bs_eval, bs_inv, bs_key, bs_mul
from .bs_geodesics import (
    GeodesicNormalForm,
    NotGeodesicError,
    XBlock,
    geodesic_length,
    has_pinch,
    is_geodesic,
    normalize,
    tilde,
)
from .convexity_scan import ProbeResult, ScanReport, ScanRow, scan, sublinearity_probe, write_csv
from .stallings import (
    RELATORS,
    StallingsElement,
    StallingsModel,
    gamma_length_special,
    in_H,
    lambda_length,
    st_eval,
    st_inv,
    st_mul,
    verify_stallings_witness,
)
from .witness_lab import (
    CONSTRUCTIVE_CASES,
    IMPOSSIBLE_CASES,
    CaseWitness,
    ConstructionError,
    SectionFourWitness,
    build_case,
    impossibility_search,
    random_filler,
    section_four_witness,
    verify_boundingm,
    verify_bs1q_notmac,
    verify_case,
    verify_notpac,
)
from .words import Word, WordClass, classify, exp_sum, free_reduce, parse_word, sigma_t

__all__ = [
    "BallIndex",
    "BsElement",
    "BsGroupModel",
    "BsParams",
    "CONSTRUCTIVE_CASES",
    "CaseWitness",
    "ConstructionError",
    "GeodesicNormalForm",
    "IMPOSSIBLE_CASES",
    "NotGeodesicError",
    "ProbeResult",
    "RELATORS",
    "ScanReport",
    "ScanRow",
    "SectionFourWitness",
    "StallingsElement",
    "StallingsModel",
    "Word",
    "WordClass",
    "XBlock",
    "bridge_length",
    "bs_eval",
    "bs_inv",
    "bs_key",
    "bs_mul",
    "build_ball",
    "build_case",
    "classify",
    "distance",
    "exp_sum",
    "free_reduce",
    "gamma_length_special",
    "geodesic_length",
    "has_pinch",
    "impossibility_search",
    "in_H",
    "is_geodesic",
    "lambda_length",
    "normalize",
    "parse_word",
    "random_filler",
    "scan",
    "section_four_witness",
    "sigma_t",
    "st_eval",
    "st_inv",
    "st_mul",
    "sublinearity_probe",
    "tilde",
    "write_csv",
    "verify_boundingm",
    "verify_bs1q_notmac",
    "verify_case",
    "verify_notpac",
    "verify_stallings_witness",
]
