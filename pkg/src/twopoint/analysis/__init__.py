from twopoint.analysis.potential import (
    PotentialCheck,
    check_potential,
    extract,
    extract_metric,
    extract_pair,
    extract_rank4,
    extract_skewness,
    sign_table,
)
from twopoint.analysis.report import CheckResult, ExtractionReport
from twopoint.analysis.signs import METRIC_SIGNS, Q1_TERMS, Q2_TERMS, SKEWNESS_SIGNS

__all__ = (
    "CheckResult",
    "ExtractionReport",
    "PotentialCheck",
    "check_potential",
    "extract",
    "extract_metric",
    "extract_pair",
    "extract_rank4",
    "extract_skewness",
    "sign_table",
    "METRIC_SIGNS",
    "SKEWNESS_SIGNS",
    "Q1_TERMS",
    "Q2_TERMS",
)
