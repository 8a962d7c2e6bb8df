"""Term generation and property suites."""

from bangcalc.props.generate import GenSpec, count_terms, gen_terms
from bangcalc.props.report import CheckReport, Failure
from bangcalc.props.suites import SUITES, factorization_witness, run_suite

__all__ = ["SUITES", "CheckReport", "Failure", "GenSpec", "count_terms", "factorization_witness", "gen_terms", "run_suite"]
