"""Exact knot invariants and a sound partial decision procedure for the
1-domination partial order on knots."""

from .alexander import (
    alexander_polynomial,
    connected_sum_delta,
    determinant_invariant,
    jones_polynomial,
    satellite_delta,
)
from .diagram import BraidWord, PDCode, braid_to_pd, parse_braid, parse_pd, seifert_circles, wirtinger
from .domination import Certificate, ObstructionReport, Verdict, certificate_search, evaluate_pair, obstruction_scan, rigidity_scan
from .knotbase import Corpus, CorpusError, Flags, KnotRecord, enrich_record, genus_interval, load_corpus
from .laurent import LaurentPoly, exact_div, format_poly, is_prime_power, parse_poly
from .poset import ChainBound, DominationGraph, build_graph, chain_length_bound, longest_chain

__version__ = "0.1.0"

__all__ = [
    "BraidWord",
    "Certificate",
    "ChainBound",
    "Corpus",
    "CorpusError",
    "DominationGraph",
    "Flags",
    "KnotRecord",
    "LaurentPoly",
    "ObstructionReport",
    "PDCode",
    "Verdict",
    "alexander_polynomial",
    "braid_to_pd",
    "build_graph",
    "certificate_search",
    "chain_length_bound",
    "connected_sum_delta",
    "determinant_invariant",
    "enrich_record",
    "evaluate_pair",
    "exact_div",
    "format_poly",
    "genus_interval",
    "is_prime_power",
    "jones_polynomial",
    "load_corpus",
    "longest_chain",
    "obstruction_scan",
    "parse_braid",
    "parse_pd",
    "parse_poly",
    "rigidity_scan",
    "satellite_delta",
    "seifert_circles",
    "wirtinger",
]
