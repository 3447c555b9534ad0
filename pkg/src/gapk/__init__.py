"""Primes in geometric-arithmetic progression: p1*r**j + j*d for consecutive j."""
from .arith import PrimalityVerdict, Verdict, is_prime, primorial, smallest_prime_factor, smallest_prime_geq
from .catalog import BFile, DifferenceSequence, compare, difference_sequence, export_bfile, fetch_reference, parse_bfile
from .progression import GapFailure, GapInstance, GapTriple, admissible, gap_run_length, term, verify_gap
from .residue import analyze_modulus, common_factor, factor_label, forbidden_residues, residue_forms
from .search import SearchSpec, minimal_gap, runner, shifted_search, tail_scan, walker

__version__ = "0.1.0"
