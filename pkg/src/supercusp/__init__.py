"""supercusp: exact local Brauer-class verdicts for non-CM newforms at
supercuspidal primes.

The public surface mirrors the pipeline: load a fixture, classify its primes,
sieve auxiliary primes, compute the companion adjoint slope, and dispatch the
ramified / matrix-algebra verdict with a derivation trace.
"""

from .dirichlet import DirichletCharacter, RootOfUnity, idelic_local
from .errors import SupercuspError
from .exact import INF, PrimeIdealData, QuadElem, ResidueField, legendre, residue_symbol_fq, val_p, val_quad
from .hilbert import (
    SymbolPlace,
    hilbert_symbol,
    norm_symbol,
    product_formula_check,
    residue_unit_of_pi_squared,
    symbol_odd,
    symbol_real,
    symbol_two,
)
from .newform import (
    NewformData,
    Place,
    PrimeLocalData,
    is_supercuspidal,
    load_fixture,
    local_decompose,
    places_above,
    save_fixture,
)
from .auxprimes import find_p_dagger, find_p_dprime, find_p_prime, find_p_tprime
from .verdict import (
    DescriptorKind,
    ErrorTermData,
    InertialDescriptor,
    Status,
    Verdict,
    companion_slope,
    conductor_consistency,
    decide,
    error_term_odd_bad,
    error_term_odd_ramified,
    error_term_p2_dihedral,
    exceptional_verdict,
    is_good,
    is_good_shortcut,
)
from .lmfdb import LmfdbClient

__all__ = [
    "DirichletCharacter",
    "RootOfUnity",
    "idelic_local",
    "SupercuspError",
    "INF",
    "PrimeIdealData",
    "QuadElem",
    "ResidueField",
    "legendre",
    "residue_symbol_fq",
    "val_p",
    "val_quad",
    "SymbolPlace",
    "hilbert_symbol",
    "norm_symbol",
    "product_formula_check",
    "residue_unit_of_pi_squared",
    "symbol_odd",
    "symbol_real",
    "symbol_two",
    "NewformData",
    "Place",
    "PrimeLocalData",
    "is_supercuspidal",
    "load_fixture",
    "local_decompose",
    "places_above",
    "save_fixture",
    "find_p_dagger",
    "find_p_dprime",
    "find_p_prime",
    "find_p_tprime",
    "DescriptorKind",
    "ErrorTermData",
    "InertialDescriptor",
    "Status",
    "Verdict",
    "companion_slope",
    "conductor_consistency",
    "decide",
    "error_term_odd_bad",
    "error_term_odd_ramified",
    "error_term_p2_dihedral",
    "exceptional_verdict",
    "is_good",
    "is_good_shortcut",
    "LmfdbClient",
]
