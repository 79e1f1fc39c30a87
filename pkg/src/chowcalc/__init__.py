"""Exact intersection theory for K3-fibred Calabi-Yau 3-folds."""

from .algebra import ChowClass, VarietyPresentation, combine, integrate, normal_form
from .charclasses import (
    CharacterData,
    SheafData,
    character_to_chern,
    chern_character,
    dual_character,
    endomorphism_character,
    euler_pairing,
    hrr_chi,
    todd_class,
)
from .mukai import (
    K3LatticeContext,
    LedgerInstance,
    MukaiVector,
    admissibility,
    degeneration_ledger,
    fibre_moduli_dimension,
    mukai_pairing,
    mukai_vector_of,
    odp_correction,
)
from .varieties import (
    builtin_varieties,
    divisor_subvariety,
    product,
    projective_bundle_over_line,
    projective_space,
    pushforward_divisor,
    pushforward_fibre_sheaf,
)

__version__ = "0.1.0"
