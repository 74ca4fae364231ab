"""Exact computations with A-infinity algebras, categories and modules."""

from .ainf import check_morphism, check_stasheff, compose_morphisms, validate_units
from .field import QQ, GF, Field, FieldError
from .graded import GradedMap, GradedSpace, StructureError, complex_homology, koszul_apply, suspend
from .modules import AInfModule, ModuleMorphism, check_module, module_minimal_model
from .structure import AInfCategory, AInfHomotopy, AInfMorphism, Gen, algebra
from .transfer import CertificationError, transfer_minimal_model
from .twisted import TwistedObject, shift_category, tw_category

__all__ = [
    "QQ", "GF", "Field", "FieldError", "GradedMap", "GradedSpace", "StructureError",
    "complex_homology", "koszul_apply", "suspend", "AInfCategory", "AInfHomotopy",
    "AInfMorphism", "Gen", "algebra", "check_stasheff", "check_morphism", "compose_morphisms",
    "validate_units", "AInfModule", "ModuleMorphism", "check_module", "module_minimal_model",
    "CertificationError", "transfer_minimal_model", "TwistedObject", "shift_category",
    "tw_category",
]
