"""Exact verification of the 21-point configurations behind three families
of supersingular K3 surfaces in characteristic 2, their codes, Cremona
correspondences and automorphism groups."""

__version__ = "0.1.0"

from .codes21 import Code21, classify_words, code_automorphisms, code_isomorphism, weight_enumerator
from .corr_algebra import Catalog, Correspondence, compose, default_catalog
from .cremona_engine import apply_cremona, correspondence_of_center, enumerate_centers, quintic_system
from .errors import K3Error
from .families import FamilyType, gamma, recover_lambda, sextic, verify_zero_scheme

__all__ = [
    "Catalog",
    "Code21",
    "Correspondence",
    "FamilyType",
    "K3Error",
    "apply_cremona",
    "classify_words",
    "code_automorphisms",
    "code_isomorphism",
    "compose",
    "correspondence_of_center",
    "default_catalog",
    "enumerate_centers",
    "gamma",
    "quintic_system",
    "recover_lambda",
    "sextic",
    "verify_zero_scheme",
    "weight_enumerator",
]
