"""Сервисный слой: вероятности, методы вычисления, энтропии, тождества и неравенства."""

from .coincidence import (
    CoincidenceService,
    QuadStudyRow,
    canonicalize,
    ic_auto,
    ic_closed,
    ic_direct,
    ic_quadrature,
    ic_recurrence,
    ic_via_legendre,
    quad_study,
)
from .entropy import entropy_bounds, entropy_profile, renyi_entropy, tsallis_entropy
from .identities import check_identities, identity_ids
from .inequality_lab import InequalityLab, catalog, evaluate_inequality, ratio_coefficient, verify_grid

__all__ = [
    "CoincidenceService",
    "InequalityLab",
    "QuadStudyRow",
    "canonicalize",
    "catalog",
    "check_identities",
    "entropy_bounds",
    "entropy_profile",
    "evaluate_inequality",
    "ic_auto",
    "ic_closed",
    "ic_direct",
    "ic_quadrature",
    "ic_recurrence",
    "ic_via_legendre",
    "identity_ids",
    "quad_study",
    "ratio_coefficient",
    "renyi_entropy",
    "tsallis_entropy",
    "verify_grid",
]
