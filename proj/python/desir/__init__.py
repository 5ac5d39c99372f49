"""Sets of desirable gambles under nonlinear closure operators."""

from ._core import (
    ClosureSpec,
    DesirSet,
    allais_demo,
    avoids_partial_loss,
    avoids_sure_loss,
    classify,
    credal_is_empty,
    credal_vertices,
    decide,
    lower_prevision,
    upper_prevision,
)

__all__ = [
    "ClosureSpec",
    "DesirSet",
    "allais_demo",
    "avoids_partial_loss",
    "avoids_sure_loss",
    "classify",
    "credal_is_empty",
    "credal_vertices",
    "decide",
    "lower_prevision",
    "upper_prevision",
]
