"""Embeddings and restrictions between functions of n variables and of all variables.

A function of the first ``n`` variables and its composition with the
projection onto those variables share one coefficient table, so
:func:`embed` only checks membership.  :func:`restrict` substitutes
``z_{n+1} = z_{n+2} = ... = 0``.
"""

from __future__ import annotations

from .errors import DimensionTooSmall
from .series import MultiIndex, TruncatedEntireFunction

__all__ = [
    "essential_dimension",
    "embed",
    "restrict",
    "coefficient_functional",
    "in_cylinder",
]


def _check_n(n: int) -> int:
    n = int(n)
    if n < 1:
        raise ValueError(f"cylinder index must be >= 1, got {n}")
    return n


def essential_dimension(f: TruncatedEntireFunction) -> int:
    """Least ``n`` such that ``f`` depends only on ``z_1, ..., z_n`` (0 for constants)."""
    return f.essential_dimension()


def in_cylinder(f: TruncatedEntireFunction, n: int) -> bool:
    return f.essential_dimension() <= n


def embed(f: TruncatedEntireFunction, n: int) -> TruncatedEntireFunction:
    """View a function of ``n`` variables as a function of all variables.

    Raises :class:`DimensionTooSmall` if ``f`` involves a variable past ``n``.
    """
    n = _check_n(n)
    dim = f.essential_dimension()
    if dim > n:
        raise DimensionTooSmall(f"function depends on z{dim}, cylinder is {n}")
    return f


def restrict(f: TruncatedEntireFunction, n: int) -> TruncatedEntireFunction:
    """Drop every term involving a variable with index above ``n``."""
    n = _check_n(n)
    if f.essential_dimension() <= n:
        return f
    kept = {k: c for k, c in f.items() if k.max_variable() <= n}
    return TruncatedEntireFunction._from_clean(kept, f.truncation_degree)


def coefficient_functional(f: TruncatedEntireFunction, alpha) -> complex:
    """Coefficient of ``z^alpha`` in ``f``; a continuous linear functional."""
    return f.coefficient(MultiIndex(alpha))
