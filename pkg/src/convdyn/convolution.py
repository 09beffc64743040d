"""Convolution operators written as derivative series ``L = sum_beta c_beta d^beta``.

Such operators commute with every translation.  The value of the symbol,
``phi(lam) = sum_beta c_beta lam^beta``, is the eigenvalue of ``L`` on the
exponential ``exp(<lam, z>)``.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from .errors import NotFound, TrivialOperator
from .series import (
    ExponentialTail,
    MultiIndex,
    TruncatedEntireFunction,
    _tail_from_dict,
    _terms_from_list,
    _terms_to_list,
    check_radius,
    exp_function,
    exp_tail,
    linear_combine,
    majorant_seminorm,
)

__all__ = [
    "ConvolutionSymbol",
    "derivative",
    "identity",
    "translation_symbol",
    "apply",
    "translate",
    "translate_via_symbol",
    "associated_operator",
    "is_trivial",
    "symbol_value",
    "symbol_tail_bound",
    "eigen_residual",
    "DichotomyResult",
    "find_dichotomy_points",
    "iterate_apply",
    "symbol_to_dict",
    "symbol_from_dict",
]


class ConvolutionSymbol:
    """Finite coefficient table ``beta -> c_beta``.

    ``tail`` optionally bounds the part of an infinite symbol that was cut
    off, as an :class:`ExponentialTail` in ``lam`` at degree ``cutoff``.
    Translation symbols carry one.
    """

    __slots__ = ("_coefficients", "label", "tail", "cutoff")

    def __init__(self, coefficients=None, label: str = "", tail=None, cutoff=None):
        items = coefficients.items() if isinstance(coefficients, Mapping) else (coefficients or ())
        acc: dict[MultiIndex, complex] = {}
        for key, c in items:
            key = MultiIndex(key)
            acc[key] = acc.get(key, 0j) + complex(c)
        clean = {k: c for k, c in acc.items() if c != 0}
        self._coefficients = MappingProxyType(
            {k: clean[k] for k in sorted(clean, key=MultiIndex.sort_key)}
        )
        self.label = label
        self.tail = tail
        self.cutoff = cutoff

    @property
    def coefficients(self) -> Mapping[MultiIndex, complex]:
        return self._coefficients

    def items(self):
        return self._coefficients.items()

    def order(self) -> int:
        return max((k.degree for k in self._coefficients), default=0)

    def variable_span(self) -> int:
        return max((k.max_variable() for k in self._coefficients), default=0)

    def is_trivial(self) -> bool:
        return all(not k for k in self._coefficients)

    def same_symbol(self, other: "ConvolutionSymbol") -> bool:
        """Exact equality of coefficient tables, ignoring labels."""
        return dict(self._coefficients) == dict(other._coefficients)

    def __eq__(self, other):
        if not isinstance(other, ConvolutionSymbol):
            return NotImplemented
        return self.same_symbol(other) and self.label == other.label

    __hash__ = None

    def __repr__(self):
        body = " + ".join(
            f"({c:g})*{'Id' if not k else 'd[' + str(k) + ']'}" for k, c in self.items()
        )
        return f"<ConvolutionSymbol {self.label!r}: {body or '0'}>"


def derivative(var: int = 1, coefficient: complex = 1.0) -> ConvolutionSymbol:
    return ConvolutionSymbol({MultiIndex.unit(var): coefficient}, label=f"d{var}")


def identity(c: complex = 1.0) -> ConvolutionSymbol:
    return ConvolutionSymbol({MultiIndex(): c}, label=f"{complex(c):g}*id")


def translation_symbol(xi: Sequence[complex], cutoff: int) -> ConvolutionSymbol:
    """Symbol ``sum_{|beta| <= cutoff} (-xi)^beta / beta! d^beta`` of ``f -> f(. - xi)``.

    Exact on every polynomial of degree ``<= cutoff``.
    """
    xi = tuple(complex(x) for x in xi)
    neg = [-x for x in xi]
    expo = exp_function(neg, cutoff)
    label = "translation:" + ",".join(f"{x:g}" for x in xi)
    return ConvolutionSymbol(
        dict(expo.items()), label=label, tail=ExponentialTail(tuple(neg)), cutoff=int(cutoff)
    )


def _falling(a: int, b: int) -> int:
    out = 1
    for i in range(b):
        out *= a - i
    return out


def apply(L: ConvolutionSymbol, f: TruncatedEntireFunction) -> TruncatedEntireFunction:
    """``L f`` on the stored polynomial.

    Each term ``a z^alpha`` contributes ``c_beta a alpha!/(alpha-beta)! z^(alpha-beta)``
    for every ``beta <= alpha``; the falling factorial is an exact integer.
    """
    acc: dict[MultiIndex, complex] = {}
    symbol = list(L.items())
    for alpha, a in f.items():
        exps = dict(alpha)
        for beta, c in symbol:
            factor = 1
            ok = True
            for v, b in beta:
                e = exps.get(v, 0)
                if e < b:
                    ok = False
                    break
                factor *= _falling(e, b)
            if not ok:
                continue
            if beta:
                rest = dict(exps)
                for v, b in beta:
                    rest[v] -= b
                key = MultiIndex(rest)
            else:
                key = alpha
            acc[key] = acc.get(key, 0j) + c * a * factor
    clean = {k: v for k, v in acc.items() if v != 0}
    return TruncatedEntireFunction._from_clean(clean, f.truncation_degree)


def iterate_apply(L: ConvolutionSymbol, f: TruncatedEntireFunction, k: int) -> TruncatedEntireFunction:
    if k < 0:
        raise ValueError("k must be >= 0")
    for _ in range(k):
        f = apply(L, f)
    return f


def translate(f: TruncatedEntireFunction, xi: Sequence[complex]) -> TruncatedEntireFunction:
    """``f(z - xi)`` by binomial expansion of every monomial."""
    xi = [complex(x) for x in xi]
    acc: dict[MultiIndex, complex] = {}
    for alpha, a in f.items():
        # one factor list per variable: (kept exponent, weight)
        factors = []
        for v, e in alpha:
            shift = -xi[v - 1] if v <= len(xi) else 0j
            if shift == 0:
                factors.append([(v, e, 1)])
            else:
                factors.append(
                    [(v, g, math.comb(e, g) * shift ** (e - g)) for g in range(e + 1)]
                )
        for combo in itertools.product(*factors):
            coef = a
            for _, _, w in combo:
                coef = coef * w
            key = MultiIndex({v: g for v, g, _ in combo})
            acc[key] = acc.get(key, 0j) + coef
    clean = {k: v for k, v in acc.items() if v != 0}
    return TruncatedEntireFunction._from_clean(clean, f.truncation_degree)


def translate_via_symbol(f: TruncatedEntireFunction, xi: Sequence[complex]) -> TruncatedEntireFunction:
    """``f(z - xi)`` as the translation symbol truncated at ``deg f``, applied to ``f``."""
    return apply(translation_symbol(xi, f.degree()), f)


def associated_operator(L: ConvolutionSymbol, n: int) -> ConvolutionSymbol:
    """Symbol of the operator induced on functions of the first ``n`` variables.

    Keeps exactly the coefficients whose derivative order involves only
    ``z_1, ..., z_n``.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"cylinder index must be >= 1, got {n}")
    kept = {k: c for k, c in L.items() if k.max_variable() <= n}
    tail = L.tail
    if tail is not None:
        tail = ExponentialTail(tail.lam[:n], tail.scale)
    return ConvolutionSymbol(kept, label=f"{L.label}|{n}", tail=tail, cutoff=L.cutoff)


def is_trivial(L: ConvolutionSymbol) -> bool:
    """True iff ``L`` is a scalar multiple of the identity (exact support test)."""
    return L.is_trivial()


def symbol_value(L: ConvolutionSymbol, lam: Sequence[complex]) -> complex:
    """``phi(lam) = sum_beta c_beta lam^beta``; missing coordinates are 0."""
    lam = [complex(x) for x in lam]
    n = len(lam)
    total = 0j
    for beta, c in L.items():
        term = c
        for v, b in beta:
            term *= lam[v - 1] ** b if v <= n else 0j
        total += term
    return total


def symbol_tail_bound(L: ConvolutionSymbol, lam: Sequence[complex]) -> float:
    """Bound on ``|phi_full(lam) - symbol_value(L, lam)|`` for a cut-off infinite symbol.

    Zero for symbols that are finite by construction.
    """
    if L.tail is None:
        return 0.0
    lam = [complex(x) for x in lam]
    coef = list(L.tail.lam)
    s = sum(abs(c) * abs(lam[i]) for i, c in enumerate(coef) if i < len(lam))
    return L.tail.scale * exp_tail(s, L.cutoff)


def eigen_residual(
    L: ConvolutionSymbol, lam: Sequence[complex], degree: int, r: float = 1.0
) -> tuple[float, float]:
    """Return ``(p_r(L e - phi e), bound)`` for the truncated exponential ``e`` of degree ``degree``.

    Only coefficients of degree above ``degree - order(L)`` are perturbed, which gives

        bound = (sum_beta |c_beta| |lam^beta|) * sum_{D-q < m <= D} s^m / m!,

    with ``s = r * sum_j |lam_j|`` and ``q = order(L)``.
    """
    r = check_radius(r)
    lam = [complex(x) for x in lam]
    e = exp_function(lam, degree)
    phi = symbol_value(L, lam)
    residual = linear_combine([(1, apply(L, e)), (-phi, e)])
    value = majorant_seminorm(residual, r)

    weight = 0.0
    for beta, c in L.items():
        w = abs(c)
        for v, b in beta:
            w *= abs(lam[v - 1]) ** b if v <= len(lam) else 0.0
        weight += w
    s = r * sum(abs(x) for x in lam)
    band = 0.0
    for m in range(max(degree - L.order() + 1, 0), degree + 1):
        band += math.exp(m * math.log(s) - math.lgamma(m + 1)) if s > 0 else float(m == 0)
    return value, weight * band


@dataclass(frozen=True)
class DichotomyResult:
    """Two points where ``|phi|`` lies below and above 1."""

    small: tuple[complex, ...]
    big: tuple[complex, ...]
    phi_small: complex
    phi_big: complex
    boundary: tuple[complex, ...] | None
    log: list = field(default_factory=list, compare=False, repr=False)


def _directions(n: int, count: int) -> list[np.ndarray]:
    per_axis = max(2, math.ceil(count ** (1.0 / n)))
    angles = 2 * np.pi * np.arange(per_axis) / per_axis
    out = []
    for combo in itertools.product(range(per_axis), repeat=n):
        out.append(np.exp(1j * angles[list(combo)]))
        if len(out) == count:
            break
    return out


def find_dichotomy_points(
    L: ConvolutionSymbol,
    directions: int = 64,
    t_max: float = 8.0,
    samples: int = 64,
    bisection_steps: int = 40,
    margin: float = 0.01,
) -> DichotomyResult:
    """Search rays ``t * u`` for points with ``|phi| < 1 - margin`` and ``|phi| > 1 + margin``.

    ``u`` runs over a lattice on the unit polysphere ``|u_j| = 1`` in
    ``variable_span(L)`` dimensions, ``t`` over ``[0, t_max]``.  Values are
    tested net of :func:`symbol_tail_bound`.  On a ray that crosses
    ``|phi| = 1`` the crossing is located by bisection and reported as
    ``boundary``.
    """
    if is_trivial(L):
        raise TrivialOperator("the symbol is a scalar multiple of the identity")
    n = max(L.variable_span(), 1)
    ts = np.linspace(0.0, t_max, samples + 1)
    log = []
    small = big = None
    crossing = None

    def modulus(point):
        phi = symbol_value(L, point)
        return phi, abs(phi), symbol_tail_bound(L, point)

    for d, u in enumerate(_directions(n, directions)):
        side = None  # (t, below) of the last sample clear of the unit circle
        for t in ts:
            point = tuple(complex(x) for x in t * u)
            phi, mod, err = modulus(point)
            log.append({"direction": d, "t": float(t), "abs_phi": mod, "tail": err})
            if mod + err < 1 - margin and (small is None or mod < abs(small[1])):
                small = (point, phi)
            if mod - err > 1 + margin and (big is None or mod > abs(big[1])):
                big = (point, phi)
            if mod < 1 - margin or mod > 1 + margin:
                below = mod < 1
                if crossing is None and side is not None and side[1] != below:
                    crossing = (u, side[0], float(t), side[1])
                side = (float(t), below)

    if small is None or big is None:
        raise NotFound("no dichotomy pair within the search budget", log)

    boundary = None
    if crossing is not None:
        u, lo, hi, below_first = crossing
        for _ in range(bisection_steps):
            mid = 0.5 * (lo + hi)
            below = abs(symbol_value(L, mid * u)) < 1
            if below == below_first:
                lo = mid
            else:
                hi = mid
        boundary = tuple(complex(x) for x in 0.5 * (lo + hi) * u)
        log.append({"bisection": True, "t": 0.5 * (lo + hi)})

    return DichotomyResult(small[0], big[0], small[1], big[1], boundary, log)


def symbol_to_dict(L: ConvolutionSymbol) -> dict:
    data = {"label": L.label, "symbol": _terms_to_list(L.items())}
    if L.tail is not None:
        data["tail"] = L.tail.to_dict()
        data["cutoff"] = L.cutoff
    return data


def symbol_from_dict(data: Mapping) -> ConvolutionSymbol:
    return ConvolutionSymbol(
        _terms_from_list(data["symbol"]),
        label=data.get("label", ""),
        tail=_tail_from_dict(data.get("tail")),
        cutoff=data.get("cutoff"),
    )
