"""Sparse truncated power series in finitely many of countably many variables.

Variables are indexed ``1, 2, 3, ...``.  A :class:`TruncatedEntireFunction`
stores the coefficients of a polynomial truncation of an entire function,
keyed by :class:`MultiIndex`, together with an optional closed-form bound for
the discarded tail.  Every value is immutable; every operation is a pure
function of its arguments.

Seminorms are taken over closed polydiscs ``{|z_j| <= r}``.  The majorant
seminorm ``p_r(f) = sum |a_alpha| r^|alpha|`` dominates the sup-norm of the
stored polynomial on the polydisc of radius ``r``.
"""

from __future__ import annotations

import json
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType

import numpy as np

from .errors import BlockTooLarge, TailUnavailable

__all__ = [
    "MultiIndex",
    "ExponentialTail",
    "GapTail",
    "TruncatedEntireFunction",
    "MAX_DOUBLE_BLOCK",
    "exp_tail",
    "check_radius",
    "constant",
    "monomial",
    "linear_combine",
    "multiply",
    "evaluate",
    "partial_derivative",
    "majorant_seminorm",
    "grid_sup_estimate",
    "exp_function",
    "gap_series",
    "series_to_dict",
    "series_from_dict",
    "dumps",
    "loads",
]

# 1/171! underflows in double precision.
MAX_DOUBLE_BLOCK = 170


class MultiIndex(tuple):
    """Finitely supported exponent vector, stored as sorted ``(variable, exponent)`` pairs.

    Zero exponents are never stored.  Ordering is graded lexicographic:
    total degree first, then the pair tuples lexicographically.

    >>> MultiIndex({3: 1, 1: 2})
    MultiIndex({1: 2, 3: 1})
    >>> MultiIndex({1: 1}) < MultiIndex({1: 2})
    True
    """

    __slots__ = ()

    def __new__(cls, entries=()):
        if isinstance(entries, MultiIndex):
            return entries
        items = entries.items() if isinstance(entries, Mapping) else entries
        cleaned: dict[int, int] = {}
        for var, exp in items:
            var, exp = int(var), int(exp)
            if var < 1:
                raise ValueError(f"variable index must be >= 1, got {var}")
            if exp < 0:
                raise ValueError(f"exponent must be >= 0, got {exp}")
            if exp:
                cleaned[var] = cleaned.get(var, 0) + exp
        return super().__new__(cls, tuple(sorted(cleaned.items())))

    @classmethod
    def unit(cls, var: int, power: int = 1) -> "MultiIndex":
        return cls({var: power})

    @property
    def degree(self) -> int:
        return sum(e for _, e in self)

    def support(self) -> frozenset[int]:
        return frozenset(v for v, _ in self)

    def max_variable(self) -> int:
        """Largest variable index present, 0 for the zero index."""
        return self[-1][0] if self else 0

    def exponent(self, var: int) -> int:
        for v, e in self:
            if v == var:
                return e
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self)

    def plus(self, other: "MultiIndex") -> "MultiIndex":
        merged = dict(self)
        for v, e in other:
            merged[v] = merged.get(v, 0) + e
        return MultiIndex(merged)

    def minus(self, other: "MultiIndex") -> "MultiIndex":
        """Componentwise difference; requires ``other.divides(self)``."""
        merged = dict(self)
        for v, e in other:
            left = merged.get(v, 0) - e
            if left < 0:
                raise ValueError(f"{other} does not divide {self}")
            merged[v] = left
        return MultiIndex(merged)

    def divides(self, other: "MultiIndex") -> bool:
        """Componentwise ``self <= other``."""
        exps = dict(other)
        return all(exps.get(v, 0) >= e for v, e in self)

    def restricted_to(self, n: int) -> bool:
        """True if the support lies in the first ``n`` variables."""
        return self.max_variable() <= n

    def sort_key(self):
        return (self.degree, tuple(self))

    def __lt__(self, other):
        return self.sort_key() < MultiIndex(other).sort_key()

    def __le__(self, other):
        return self.sort_key() <= MultiIndex(other).sort_key()

    def __gt__(self, other):
        return self.sort_key() > MultiIndex(other).sort_key()

    def __ge__(self, other):
        return self.sort_key() >= MultiIndex(other).sort_key()

    def __repr__(self):
        return f"MultiIndex({dict(self)!r})"

    def __str__(self):
        if not self:
            return "1"
        return "*".join(f"z{v}" if e == 1 else f"z{v}^{e}" for v, e in self)


def exp_tail(s: float, degree: int) -> float:
    """Return ``sum_{m > degree} s^m / m!`` for ``s >= 0``.

    Summed directly from the first omitted term (all terms positive, so no
    cancellation); the first term is formed in log-space.
    """
    if s < 0:
        raise ValueError("s must be non-negative")
    if s == 0:
        return 0.0
    m = degree + 1
    log_term = m * math.log(s) - math.lgamma(m + 1)
    if log_term > 709.0:
        return math.inf
    term = math.exp(log_term)
    total = 0.0
    while term > 0.0:
        total += term
        m += 1
        term *= s / m
        if m > s and term <= total * 1e-17:
            break
        if math.isinf(total):
            return math.inf
    return total


@dataclass(frozen=True)
class ExponentialTail:
    """Tail of a truncated exponential ``exp(<lam, z>)``, optionally scaled."""

    lam: tuple[complex, ...]
    scale: float = 1.0

    def bound(self, r: float, degree: int) -> float:
        s = r * sum(abs(c) for c in self.lam)
        return self.scale * exp_tail(s, degree)

    def same_kind(self, other) -> bool:
        return isinstance(other, ExponentialTail) and other.lam == self.lam

    def scaled(self, factor: float) -> "ExponentialTail":
        return ExponentialTail(self.lam, self.scale * factor)

    def to_dict(self) -> dict:
        return {
            "kind": "exponential",
            "lambda": [[c.real, c.imag] for c in self.lam],
            "scale": self.scale,
        }


@dataclass(frozen=True)
class GapTail:
    """Tail of a lacunary series ``sum z_j^m / m!`` continued beyond its last block.

    The bound holds for any continuation whose exponents exceed the last
    stored block and whose coefficients are ``1/m!``.
    """

    blocks: tuple[int, ...]
    variable: int
    scale: float = 1.0

    def bound(self, r: float, degree: int) -> float:
        return self.scale * exp_tail(r, max(degree, self.blocks[-1]))

    def same_kind(self, other) -> bool:
        return (
            isinstance(other, GapTail)
            and other.blocks == self.blocks
            and other.variable == self.variable
        )

    def scaled(self, factor: float) -> "GapTail":
        return GapTail(self.blocks, self.variable, self.scale * factor)

    def to_dict(self) -> dict:
        return {
            "kind": "gap",
            "blocks": list(self.blocks),
            "variable": self.variable,
            "scale": self.scale,
        }


def _tail_from_dict(data):
    if data is None:
        return None
    kind = data.get("kind")
    if kind == "exponential":
        lam = tuple(complex(re, im) for re, im in data["lambda"])
        return ExponentialTail(lam, float(data.get("scale", 1.0)))
    if kind == "gap":
        return GapTail(
            tuple(int(b) for b in data["blocks"]),
            int(data["variable"]),
            float(data.get("scale", 1.0)),
        )
    raise ValueError(f"unknown tail kind {kind!r}")


def check_radius(r) -> float:
    r = float(r)
    if not r > 0 or math.isinf(r):
        raise ValueError(f"radius must be a positive finite number, got {r}")
    return r


class TruncatedEntireFunction:
    """Polynomial truncation of an entire function.

    Parameters
    ----------
    terms : mapping or iterable of pairs
        ``MultiIndex``-like keys (dicts or pair tuples are accepted) to
        complex coefficients.  Repeated keys are summed.
    truncation_degree : int, optional
        Degree at which the underlying series was cut.  Defaults to the
        largest stored degree.
    tail : ExponentialTail or GapTail, optional
        Closed-form bound for the omitted terms.
    tol : float
        Coefficients with modulus ``<= tol`` are dropped.  The default keeps
        every coefficient that is not exactly zero.
    """

    __slots__ = ("_terms", "truncation_degree", "tail")

    def __init__(self, terms=None, truncation_degree=None, tail=None, tol=0.0):
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        acc: dict[MultiIndex, complex] = {}
        for key, coef in items:
            key = MultiIndex(key)
            acc[key] = acc.get(key, 0j) + complex(coef)
        clean = {k: c for k, c in acc.items() if c != 0 and abs(c) > tol}
        top = max((k.degree for k in clean), default=0)
        if truncation_degree is None:
            truncation_degree = top
        truncation_degree = int(truncation_degree)
        if truncation_degree < top:
            raise ValueError(
                f"truncation_degree {truncation_degree} below stored degree {top}"
            )
        self._terms = MappingProxyType(
            {k: clean[k] for k in sorted(clean, key=MultiIndex.sort_key)}
        )
        self.truncation_degree = truncation_degree
        self.tail = tail

    @classmethod
    def _from_clean(cls, terms: dict, truncation_degree: int, tail=None):
        # terms already hold MultiIndex keys and nonzero complex values
        obj = cls.__new__(cls)
        obj._terms = MappingProxyType(
            {k: terms[k] for k in sorted(terms, key=MultiIndex.sort_key)}
        )
        obj.truncation_degree = truncation_degree
        obj.tail = tail
        return obj

    @property
    def terms(self) -> Mapping[MultiIndex, complex]:
        return self._terms

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((k.degree for k in self._terms), default=0)

    def essential_dimension(self) -> int:
        return max((k.max_variable() for k in self._terms), default=0)

    def coefficient(self, alpha) -> complex:
        return self._terms.get(MultiIndex(alpha), 0j)

    def tail_bound(self, r: float) -> float:
        if self.tail is None:
            raise TailUnavailable("series carries no tail descriptor")
        return self.tail.bound(check_radius(r), self.truncation_degree)

    def pruned(self, tol: float) -> "TruncatedEntireFunction":
        return TruncatedEntireFunction(self._terms, self.truncation_degree, self.tail, tol)

    def with_tail(self, tail) -> "TruncatedEntireFunction":
        return TruncatedEntireFunction._from_clean(dict(self._terms), self.truncation_degree, tail)

    def __call__(self, point):
        return evaluate(self, point)

    def __eq__(self, other):
        if not isinstance(other, TruncatedEntireFunction):
            return NotImplemented
        return (
            dict(self._terms) == dict(other._terms)
            and self.truncation_degree == other.truncation_degree
            and self.tail == other.tail
        )

    __hash__ = None

    def __neg__(self):
        return linear_combine([(-1, self)])

    def __add__(self, other):
        if isinstance(other, TruncatedEntireFunction):
            return linear_combine([(1, self), (1, other)])
        return linear_combine([(1, self), (1, constant(other))])

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, TruncatedEntireFunction):
            return linear_combine([(1, self), (-1, other)])
        return linear_combine([(1, self), (-1, constant(other))])

    def __rsub__(self, other):
        return linear_combine([(1, constant(other)), (-1, self)])

    def __mul__(self, other):
        if isinstance(other, TruncatedEntireFunction):
            return multiply(self, other)
        return linear_combine([(other, self)])

    __rmul__ = __mul__

    def __repr__(self):
        if not self._terms:
            body = "0"
        else:
            body = " + ".join(f"({c:g})*{k}" for k, c in self._terms.items())
        return f"<TruncatedEntireFunction D={self.truncation_degree}: {body}>"


def constant(c) -> TruncatedEntireFunction:
    return TruncatedEntireFunction({MultiIndex(): c}, 0)


def monomial(exponents, coefficient=1.0) -> TruncatedEntireFunction:
    """``coefficient * z^alpha``; ``exponents`` is anything ``MultiIndex`` accepts."""
    return TruncatedEntireFunction({MultiIndex(exponents): coefficient})


def linear_combine(pairs, tol: float = 0.0) -> TruncatedEntireFunction:
    """Return ``sum a_i f_i`` for ``pairs = [(a_i, f_i), ...]``.

    The tail descriptor survives only when every input carries the same
    descriptor at the same truncation degree; its scale becomes
    ``sum |a_i| * scale_i``.
    """
    pairs = list(pairs)
    if not pairs:
        raise ValueError("linear_combine needs at least one (scalar, series) pair")
    acc: dict[MultiIndex, complex] = {}
    for a, f in pairs:
        a = complex(a)
        if a == 0:
            continue
        for k, c in f.items():
            acc[k] = acc.get(k, 0j) + a * c
    clean = {k: c for k, c in acc.items() if c != 0 and abs(c) > tol}
    degree = max(f.truncation_degree for _, f in pairs)

    tail = None
    first = pairs[0][1].tail
    if first is not None and all(
        f.tail is not None
        and first.same_kind(f.tail)
        and f.truncation_degree == degree
        for _, f in pairs
    ):
        scale = sum(abs(complex(a)) * f.tail.scale for a, f in pairs)
        tail = type(first)(*_tail_params(first), scale)
    return TruncatedEntireFunction._from_clean(clean, degree, tail)


def _tail_params(tail):
    if isinstance(tail, ExponentialTail):
        return (tail.lam,)
    return (tail.blocks, tail.variable)


def multiply(f: TruncatedEntireFunction, g: TruncatedEntireFunction) -> TruncatedEntireFunction:
    acc: dict[MultiIndex, complex] = {}
    for ka, ca in f.items():
        for kb, cb in g.items():
            key = ka.plus(kb)
            acc[key] = acc.get(key, 0j) + ca * cb
    clean = {k: c for k, c in acc.items() if c != 0}
    return TruncatedEntireFunction._from_clean(
        clean, f.truncation_degree + g.truncation_degree
    )


def evaluate(f: TruncatedEntireFunction, point: Sequence[complex]) -> complex:
    """Evaluate the stored polynomial; coordinates beyond ``len(point)`` are 0."""
    point = [complex(z) for z in point]
    n = len(point)
    powers: dict[tuple[int, int], complex] = {}
    total = 0j
    for key, coef in f.items():
        term = coef
        for var, exp in key:
            if var > n:
                term = 0j
                break
            p = powers.get((var, exp))
            if p is None:
                p = point[var - 1] ** exp
                powers[(var, exp)] = p
            term *= p
        total += term
    return total


def partial_derivative(f: TruncatedEntireFunction, var: int) -> TruncatedEntireFunction:
    """``d f / d z_var`` on the stored polynomial; the tail descriptor is dropped."""
    if var < 1:
        raise ValueError(f"variable index must be >= 1, got {var}")
    out: dict[MultiIndex, complex] = {}
    for key, coef in f.items():
        exps = dict(key)
        e = exps.get(var, 0)
        if e == 0:
            continue
        exps[var] = e - 1
        out[MultiIndex(exps)] = coef * e
    return TruncatedEntireFunction._from_clean(out, f.truncation_degree)


def majorant_seminorm(f: TruncatedEntireFunction, r: float, include_tail: bool = False) -> float:
    r = check_radius(r)
    powers: dict[int, float] = {}
    total = 0.0
    for key, coef in f.items():
        d = key.degree
        p = powers.get(d)
        if p is None:
            p = powers[d] = r**d
        total += abs(coef) * p
    if include_tail:
        total += f.tail_bound(r)
    return total


def grid_sup_estimate(f: TruncatedEntireFunction, r: float, samples_per_axis: int) -> float:
    """Max of ``|f|`` over the torus grid ``r * (w^k1, ..., w^kn)``, ``w = exp(2 pi i / s)``.

    ``n`` is the essential dimension of ``f``.  The result never exceeds the
    majorant seminorm.
    """
    r = check_radius(r)
    s = int(samples_per_axis)
    if s < 1:
        raise ValueError("samples_per_axis must be >= 1")
    n = f.essential_dimension()
    if n == 0:
        return abs(f.coefficient(()))
    if s**n > 4_000_000:
        raise ValueError(f"grid of {s}^{n} points is too large")
    roots = np.exp(2j * np.pi * np.arange(s) / s)
    roots[0] = 1.0
    idx = np.indices((s,) * n).reshape(n, -1)
    values = np.zeros(idx.shape[1], dtype=complex)
    for key, coef in f.items():
        phase = np.zeros(idx.shape[1], dtype=np.int64)
        for var, exp in key:
            phase += idx[var - 1] * exp
        values += coef * r**key.degree * roots[phase % s]
    grid = float(np.max(np.abs(values)))
    # |w^k| can round slightly above 1
    return min(grid, majorant_seminorm(f, r))


def exp_function(lam: Sequence[complex], truncation_degree: int) -> TruncatedEntireFunction:
    """Truncation of ``exp(sum_j lam_j z_j)``: coefficients ``lam^alpha / alpha!``, degree <= D."""
    D = int(truncation_degree)
    if D < 0:
        raise ValueError("truncation_degree must be >= 0")
    lam = tuple(complex(c) for c in lam)
    # (partial multi-index dict, degree, coefficient)
    partial = [({}, 0, 1 + 0j)]
    for var, l in enumerate(lam, start=1):
        if l == 0:
            continue
        grown = []
        for exps, deg, coef in partial:
            c = coef
            grown.append((exps, deg, c))
            for e in range(1, D - deg + 1):
                c = c * l / e
                grown.append(({**exps, var: e}, deg + e, c))
        partial = grown
    terms = {MultiIndex(exps): c for exps, _, c in partial if c != 0}
    return TruncatedEntireFunction._from_clean(terms, D, ExponentialTail(lam))


def gap_series(blocks: Iterable[int] | None = None, variable: int = 1) -> TruncatedEntireFunction:
    """Lacunary series ``sum_i z_variable^{m_i} / m_i!``.

    Defaults to blocks ``1, 2, 4, ..., 128``.
    """
    blocks = tuple(2**j for j in range(8)) if blocks is None else tuple(int(b) for b in blocks)
    if not blocks:
        raise ValueError("at least one block is required")
    if blocks[0] < 1 or any(b <= a for a, b in zip(blocks, blocks[1:])):
        raise ValueError(f"blocks must be strictly increasing positive integers, got {blocks}")
    if blocks[-1] > MAX_DOUBLE_BLOCK:
        raise BlockTooLarge(
            f"block {blocks[-1]} exceeds {MAX_DOUBLE_BLOCK}: 1/m! is not representable"
        )
    if variable < 1:
        raise ValueError(f"variable index must be >= 1, got {variable}")
    # correctly rounded 1/m! from the exact integer factorial
    terms = {MultiIndex({variable: m}): complex(Fraction(1, math.factorial(m))) for m in blocks}
    return TruncatedEntireFunction._from_clean(terms, blocks[-1], GapTail(blocks, variable))


def _terms_to_list(items) -> list[dict]:
    return [
        {"exp": {str(v): e for v, e in key}, "re": c.real, "im": c.imag}
        for key, c in items
    ]


def _terms_from_list(data) -> dict[MultiIndex, complex]:
    out: dict[MultiIndex, complex] = {}
    for term in data:
        key = MultiIndex({int(v): int(e) for v, e in term["exp"].items()})
        out[key] = out.get(key, 0j) + complex(float(term["re"]), float(term.get("im", 0.0)))
    return out


def series_to_dict(f: TruncatedEntireFunction) -> dict:
    data = {"truncation_degree": f.truncation_degree, "terms": _terms_to_list(f.items())}
    if f.tail is not None:
        data["tail"] = f.tail.to_dict()
    return data


def series_from_dict(data: Mapping) -> TruncatedEntireFunction:
    return TruncatedEntireFunction(
        _terms_from_list(data.get("terms", [])),
        data.get("truncation_degree"),
        _tail_from_dict(data.get("tail")),
    )


def dumps(f: TruncatedEntireFunction, **kwargs) -> str:
    return json.dumps(series_to_dict(f), **kwargs)


def loads(text: str) -> TruncatedEntireFunction:
    return series_from_dict(json.loads(text))
