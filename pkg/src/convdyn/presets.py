"""Parsing of operator and function descriptions used on the command line.

Operators
    ``d1``, ``2*id+d1``, ``(0.5+1j)*d1^2*d3``, ``id+0.5`` (a bare number is
    that multiple of the identity), ``translation:1,0.5`` or
    ``translation:1;cutoff=40``, inline symbol JSON, or a ``.json`` path.

Functions
    ``z1^2*z3``, ``1+2*z1``, ``gap:j`` or ``gap:j,b1,b2,...``,
    ``exp:l1;l2,D``, inline series JSON, or a ``.json`` path.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .convolution import ConvolutionSymbol, symbol_from_dict, translation_symbol
from .errors import ConfigError
from .series import (
    MultiIndex,
    TruncatedEntireFunction,
    exp_function,
    gap_series,
    series_from_dict,
)

__all__ = ["parse_operator", "parse_function", "parse_complex", "parse_gap_preset"]

DEFAULT_TRANSLATION_CUTOFF = 60

_FACTOR = re.compile(r"^(?P<name>[dz])(?P<var>\d+)(?:\^(?P<pow>\d+))?$")


def parse_complex(text: str) -> complex:
    text = text.strip().replace(" ", "").replace("i", "j")
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    try:
        return complex(text)
    except ValueError:
        raise ConfigError(f"not a number: {text!r}") from None


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, buf = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(buf))
            buf = []
        else:
            buf.append(ch)
    parts.append("".join(buf))
    return [p.strip() for p in parts]


def _load_json(text: str):
    text = text.strip()
    if text.startswith("{"):
        return json.loads(text)
    if text.endswith(".json"):
        try:
            return json.loads(Path(text).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read {text}: {exc}") from None
    return None


def _parse_product(term: str, letter: str, field: str) -> tuple[complex, dict[int, int]]:
    coef = 1 + 0j
    exps: dict[int, int] = {}
    for factor in _split_top(term, "*"):
        if not factor:
            raise ConfigError(f"empty factor in {term!r}", field)
        if factor == "id" and letter == "d":
            continue
        m = _FACTOR.match(factor)
        if m:
            if m["name"] != letter:
                raise ConfigError(f"unexpected factor {factor!r}", field)
            var = int(m["var"])
            if var < 1:
                raise ConfigError(f"variable index must be >= 1 in {factor!r}", field)
            exps[var] = exps.get(var, 0) + int(m["pow"] or 1)
        else:
            coef *= parse_complex(factor)
    return coef, exps


def parse_operator(text: str) -> ConvolutionSymbol:
    field = "operator"
    data = _load_json(text)
    if data is not None:
        try:
            return symbol_from_dict(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad symbol JSON: {exc}", field) from None
    text = text.strip()
    if text.startswith("translation:"):
        body = text[len("translation:"):]
        cutoff = DEFAULT_TRANSLATION_CUTOFF
        if ";" in body:
            body, opt = body.split(";", 1)
            if not opt.startswith("cutoff="):
                raise ConfigError(f"unknown translation option {opt!r}", field)
            cutoff = int(opt[len("cutoff="):])
        xi = [parse_complex(x) for x in body.split(",") if x.strip()]
        if not xi:
            raise ConfigError("translation needs at least one coordinate", field)
        return translation_symbol(xi, cutoff)
    coeffs: dict[MultiIndex, complex] = {}
    for term in _split_top(text, "+"):
        coef, exps = _parse_product(term, "d", field)
        key = MultiIndex(exps)
        coeffs[key] = coeffs.get(key, 0j) + coef
    return ConvolutionSymbol(coeffs, label=text)


def parse_gap_preset(text: str) -> tuple[int, tuple[int, ...] | None] | None:
    """``(variable, blocks)`` for a ``gap:`` preset, else None."""
    text = text.strip()
    if not text.startswith("gap:"):
        return None
    parts = [p for p in text[4:].split(",") if p.strip()]
    if not parts:
        raise ConfigError("gap preset needs a variable index", "function")
    try:
        j = int(parts[0])
        blocks = tuple(int(b) for b in parts[1:]) or None
    except ValueError:
        raise ConfigError(f"bad gap preset {text!r}", "function") from None
    return j, blocks


def parse_function(text: str) -> TruncatedEntireFunction:
    field = "function"
    data = _load_json(text)
    if data is not None:
        try:
            return series_from_dict(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad series JSON: {exc}", field) from None
    text = text.strip()
    gap = parse_gap_preset(text)
    if gap is not None:
        try:
            return gap_series(gap[1], gap[0])
        except ValueError as exc:
            raise ConfigError(str(exc), field) from None
    if text.startswith("exp:"):
        body = text[4:]
        try:
            lam_text, degree = body.rsplit(",", 1)
            lam = [parse_complex(x) for x in lam_text.split(";")]
            return exp_function(lam, int(degree))
        except ValueError:
            raise ConfigError(f"bad exp preset {text!r}", field) from None
    terms: dict[MultiIndex, complex] = {}
    for term in _split_top(text, "+"):
        coef, exps = _parse_product(term, "z", field)
        key = MultiIndex(exps)
        terms[key] = terms.get(key, 0j) + coef
    return TruncatedEntireFunction(terms)
