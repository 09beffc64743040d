"""Seeded random property suites for the cylinder and convolution identities."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .convolution import (
    ConvolutionSymbol,
    apply,
    associated_operator,
    is_trivial,
    iterate_apply,
    translate,
    translate_via_symbol,
)
from .cylinder import embed, restrict
from .dynamics import exact_rank, non_cyclicity_certificate, subspace_orbit_certificate
from .series import MultiIndex, TruncatedEntireFunction

__all__ = [
    "SuiteReport",
    "random_multi_index",
    "random_symbol",
    "random_function",
    "table_distance",
    "lemma_suite",
    "convolution_suite",
    "certificate_suite",
]


@dataclass
class SuiteReport:
    name: str
    cases: int = 0
    passed: int = 0
    failures: list = field(default_factory=list)
    elapsed: float = 0.0
    worst_error: float = 0.0

    @property
    def ok(self) -> bool:
        return self.passed == self.cases

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return (
            f"{status} {self.name}: {self.passed}/{self.cases} "
            f"(worst rel. error {self.worst_error:.3g}, {self.elapsed:.2f}s)"
        )


def random_multi_index(rng, n_vars: int, degree: int) -> MultiIndex:
    if degree == 0:
        return MultiIndex()
    vars_ = rng.integers(1, n_vars + 1, size=degree)
    exps: dict[int, int] = {}
    for v in vars_:
        exps[int(v)] = exps.get(int(v), 0) + 1
    return MultiIndex(exps)


def _unit_square(rng) -> complex:
    return complex(rng.uniform(0, 1), rng.uniform(0, 1))


def random_symbol(rng, max_span: int = 3, max_order: int = 4, max_terms: int = 5) -> ConvolutionSymbol:
    """Symbol with span <= ``max_span``, order <= ``max_order``, coefficients in [0,1]x[0,1]."""
    span = int(rng.integers(1, max_span + 1))
    coeffs = {}
    for _ in range(int(rng.integers(1, max_terms + 1))):
        beta = random_multi_index(rng, span, int(rng.integers(0, max_order + 1)))
        coeffs[beta] = _unit_square(rng)
    return ConvolutionSymbol(coeffs, label="random")


def random_function(
    rng, max_vars: int = 4, max_degree: int = 6, max_terms: int = 12
) -> TruncatedEntireFunction:
    """Polynomial of degree <= ``max_degree`` with <= ``max_terms`` terms, coefficients in [-1,1]^2."""
    n_vars = int(rng.integers(1, max_vars + 1))
    terms = {}
    for _ in range(int(rng.integers(1, max_terms + 1))):
        alpha = random_multi_index(rng, n_vars, int(rng.integers(0, max_degree + 1)))
        terms[alpha] = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
    return TruncatedEntireFunction(terms, max_degree)


def table_distance(f: TruncatedEntireFunction, g: TruncatedEntireFunction) -> float:
    """``max |a - b| / max(|a|, |b|)`` over the union of both coefficient tables."""
    keys = set(f.terms) | set(g.terms)
    if not keys:
        return 0.0
    scale = max(abs(c) for h in (f, g) for c in h.terms.values())
    diff = max(abs(f.coefficient(k) - g.coefficient(k)) for k in keys)
    return diff / scale if scale else diff


def _same_table(f, g, rel: float) -> tuple[bool, float]:
    if dict(f.terms) == dict(g.terms):
        return True, 0.0
    err = table_distance(f, g)
    return err <= rel, err


def lemma_suite(seed: int = 42, cases: int = 1000, rel: float = 1e-12) -> SuiteReport:
    """Cylinder and factorization identities over seeded random instances.

    Per case: ``restrict(embed(f, n), n) = f``; embedding into a larger
    cylinder changes nothing; ``L(f_n o pi_n) = (L_n f_n) o pi_n``;
    the k-fold version for ``k <= 5``; iterates never gain variables;
    translations vanishing on the first ``n`` coordinates fix the cylinder;
    ``L`` is trivial iff every ``L_n`` is.
    """
    rng = np.random.default_rng(seed)
    report = SuiteReport("lemmas", cases)
    start = time.perf_counter()
    for case in range(cases):
        L = random_symbol(rng)
        f = random_function(rng)
        n = max(f.essential_dimension(), 1)
        problems = []

        if restrict(embed(f, n), n) != f:
            problems.append("complement identity")
        if embed(embed(f, n), n + 2) != embed(f, n + 2):
            problems.append("inclusion chain")

        Ln = associated_operator(L, n)
        ok, err = _same_table(apply(L, embed(f, n)), embed(apply(Ln, f), n), rel)
        report.worst_error = max(report.worst_error, err)
        if not ok:
            problems.append("associated factorization")

        k = int(rng.integers(1, 6))
        full = iterate_apply(L, f, k)
        ok, err = _same_table(full, embed(iterate_apply(Ln, restrict(f, n), k), n), rel)
        report.worst_error = max(report.worst_error, err)
        if not ok:
            problems.append("k-fold factorization")
        if full.essential_dimension() > f.essential_dimension():
            problems.append("orbit gained a variable")

        xi = [0j] * n + [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(3)]
        if dict(translate(f, xi).terms) != dict(f.terms):
            problems.append("translation off the cylinder")

        span = L.variable_span()
        trivial_all = all(is_trivial(associated_operator(L, m)) for m in range(1, span + 2))
        if is_trivial(L) != trivial_all:
            problems.append("triviality dichotomy")

        if problems:
            report.failures.append({"case": case, "problems": problems})
        else:
            report.passed += 1
    report.elapsed = time.perf_counter() - start
    return report


def convolution_suite(seed: int = 42, cases: int = 1000, rel: float = 1e-9) -> SuiteReport:
    """``L(tau_xi f) = tau_xi(L f)``: binomial translation on the left, translation symbol on the right."""
    rng = np.random.default_rng(seed)
    report = SuiteReport("convolution", cases)
    start = time.perf_counter()
    for case in range(cases):
        L = random_symbol(rng)
        f = random_function(rng)
        xi = [_unit_square(rng) for _ in range(int(rng.integers(1, 4)))]
        left = apply(L, translate(f, xi))
        right = translate_via_symbol(apply(L, f), xi)
        err = table_distance(left, right)
        report.worst_error = max(report.worst_error, err)
        if err <= rel:
            report.passed += 1
        else:
            report.failures.append({"case": case, "error": err})
    report.elapsed = time.perf_counter() - start
    return report


def certificate_suite(
    seed: int = 42, orbit_cases: int = 100, subspace_cases: int = 50, K: int = 50
) -> tuple[SuiteReport, SuiteReport]:
    """Non-cyclicity certificates for random ``(L, f)`` and subspace certificates for random generator sets."""
    rng = np.random.default_rng(seed)
    single = SuiteReport("non-cyclicity", orbit_cases)
    start = time.perf_counter()
    for case in range(orbit_cases):
        cert = non_cyclicity_certificate(random_symbol(rng), random_function(rng), K)
        if cert.is_valid():
            single.passed += 1
        else:
            single.failures.append({"case": case, "max": cert.max_abs_functional_on_orbit})
    single.elapsed = time.perf_counter() - start

    multi = SuiteReport("subspace-confinement", subspace_cases)
    start = time.perf_counter()
    for case in range(subspace_cases):
        L = random_symbol(rng)
        size = int(rng.integers(1, 5))
        while True:
            gens = [random_function(rng) for _ in range(size)]
            keys = sorted({k for g in gens for k in g.terms}, key=MultiIndex.sort_key)
            if exact_rank([[g.coefficient(k) for k in keys] for g in gens]) == size:
                break
        cert = subspace_orbit_certificate(L, gens, K)
        if cert.is_valid() and cert.m == max(g.essential_dimension() for g in gens):
            multi.passed += 1
        else:
            multi.failures.append({"case": case, "m": cert.m})
    multi.elapsed = time.perf_counter() - start
    return single, multi
