"""Orbits, confinement certificates, semi-irregular vectors and Li-Yorke pairs.

Convergence is judged through the polydisc seminorms of the cylinder an
orbit lives in.  Statements about infinite sequences are rendered as
finite checkpoint evidence: upper bounds where the orbit is small, exact
point evaluations where it is not.
"""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Sequence
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .convolution import (
    ConvolutionSymbol,
    apply,
    associated_operator,
    derivative,
    symbol_to_dict,
)
from .cylinder import coefficient_functional, embed
from .errors import (
    AssociatedMismatch,
    DependentGenerators,
    EqualScalars,
    ScaleOutOfRange,
)
from .series import (
    MultiIndex,
    TruncatedEntireFunction,
    check_radius,
    evaluate,
    gap_series,
    grid_sup_estimate,
    linear_combine,
    majorant_seminorm,
    monomial,
    series_to_dict,
)

__all__ = [
    "OrbitRecord",
    "OrbitTrace",
    "orbit",
    "orbit_trace",
    "ConfinementCertificate",
    "confinement_certificate",
    "variable_raising",
    "NonCyclicityCertificate",
    "non_cyclicity_certificate",
    "recheck_non_cyclicity",
    "SubspaceCertificate",
    "subspace_orbit_certificate",
    "SmallCheckpoint",
    "BigCheckpoint",
    "SemiIrregularityWitness",
    "gap_small_bound",
    "gap_small_bound_exact",
    "semi_irregular_gap_witness",
    "verify_witness",
    "lift_semi_irregular",
    "ProximalAsymptoticReport",
    "proximal_asymptotic_check",
    "LiYorkePairCertificate",
    "li_yorke_pair_certificate",
    "scrambled_family",
    "DetectorVerdict",
    "semi_irregularity_detector",
    "exact_rank",
]


def orbit(op, f: TruncatedEntireFunction, K: int) -> list[TruncatedEntireFunction]:
    """``[f, T f, ..., T^K f]`` for a symbol or any callable ``T``."""
    if K < 0:
        raise ValueError("horizon must be >= 0")
    step = (lambda g: apply(op, g)) if isinstance(op, ConvolutionSymbol) else op
    out = [f]
    for _ in range(K):
        out.append(step(out[-1]))
    return out


@dataclass(frozen=True)
class OrbitRecord:
    k: int
    majorant: tuple[float, ...]
    grid_sup: tuple[float, ...]
    eval_at_zero: complex
    essential_dim: int


def _radius_tag(r: float) -> str:
    return str(int(r)) if float(r).is_integer() else repr(float(r))


@dataclass(frozen=True)
class OrbitTrace:
    records: tuple[OrbitRecord, ...]
    radii: tuple[float, ...]
    horizon: int

    def header(self) -> list[str]:
        cols = ["k", "essential_dim", "eval0_re", "eval0_im"]
        for r in self.radii:
            tag = _radius_tag(r)
            cols += [f"majorant_r{tag}", f"gridsup_r{tag}"]
        return cols

    def rows(self) -> list[list]:
        out = []
        for rec in self.records:
            row = [rec.k, rec.essential_dim, rec.eval_at_zero.real, rec.eval_at_zero.imag]
            for m, g in zip(rec.majorant, rec.grid_sup):
                row += [m, g]
            out.append(row)
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header())
        for row in self.rows():
            # repr gives the shortest round-trip decimal for floats
            writer.writerow([repr(x) if isinstance(x, float) else x for x in row])
        return buf.getvalue()


def orbit_trace(
    L: ConvolutionSymbol,
    f: TruncatedEntireFunction,
    K: int,
    radii: Sequence[float],
    samples_per_axis: int = 8,
) -> OrbitTrace:
    radii = tuple(check_radius(r) for r in radii)
    if not radii:
        raise ValueError("at least one radius is required")
    records = []
    for k, g in enumerate(orbit(L, f, K)):
        records.append(
            OrbitRecord(
                k=k,
                majorant=tuple(majorant_seminorm(g, r) for r in radii),
                grid_sup=tuple(grid_sup_estimate(g, r, samples_per_axis) for r in radii),
                eval_at_zero=evaluate(g, ()),
                essential_dim=g.essential_dimension(),
            )
        )
    return OrbitTrace(tuple(records), radii, K)


@dataclass(frozen=True)
class ConfinementCertificate:
    """Essential dimensions along an orbit.

    For symbol operators ``n`` is the essential dimension of the starting
    function and ``holds`` records that no iterate leaves that cylinder.
    For black-box operators ``n`` is the largest dimension seen up to the
    horizon and ``running_max[k]`` is that maximum up to ``k``.
    """

    kind: str
    n: int
    dimensions: tuple[int, ...]
    running_max: tuple[int, ...]
    horizon: int
    holds: bool

    @property
    def uniform(self) -> bool:
        return len(set(self.running_max)) == 1

    def to_dict(self) -> dict:
        return {
            "kind": "confinement",
            "operator_kind": self.kind,
            "n": self.n,
            "dimensions": list(self.dimensions),
            "running_max": list(self.running_max),
            "horizon": self.horizon,
            "holds": self.holds,
        }


def confinement_certificate(op, f: TruncatedEntireFunction, K: int) -> ConfinementCertificate:
    dims = tuple(g.essential_dimension() for g in orbit(op, f, K))
    running = []
    top = 0
    for d in dims:
        top = max(top, d)
        running.append(top)
    if isinstance(op, ConvolutionSymbol):
        n = f.essential_dimension()
        return ConfinementCertificate("symbol", n, dims, tuple(running), K, all(d <= n for d in dims))
    return ConfinementCertificate("black-box", running[-1], dims, tuple(running), K, True)


def variable_raising(f: TruncatedEntireFunction) -> TruncatedEntireFunction:
    """``f -> z_{d+1} f`` with ``d`` the essential dimension: linear, but not a convolution operator."""
    return f * monomial({f.essential_dimension() + 1: 1})


def _max_abs_functional(iterates, alpha) -> float:
    return max((abs(coefficient_functional(g, alpha)) for g in iterates), default=0.0)


@dataclass(frozen=True)
class NonCyclicityCertificate:
    """A coefficient functional killing the orbit span but not the witness ``z_{n+1}``."""

    operator: ConvolutionSymbol
    function: TruncatedEntireFunction
    n: int
    annihilator_index: MultiIndex
    witness: TruncatedEntireFunction
    horizon_checked: int
    max_abs_functional_on_orbit: float
    witness_value: complex
    orbit: tuple[TruncatedEntireFunction, ...] = field(default=(), repr=False, compare=False)

    def is_valid(self) -> bool:
        return self.max_abs_functional_on_orbit == 0 and self.witness_value == 1

    def to_dict(self, include_orbit: bool = False) -> dict:
        data = {
            "kind": "non-cyclicity",
            "operator": symbol_to_dict(self.operator),
            "function": series_to_dict(self.function),
            "n": self.n,
            "annihilator_index": {str(v): e for v, e in self.annihilator_index},
            "witness": series_to_dict(self.witness),
            "horizon_checked": self.horizon_checked,
            "max_abs_functional_on_orbit": self.max_abs_functional_on_orbit,
            "witness_value": [self.witness_value.real, self.witness_value.imag],
            "valid": self.is_valid(),
        }
        if include_orbit:
            data["orbit"] = [series_to_dict(g) for g in self.orbit]
        return data


def non_cyclicity_certificate(
    L: ConvolutionSymbol, f: TruncatedEntireFunction, K: int
) -> NonCyclicityCertificate:
    n = f.essential_dimension()
    alpha = MultiIndex.unit(n + 1)
    iterates = orbit(L, f, K)
    witness = monomial(alpha)
    return NonCyclicityCertificate(
        operator=L,
        function=f,
        n=n,
        annihilator_index=alpha,
        witness=witness,
        horizon_checked=K,
        max_abs_functional_on_orbit=_max_abs_functional(iterates, alpha),
        witness_value=coefficient_functional(witness, alpha),
        orbit=tuple(iterates),
    )


def recheck_non_cyclicity(data: dict) -> bool:
    """Re-verify a serialized certificate from its stored orbit alone.

    Reads only the JSON fields, so it shares no state with the code that
    produced the certificate.
    """
    alpha = {int(v): int(e) for v, e in data["annihilator_index"].items()}
    if alpha != {data["n"] + 1: 1} or "orbit" not in data:
        return False
    if len(data["orbit"]) != data["horizon_checked"] + 1:
        return False
    for element in data["orbit"]:
        for term in element["terms"]:
            if {int(v): int(e) for v, e in term["exp"].items()} == alpha:
                if term["re"] != 0 or term["im"] != 0:
                    return False
    witness = data["witness"]["terms"]
    return (
        len(witness) == 1
        and {int(v): int(e) for v, e in witness[0]["exp"].items()} == alpha
        and (witness[0]["re"], witness[0]["im"]) == (1.0, 0.0)
    )


def _cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _cdiv(a, b):
    den = b[0] * b[0] + b[1] * b[1]
    return ((a[0] * b[0] + a[1] * b[1]) / den, (a[1] * b[0] - a[0] * b[1]) / den)


def exact_rank(rows: Sequence[Sequence[complex]]) -> int:
    """Rank over the complex rationals of a matrix of floats, with no tolerance."""
    mat = [[(Fraction(z.real), Fraction(z.imag)) for z in map(complex, row)] for row in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][col] != (0, 0)), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        for i in range(rank + 1, len(mat)):
            if mat[i][col] == (0, 0):
                continue
            ratio = _cdiv(mat[i][col], mat[rank][col])
            mat[i] = [
                (a[0] - p[0], a[1] - p[1])
                for a, p in ((x, _cmul(ratio, y)) for x, y in zip(mat[i], mat[rank]))
            ]
        rank += 1
    return rank


@dataclass(frozen=True)
class SubspaceCertificate:
    operator: ConvolutionSymbol
    generators: tuple[TruncatedEntireFunction, ...]
    m: int
    annihilator_index: MultiIndex
    witness: TruncatedEntireFunction
    horizon_checked: int
    max_orbit_dimension: int
    max_abs_functional_on_orbit: float
    witness_value: complex
    justification: str = (
        "every L^k g_i lies in the cylinder of the first m variables; L^k(V) is "
        "spanned by the L^k g_i, so the whole orbit of V lies there and the "
        "coefficient of z_{m+1} vanishes on it"
    )

    def is_valid(self) -> bool:
        return (
            self.max_orbit_dimension <= self.m
            and self.max_abs_functional_on_orbit == 0
            and self.witness_value == 1
        )

    def to_dict(self) -> dict:
        return {
            "kind": "subspace-confinement",
            "operator": symbol_to_dict(self.operator),
            "generators": [series_to_dict(g) for g in self.generators],
            "m": self.m,
            "annihilator_index": {str(v): e for v, e in self.annihilator_index},
            "witness": series_to_dict(self.witness),
            "horizon_checked": self.horizon_checked,
            "max_orbit_dimension": self.max_orbit_dimension,
            "max_abs_functional_on_orbit": self.max_abs_functional_on_orbit,
            "witness_value": [self.witness_value.real, self.witness_value.imag],
            "justification": self.justification,
            "valid": self.is_valid(),
        }


def subspace_orbit_certificate(
    L: ConvolutionSymbol, generators: Sequence[TruncatedEntireFunction], K: int
) -> SubspaceCertificate:
    generators = tuple(generators)
    if not generators:
        raise ValueError("at least one generator is required")
    keys = sorted({k for g in generators for k in g.terms}, key=MultiIndex.sort_key)
    rows = [[g.coefficient(k) for k in keys] for g in generators]
    if exact_rank(rows) < len(generators):
        raise DependentGenerators("generators are linearly dependent")
    m = max(g.essential_dimension() for g in generators)
    alpha = MultiIndex.unit(m + 1)
    top_dim = 0
    top_func = 0.0
    for g in generators:
        iterates = orbit(L, g, K)
        top_dim = max(top_dim, max(h.essential_dimension() for h in iterates))
        top_func = max(top_func, _max_abs_functional(iterates, alpha))
    witness = monomial(alpha)
    return SubspaceCertificate(
        operator=L,
        generators=generators,
        m=m,
        annihilator_index=alpha,
        witness=witness,
        horizon_checked=K,
        max_orbit_dimension=top_dim,
        max_abs_functional_on_orbit=top_func,
        witness_value=coefficient_functional(witness, alpha),
    )


@dataclass(frozen=True)
class SmallCheckpoint:
    k: int
    upper_bounds: tuple[float, ...]


@dataclass(frozen=True)
class BigCheckpoint:
    k: int
    point: tuple[complex, ...]
    lower_bound: float


@dataclass(frozen=True)
class SemiIrregularityWitness:
    """Checkpoint evidence that ``T^k f`` has a subsequence tending to 0 but does not tend to 0.

    ``upper_bounds[i]`` bounds ``p_r(T^k f)`` for ``r = radii[i]``;
    ``lower_bound`` is ``|(T^k f)(point)|``.
    """

    operator: ConvolutionSymbol
    function: TruncatedEntireFunction
    n: int
    radii: tuple[float, ...]
    small_checkpoints: tuple[SmallCheckpoint, ...]
    big_checkpoints: tuple[BigCheckpoint, ...]
    eps: float
    delta: float

    def is_valid(self) -> bool:
        if not self.small_checkpoints or not self.big_checkpoints:
            return False
        if any(b >= self.eps for c in self.small_checkpoints for b in c.upper_bounds):
            return False
        if any(c.lower_bound <= self.delta for c in self.big_checkpoints):
            return False
        small = [c.k for c in self.small_checkpoints]
        big = [c.k for c in self.big_checkpoints]
        increasing = all(a < b for a, b in zip(small, small[1:])) and all(
            a < b for a, b in zip(big, big[1:])
        )
        # after every small checkpoint the orbit is seen large again
        return increasing and not set(small) & set(big) and small[-1] < big[-1]

    def scaled(self, c: complex) -> "SemiIrregularityWitness":
        """Witness for ``c * f``: every bound and both thresholds scale by ``|c|``."""
        s = abs(complex(c))
        return replace(
            self,
            function=linear_combine([(c, self.function)]),
            small_checkpoints=tuple(
                SmallCheckpoint(p.k, tuple(b * s for b in p.upper_bounds))
                for p in self.small_checkpoints
            ),
            big_checkpoints=tuple(
                BigCheckpoint(p.k, p.point, p.lower_bound * s) for p in self.big_checkpoints
            ),
            eps=self.eps * s,
            delta=self.delta * s,
        )

    def to_dict(self) -> dict:
        return {
            "kind": "semi-irregularity",
            "operator": symbol_to_dict(self.operator),
            "function": series_to_dict(self.function),
            "n": self.n,
            "radii": list(self.radii),
            "eps": self.eps,
            "delta": self.delta,
            "small_checkpoints": [
                {"k": c.k, "upper_bounds": list(c.upper_bounds)} for c in self.small_checkpoints
            ],
            "big_checkpoints": [
                {
                    "k": c.k,
                    "point": [[z.real, z.imag] for z in c.point],
                    "lower_bound": c.lower_bound,
                }
                for c in self.big_checkpoints
            ],
            "valid": self.is_valid(),
        }


def gap_small_bound(blocks: Sequence[int], k: int, r: float) -> float:
    """``sum_{m >= k} r^(m-k) / (m-k)!`` over the blocks: ``p_r`` of the k-th derivative of the gap series."""
    total = 0.0
    for m in blocks:
        d = m - k
        if d < 0:
            continue
        term = 1.0
        for i in range(1, d + 1):
            term *= r / i
        total += term
    return total


def gap_small_bound_exact(blocks: Sequence[int], k: int, r) -> Fraction:
    """Rational value of :func:`gap_small_bound` from integer factorials."""
    r = Fraction(r)
    return sum(
        (r ** (m - k) / math.factorial(m - k) for m in blocks if m >= k), Fraction(0)
    )


def semi_irregular_gap_witness(
    j: int = 1,
    blocks: Sequence[int] | None = None,
    radii: Sequence[float] = (1.0,),
    eps: float = 1e-6,
    delta: float = 0.9,
) -> SemiIrregularityWitness:
    """Witness for the gap series ``sum z_j^{m_i}/m_i!`` under ``d/dz_j``.

    Big checkpoints sit at every block ``m_i``, where the constant term of
    the derivative is 1.  Small checkpoints sit midway between consecutive
    blocks (``3 * 2^(i-1)`` for doubling blocks) and are kept when every
    radius bound is below ``eps``.
    """
    f = gap_series(blocks, j)
    blocks = f.tail.blocks
    radii = tuple(check_radius(r) for r in radii)
    L = derivative(j)
    iterates = orbit(L, f, blocks[-1])
    origin = (0j,) * j

    big = []
    for m in blocks:
        value = abs(evaluate(iterates[m], origin))
        if value > delta:
            big.append(BigCheckpoint(m, origin, value))

    small = []
    for a, b in zip(blocks, blocks[1:]):
        k = (a + b) // 2
        if k <= a:
            continue
        bounds = tuple(gap_small_bound(blocks, k, r) for r in radii)
        if all(x < eps for x in bounds):
            small.append(SmallCheckpoint(k, bounds))

    return SemiIrregularityWitness(L, f, j, radii, tuple(small), tuple(big), eps, delta)


def verify_witness(witness: SemiIrregularityWitness, rel: float = 1e-12) -> bool:
    """Recompute the orbit and check every stored bound against it."""
    last = max(
        [c.k for c in witness.small_checkpoints] + [c.k for c in witness.big_checkpoints],
        default=0,
    )
    iterates = orbit(witness.operator, witness.function, last)
    for c in witness.small_checkpoints:
        for r, bound in zip(witness.radii, c.upper_bounds):
            if majorant_seminorm(iterates[c.k], r) > bound * (1 + rel):
                return False
    for c in witness.big_checkpoints:
        if abs(evaluate(iterates[c.k], c.point)) < c.lower_bound * (1 - rel):
            return False
    return witness.is_valid()


def lift_semi_irregular(
    witness: SemiIrregularityWitness, L: ConvolutionSymbol
) -> SemiIrregularityWitness:
    """Transfer a witness for ``L_n`` on the ``n``-th cylinder to the full operator ``L``.

    ``L^k f = L_n^k f`` on that cylinder, so every bound carries over
    unchanged.
    """
    if not associated_operator(L, witness.n).same_symbol(witness.operator):
        raise AssociatedMismatch(
            f"associated operator of {L.label!r} on cylinder {witness.n} "
            f"differs from {witness.operator.label!r}"
        )
    return replace(witness, operator=L, function=embed(witness.function, witness.n))


@dataclass(frozen=True)
class ProximalAsymptoticReport:
    """Horizon-bounded verdicts on the difference orbit ``T^k (x - y)``.

    ``settling_index`` is the first ``k`` from which every majorant up to the
    horizon stays below ``eps``; ``refutation_k`` is a ``k`` with
    ``|T^k(x-y)(0)| > delta`` lying after every small index.
    """

    proximal_observed: bool
    proximal_ks: tuple[int, ...]
    asymptotic_observed: bool
    settling_index: int | None
    refutation_k: int | None
    horizon: int
    note: str = "horizon-bounded evidence, not a proof"


def proximal_asymptotic_check(
    L: ConvolutionSymbol,
    x: TruncatedEntireFunction,
    y: TruncatedEntireFunction,
    K: int,
    radii: Sequence[float] = (1.0,),
    eps: float = 1e-6,
    delta: float = 0.9,
) -> ProximalAsymptoticReport:
    if K < 1:
        raise ValueError("horizon must be >= 1")
    radii = tuple(check_radius(r) for r in radii)
    diff = linear_combine([(1, x), (-1, y)])
    iterates = orbit(L, diff, K)
    sizes = [max(majorant_seminorm(g, r) for r in radii) for g in iterates]
    lows = [abs(evaluate(g, ())) for g in iterates]

    small = tuple(k for k, s in enumerate(sizes) if s < eps)
    settling = None
    for k in range(K, -1, -1):
        if sizes[k] >= eps:
            break
        settling = k
    last_small = small[-1] if small else 0
    refutation = next(
        (k for k in range(K, -1, -1) if lows[k] > delta and (k > last_small or not small)),
        None,
    )
    return ProximalAsymptoticReport(
        proximal_observed=bool(small),
        proximal_ks=small,
        asymptotic_observed=settling is not None and refutation is None,
        settling_index=settling,
        refutation_k=refutation,
        horizon=K,
    )


@dataclass(frozen=True)
class LiYorkePairCertificate:
    alpha: complex
    lam: complex
    base_function: TruncatedEntireFunction
    witness: SemiIrregularityWitness

    def is_valid(self) -> bool:
        return self.alpha != self.lam and self.witness.is_valid()

    def to_dict(self) -> dict:
        return {
            "kind": "li-yorke-pair",
            "alpha": [self.alpha.real, self.alpha.imag],
            "lambda": [self.lam.real, self.lam.imag],
            "base_function": series_to_dict(self.base_function),
            "witness": self.witness.to_dict(),
            "valid": self.is_valid(),
        }


def li_yorke_pair_certificate(
    witness: SemiIrregularityWitness, alpha: complex, lam: complex
) -> LiYorkePairCertificate:
    """Certificate that ``(alpha f, lam f)`` is a Li-Yorke pair, from a witness for ``f``."""
    alpha, lam = complex(alpha), complex(lam)
    if alpha == lam:
        raise EqualScalars("alpha and lambda must differ")
    scale = abs(alpha - lam)
    if not 1e-6 <= scale <= 1e6:
        raise ScaleOutOfRange(f"|alpha - lambda| = {scale:g} outside [1e-6, 1e6]")
    return LiYorkePairCertificate(alpha, lam, witness.function, witness.scaled(alpha - lam))


def scrambled_family(
    witness: SemiIrregularityWitness, m: int
) -> tuple[list[float], list[LiYorkePairCertificate]]:
    """Scalars ``1 + (i-1)/m`` for ``i = 1..m`` and a certificate for every pair of them."""
    if m < 2:
        raise ValueError("a scrambled family needs at least two members")
    scalars = [1 + (i - 1) / m for i in range(1, m + 1)]
    certs = [
        li_yorke_pair_certificate(witness, scalars[b], scalars[a])
        for a in range(m)
        for b in range(a + 1, m)
    ]
    return scalars, certs


@dataclass(frozen=True)
class DetectorVerdict:
    observed: bool
    small_ks: tuple[int, ...]
    big_ks: tuple[int, ...]
    diagnostics: dict = field(default_factory=dict, compare=False)

    @property
    def label(self) -> str:
        return "Observed" if self.observed else "NotObserved"


def semi_irregularity_detector(
    L,
    f: TruncatedEntireFunction,
    K: int,
    radii: Sequence[float] = (1.0,),
    eps: float = 1e-6,
    delta: float = 0.9,
    samples_per_axis: int = 8,
) -> DetectorVerdict:
    """Look for a small iterate followed later by a large one, up to horizon ``K``.

    Small means every majorant is below ``eps``; large means a point value
    (at the origin or on the sample grid) exceeds ``delta``.  A heuristic:
    ``NotObserved`` never disproves semi-irregularity.
    """
    if K < 1:
        raise ValueError("horizon must be >= 1")
    if not eps < delta:
        raise ValueError("eps must be below delta")
    radii = tuple(check_radius(r) for r in radii)
    iterates = orbit(L, f, K)
    sizes = [max(majorant_seminorm(g, r) for r in radii) for g in iterates]
    lows = [
        max([abs(evaluate(g, ()))] + [grid_sup_estimate(g, r, samples_per_axis) for r in radii])
        for g in iterates
    ]
    small = tuple(k for k, s in enumerate(sizes) if s < eps)
    big = tuple(k for k, v in enumerate(lows) if v > delta)
    observed = bool(small) and bool(big) and big[-1] > small[0]

    diffs = [b - a for a, b in zip(sizes, sizes[1:])]
    if all(d >= 0 for d in diffs) and sizes[-1] > sizes[0]:
        trend = "monotone growth"
    elif all(d <= 0 for d in diffs) and sizes[-1] < sizes[0]:
        trend = "monotone decay"
    else:
        trend = "mixed"
    diagnostics = {
        "trend": trend,
        "first_majorant": sizes[0],
        "final_majorant": sizes[-1],
        "horizon": K,
        "note": "horizon-bounded heuristic",
    }
    return DetectorVerdict(observed, small, big, diagnostics)
