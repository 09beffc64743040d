"""Command line front end: ``convdyn <command> [options]``.

Every command writes deterministic JSON/CSV files into ``--out`` (when
given) and a short summary on stdout.  Exit codes: 0 success, 2 a check or
certificate failed, 3 a search found nothing (``--strict`` only), 4 bad
configuration, 5 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .convolution import (
    derivative,
    eigen_residual,
    find_dichotomy_points,
    is_trivial,
    symbol_to_dict,
)
from .dynamics import (
    confinement_certificate,
    li_yorke_pair_certificate,
    non_cyclicity_certificate,
    orbit_trace,
    scrambled_family,
    semi_irregular_gap_witness,
    semi_irregularity_detector,
    subspace_orbit_certificate,
    lift_semi_irregular,
)
from .errors import (
    AssociatedMismatch,
    ConfigError,
    ConvDynError,
    DependentGenerators,
    NotFound,
    TrivialOperator,
)
from .presets import parse_gap_preset, parse_complex, parse_function, parse_operator
from .suites import certificate_suite, convolution_suite, lemma_suite

log = logging.getLogger("convdyn")

COMMANDS = (
    "orbit",
    "certify-noncyclic",
    "certify-nonsupercyclic",
    "liyorke",
    "lemmas",
    "eigen-search",
    "demo-gap",
)

EXIT_OK, EXIT_INVALID, EXIT_NOT_FOUND, EXIT_CONFIG, EXIT_IO = 0, 2, 3, 4, 5

DEFAULTS = {
    "operator": "d1",
    "function": None,
    "horizon": None,
    "radii": "1",
    "eps": 1e-6,
    "delta": 0.9,
    "seed": 42,
    "cases": 1000,
    "out": None,
    "strict": False,
    "pair": "1,0",
    "count": 0,
    "samples": 8,
}

DEFAULT_HORIZON = {
    "orbit": 16,
    "certify-noncyclic": 50,
    "certify-nonsupercyclic": 50,
    "liyorke": 128,
    "eigen-search": 0,
    "demo-gap": 128,
    "lemmas": 0,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="convdyn", description=__doc__.splitlines()[0])
    p.add_argument("command", nargs="?", choices=COMMANDS)
    p.add_argument("--command", dest="command_flag", choices=COMMANDS)
    p.add_argument("--config", help="JSON file with one experiment or a list of them")
    p.add_argument("--operator")
    p.add_argument(
        "--function",
        action="append",
        help="function preset or JSON; repeat for subspace generators",
    )
    p.add_argument("--horizon", type=int)
    p.add_argument("--radii", help="comma separated, e.g. 1,2")
    p.add_argument("--eps", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--cases", type=int)
    p.add_argument("--pair", help="alpha,lambda for liyorke")
    p.add_argument("--count", type=int, help="scrambled family size for liyorke")
    p.add_argument("--samples", type=int, help="grid samples per axis")
    p.add_argument("--out", help="output directory")
    p.add_argument("--strict", action="store_true", default=None)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _merge(args: argparse.Namespace) -> list[dict]:
    cli = {k: v for k, v in vars(args).items() if v is not None}
    command = cli.pop("command_flag", None) or cli.pop("command", None)
    cli.pop("command", None)
    cli.pop("verbose", None)
    config_path = cli.pop("config", None)
    entries = [{}]
    if config_path:
        try:
            loaded = json.loads(Path(config_path).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}", "config") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON: {exc}", "config") from None
        if isinstance(loaded, dict) and "experiments" in loaded:
            loaded = loaded["experiments"]
        entries = loaded if isinstance(loaded, list) else [loaded]
    configs = []
    for entry in entries:
        if not isinstance(entry, dict):
            raise ConfigError("each experiment must be a JSON object", "config")
        cfg = {**DEFAULTS, **entry, **cli}
        if command:
            cfg["command"] = command
        if isinstance(cfg.get("function"), str):
            cfg["function"] = [cfg["function"]]
        configs.append(_validate(cfg))
    return configs


def _validate(cfg: dict) -> dict:
    command = cfg.get("command")
    if command not in COMMANDS:
        raise ConfigError(f"unknown or missing command {command!r}", "command")
    if cfg.get("horizon") is None:
        cfg["horizon"] = DEFAULT_HORIZON[command]
    K = int(cfg["horizon"])
    if not 0 <= K <= 10**6:
        raise ConfigError("horizon must lie in [0, 1e6]", "horizon")
    cfg["horizon"] = K
    radii = cfg["radii"]
    if isinstance(radii, str):
        try:
            radii = [float(r) for r in radii.split(",") if r.strip()]
        except ValueError:
            raise ConfigError(f"bad radii {cfg['radii']!r}", "radii") from None
    radii = [float(r) for r in radii]
    if not radii or any(not r > 0 for r in radii):
        raise ConfigError("radii must be positive", "radii")
    cfg["radii"] = radii
    if command in ("orbit", "certify-noncyclic", "certify-nonsupercyclic") and not cfg.get("function"):
        raise ConfigError(f"{command} needs --function", "function")
    if command == "liyorke" and cfg["horizon"] < 1:
        raise ConfigError("liyorke needs a horizon >= 1", "horizon")
    return cfg


class _Emitter:
    def __init__(self, out, name=None):
        self.dir = None
        if out:
            self.dir = Path(out) / name if name else Path(out)
        self.lines: list[str] = []

    def say(self, line: str):
        self.lines.append(line)
        print(line)

    def write(self, filename: str, text: str):
        if self.dir is None:
            return
        self.dir.mkdir(parents=True, exist_ok=True)
        (self.dir / filename).write_text(text)

    def json(self, filename: str, data):
        self.write(filename, json.dumps(data, indent=2) + "\n")

    def finish(self):
        self.write("summary.txt", "\n".join(self.lines) + "\n")


def _cmd_orbit(cfg, em):
    L = parse_operator(cfg["operator"])
    f = parse_function(cfg["function"][0])
    trace = orbit_trace(L, f, cfg["horizon"], cfg["radii"], cfg["samples"])
    em.write("trace.csv", trace.to_csv())
    conf = confinement_certificate(L, f, cfg["horizon"])
    em.json("confinement.json", conf.to_dict())
    em.say(f"orbit: {len(trace.records)} records, cylinder n = {conf.n}, confined = {conf.holds}")
    if em.dir is None:
        sys.stdout.write(trace.to_csv())
    return EXIT_OK if conf.holds else EXIT_INVALID


def _cmd_noncyclic(cfg, em):
    L = parse_operator(cfg["operator"])
    f = parse_function(cfg["function"][0])
    cert = non_cyclicity_certificate(L, f, cfg["horizon"])
    em.json("noncyclicity.json", cert.to_dict(include_orbit=True))
    em.say(
        f"non-cyclicity: n = {cert.n}, annihilator z{cert.n + 1}, "
        f"max |functional| on orbit = {cert.max_abs_functional_on_orbit!r}, "
        f"witness value = {cert.witness_value.real!r}, valid = {cert.is_valid()}"
    )
    return EXIT_OK if cert.is_valid() else EXIT_INVALID


def _cmd_nonsupercyclic(cfg, em):
    L = parse_operator(cfg["operator"])
    gens = [parse_function(g) for g in cfg["function"]]
    try:
        cert = subspace_orbit_certificate(L, gens, cfg["horizon"])
    except DependentGenerators as exc:
        raise ConfigError(str(exc), "function") from None
    em.json("subspace.json", cert.to_dict())
    em.say(
        f"subspace confinement: dim V = {len(gens)}, m = {cert.m}, "
        f"max orbit dimension = {cert.max_orbit_dimension}, valid = {cert.is_valid()}"
    )
    return EXIT_OK if cert.is_valid() else EXIT_INVALID


def _gap_witness(cfg, j, blocks):
    return semi_irregular_gap_witness(j, blocks, cfg["radii"], cfg["eps"], cfg["delta"])


def _cmd_liyorke(cfg, em):
    L = parse_operator(cfg["operator"])
    fn = (cfg.get("function") or ["gap:1"])[0]
    gap = parse_gap_preset(fn)
    if gap is None:
        f = parse_function(fn)
        verdict = semi_irregularity_detector(
            L, f, cfg["horizon"], cfg["radii"], cfg["eps"], cfg["delta"], cfg["samples"]
        )
        em.json(
            "detector.json",
            {
                "kind": "semi-irregularity-detector",
                "verdict": verdict.label,
                "small_ks": list(verdict.small_ks),
                "big_ks": list(verdict.big_ks),
                "diagnostics": verdict.diagnostics,
            },
        )
        em.say(f"detector: {verdict.label} ({verdict.diagnostics['trend']}, horizon-bounded)")
        return EXIT_OK

    j, blocks = gap
    witness = _gap_witness(cfg, j, blocks)
    if not L.same_symbol(witness.operator):
        try:
            witness = lift_semi_irregular(witness, L)
        except AssociatedMismatch as exc:
            em.say(f"lift failed: {exc}")
            return EXIT_INVALID if cfg["strict"] else EXIT_OK
    em.json("witness.json", witness.to_dict())
    try:
        alpha, lam = (parse_complex(x) for x in str(cfg["pair"]).split(","))
    except ValueError:
        raise ConfigError(f"bad pair {cfg['pair']!r}", "pair") from None
    pair = li_yorke_pair_certificate(witness, alpha, lam)
    em.json("pair.json", pair.to_dict())
    valid = witness.is_valid() and pair.is_valid()
    em.say(
        f"li-yorke: witness valid = {witness.is_valid()}, "
        f"pair ({alpha:g}, {lam:g}) valid = {pair.is_valid()}"
    )
    if cfg["count"]:
        scalars, certs = scrambled_family(witness, int(cfg["count"]))
        em.json(
            "scrambled.json",
            {"kind": "scrambled-family", "scalars": scalars, "pairs": [c.to_dict() for c in certs]},
        )
        good = sum(c.is_valid() for c in certs)
        em.say(f"scrambled family: {good}/{len(certs)} pair certificates valid")
        valid = valid and good == len(certs)
    return EXIT_OK if valid else EXIT_INVALID


def _cmd_lemmas(cfg, em):
    seed, cases = int(cfg["seed"]), int(cfg["cases"])
    reports = [lemma_suite(seed, cases), convolution_suite(seed, cases)]
    reports += list(certificate_suite(seed, max(cases // 10, 1), max(cases // 20, 1)))
    for r in reports:
        em.say(f"{'PASS' if r.ok else 'FAIL'} {r.name}: {r.passed}/{r.cases} pass")
        log.info("%s", r.line())
    em.json(
        "lemmas.json",
        {
            "kind": "lemma-suite",
            "seed": seed,
            "suites": [
                {"name": r.name, "cases": r.cases, "passed": r.passed, "failures": r.failures}
                for r in reports
            ],
        },
    )
    return EXIT_OK if all(r.ok for r in reports) else EXIT_INVALID


def _cmd_eigen(cfg, em):
    L = parse_operator(cfg["operator"])
    if is_trivial(L):
        em.say(f"eigen-search: {L.label} is trivial (scalar multiple of the identity)")
        return EXIT_INVALID if cfg["strict"] else EXIT_OK
    near = [abs(c) for k, c in L.items() if k]
    if max(near) < 1e-12:
        em.say("diagnostic: symbol is numerically close to a multiple of the identity")
    try:
        res = find_dichotomy_points(L)
    except NotFound as exc:
        em.json("eigen.json", {"kind": "dichotomy", "found": False, "log": exc.log})
        em.say("eigen-search: NotFound within budget")
        return EXIT_NOT_FOUND if cfg["strict"] else EXIT_OK
    ones = [1.0] * max(L.variable_span(), 1)
    residuals = {}
    for D in (10, 20):
        value, bound = eigen_residual(L, ones, D, 1.0)
        residuals[str(D)] = {"residual": value, "bound": bound}
    pair = lambda z: [[x.real, x.imag] for x in z]  # noqa: E731
    em.json(
        "eigen.json",
        {
            "kind": "dichotomy",
            "found": True,
            "operator": symbol_to_dict(L),
            "small": pair(res.small),
            "big": pair(res.big),
            "abs_phi_small": abs(res.phi_small),
            "abs_phi_big": abs(res.phi_big),
            "boundary": pair(res.boundary) if res.boundary else None,
            "eigen_residual_p1": residuals,
        },
    )
    em.say(
        f"eigen-search: |phi| = {abs(res.phi_small):.6g} at {res.small}, "
        f"|phi| = {abs(res.phi_big):.6g} at {res.big}"
    )
    return EXIT_OK


def _cmd_demo_gap(cfg, em):
    fn = (cfg.get("function") or ["gap:1"])[0]
    gap = parse_gap_preset(fn)
    if gap is None:
        raise ConfigError("demo-gap needs a gap: preset", "function")
    j, blocks = gap
    witness = _gap_witness(cfg, j, blocks)
    em.json("witness.json", witness.to_dict())
    trace = orbit_trace(derivative(j), witness.function, cfg["horizon"], cfg["radii"], cfg["samples"])
    em.write("trace.csv", trace.to_csv())
    small = ", ".join(f"k={c.k}: {max(c.upper_bounds):.4g}" for c in witness.small_checkpoints)
    em.say(f"gap witness for d{j}: blocks {list(witness.function.tail.blocks)}")
    em.say(f"  small checkpoints (upper bounds): {small}")
    em.say(f"  big checkpoints: {[c.k for c in witness.big_checkpoints]}, valid = {witness.is_valid()}")
    return EXIT_OK if witness.is_valid() else EXIT_INVALID


HANDLERS = {
    "orbit": _cmd_orbit,
    "certify-noncyclic": _cmd_noncyclic,
    "certify-nonsupercyclic": _cmd_nonsupercyclic,
    "liyorke": _cmd_liyorke,
    "lemmas": _cmd_lemmas,
    "eigen-search": _cmd_eigen,
    "demo-gap": _cmd_demo_gap,
}


def run(cfg: dict, name: str | None = None) -> int:
    """Run one validated experiment configuration and return its exit code."""
    em = _Emitter(cfg.get("out"), name)
    try:
        code = HANDLERS[cfg["command"]](cfg, em)
    except ConfigError:
        raise
    except TrivialOperator as exc:
        em.say(f"error: {exc}")
        code = EXIT_INVALID
    except ConvDynError as exc:
        raise ConfigError(str(exc)) from None
    em.finish()
    return code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    try:
        configs = _merge(args)
        codes = []
        for i, cfg in enumerate(configs):
            name = cfg.get("name") or (f"{i:02d}-{cfg['command']}" if len(configs) > 1 else None)
            codes.append(run(cfg, name))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO
    return max(codes, default=EXIT_OK)


if __name__ == "__main__":
    sys.exit(main())
