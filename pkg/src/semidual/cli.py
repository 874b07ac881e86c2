"""Command-line front end: ``semidual <subcommand> ...``.

Every subcommand writes one JSON report to stdout (or ``--output``) and a short
human summary to stderr.  Exit status: 0 when every verdict passes, 1 when any
verdict fails, 2 on usage, parse or precondition errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import numpy as np

from . import hilbert as hb
from . import monomial as mc
from .artinian import ModuleError, NotArtinian, algebra_from_ideal, matlis_dual, residue_field
from .fat_points import SchemeError, degree_slice, multiplicity_equality_check, slice_vanishes
from .resolution import minimal_free_resolution
from .semidualizing import (
    DEFAULT_SEED,
    PreconditionError,
    beta_inequality_check,
    betti_convolution_check,
    classification_search,
    dagger_checks,
    iso_search,
    is_semidualizing,
    standard_modules,
)
from .textio import ParseError, format_ideal, module_to_json, read_fat_points, read_ideal, read_module

PRIME_ENV = "SEMIDUAL_PRIME"
FALLBACK_PRIME = 2

ENGINE_ERRORS = (PreconditionError, NotArtinian, ModuleError, SchemeError, hb.NotPrimary,
                 hb.NotCohenMacaulay, hb.NotStabilized, mc.ContextMismatch)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    inputs: dict
    prime: int
    i_max: int = 8
    d_max: int | None = None
    trials: int = 500
    b_max: int = 3
    length: int = 4
    seed: int = DEFAULT_SEED
    output: str | None = None
    timing: bool = False
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("i_max", "trials", "b_max", "length"):
            if getattr(self, name) < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")
        if self.d_max is not None and self.d_max < 1:
            raise UsageError("--d-max must be positive")
        if self.prime not in (2, 3, 5, 7, 11, 13):
            raise UsageError(f"unsupported prime {self.prime}; use a small prime such as 2, 3 or 5")


@dataclass
class Report:
    subcommand: str
    inputs: dict
    results: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    timing: float | None = None
    error: dict | None = None

    def to_json(self) -> dict:
        out = {"subcommand": self.subcommand, "inputs": self.inputs,
               "results": self.results, "verdicts": self.verdicts}
        if self.error is not None:
            out["error"] = self.error
        if self.timing is not None:
            out["timing_seconds"] = round(self.timing, 4)
        return out

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return 2
        return 1 if any(is_failure(v) for v in self.verdicts.values()) else 0


def is_failure(verdict: str) -> bool:
    return verdict == "fail" or verdict.startswith("no(")


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_jsonable) + "\n"


# engine payloads -------------------------------------------------------------------

def ideal_str(I: mc.MonomialIdeal) -> str:
    return str(I)


def decompose_payload(I):
    comps = mc.irreducible_decomposition(I)
    primes = mc.associated_primes(I)
    check = mc.decomposition_check(I)
    return {
        "generators": ideal_str(I),
        "components": [ideal_str(c) for c in comps],
        "radical": ideal_str(mc.radical(I)),
        "associated_primes": [{"variables": P.names(I.ctx), "minimal": P.minimal} for P in primes.primes],
        "dim": primes.dim,
        "membership": {k: v for k, v in check.items() if k != "check"},
    }, {"decomposition": check["check"]}


def polarize_payload(I):
    pol = mc.polarize(I)
    chk = hb.polarization_hilbert_check(I)
    return {
        "polarized": ideal_str(pol.ideal),
        "variables": list(pol.ctx.names),
        "differences": [f"{a}-{b}" for a, b in pol.differences()],
        "hilbert": chk,
    }, {"polarization": chk["check"]}


def hilbert_payload(I, d_max=None):
    data = hb.hilbert_polynomial(I)
    out = data.to_json()
    if d_max is not None:
        out["values"] = list(hb.hilbert_function(I, d_max).values)
    series = hb.hilbert_series(I)
    out["series"] = {"numerator": list(series.numerator), "pole_order": series.pole_order}
    return out, {}


def multiplicity_payload(I, J=None):
    Jm = mc.MonomialIdeal.maximal(I.ctx) if J is None else J
    hs = hb.hilbert_samuel(I, Jm)
    results = {"J": ideal_str(Jm), "hilbert_samuel": hs.to_json(), "e": hs.multiplicity}
    verdicts = {}
    if Jm == mc.MonomialIdeal.maximal(I.ctx):
        hp = hb.hilbert_polynomial(I)
        results["e_hilbert_polynomial"] = hp.multiplicity
        verdicts["routes_agree"] = "pass" if hp.multiplicity == hs.multiplicity else "fail"
    return results, verdicts


def additivity_payload(I, J=None):
    rep = hb.additivity_check(I, J)
    return rep.to_json(), {"additivity": rep.check}


def canonical_payload(I):
    rep = hb.canonical_multiplicity_check(I)
    return rep.to_json(), {"canonical": rep.check}


def resolve_module(A, choice: str):
    R, D = standard_modules(A)
    if choice == "R":
        return R
    if choice == "D":
        return D
    if choice == "k":
        return residue_field(A)
    return read_module(choice, A)


def semidualizing_payload(M, i_max):
    v = is_semidualizing(M, i_max)
    return {"module": M.name, "dim": M.dim, "verdict": str(v)}, {"semidualizing": str(v)}


def dual_payload(M):
    Dm = matlis_dual(M)
    results = {"module": module_to_json(Dm), "dim": Dm.dim, "beta0": Dm.num_generators,
               "socle_dim": Dm.socle_dim, "source_beta0": M.num_generators, "source_socle_dim": M.socle_dim}
    ok = Dm.dim == M.dim and Dm.num_generators == M.socle_dim and Dm.socle_dim == M.num_generators
    return results, {"duality": "pass" if ok else "fail"}


def resolve_payload(M, L):
    res = minimal_free_resolution(M, L)
    ver = res.verify()
    return {"module": M.name, "betti": res.betti[: L + 1], "checks": ver}, {"resolution": "pass" if ver["ok"] else "fail"}


def dagger_payload(C, i_max):
    rep = dagger_checks(C, i_max)
    conv = betti_convolution_check(C, min(4, i_max))
    results = {"dagger": rep.to_json(), "betti_convolution": conv.to_json()}
    verdicts = {"dagger": rep.verdict, "betti_convolution": conv.verdict}
    R, _ = standard_modules(C.algebra)
    if not iso_search(C, R).isomorphic and C.dim == C.algebra.dim:
        b = beta_inequality_check(C)
        results["beta_inequality"] = b.to_json()
        verdicts["beta_inequality"] = b.verdict
    return results, verdicts


def search_payload(A, cfg: RunConfig):
    found = classification_search(A, trials=cfg.trials, b_max=cfg.b_max, i_max=min(cfg.i_max, 6),
                                  seed=cfg.seed)
    results = found.to_json()
    results["edim"] = A.embedding_dim
    verdicts = {}
    if A.embedding_dim <= 2:
        verdicts["at_most_two_classes"] = "pass" if len(found.classes) <= 2 else "fail"
    verdicts["cyclic_implies_free"] = "pass" if found.stats["cyclic_semidualizing_not_R"] == 0 else "fail"
    return results, verdicts


def fatpoints_payload(S, d_max=None):
    rep = multiplicity_equality_check(S, d_max)
    out = rep.to_json()
    s = S.total_multiplicity
    sl = degree_slice(S, s)
    out["slice_round_trip_degree"] = s
    ok = slice_vanishes(S, sl)
    return out, {"degree": rep.check, "slice_round_trip": "pass" if ok else "fail"}


# sweep ------------------------------------------------------------------------

def corpus_dir() -> Path:
    return Path(str(resources.files("semidual") / "corpus"))


def sweep_entry_ideal(I: mc.MonomialIdeal, cfg: RunConfig) -> tuple[dict, dict]:
    results, verdicts = {}, {}
    if I.is_unit:
        raise UsageError("the unit ideal is not a valid sweep entry")

    def run(name, fn, *args):
        try:
            r, v = fn(*args)
        except ENGINE_ERRORS + (ValueError,) as exc:
            results[name] = {"not_applicable": f"{type(exc).__name__}: {exc}"}
            return
        results[name] = r
        verdicts.update({f"{name}.{k}": val for k, val in v.items()})

    run("decompose", decompose_payload, I)
    run("polarize", polarize_payload, I)
    run("hilbert", hilbert_payload, I)
    run("multiplicity", multiplicity_payload, I)
    run("additivity", additivity_payload, I)
    pd = mc.associated_primes(I)
    if pd.dim == 1 and hb.is_certified_cm(I):
        run("canonical", canonical_payload, I)
    if I.is_artinian:
        A = algebra_from_ideal(I, cfg.prime)
        R, D = standard_modules(A)
        run("semidualizing_R", semidualizing_payload, R, cfg.i_max)
        run("semidualizing_D", semidualizing_payload, D, cfg.i_max)
        run("dagger_D", dagger_payload, D, min(cfg.i_max, 6))
        gor = iso_search(D, R).isomorphic
        results["gorenstein"] = {"socle_dim": A.socle_dim, "D_iso_R": gor}
        verdicts["gorenstein.socle_criterion"] = "pass" if gor == (A.socle_dim == 1) else "fail"
        small = RunConfig("search", {}, cfg.prime, i_max=min(cfg.i_max, 4), trials=min(cfg.trials, 40),
                          b_max=cfg.b_max, seed=cfg.seed)
        run("search", search_payload, A, small)
    return results, verdicts


def run_sweep(cfg: RunConfig) -> tuple[dict, dict]:
    root = Path(cfg.inputs.get("corpus") or corpus_dir())
    if not root.is_dir():
        raise UsageError(f"corpus directory {root} does not exist")
    entries, verdicts = {}, {}
    counts = {"pass": 0, "fail": 0}
    for path in sorted(root.iterdir()):
        if path.suffix == ".ideal":
            r, v = sweep_entry_ideal(read_ideal(path), cfg)
        elif path.suffix == ".points":
            r, v = fatpoints_payload(read_fat_points(path), cfg.d_max)
        else:
            continue
        entries[path.name] = {"results": r, "verdicts": v}
        for name, val in v.items():
            key = "fail" if is_failure(val) else "pass"
            counts[key] += 1
        bad = [k for k, val in v.items() if is_failure(val)]
        verdicts[path.name] = "fail" if bad else "pass"
    return {"entries": entries, "counts": counts, "corpus": root.name}, verdicts


# dispatch -----------------------------------------------------------------------

def _need(cfg, key):
    value = cfg.inputs.get(key)
    if value is None:
        raise UsageError(f"{cfg.subcommand} needs --{key}")
    return value


def dispatch(cfg: RunConfig) -> tuple[dict, dict]:
    sub = cfg.subcommand
    if sub == "sweep":
        return run_sweep(cfg)
    if sub == "fatpoints":
        return fatpoints_payload(read_fat_points(_need(cfg, "scheme")), cfg.d_max)
    I = read_ideal(_need(cfg, "ideal"))
    if sub == "decompose":
        return decompose_payload(I)
    if sub == "polarize":
        return polarize_payload(I)
    if sub == "hilbert":
        return hilbert_payload(I, cfg.d_max)
    J = read_ideal(cfg.inputs["J"]) if cfg.inputs.get("J") else None
    if J is not None and J.ctx != I.ctx:
        raise UsageError("--J must use the same variables as --ideal")
    if sub == "multiplicity":
        return multiplicity_payload(I, J)
    if sub == "additivity":
        return additivity_payload(I, J)
    if sub == "canonical":
        return canonical_payload(I)
    A = algebra_from_ideal(I, cfg.prime)
    if sub == "search":
        return search_payload(A, cfg)
    M = resolve_module(A, cfg.inputs.get("module") or "D")
    if sub == "semidualizing":
        return semidualizing_payload(M, cfg.i_max)
    if sub == "dual":
        return dual_payload(M)
    if sub == "resolve":
        return resolve_payload(M, cfg.length)
    if sub == "dagger":
        v = is_semidualizing(M, cfg.i_max)
        if not v.holds:
            raise PreconditionError(f"module is not semidualizing: {v}")
        return dagger_payload(M, min(cfg.i_max, 6))
    raise UsageError(f"unknown subcommand {sub}")


def run(cfg: RunConfig) -> Report:
    report = Report(cfg.subcommand, {k: v for k, v in cfg.inputs.items() if v is not None})
    report.inputs.update({"prime": cfg.prime, "seed": cfg.seed, "i_max": cfg.i_max, "trials": cfg.trials,
                          "b_max": cfg.b_max, "length": cfg.length, "d_max": cfg.d_max})
    start = time.perf_counter()
    try:
        report.results, report.verdicts = dispatch(cfg)
    except (UsageError, ParseError, OSError) as exc:
        report.error = {"type": type(exc).__name__, "message": str(exc)}
    except ENGINE_ERRORS as exc:
        report.error = {"type": type(exc).__name__, "message": str(exc), "kind": "precondition"}
    except ValueError as exc:  # remaining engine-side input rejections
        report.error = {"type": type(exc).__name__, "message": str(exc), "kind": "precondition"}
    if cfg.timing:
        report.timing = time.perf_counter() - start
    return report


SUBCOMMANDS = {
    "decompose": "irreducible decomposition, radical and associated primes",
    "polarize": "polarization with round-trip and Hilbert function checks",
    "hilbert": "Hilbert function, polynomial and series of S/I",
    "multiplicity": "Hilbert-Samuel multiplicity e(J; S/I)",
    "additivity": "additivity formula over top-dimensional minimal primes",
    "canonical": "e(m; omega) = e(m; R) for one-dimensional Cohen-Macaulay quotients",
    "semidualizing": "certify or refute the semidualizing property",
    "dual": "Matlis dual of a module",
    "resolve": "minimal free resolution and Betti numbers",
    "dagger": "Hom(C, D) duality checks and Betti identities",
    "search": "randomized search for semidualizing classes",
    "fatpoints": "degree of a fat point scheme",
    "sweep": "run every engine over a corpus directory",
}


def default_prime() -> int:
    raw = os.environ.get(PRIME_ENV)
    if raw is None:
        return FALLBACK_PRIME
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{PRIME_ENV}={raw!r} is not an integer") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--output", "-o", help="write the JSON report here instead of stdout")
    common.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
    common.add_argument("-p", "--prime", type=int, default=None,
                        help=f"field characteristic (default ${PRIME_ENV} or {FALLBACK_PRIME})")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--i-max", type=int, default=8)
    common.add_argument("--d-max", type=int, default=None)
    common.add_argument("--trials", type=int, default=500)
    common.add_argument("--b-max", type=int, default=3)
    common.add_argument("--length", "-L", type=int, default=4)
    parser = _Parser(prog="semidual", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="subcommand", parser_class=_Parser)
    for name, help_text in SUBCOMMANDS.items():
        sp = subs.add_parser(name, help=help_text, parents=[common])
        if name == "fatpoints":
            sp.add_argument("--scheme", "-s", help="fat point file")
        elif name == "sweep":
            sp.add_argument("--corpus", help="directory of .ideal and .points files (default: bundled)")
        else:
            sp.add_argument("--ideal", "-i")
        if name in ("multiplicity", "additivity"):
            sp.add_argument("--J", help="ideal file for J (default: the maximal ideal)")
        if name in ("semidualizing", "dual", "resolve", "dagger"):
            sp.add_argument("--module", "-m", default="D", help="R, D, k or a module JSON file (default D)")
    return parser


def config_from_args(argv=None) -> RunConfig:
    args = build_parser().parse_args(argv)
    if not args.subcommand:
        raise UsageError("a subcommand is required: " + ", ".join(SUBCOMMANDS))
    inputs = {k: getattr(args, k, None) for k in ("ideal", "J", "module", "scheme", "corpus")}
    inputs = {k: v for k, v in inputs.items() if v is not None}
    prime = args.prime if args.prime is not None else default_prime()
    return RunConfig(args.subcommand, inputs, prime, args.i_max, args.d_max, args.trials, args.b_max,
                     args.length, args.seed, args.output, args.timing)


def _summary(report: Report) -> str:
    if report.error:
        return f"{report.subcommand}: error: {report.error['message']}"
    if not report.verdicts:
        return f"{report.subcommand}: done"
    parts = ", ".join(f"{k}={v}" for k, v in report.verdicts.items())
    return f"{report.subcommand}: {parts}"


def main(argv=None) -> int:
    try:
        cfg = config_from_args(argv)
    except UsageError as exc:
        print(f"semidual: usage error: {exc}", file=sys.stderr)
        return 2
    report = run(cfg)
    text = dumps(report.to_json())
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)
    print(_summary(report), file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
