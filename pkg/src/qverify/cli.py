"""Command-line front end: batch verification runs with text or JSON reports.

Subcommands::

    qverify verify serre     --type TAG --cutoff H [--a VALUE]
    qverify verify boson     --type TAG --cutoff H
    qverify verify klr       --type aN --alpha SPEC --degree D
    qverify verify splitting --type aN --alpha SPEC --degree D [--fixture NAME]
    qverify verify nat       --n N --degree D
    qverify verify surjection [--max-n N]
    qverify lweight          --type aN --kmax K [--a VALUE]
    qverify character        --n N --vertex I --height H [--format table|json]
    qverify prefund verify   --n N --height H [--a VALUE]
    qverify klr check        --type aN --alpha SPEC --degree D
    qverify report merge     FILE... [--output FILE]

Every option may also come from an INI file given by ``--config`` (section
``[qverify]``, keys spelled like the long option without dashes, ``-`` as
``_``); command-line flags win.  Exit status: 0 all checks pass, 1 some
relation fails, 2 usage or configuration error, 3 a guard skipped a check
and ``--strict`` was given.

When ``QVERIFY_CACHE_DIR`` is set, reports of untimed runs are cached there
keyed by the full configuration, so repeated runs return identical bytes.
"""

from __future__ import annotations

import argparse
import configparser
import hashlib
import json
import os
import re
import sys
import time
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any

from . import __version__
from .affine import (
    PRESETS,
    GuardViolation,
    affine_suite,
    lweight_checks,
    sl2_chain_checks,
)
from .bimodule import (
    cokernel_checks,
    lacing_checks,
    m_alpha_spec,
    misconfigured_spec,
    sl2_checks,
    verify_nat_transformations,
    verify_splitting,
    wrong_gtau_spec,
)
from .boson import boson_suite
from .cartan import from_type_tag
from .klr import (
    Quiver,
    StrandGuard,
    klr_suite,
    nil_s_checks,
    obstruction_checks,
    omega00_checks,
)
from .prefund import char_my, char_quotient, character_check, verify_module_relations
from .qcoeff import QScalar, parse_qscalar
from .report import SKIPPED_GUARD, CheckResult, Report, merge_reports
from .uqplus import algebra, surjection_checks

__all__ = ["CACHE_ENV", "EXIT_FAIL", "EXIT_GUARD", "EXIT_PASS", "EXIT_USAGE", "build_parser", "main", "parse_alpha", "run"]

CACHE_ENV = "QVERIFY_CACHE_DIR"
EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3

NOTE_Q_FORMAL = "q is a formal variable; specializations need q not a root of unity"
NOTE_P_CHOICE = "KLR polynomials: Q_ab(u,v) = (v-u)^m_ab (u-v)^m_ba with P_ab(u,v) = (v-u)^m_ab"
NOTE_TRUNCATED = "bimodule statements are certified per degree up to the stated bound"
NOTE_MEMBERSHIP = "membership in N is decided through N = N_r, certified degree by degree for the same ideal"


class UsageError(Exception):
    """Bad flag values or configuration; reported with exit status 2."""


# ------------------------------------------------------------ argument parsing
def parse_alpha(text: str, n: int) -> dict[int, int]:
    """Parse a weight for type ``A_n``.

    Accepted forms: ``"1,2,1"`` (coefficients of ``alpha_1 .. alpha_n``),
    ``"1:2,3:1"`` (vertex:coefficient pairs) and sums such as
    ``"beta"``, ``"2beta+a1"``, ``"beta+a1+a3"`` where ``beta`` is the
    highest root and ``a_i`` (or ``alpha_i``) a simple root.
    """
    t = text.replace(" ", "").lower()
    if not t:
        raise UsageError("empty weight")
    out = {i: 0 for i in range(1, n + 1)}
    if re.fullmatch(r"\d+(,\d+)*", t):
        vals = [int(x) for x in t.split(",")]
        if len(vals) != n:
            raise UsageError(f"weight {text!r} needs {n} coefficients")
        out = {i + 1: v for i, v in enumerate(vals)}
    elif re.fullmatch(r"\d+:\d+(,\d+:\d+)*", t):
        for part in t.split(","):
            a, c = map(int, part.split(":"))
            if a not in out:
                raise UsageError(f"vertex {a} is not in A_{n}")
            out[a] += c
    else:
        for term in t.split("+"):
            m = re.fullmatch(r"(\d*)\*?(beta|a(?:lpha)?_?(\d+))", term)
            if not m:
                raise UsageError(f"cannot parse weight term {term!r}")
            c = int(m.group(1) or 1)
            if m.group(2) == "beta":
                for i in out:
                    out[i] += c
            else:
                a = int(m.group(3))
                if a not in out:
                    raise UsageError(f"vertex {a} is not in A_{n}")
                out[a] += c
    out = {a: c for a, c in out.items() if c}
    if not out:
        raise UsageError("weight must be nonzero")
    return out


def _type_rank(tag: str) -> int:
    m = re.fullmatch(r"a(\d+)", tag.lower())
    if not m:
        raise UsageError(f"expected a type tag aN, got {tag!r}")
    return int(m.group(1))


def _qscalar(text: str) -> QScalar:
    try:
        val = parse_qscalar(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse a = {text!r}: {exc}") from None
    if val.is_zero():
        raise UsageError("a must be nonzero")
    return val


def _common(p: argparse.ArgumentParser, fmt_choices: Sequence[str] = ("text", "json")) -> None:
    g = p.add_argument_group("run options")
    g.add_argument("--config", help="INI file with default option values (section [qverify])")
    g.add_argument("--format", choices=fmt_choices, default=fmt_choices[0], help="output format")
    g.add_argument("--output", "-o", help="write the report to this file instead of stdout")
    g.add_argument("--seed", type=int, default=0, help="random seed for sampled checks")
    g.add_argument("--jobs", type=int, default=1, help="parallelism width (independent tasks only)")
    g.add_argument("--timing", action="store_true", help="include runtime_ms in JSON reports")
    g.add_argument("--strict", action="store_true", help="exit 3 if a guard skipped any check")
    g.add_argument("--no-cache", action="store_true", help=f"ignore ${CACHE_ENV}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qverify", description="Exact verification of quantum-algebra relations.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a verification suite")
    vsub = verify.add_subparsers(dest="suite", required=True)

    p = vsub.add_parser("serre", help="affine quantum Serre relations for an E_0 preset")
    p.add_argument("--type", required=True, help=f"preset tags, comma separated: {', '.join(sorted(PRESETS))}")
    p.add_argument("--cutoff", type=int, default=6, help="input height cutoff")
    p.add_argument("--a", default="1", help="the parameter a (a rational function of q)")
    _common(p)

    p = vsub.add_parser("boson", help="q-boson relations, derivation Serre relations, adjointness")
    p.add_argument("--type", required=True, help="type tags, comma separated: a1..a4, d4, c2, sl2")
    p.add_argument("--cutoff", type=int, default=6)
    p.add_argument("--samples", type=int, default=20)
    _common(p)

    p = vsub.add_parser("klr", help="KLR engine: relations, polynomial-representation oracle, PBW dimensions")
    _klr_args(p)
    _common(p)

    p = vsub.add_parser("splitting", help="splitting certificates for 1_{*beta}H_alpha and the cokernel chain")
    p.add_argument("--type", required=True, help="aN")
    p.add_argument("--alpha", required=True, help="weights, ';' separated (e.g. 'beta;beta+a1')")
    p.add_argument("--degree", type=int, default=6)
    p.add_argument("--fixture", choices=("none", "misconfigured", "wrong-gtau"), default="none",
                   help="replace the data by a negative-control fixture")
    p.add_argument("--no-chain", action="store_true", help="skip the cokernel chain")
    _common(p)

    p = vsub.add_parser("nat", help="natural transformations and the reduced KLR relations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degree", type=int, default=6)
    p.add_argument("--no-extras", action="store_true", help="skip the sl2 and lacing checks")
    _common(p)

    p = vsub.add_parser("surjection", help="Serre-operator factorization and the sl2 x sl2 Serre elements")
    p.add_argument("--max-n", type=int, default=8)
    _common(p)

    p = sub.add_parser("lweight", help="lowest loop-weight series of the prefundamental quotient")
    p.add_argument("--type", required=True, help="aN")
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--a", default="1")
    _common(p)

    p = sub.add_parser("character", help="product-formula character coefficients")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--height", type=int, default=8)
    p.add_argument("--compare", action="store_true", help="also compare with the quotient U/M (vertex n)")
    _common(p, ("table", "json"))

    pre = sub.add_parser("prefund", help="prefundamental module")
    presub = pre.add_subparsers(dest="action", required=True)
    p = presub.add_parser("verify", help="relation suites, intertwiner, simplicity, character")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--height", type=int, default=6)
    p.add_argument("--a", default="1")
    _common(p)

    k = sub.add_parser("klr", help="KLR algebra tools")
    ksub = k.add_subparsers(dest="action", required=True)
    p = ksub.add_parser("check", help="pass/fail per defining relation")
    _klr_args(p)
    _common(p)

    r = sub.add_parser("report", help="report tools")
    rsub = r.add_subparsers(dest="action", required=True)
    p = rsub.add_parser("merge", help="merge JSON reports")
    p.add_argument("files", nargs="+")
    p.add_argument("--output", "-o")
    p.add_argument("--config")
    return parser


def _klr_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--type", required=True, help="aN, d4 or sl2hat (the cyclic quiver on two vertices)")
    p.add_argument("--alpha", required=True, help="weight (see parse_alpha)")
    p.add_argument("--degree", type=int, default=6)
    p.add_argument("--products", type=int, default=200)


def _subparsers(parser: argparse.ArgumentParser):
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            for child in action.choices.values():
                yield child
                yield from _subparsers(child)


def _apply_config(parser: argparse.ArgumentParser, path: str) -> None:
    cfg = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            cfg.read_file(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    except configparser.Error as exc:
        raise UsageError(f"malformed config {path}: {exc}") from None
    if not cfg.has_section("qverify"):
        raise UsageError(f"config {path} has no [qverify] section")
    values = dict(cfg.items("qverify"))
    known: set[str] = set()
    for p in _subparsers(parser):
        defaults = {}
        for action in p._actions:
            if action.dest in values and action.option_strings:
                raw = values[action.dest]
                known.add(action.dest)
                if isinstance(action, argparse._StoreTrueAction):
                    try:
                        defaults[action.dest] = cfg.getboolean("qverify", action.dest)
                    except ValueError:
                        raise UsageError(f"config key {action.dest} must be a boolean") from None
                else:
                    try:
                        val = action.type(raw) if action.type else raw
                    except ValueError:
                        raise UsageError(f"config key {action.dest}: bad value {raw!r}") from None
                    if action.choices and val not in action.choices:
                        raise UsageError(f"config key {action.dest}: {val!r} not in {list(action.choices)}")
                    defaults[action.dest] = val
                    action.required = False
        p.set_defaults(**defaults)
    unknown = sorted(set(values) - known - {"config"})
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(unknown)}")


# ------------------------------------------------------------------ tasks
Task = tuple[Callable[..., list[CheckResult]], tuple]


def _guarded(fn: Callable[..., list[CheckResult]], *args) -> tuple[list[CheckResult], float]:
    start = time.perf_counter()
    try:
        got = fn(*args)
        res = [got] if isinstance(got, CheckResult) else list(got)
    except (StrandGuard, GuardViolation) as exc:
        name = getattr(fn, "__name__", "check")
        res = [CheckResult(f"{name}{list(args)}", "guard", SKIPPED_GUARD, None, {"reason": str(exc)})]
    return res, (time.perf_counter() - start) * 1000.0


def _run_tasks(tasks: Sequence[Task], jobs: int) -> list[CheckResult]:
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
            futures = [pool.submit(_guarded, fn, *args) for fn, args in tasks]
            outs = [f.result() for f in futures]
    else:
        outs = [_guarded(fn, *args) for fn, args in tasks]
    results: list[CheckResult] = []
    for res, ms in outs:
        share = ms / max(1, len(res))
        for r in res:
            if r.runtime_ms is None:
                r.runtime_ms = share
        results.extend(res)
    return results


def _serre_task(tag: str, cutoff: int, a_text: str) -> list[CheckResult]:
    res = affine_suite(tag, cutoff, parse_qscalar(a_text))
    if tag == "sl2":
        res.extend(sl2_chain_checks(cutoff))
    return res


def _boson_task(tag: str, cutoff: int, samples: int, seed: int) -> list[CheckResult]:
    cd = from_type_tag(tag)
    return boson_suite(algebra(cd), cutoff, samples=samples, seed=seed)


def _klr_quiver(tag: str) -> tuple[Quiver, int]:
    t = tag.lower()
    if t == "sl2hat":
        return Quiver((0, 1), {(0, 1): 1, (1, 0): 1}), 2
    if t == "d4":
        return Quiver.from_cartan(from_type_tag("d4")), 4
    n = _type_rank(t)
    return Quiver.type_a(n), n


def _klr_alpha(quiver: Quiver, n: int, text: str, tag: str) -> dict:
    if tag.lower().startswith("a"):
        return parse_alpha(text, n)
    vals = [int(x) for x in text.split(",")]
    if len(vals) != len(quiver.vertices):
        raise UsageError(f"weight {text!r} needs {len(quiver.vertices)} coefficients")
    return {v: c for v, c in zip(quiver.vertices, vals) if c}


def _klr_task(tag: str, alpha: dict, degree: int, products: int, seed: int) -> list[CheckResult]:
    quiver, _ = _klr_quiver(tag)
    res = klr_suite(quiver, alpha, products=products, seed=seed, max_degree=degree)
    res.append(obstruction_checks(quiver, alpha))
    return res


def _omega_task(n: int) -> list[CheckResult]:
    return omega00_checks(n)


def _splitting_task(n: int, alpha: dict, degree: int, fixture: str, chain: bool) -> list[CheckResult]:
    if fixture == "misconfigured":
        return verify_splitting(misconfigured_spec(alpha, n), degree)
    if fixture == "wrong-gtau":
        return verify_splitting(wrong_gtau_spec(alpha, n), degree)
    res = verify_splitting(m_alpha_spec(alpha, n), degree)
    if chain:
        res.extend(cokernel_checks(alpha, n, degree))
    return res


def _lacing_task() -> list[CheckResult]:
    out = []
    a1a1 = Quiver((1, 2), {})
    out += lacing_checks(a1a1, 1, 2, {1: 2, 2: 1})
    out += lacing_checks(Quiver.type_a(2), 1, 2, {1: 2, 2: 1})
    out += lacing_checks(Quiver((0, 1), {(0, 1): 1}), 1, 0, {0: 2, 1: 1})
    return out


# -------------------------------------------------------------------- run
def _config_dict(args: argparse.Namespace) -> dict[str, Any]:
    skip = {"config", "output", "jobs", "timing", "no_cache", "format", "strict"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _cache_path(cfg: dict) -> Path | None:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    blob = json.dumps({"version": __version__, "config": cfg}, sort_keys=True)
    return Path(root) / f"{hashlib.sha256(blob.encode()).hexdigest()[:32]}.json"


def _suite(args: argparse.Namespace) -> tuple[str, list[Task], list[str]]:
    cmd = args.command
    if cmd == "verify":
        s = args.suite
        if s == "serre":
            tags = [t.strip().lower() for t in args.type.split(",") if t.strip()]
            for t in tags:
                if t not in PRESETS:
                    raise UsageError(f"unknown preset {t!r}; choose from {', '.join(sorted(PRESETS))}")
            _qscalar(args.a)
            if args.cutoff < 1:
                raise UsageError("cutoff must be positive")
            return "verify serre", [(_serre_task, (t, args.cutoff, args.a)) for t in tags], [NOTE_Q_FORMAL]
        if s == "boson":
            tags = [t.strip().lower() for t in args.type.split(",") if t.strip()]
            for t in tags:
                try:
                    from_type_tag(t)
                except ValueError as exc:
                    raise UsageError(str(exc)) from None
            return "verify boson", [(_boson_task, (t, args.cutoff, args.samples, args.seed)) for t in tags], [NOTE_Q_FORMAL]
        if s == "klr":
            quiver, n = _klr_quiver(args.type)
            alpha = _klr_alpha(quiver, n, args.alpha, args.type)
            tasks: list[Task] = [(_klr_task, (args.type, alpha, args.degree, args.products, args.seed))]
            if args.type.lower().startswith("a") and all(alpha.get(i, 0) == 2 for i in range(1, n + 1)) \
                    and len(alpha) == n:
                tasks.append((_omega_task, (n,)))
            return "verify klr", tasks, [NOTE_P_CHOICE]
        if s == "splitting":
            n = _type_rank(args.type)
            alphas = [parse_alpha(a, n) for a in args.alpha.split(";") if a.strip()]
            tasks = [(_splitting_task, (n, a, args.degree, args.fixture, not args.no_chain)) for a in alphas]
            return "verify splitting", tasks, [NOTE_P_CHOICE, NOTE_TRUNCATED]
        if s == "nat":
            if args.n < 2:
                raise UsageError("--n must be at least 2")
            tasks = [(verify_nat_transformations, (args.n, args.degree))]
            if not args.no_extras:
                tasks += [(sl2_checks, (3,)), (_lacing_task, ()), (nil_s_checks, ())]
            return "verify nat", tasks, [NOTE_P_CHOICE, NOTE_TRUNCATED, NOTE_MEMBERSHIP]
        if s == "surjection":
            return "verify surjection", [(surjection_checks, (args.max_n,))], [NOTE_Q_FORMAL]
    if cmd == "lweight":
        n = _type_rank(args.type)
        a = _qscalar(args.a)
        return "lweight", [(lweight_checks, (n, a, args.kmax))], [NOTE_Q_FORMAL]
    if cmd == "prefund":
        a = _qscalar(args.a)
        return "prefund verify", [(verify_module_relations, (args.n, a, args.height)),
                                  (character_check, (args.n, args.height))], [NOTE_Q_FORMAL]
    if cmd == "klr":
        quiver, n = _klr_quiver(args.type)
        alpha = _klr_alpha(quiver, n, args.alpha, args.type)
        return "klr check", [(_klr_task, (args.type, alpha, args.degree, args.products, args.seed))], [NOTE_P_CHOICE]
    raise UsageError(f"unhandled command {cmd}")


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _character(args: argparse.Namespace) -> int:
    if not 1 <= args.vertex <= args.n:
        raise UsageError(f"--vertex must lie in 1..{args.n}")
    series = char_my(args.n, args.vertex, args.height)
    doc: dict[str, Any] = {"vertex": args.vertex, **series.to_json()}
    ok = True
    if args.compare:
        if args.vertex != args.n:
            raise UsageError("--compare needs --vertex N (the quotient has character chi_MY,n)")
        quo = char_quotient(args.n, args.height)
        ok = quo.coeffs == series.coeffs
        doc["quotient_matches"] = ok
    if args.format == "json":
        _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.output)
    else:
        text = series.table()
        if args.compare:
            text += f"quotient matches: {ok}\n"
        _emit(text, args.output)
    return EXIT_PASS if ok else EXIT_FAIL


def _merge(args: argparse.Namespace) -> int:
    docs = []
    for f in args.files:
        try:
            docs.append(json.loads(Path(f).read_text(encoding="utf-8")))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read report {f}: {exc}") from None
    try:
        merged = merge_reports(docs)
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from None
    _emit(json.dumps(merged, sort_keys=True, indent=2) + "\n", args.output)
    failed = merged["summary"]["failed"]
    return EXIT_FAIL if failed else EXIT_PASS


def run(args: argparse.Namespace) -> int:
    """Dispatch a parsed command line; returns the exit status."""
    if args.command == "character":
        return _character(args)
    if args.command == "report":
        return _merge(args)
    if getattr(args, "jobs", 1) < 1:
        raise UsageError("--jobs must be positive")
    name, tasks, notes = _suite(args)
    cfg = _config_dict(args)
    cache = None if (args.timing or args.no_cache) else _cache_path({"command": name, **cfg})
    if cache is not None and cache.exists():
        doc = json.loads(cache.read_text(encoding="utf-8"))
        report = Report(doc["command"], doc["config"], [_from_json(r) for r in doc["results"]], doc["notes"])
    else:
        report = Report(name, cfg, notes=list(notes))
        report.extend(_run_tasks(tasks, args.jobs))
        if cache is not None:
            cache.parent.mkdir(parents=True, exist_ok=True)
            cache.write_text(report.dumps(), encoding="utf-8")
    if args.format == "json":
        _emit(report.dumps(timing=args.timing), args.output)
    else:
        _emit(report.text(), args.output)
    if report.has_failure:
        return EXIT_FAIL
    if args.strict and report.has_guard_skip:
        return EXIT_GUARD
    return EXIT_PASS


def _from_json(d: dict) -> CheckResult:
    return CheckResult(d["relation"], d["anchor"], d["status"], d.get("residual"), d.get("details", {}))


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        pre = argparse.ArgumentParser(add_help=False)
        pre.add_argument("--config")
        known, _ = pre.parse_known_args(argv)
        if known.config:
            _apply_config(parser, known.config)
        args = parser.parse_args(argv)
        return run(args)
    except UsageError as exc:
        print(f"qverify: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # argparse usage errors and --help
        return int(exc.code or 0) if isinstance(exc.code, int) else EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
