"""``dompoly`` command line: compute, analyze, verify and sweep."""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import checks
from .closed_forms import (complete_polynomial, kps_polynomial, lollipop_mode,
                           lollipop_polynomial, lollipop_sequence, path_polynomial,
                           spider_closed_form, tree_polynomial)
from .enumeration import (DEFAULT_CAP, EnumerationCapError, brute_force_polynomial,
                          default_workers, domination_numbers)
from .families import (FamilyError, FamilySpec, ParseError, cartesian_product, complete,
                       erdos_renyi, parse_family, random_tree, spider, universal_join)
from .graph import Graph, GraphError, graph_digest, is_tree, parse_edge_list
from .polynomial import Poly, is_log_concave, mode_chain_feasible, unimodality_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP, EXIT_MISMATCH = 0, 1, 2, 3, 4
ENGINES = ("auto", "brute", "kps", "tree", "closed")


class UsageError(Exception):
    pass


class EngineMismatch(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    family: Optional[str] = None
    edges: Optional[str] = None
    engine: str = "auto"
    fmt: str = "json"
    cap: Optional[int] = None
    allow_large: bool = False
    workers: int = 1
    seed: int = 0
    cross_check: bool = False
    extra: dict = field(default_factory=dict)


# ------------------------------------------------------------ engines

def closed_form_for(spec: Optional[FamilySpec]) -> Optional[Callable[[], Poly]]:
    """A thunk evaluating a closed form for ``spec``, or ``None``."""
    if spec is None:
        return None
    k, p = spec.kind, spec.params
    if k == "path":
        return lambda: path_polynomial(p[0])
    if k == "complete":
        return lambda: complete_polynomial(p[0])
    if k == "star" and p[0] >= 1:
        return lambda: spider_closed_form(p[0] - 1, 0, 0)
    if k == "spider" and all(1 <= lam <= 3 for lam in p):
        return lambda: spider_closed_form(p.count(1), p.count(2), p.count(3))
    if k == "lollipop" and p[0] >= 3:
        return lambda: lollipop_polynomial(p[0], p[1])
    return None


def compute_polynomial(G: Graph, spec: Optional[FamilySpec], engine: str, cap=None,
                       allow_large: bool = False, workers: int = 1) -> tuple:
    """Return ``(polynomial, engine_used)``."""
    if engine not in ENGINES:
        raise UsageError(f"unknown engine {engine!r}")
    closed = closed_form_for(spec)
    if engine == "auto":
        if closed is not None:
            engine = "closed"
        elif is_tree(G):
            engine = "tree"
        else:
            engine = "kps"
    if engine == "closed":
        if closed is None:
            raise UsageError("no closed form is available for this input")
        return closed(), "closed"
    if engine == "tree":
        if not is_tree(G):
            raise UsageError("the tree engine needs a tree")
        return tree_polynomial(G), "tree"
    if engine == "kps":
        return kps_polynomial(G, cap, allow_large), "kps"
    return brute_force_polynomial(G, cap, allow_large, workers), "brute"


def cross_check(G: Graph, spec, p: Poly, used: str, cap, allow_large, workers) -> str:
    """Recompute with a second engine; raise :class:`EngineMismatch` on disagreement."""
    other = "brute" if used != "brute" else "kps"
    if other == "brute" and G.n > (cap or DEFAULT_CAP) and not allow_large:
        other = "tree" if is_tree(G) and used != "tree" else "kps"
    if other == used:
        other = "brute"
    q, _ = compute_polynomial(G, spec, other, cap, allow_large, workers)
    if q != p:
        raise EngineMismatch(f"{used} and {other} disagree")
    return other


# ------------------------------------------------------------ output helpers

def _coeffs(p: Poly, n: int) -> list:
    return [str(c) for c in p] + ["0"] * (n + 1 - len(p))


def _gamma(p: Poly) -> Optional[int]:
    return next((i for i, c in enumerate(p) if c), None)


def _emit(obj, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(obj) + "\n")
    elif fmt == "text":
        for k, v in obj.items():
            out.write(f"{k}: {v}\n")


def _write_csv(rows: list, out) -> None:
    if not rows:
        return
    w = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (" ".join(map(str, v)) if isinstance(v, list) else v) for k, v in r.items()})


def _load(cfg: RunConfig) -> tuple:
    if (cfg.family is None) == (cfg.edges is None):
        raise UsageError("give exactly one of --family or --edges")
    if cfg.family is not None:
        spec = parse_family(cfg.family)
        return spec.build(), spec, spec.text
    try:
        with open(cfg.edges) as fh:
            G = parse_edge_list(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {cfg.edges}: {exc.strerror}") from None
    return G, None, graph_digest(G)


# ------------------------------------------------------------ compute / analyze

def cmd_compute(cfg: RunConfig, out) -> int:
    G, spec, subject = _load(cfg)
    t0 = time.perf_counter()
    p, used = compute_polynomial(G, spec, cfg.engine, cfg.cap, cfg.allow_large, cfg.workers)
    report = {"subject": subject, "n": G.n, "coefficients": _coeffs(p, G.n),
              "gamma": _gamma(p), "engine": used}
    if cfg.cross_check:
        report["cross_check"] = cross_check(G, spec, p, used, cfg.cap, cfg.allow_large, cfg.workers)
    report["seconds"] = round(time.perf_counter() - t0, 6)
    if cfg.fmt == "csv":
        _write_csv([{"i": i, "d_i": c} for i, c in enumerate(report["coefficients"])], out)
    else:
        _emit(report, cfg.fmt, out)
    return EXIT_OK


def _ratio_table(p: Poly, n: int) -> dict:
    padded = list(p) + [0] * (n + 1 - len(p))
    table = {}
    for k in range(-(-n // 2), n + 1):
        r = checks.ratio_value(tuple(padded), k).value
        table[str(k)] = f"{r.numerator}/{r.denominator}"
    return table


def cmd_analyze(cfg: RunConfig, out) -> int:
    G, spec, subject = _load(cfg)
    t0 = time.perf_counter()
    p, used = compute_polynomial(G, spec, cfg.engine, cfg.cap, cfg.allow_large, cfg.workers)
    rep = unimodality_report(p)
    within = G.n <= (cfg.cap or DEFAULT_CAP) or cfg.allow_large
    report = {"subject": subject, "n": G.n, "engine": used,
              "coefficients": _coeffs(p, G.n), "unimodal": rep.is_unimodal,
              "modes": [rep.mode_lo, rep.mode_hi], "log_concave": is_log_concave(p),
              "gamma": _gamma(p) if G.n else None,
              "upper_gamma": (domination_numbers(G, cfg.cap, cfg.allow_large).upper_gamma
                              if G.n and within else None),
              "ratios": _ratio_table(p, G.n)}
    if not rep.is_unimodal:
        report["first_violation"] = rep.first_violation
    if cfg.cross_check:
        report["cross_check"] = cross_check(G, spec, p, used, cfg.cap, cfg.allow_large, cfg.workers)
    report["seconds"] = round(time.perf_counter() - t0, 6)
    if cfg.fmt == "csv":
        row = {k: v for k, v in report.items() if k not in ("ratios", "coefficients")}
        _write_csv([row], out)
    else:
        _emit(report, cfg.fmt, out)
    return EXIT_OK


# ------------------------------------------------------------ verify suites

ER_PROBS = (0.2, 0.5, 0.8)


def _sample_seed(seed: int, i: int) -> int:
    return seed * 1_000_003 + i


def er_sample(seed: int, i: int, n_max: int = 14) -> Graph:
    rng = random.Random(_sample_seed(seed, i))
    n = rng.randint(2, n_max)
    return erdos_renyi(n, ER_PROBS[i % 3], rng)


def universal_sample(seed: int, i: int, n_max: int = 12) -> Graph:
    rng = random.Random(_sample_seed(seed, i))
    base = erdos_renyi(rng.randint(1, n_max), ER_PROBS[i % 3], rng)
    return universal_join(base, 1 + i % 3)


def tree_sample(seed: int, i: int, n_max: int = 16) -> Graph:
    rng = random.Random(_sample_seed(seed, i))
    return random_tree(rng.randint(1, n_max), rng)


def _tag(outs: list, seed) -> list:
    for o in outs:
        o.seed = seed
    return outs


def _er_item(args) -> list:
    suite, seed, i, n_max, strict = args
    G = er_sample(seed, i, n_max)
    p = brute_force_polynomial(G)
    s = _sample_seed(seed, i)
    if suite == "first-half":
        return _tag([checks.check_first_half(p, graph_digest(G))], s)
    if suite == "upper-dom":
        return _tag([checks.check_upper_dom_tail(G, p=p)], s)
    if suite == "low-upper-dom":
        return _tag([checks.check_low_upper_dom_unimodal(G, p=p)], s)
    if suite == "encompassing":
        return _tag([checks.check_encompassing_inequality(G, p=p, strict=strict)], s)
    if suite == "ratio":
        outs = [checks.ratio_check(p, k, graph_digest(G)) for k in range(-(-G.n // 2), G.n + 1)]
        failed = [o for o in outs if not o.passed]
        held = sum(1 for o in outs if o.witness["premise"])
        if failed:
            return _tag(failed[:1], s)
        return _tag([checks.CheckOutcome("ratio", graph_digest(G), True,
                                         {"premises_held": held, "k_checked": len(outs)})], s)
    raise UsageError(f"unknown suite {suite!r}")


def _universal_item(args) -> list:
    suite, seed, i, n_max, tol = args
    G = universal_sample(seed, i, n_max)
    p = brute_force_polynomial(G)
    s = _sample_seed(seed, i)
    if suite == "universal":
        return _tag([checks.check_universal_tail(G, p=p, tol=tol),
                     checks.check_many_universal_unimodal(G, p=p)], s)
    return _tag([checks.check_single_universal_tail(G, p=p, tol=tol)], s)


def _tree_item(args) -> list:
    suite, seed, i, n_max = args
    T = tree_sample(seed, i, n_max)
    s = _sample_seed(seed, i)
    if suite == "engines-agree":
        return _tag([_engines_outcome(T, graph_digest(T), include_closed=None)], s)
    leaves = [v for v in range(T.n) if T.degree(v) == 1]
    if not leaves:
        return []
    v = random.Random(s).choice(leaves)
    return _tag([checks.check_leaf_deletion_conjecture(T, v)], s)


def _engines_outcome(G: Graph, subject: str, include_closed) -> checks.CheckOutcome:
    values = {"brute": brute_force_polynomial(G), "kps": kps_polynomial(G)}
    if is_tree(G):
        values["tree"] = tree_polynomial(G)
    if include_closed is not None:
        values["closed"] = include_closed
    distinct = {v for v in values.values()}
    if len(distinct) == 1:
        return checks.CheckOutcome("engines-agree", subject, True, {"engines": sorted(values)})
    return checks.CheckOutcome("engines-agree", subject, False,
                               {k: [str(c) for c in v] for k, v in values.items()})


def _spider_item(triple) -> list:
    l1, l2, l3 = triple
    G = spider([1] * l1 + [2] * l2 + [3] * l3)
    return [_engines_outcome(G, f"spider:{l1},{l2},{l3}", spider_closed_form(l1, l2, l3))]


def _fan_out(fn, items: list, workers: int) -> list:
    if workers <= 1 or len(items) < 2:
        return [o for item in items for o in fn(item)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return [o for chunk in pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers)))
                for o in chunk]


def _regular_outcomes(n_max: int) -> list:
    outs = []
    for n in range(4, n_max + 1):
        G = cartesian_product([complete(2), complete(n)])
        outs.append(checks.check_regular_lemma(G, f"cart:K2,K{n}"))
    for n in range(4, 65):
        ok = checks.regular_lemma_arithmetic(n)
        outs.append(checks.CheckOutcome("regular-arithmetic", f"n={n}", ok,
                                        None if ok else {"n": n}, engine="arithmetic"))
    return outs


def _mindeg_outcomes(n_max: int) -> list:
    outs = []
    for n in range(1, n_max + 1):
        G = complete(n)
        outs.append(checks.check_mindeg_unimodal(G, f"K{n}", p=complete_polynomial(n)))
        outs[-1].engine = "closed"
    return outs


def _direct_outcomes(ts: list) -> list:
    outs = []
    for t in ts:
        found = checks.direct_exception_tuples(t)
        expected = checks.DIRECT_EXCEPTIONS[t]
        w = {"expected": [list(x) for x in expected], "found": [list(x) for x in found]}
        outs.append(checks.CheckOutcome("direct-exceptions", f"t={t}", found == expected, w,
                                        engine="arithmetic"))
    return outs


def _root_outcomes(m_max: int, tol) -> list:
    outs = []
    for m in range(1, m_max + 1):
        try:
            est = checks.root_w(m, tol)
        except (AssertionError, RuntimeError) as exc:
            outs.append(checks.CheckOutcome("roots", f"m={m}", False, {"error": str(exc)},
                                            engine="bisection"))
            continue
        outs.append(checks.CheckOutcome("roots", f"m={m}", True,
                                        {"lo": est.lo, "hi": est.hi}, engine="bisection"))
    return outs


def _lambda_outcome(tol) -> checks.CheckOutcome:
    lo, hi = checks.single_universal_lambda(tol)
    target = Fraction(56984, 100000)
    ok = abs(lo - target) <= Fraction(1, 10 ** 5) and abs(hi - target) <= Fraction(1, 10 ** 5)
    return checks.CheckOutcome("single-universal-lambda", "lambda", ok,
                               {"lo": lo, "hi": hi, "approx": float(lo)}, engine="bisection")


def _lollipop_outcomes(m_max: int) -> list:
    outs = []
    for m in range(3, min(m_max, 9) + 1):
        for n in range(0, 5):
            G = parse_family(f"lollipop:{m},{n}").build()
            p, q = lollipop_polynomial(m, n), brute_force_polynomial(G)
            outs.append(checks.CheckOutcome("lollipop-brute", f"lollipop:{m},{n}", p == q,
                                            None if p == q else {"closed": list(map(str, p)),
                                                                 "brute": list(map(str, q))},
                                            engine="closed"))
    for m in range(3, m_max + 1):
        seq = lollipop_sequence(m, m_max)
        reps = [unimodality_report(p) for p in seq]
        for n in (1, 2, 3):
            want = lollipop_mode(m, n)
            rep = reps[n]
            ok = rep.is_unimodal and rep.has_mode(want)
            outs.append(checks.CheckOutcome("lollipop-mode", f"lollipop:{m},{n}", ok,
                                            {"modes": [rep.mode_lo, rep.mode_hi], "expected": want},
                                            engine="closed"))
        uni = all(r.is_unimodal for r in reps)
        chain = mode_chain_feasible([(r.mode_lo, r.mode_hi) for r in reps]) if uni else None
        ok = uni and chain is not None
        outs.append(checks.CheckOutcome("lollipop-chain", f"lollipop:{m},0..{m_max}", ok,
                                        {"all_unimodal": uni,
                                         "chain": list(chain) if chain else None},
                                        engine="closed"))
    return outs


SUITES = ("first-half", "upper-dom", "low-upper-dom", "ratio", "mindeg", "regular",
          "direct-exceptions", "roots", "universal", "single-universal", "encompassing",
          "spider-sweep", "lollipop", "engines-agree", "leaf-deletion")


def run_suite(suite: str, opts: dict, seed: int, workers: int) -> list:
    """All outcomes of ``suite``, in a deterministic order."""
    samples = opts.get("samples")
    n_max = opts.get("n_max")
    tol = opts.get("tol", 1e-12)
    if suite in ("first-half", "upper-dom", "low-upper-dom", "ratio", "encompassing"):
        items = [(suite, seed, i, n_max or 14, opts.get("strict", False))
                 for i in range(samples or 500)]
        return _fan_out(_er_item, items, workers)
    if suite in ("universal", "single-universal"):
        items = [(suite, seed, i, n_max or 12, tol) for i in range(samples or 100)]
        outs = _fan_out(_universal_item, items, workers)
        return ([_lambda_outcome(tol)] + outs) if suite == "single-universal" else outs
    if suite == "leaf-deletion":
        return _fan_out(_tree_item, [(suite, seed, i, n_max or 16) for i in range(samples or 50)],
                        workers)
    if suite == "engines-agree":
        triples = [(a, b, c) for a in range(9) for b in range(9 - a) for c in range(9 - a - b)]
        outs = _fan_out(_spider_item, triples, workers)
        return outs + _fan_out(_tree_item, [(suite, seed, i, n_max or 16)
                                            for i in range(samples or 200)], workers)
    if suite == "mindeg":
        return _mindeg_outcomes(n_max or 16)
    if suite == "regular":
        return _regular_outcomes(n_max or 10)
    if suite == "direct-exceptions":
        t = opts.get("t")
        return _direct_outcomes([t] if t else [2, 3, 4, 5, 6])
    if suite == "roots":
        return _root_outcomes(opts.get("m_max") or 64, tol)
    if suite == "spider-sweep":
        return [checks.spider_hypothesis_sweep(opts.get("T") or 25, workers)]
    if suite == "lollipop":
        return _lollipop_outcomes(opts.get("m_max") or 30)
    raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")


def cmd_verify(cfg: RunConfig, out) -> int:
    suite = cfg.extra["suite"]
    if suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    try:
        outs = run_suite(suite, cfg.extra, cfg.seed, cfg.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    for o in outs:
        out.write(o.to_json() + "\n")
    failed = sum(1 for o in outs if not o.passed)
    out.write(json.dumps({"summary": suite, "total": len(outs), "passed": len(outs) - failed,
                          "failed": failed, "seed": cfg.seed}) + "\n")
    return EXIT_FAIL if failed else EXIT_OK


# ------------------------------------------------------------ sweep

_RANGE = re.compile(r"(-?\d+)\.\.(-?\d+)")


def parse_ranges(tokens: list) -> dict:
    """``['--m', '3..12']`` to ``{'m': range(3, 13)}``."""
    if len(tokens) % 2:
        raise UsageError(f"dangling sweep argument {tokens[-1]!r}")
    out = {}
    for flag, val in zip(tokens[::2], tokens[1::2]):
        if not flag.startswith("--"):
            raise UsageError(f"expected --<name>, got {flag!r}")
        m = _RANGE.fullmatch(val)
        if not m:
            raise UsageError(f"expected a range a..b for {flag}, got {val!r}")
        lo, hi = int(m.group(1)), int(m.group(2))
        if lo > hi:
            raise UsageError(f"empty range {val!r}")
        out[flag[2:]] = range(lo, hi + 1)
    return out


def _sweep_point(args) -> dict:
    template, params, engine, cap, allow_large, with_upper = args
    text = template.format(**params)
    spec = parse_family(text)
    G = spec.build()
    p, used = compute_polynomial(G, spec, engine, cap, allow_large)
    rep = unimodality_report(p)
    row = dict(params)
    row.update({"family": text, "n": G.n, "gamma": _gamma(p),
                "upper_gamma": domination_numbers(G, cap, allow_large).upper_gamma
                if with_upper and G.n else "",
                "mode_lo": rep.mode_lo, "mode_hi": rep.mode_hi,
                "unimodal": rep.is_unimodal, "log_concave": is_log_concave(p), "engine": used})
    return row


def cmd_sweep(cfg: RunConfig, out) -> int:
    template = cfg.family
    if template is None:
        raise UsageError("sweep needs --family with a {name} template")
    ranges = parse_ranges(cfg.extra.get("ranges", []))
    names = re.findall(r"{(\w+)}", template)
    if not names or len(set(names)) > 2:
        raise UsageError("template needs one or two {name} parameters")
    missing = set(names) - set(ranges)
    if missing:
        raise UsageError(f"no range given for {', '.join(sorted(missing))}")
    keys = sorted(set(names), key=names.index)
    points = [{}]
    for k in keys:
        points = [dict(pt, **{k: v}) for pt in points for v in ranges[k]]
    items = [(template, pt, cfg.engine, cfg.cap, cfg.allow_large, cfg.extra.get("upper_gamma"))
             for pt in points]
    if cfg.workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            rows = list(pool.map(_sweep_point, items))
    else:
        rows = [_sweep_point(it) for it in items]
    if cfg.fmt == "csv":
        _write_csv(rows, out)
    elif cfg.fmt == "json":
        for r in rows:
            out.write(json.dumps(r) + "\n")
    else:
        for r in rows:
            out.write(" ".join(f"{k}={v}" for k, v in r.items()) + "\n")
    return EXIT_OK


# ------------------------------------------------------------ argument parsing

def _add_common(p: argparse.ArgumentParser, fmt_default: str = "json") -> None:
    p.add_argument("--family", help="family DSL string, e.g. spider:1,2,3 or cart:K3,K3")
    p.add_argument("--edges", help="edge-list file: header 'n m' then one edge per line")
    p.add_argument("--engine", choices=ENGINES, default="auto")
    p.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default=fmt_default)
    p.add_argument("--cap", type=int, help="enumeration cap (raising it needs --allow-large)")
    p.add_argument("--allow-large", action="store_true",
                   help="acknowledge exhaustive enumeration beyond the cap")
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes (default: DOMPOLY_WORKERS or 1)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cross-check", action="store_true",
                   help="recompute with a second engine and exit 4 on disagreement")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dompoly", allow_abbrev=False,
                                     description="Domination polynomials of graphs.")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    _add_common(sub.add_parser("compute", help="print D(G, x)", allow_abbrev=False))
    _add_common(sub.add_parser("analyze", help="unimodality, modes, ratios", allow_abbrev=False))
    v = sub.add_parser("verify", help="run a verification suite", allow_abbrev=False)
    _add_common(v)
    v.add_argument("suite", help=", ".join(SUITES))
    v.add_argument("--samples", type=int)
    v.add_argument("--n-max", type=int)
    v.add_argument("--m-max", type=int)
    v.add_argument("--t", type=int)
    v.add_argument("--T", type=int)
    v.add_argument("--tol", type=float, default=1e-12)
    v.add_argument("--strict", action="store_true",
                   help="encompassing: only k < n/2")
    s = sub.add_parser("sweep", help="tabulate a family template over integer ranges",
                       allow_abbrev=False)
    _add_common(s, fmt_default="csv")
    s.add_argument("--upper-gamma", action="store_true", help="include Gamma (brute force)")
    return parser


def config_from_args(argv: list) -> RunConfig:
    parser = build_parser()
    args, rest = parser.parse_known_args(argv)
    if rest and args.subcommand != "sweep":
        parser.error(f"unrecognized arguments: {' '.join(rest)}")
    if args.cap is not None and args.cap > DEFAULT_CAP and not args.allow_large:
        raise UsageError(f"--cap above {DEFAULT_CAP} needs --allow-large")
    extra = {}
    if args.subcommand == "verify":
        extra = {"suite": args.suite, "samples": args.samples, "n_max": args.n_max,
                 "m_max": args.m_max, "t": args.t, "T": args.T, "tol": args.tol,
                 "strict": args.strict}
    elif args.subcommand == "sweep":
        extra = {"ranges": rest, "upper_gamma": args.upper_gamma}
    workers = args.workers if args.workers is not None else default_workers()
    return RunConfig(args.subcommand, args.family, args.edges, args.engine, args.fmt,
                     args.cap, args.allow_large, max(1, workers), args.seed,
                     args.cross_check, extra)


COMMANDS = {"compute": cmd_compute, "analyze": cmd_analyze,
            "verify": cmd_verify, "sweep": cmd_sweep}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cfg = config_from_args(argv)
        return COMMANDS[cfg.subcommand](cfg, out)
    except SystemExit as exc:  # argparse
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (UsageError, ParseError, FamilyError, GraphError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EnumerationCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except EngineMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


def run(argv: list) -> tuple:
    """Run in-process and return ``(exit_code, stdout_text)``."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
