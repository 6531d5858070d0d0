"""``visicube`` command line: argparse front end, JSON reports, vertex files.

Exit codes: 0 success, 1 a verifier rejected a result, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .coloring import (VERIFY_CAP, coloring_violation, layered_coloring, lll_feasibility,
                       moser_tardos_repair, structure_ok)
from .construction import (SUPPLIERS, construct, exact_supplier, file_supplier, from_vertex_set,
                           is_middle, theorem2_bound, witness_path)
from .cube import TOTAL_DIRECT_CAP, VertexSet, from_bits, mv_violation, to_bits, total_mv_violation, visible_path
from .daisy import contains_daisy, turan_exact
from .errors import BudgetExhaustedError, InvariantBreachError, VertexFormatError, VisicubeError
from .exact import chromatic_mv, chromatic_total_mv, max_mv, max_total_mv
from .fileformat import parse_vertex_file, render_path, write_vertex_file
from .total import (avoids_distance2, balls_tile, build_AB, counting_upper_check, hamming_code,
                    min_distance, total_mv_partition)

SCHEMA = "visicube.report/1"
VERIFY_LEVELS = ("none", "structural", "exhaustive")
# largest n each exhaustive check accepts
MV_EXHAUSTIVE_CAP = 11
EXHAUSTIVE_CAPS = {"mv": MV_EXHAUSTIVE_CAP, "total": TOTAL_DIRECT_CAP, "coloring": VERIFY_CAP}
DEFAULT_SEED = 0
DEFAULT_OUT = "visicube-out"


class UsageError(VisicubeError):
    pass


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    d: int = 3
    lam: int | None = None
    seed: int = DEFAULT_SEED
    budget_ms: int | None = None
    supplier: str = "greedy"
    supplier_file: str | None = None
    input: str | None = None
    out: str | None = None
    verify: str = "structural"
    threads: int = 1
    extra: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.verify not in VERIFY_LEVELS:
            raise UsageError(f"unknown verification level {self.verify!r}")
        if self.threads < 1:
            raise UsageError("--threads must be positive")
        if self.budget_ms is not None and self.budget_ms <= 0:
            raise UsageError("--budget-ms must be positive")
        if self.n is not None and not 1 <= self.n <= 62:
            raise UsageError(f"--n must be in [1, 62], got {self.n}")

    def require_cap(self, check: str, n: int) -> None:
        cap = EXHAUSTIVE_CAPS[check]
        if self.verify == "exhaustive" and n > cap:
            raise UsageError(f"exhaustive {check} verification is capped at n={cap}, got n={n}")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lam")
        extra = d.pop("extra")
        d.update(extra)
        return d


@dataclass
class Report:
    command: str
    config: dict
    results: dict = field(default_factory=dict)
    verification: dict = field(default_factory=dict)
    files: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    version: str = __version__
    schema: str = SCHEMA
    text: str | None = None  # plain-text payload (witness paths) printed instead of JSON

    @property
    def verified(self) -> bool:
        return all(v is not False for v in self.verification.values())

    def to_dict(self) -> dict:
        return {"schema": self.schema, "version": self.version, "command": self.command,
                "config": self.config, "results": self.results,
                "verification": self.verification, "verified": self.verified,
                "files": self.files, "timings": self.timings}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False, sort_keys=False)


def _out_dir(config: RunConfig) -> Path:
    return Path(config.out or DEFAULT_OUT)


def _write(config: RunConfig, report: Report, name: str, vs: VertexSet, header: str) -> None:
    path = write_vertex_file(_out_dir(config) / name, vs, header)
    report.files.append(str(path))


def _need_n(config: RunConfig) -> int:
    if config.n is None:
        raise UsageError(f"{config.command} needs --n")
    return config.n


def _mv_check(config: RunConfig, report: Report, key: str, vs: VertexSet) -> None:
    if config.verify != "exhaustive":
        return
    config.require_cap("mv", vs.n)
    t = time.perf_counter()
    bad = mv_violation(vs, config.threads)
    report.timings[f"verify_{key}_s"] = time.perf_counter() - t
    report.verification[key] = bad is None
    if bad is not None:
        report.results[f"{key}_violation"] = [to_bits(x, vs.n) for x in bad]


def cmd_build_mv(config: RunConfig, report: Report) -> None:
    n, d = _need_n(config), config.d
    if config.verify == "exhaustive":
        config.require_cap("mv", n)
    if config.supplier == "file":
        if not config.supplier_file:
            raise UsageError("--supplier file needs --supplier-file PATH")
        supplier = file_supplier(parse_vertex_file(config.supplier_file, n))
    elif config.supplier == "exact":
        supplier = exact_supplier(config.budget_ms)
    elif config.supplier in SUPPLIERS:
        supplier = SUPPLIERS[config.supplier]
    else:
        raise UsageError(f"unknown supplier {config.supplier!r}")
    t = time.perf_counter()
    built = {lam: construct(n, d, lam, supplier) for lam in range(d)}
    report.timings["build_s"] = time.perf_counter() - t
    if config.lam is None:
        lam = max(built, key=lambda l: (len(built[l]), -l))
    else:
        lam = config.lam % d
    k = built[lam]
    ex_values = {r: len(f) for c in built.values() for r, f in c.families.items() if is_middle(n, d, r)}
    bound = theorem2_bound(n, d, ex_values)
    report.results.update({
        "n": n, "d": d, "lambda": lam, "size": len(k),
        "layer_sizes": {str(r): s for r, s in k.layer_sizes().items()},
        "sizes_by_lambda": {str(l): len(c) for l, c in built.items()},
        "bound": bound.to_dict(),
    })
    if config.verify != "none":
        report.verification["structural"] = all(
            contains_daisy(f, 2 * d, d) is None for r, f in k.families.items() if is_middle(n, d, r))
    _mv_check(config, report, "mv", k.members)
    _write(config, report, f"mv_n{n}_d{d}_lambda{lam}.txt", k.members,
           f"M({lam}) in Q_{n}, d={d}, supplier={config.supplier}, size={len(k)}")


def cmd_witness(config: RunConfig, report: Report) -> None:
    if not config.input:
        raise UsageError("witness needs --set FILE")
    vs = parse_vertex_file(config.input, config.n)
    a_bits, b_bits = config.extra.get("a"), config.extra.get("b")
    if not a_bits or not b_bits:
        raise UsageError("witness needs --a BITS and --b BITS")
    for bits in (a_bits, b_bits):
        if len(bits) != vs.n or set(bits) - {"0", "1"}:
            raise UsageError(f"{bits!r} is not a {vs.n}-bit vertex")
    a, b = from_bits(a_bits), from_bits(b_bits)
    try:
        k = from_vertex_set(vs, config.d)
    except VisicubeError:
        k = None
    if k is not None and a in vs and b in vs:
        path, method = witness_path(a, b, k), "layered"
    else:
        path, method = visible_path(a, b, vs), "search"
    report.results.update({"method": method, "found": path is not None})
    report.verification["path"] = path is not None
    if path is not None:
        report.results["path"] = [to_bits(x, vs.n) for x in path]
        report.text = render_path(path, vs.n)
    else:
        report.text = f"# no shortest path from {a_bits} to {b_bits} avoids the set\n"


def cmd_turan(config: RunConfig, report: Report) -> None:
    n = _need_n(config)
    r, s, t = (config.extra.get(key) for key in ("r", "s", "t"))
    if None in (r, s, t):
        raise UsageError("turan needs --r, --s and --t")
    rec = turan_exact(n, r, s, t, config.budget_ms)
    report.results.update(rec.to_dict())
    report.timings["solve_s"] = report.results.pop("elapsed_s")
    if config.verify != "none":
        report.verification["daisy_free"] = contains_daisy(rec.extremal_family, s, t) is None
    _write(config, report, f"turan_n{n}_r{r}_s{s}_t{t}.txt", rec.extremal_family,
           f"D_{r}({s},{t})-free family in layer {r} of [{n}], size {rec.value}")


def cmd_color(config: RunConfig, report: Report) -> None:
    n, d = _need_n(config), config.d
    config.require_cap("coloring", n)
    max_rounds = config.extra.get("max_rounds") or 10 ** 5
    t = time.perf_counter()
    c0 = layered_coloring(n, d, config.seed)
    try:
        c = moser_tardos_repair(c0, max_rounds, config.seed)
        exhausted = False
    except BudgetExhaustedError as exc:
        c, exhausted = exc.partial, True
    report.timings["repair_s"] = time.perf_counter() - t
    classes = c.classes()
    report.results.update({
        "n": n, "d": d, "seed": config.seed, "rounds": c.rounds, "exhausted": exhausted,
        "classes": {f"{lam}-{j}": len(vs) for (lam, j), vs in classes.items()},
        "nonempty_classes": sum(1 for vs in classes.values() if len(vs)),
        "lll": {str(r): lll_feasibility(n, d, r).to_dict() for r in range(d, n - d + 1)},
    })
    report.verification["repaired"] = not exhausted
    if config.verify != "none":
        report.verification["structural"] = structure_ok(c)
    if config.verify == "exhaustive":
        t = time.perf_counter()
        bad = coloring_violation(c)
        report.timings["verify_s"] = time.perf_counter() - t
        report.verification["classes_mv"] = bad is None
    for (lam, j), vs in classes.items():
        _write(config, report, f"color_n{n}_d{d}_seed{config.seed}_{lam}-{j}.txt", vs,
               f"color class ({lam},{j}) of Q_{n}, seed {config.seed}")


def cmd_total(config: RunConfig, report: Report) -> None:
    m = config.extra.get("hamming_m")
    if m is not None:
        code = hamming_code(m)
        n = code.n
        if config.n is not None and config.n != n:
            raise UsageError(f"--hamming-m {m} gives n={n}, not --n {config.n}")
    else:
        n = _need_n(config)
    if config.verify == "exhaustive":
        config.require_cap("total", n)
    sets: dict[str, VertexSet] = {}
    if m is not None:
        sets["hamming"] = code
        report.results["hamming"] = {"m": m, "n": n, "size": len(code),
                                     "min_distance": min_distance(code)}
        if config.verify != "none":
            report.verification["hamming_perfect"] = balls_tile(code)
    ab = build_AB(n)
    sets["A"], sets["B"] = ab.group_a, ab.group_b
    report.results.update({
        "n": n, "size_A": len(ab.group_a), "size_B": len(ab.group_b),
        "lower_bound": f"2^{n - 1}/{n}", "lower_bound_float": 2 ** (n - 1) / n,
        "upper_bound": f"2^{n}/{n}", "upper_bound_float": 2 ** n / n,
    })
    if config.extra.get("partition"):
        parts = total_mv_partition(n)
        report.results["partition_classes"] = len(parts)
        report.results["partition_sizes"] = [len(p) for p in parts]
        for i, p in enumerate(parts):
            sets[f"part{i}"] = p
        if config.verify != "none":
            covered = sum(len(p) for p in parts)
            report.verification["partition_cover"] = (
                covered == 2 ** n and len(set().union(*(p.members for p in parts))) == 2 ** n)
    for name, vs in sets.items():
        if config.verify != "none":
            report.verification[f"{name}_distance2_free"] = avoids_distance2(vs)
            if name in ("hamming", "A", "B"):
                report.verification[f"{name}_counting"] = counting_upper_check(vs)
        if config.verify == "exhaustive":
            report.verification[f"{name}_direct"] = total_mv_violation(vs) is None
        _write(config, report, f"total_n{n}_{name}.txt", vs, f"total mutual-visibility set {name}, Q_{n}")


SOLVERS = {"mu": max_mv, "mut": max_total_mv, "chimu": chromatic_mv, "chimut": chromatic_total_mv}


def cmd_solve(config: RunConfig, report: Report) -> None:
    n = _need_n(config)
    param = config.extra.get("param")
    if param not in SOLVERS:
        raise UsageError(f"--param must be one of {', '.join(SOLVERS)}")
    total = param in ("mut", "chimut")
    config.require_cap("total" if total else "mv", n)
    res = SOLVERS[param](n, config.budget_ms)
    d = res.to_dict()
    report.timings["solve_s"] = d.pop("elapsed_s")
    d.pop("certificate")
    report.results.update(d)
    classes = res.classes()
    if config.verify != "none":
        if total:
            report.verification["certificate"] = all(avoids_distance2(c) for c in classes)
        else:
            report.verification["certificate"] = all(mv_violation(c, config.threads) is None
                                                     for c in classes)
        if param.startswith("chi"):
            report.verification["partition"] = sum(len(c) for c in classes) == 2 ** n
    for i, c in enumerate(classes):
        suffix = f"_class{i}" if param.startswith("chi") else ""
        _write(config, report, f"solve_{param}_n{n}{suffix}.txt", c,
               f"{param} certificate for Q_{n}, value {res.value}, optimal={res.optimal}")


def cmd_repro(config: RunConfig, report: Report) -> None:
    from .repro import format_table, run_suite

    if config.extra.get("suite", "paper") != "paper":
        raise UsageError("only --suite paper is available")
    results = run_suite(config.n, config.extra.get("only"),
                        progress=lambda r: print(r.line, file=sys.stderr, flush=True))
    report.results["criteria"] = [r.to_dict() for r in results]
    report.results["summary"] = format_table(results).splitlines()
    print(report.results["summary"][-1], file=sys.stderr)
    for r in results:
        report.verification[f"criterion_{r.number}"] = r.passed


COMMANDS = {"build-mv": cmd_build_mv, "witness": cmd_witness, "turan": cmd_turan,
            "color": cmd_color, "total": cmd_total, "solve": cmd_solve, "repro": cmd_repro}


def dispatch(config: RunConfig) -> Report:
    if config.command not in COMMANDS:
        raise UsageError(f"unknown command {config.command!r}")
    config.validate()
    report = Report(config.command, config.to_dict())
    start = time.perf_counter()
    COMMANDS[config.command](config, report)
    report.timings["total_s"] = time.perf_counter() - start
    return report


def _env_threads() -> int:
    raw = os.environ.get("VISICUBE_THREADS", "1")
    try:
        return int(raw)
    except ValueError:
        return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=None,
                        help="worker processes for MV checks (default: $VISICUBE_THREADS or 1)")
    common.add_argument("--verify", choices=VERIFY_LEVELS, default="structural")
    common.add_argument("--out", help=f"directory for vertex files (default: {DEFAULT_OUT})")

    p = argparse.ArgumentParser(prog="visicube", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"visicube {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("build-mv", parents=[common], help="layered mutual-visibility set M(λ)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, default=3)
    s.add_argument("--lambda", dest="lam", type=int, help="residue class (default: largest)")
    s.add_argument("--supplier", choices=("greedy", "exact", "empty", "file"), default="greedy")
    s.add_argument("--supplier-file")
    s.add_argument("--budget-ms", type=int)

    s = sub.add_parser("witness", parents=[common], help="shortest path avoiding a vertex set")
    s.add_argument("--set", dest="input", required=True)
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--d", type=int, default=3)
    s.add_argument("--n", type=int, help="dimension, needed only for an empty set file")

    s = sub.add_parser("turan", parents=[common], help="exact daisy Turán number")
    for flag in ("--n", "--r", "--s", "--t"):
        s.add_argument(flag, type=int, required=True)
    s.add_argument("--budget-ms", type=int)

    s = sub.add_parser("color", parents=[common], help="layered coloring with resampling repair")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, default=3)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--max-rounds", type=int, default=10 ** 5)

    s = sub.add_parser("total", parents=[common], help="total mutual-visibility constructions")
    s.add_argument("--n", type=int)
    s.add_argument("--hamming-m", type=int)
    s.add_argument("--partition", action="store_true")

    s = sub.add_parser("solve", parents=[common], help="exact μ, μ_t, χ_μ, χ_μ^total")
    s.add_argument("--param", choices=tuple(SOLVERS), required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--budget-ms", type=int)

    s = sub.add_parser("repro", parents=[common], help="run the acceptance suite")
    s.add_argument("--suite", default="paper")
    s.add_argument("--max-n", dest="n", type=int)
    s.add_argument("--only", type=int, nargs="+", help="criterion numbers to run")
    return p


_CONFIG_FIELDS = {"n", "d", "lam", "seed", "budget_ms", "supplier", "supplier_file", "input",
                  "out", "verify", "threads"}


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    values = vars(ns).copy()
    command = values.pop("command")
    if values.get("threads") is None:
        values["threads"] = _env_threads()
    kwargs = {k: values.pop(k) for k in list(values) if k in _CONFIG_FIELDS}
    kwargs = {k: v for k, v in kwargs.items() if v is not None}
    return RunConfig(command, extra=values, **kwargs)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = config_from_args(ns)
        report = dispatch(config)
    except VertexFormatError as exc:
        print(f"visicube: malformed vertex file: {exc}", file=sys.stderr)
        return 2
    except InvariantBreachError as exc:
        print(f"visicube: verification failed: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"visicube: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ValueError, VisicubeError) as exc:
        print(f"visicube: {exc}", file=sys.stderr)
        return 2
    if report.text is not None:
        sys.stdout.write(report.text)
    else:
        sys.stdout.write(report.to_json() + "\n")
    return 0 if report.verified else 1


if __name__ == "__main__":
    sys.exit(main())
