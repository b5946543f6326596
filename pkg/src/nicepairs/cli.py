"""Command-line interface.

    nicepairs classify --genus 6 --pair 15,77 --format text
    nicepairs chain --genus 2 --pair 7,8 --policy reduce
    nicepairs enumerate --genus 2 --n-max 4 --format csv
    nicepairs fine --genus 6 --pair 67,342
    nicepairs predecessors --genus 6 --pair 7,38 --n-max 95 --via dual
    nicepairs stability --ambient 1 --input points.csv
    nicepairs condition --input omega_phi.csv
    nicepairs condition --input omega.csv --seed 1 --trials 500
    nicepairs verify

Exit status: 0 on success, 2 on invalid input, 1 on internal failure or on a
violated invariant during ``verify``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import TextIO

from . import checks
from .classify import classify, graph, is_fine
from .linalg import (
    DimensionError,
    OmegaMatrix,
    ProjectiveConfig,
    RationalMatrix,
    condition_a,
    condition_a_matrix,
    condition_b,
    determinant,
    git_stable,
    sample_generic_transformation,
)
from .pairs import Pair, PairError, StepKind, follow, replay
from .report import (
    CsvReportWriter,
    ParseError,
    chain_to_list,
    diagram_to_dict,
    format_matrix,
    parse_matrices,
    serialize_report,
    to_json,
    to_text,
)

COMMANDS = ("classify", "chain", "enumerate", "fine", "predecessors",
            "stability", "condition", "verify")
NEEDS_GENUS = {"classify", "chain", "enumerate", "fine", "predecessors"}
NEEDS_PAIR = {"classify", "chain", "fine", "predecessors"}


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    genus: int | None = None
    pair: tuple[int, int] | None = None
    n_max: int | None = None
    input_path: str | None = None
    output_format: str = "json"
    seed: int | None = None
    trials: int | None = None
    ambient: int | None = None
    policy: str = "shortest"
    via: str = "both"
    with_fine: bool = True
    g_max: int = 7

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.command in NEEDS_GENUS:
            if self.genus is None:
                raise UsageError(f"{self.command} requires --genus")
            if self.genus < 2:
                raise UsageError(f"--genus must be >= 2, got {self.genus}")
        if self.command in NEEDS_PAIR and self.pair is None:
            raise UsageError(f"{self.command} requires --pair N,D")
        if self.command in ("enumerate", "predecessors") and self.n_max is None:
            raise UsageError(f"{self.command} requires --n-max")
        if self.n_max is not None and self.n_max < 1:
            raise UsageError(f"--n-max must be >= 1, got {self.n_max}")
        if self.command in ("stability", "condition") and self.input_path is None:
            raise UsageError(f"{self.command} requires --input")
        if self.command == "stability" and self.ambient is None:
            raise UsageError("stability requires --ambient")
        if (self.seed is None) != (self.trials is None):
            raise UsageError("--seed and --trials must be given together")
        if self.trials is not None and self.trials < 0:
            raise UsageError("--trials must be non-negative")
        if self.output_format not in ("json", "csv", "text"):
            raise UsageError(f"unknown format {self.output_format!r}")


def _parse_pair(text: str) -> tuple[int, int]:
    try:
        n, d = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N,D but got {text!r}") from None
    return n, d


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nicepairs", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--format", dest="output_format", default="json",
                       choices=("json", "csv", "text"))
        return p

    p = add("classify", "full report for one pair")
    p.add_argument("--genus", type=int)
    p.add_argument("--pair", type=_parse_pair)
    p.add_argument("--no-fine", dest="with_fine", action="store_false")

    p = add("chain", "reduction chain for one pair")
    p.add_argument("--genus", type=int)
    p.add_argument("--pair", type=_parse_pair)
    p.add_argument("--policy", default="shortest",
                   help="shortest | reduce | dual | explicit step codes such as RRD")

    p = add("enumerate", "reports for every pair of the cone up to a rank")
    p.add_argument("--genus", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--no-fine", dest="with_fine", action="store_false")

    p = add("fine", "admissible-diagram search for one pair")
    p.add_argument("--genus", type=int)
    p.add_argument("--pair", type=_parse_pair)

    p = add("predecessors", "pairs whose one-step reduction lands on a given pair")
    p.add_argument("--genus", type=int)
    p.add_argument("--pair", type=_parse_pair)
    p.add_argument("--n-max", type=int)
    p.add_argument("--via", default="both", choices=("reduce", "dual", "both"))

    p = add("stability", "GIT stability of a point configuration")
    p.add_argument("--ambient", type=int)
    p.add_argument("--input", dest="input_path")

    p = add("condition", "Conditions A and B for an omega matrix and a transformation")
    p.add_argument("--input", dest="input_path")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int)

    p = add("verify", "run the invariant suite over bounded ranges")
    p.add_argument("--g-max", type=int, default=7)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--chains", dest="trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    fields = RunConfig.__dataclass_fields__
    return RunConfig(**{k: v for k, v in vars(ns).items() if k in fields})


def _read_input(cfg: RunConfig, stdin: TextIO) -> str:
    if cfg.input_path == "-":
        return stdin.read()
    try:
        with open(cfg.input_path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {cfg.input_path}: {exc.strerror}") from None


def _emit(obj, out: TextIO) -> None:
    out.write(json.dumps(obj, separators=(", ", ": ")) + "\n")


def _cmd_chain(cfg: RunConfig, out: TextIO) -> None:
    g, p = cfg.genus, Pair(*cfg.pair)
    policy = cfg.policy
    if policy == "shortest":
        chain = graph(g).is_nice(p).witness
        if chain is None:
            raise UsageError(f"{p} is not nice for g={g}; pick --policy reduce|dual|codes")
    elif policy in ("reduce", "dual"):
        chain = follow(g, p, StepKind.REDUCE if policy == "reduce" else StepKind.DUAL)
    else:
        try:
            kinds = [StepKind.from_code(c) for c in policy.upper()]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        chain = replay(g, p, kinds)
    if cfg.output_format == "text":
        out.write(f"{chain}  [{chain.codes}]\n")
    elif cfg.output_format == "csv":
        out.write("genus,n,d,chain,end_n,end_d\n")
        out.write(f"{g},{p.n},{p.d},{chain.codes},{chain.end.n},{chain.end.d}\n")
    else:
        _emit({"genus": g, "n": p.n, "d": p.d, "chain": chain_to_list(chain)}, out)


def _cmd_enumerate(cfg: RunConfig, out: TextIO) -> None:
    from .classify import enumerate_cone

    rows = enumerate_cone(cfg.genus, cfg.n_max, with_fine=cfg.with_fine)
    if cfg.output_format == "csv":
        w = CsvReportWriter(out)
        for r in rows:
            w.write(r)
    else:
        for r in rows:
            out.write(to_json(r) if cfg.output_format == "json" else to_text(r))


def _cmd_fine(cfg: RunConfig, out: TextIO) -> None:
    g, p = cfg.genus, Pair(*cfg.pair)
    res = is_fine(g, p)
    if cfg.output_format == "text":
        out.write(f"fine={str(res.verdict).lower()} ({res.status})\n")
        if res.witness is not None:
            w = res.witness
            out.write("top " + " ~ ".join(str(q) for q in w.top) + "\n")
            for l in w.links:
                out.write(f"meet {l.meet}: {l.left_chain} | {l.right_chain}\n")
            out.write(f"terminal {w.terminal_nice_witness}\n")
    else:
        _emit({"genus": g, "n": p.n, "d": p.d, "fine": res.verdict,
               "status": res.status, "fine_diagram": diagram_to_dict(res.witness)}, out)


def _cmd_predecessors(cfg: RunConfig, out: TextIO) -> None:
    g, p = cfg.genus, Pair(*cfg.pair)
    kinds = [StepKind.REDUCE, StepKind.DUAL] if cfg.via == "both" else [StepKind(cfg.via)]
    rows = [(kind, src, k) for kind in kinds for src, k in graph(g).predecessors(p, cfg.n_max, kind)]
    if cfg.output_format == "csv":
        out.write("kind,n,d,k\n")
        for kind, src, k in rows:
            out.write(f"{kind.value},{src.n},{src.d},{k}\n")
    elif cfg.output_format == "text":
        for kind, src, k in rows:
            out.write(f"{src} -> {p}  [{kind.code}{k}]\n")
    else:
        _emit({"genus": g, "target": [p.n, p.d],
               "predecessors": [{"kind": kind.value, "n": s.n, "d": s.d, "k": k}
                                for kind, s, k in rows]}, out)


def _cmd_stability(cfg: RunConfig, stdin: TextIO, out: TextIO) -> None:
    mats = parse_matrices(_read_input(cfg, stdin))
    if len(mats) != 1:
        raise UsageError(f"expected one block of points, found {len(mats)}")
    try:
        config = ProjectiveConfig(cfg.ambient, mats[0])
    except (DimensionError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    res = git_stable(config)
    if cfg.output_format == "text":
        out.write(f"stable={str(res.stable).lower()}")
        if not res.stable:
            out.write(f"  points {list(res.violating_subspace)} span a "
                      f"{res.subspace_dim}-dimensional subspace")
        out.write("\n")
    elif cfg.output_format == "csv":
        viol = "" if res.violating_subspace is None else ";".join(map(str, res.violating_subspace))
        out.write(f"stable,violating_points\n{int(res.stable)},{viol}\n")
    else:
        _emit({"ambient": cfg.ambient, "points": len(config.points), "stable": res.stable,
               "violating_subspace": None if res.violating_subspace is None
               else list(res.violating_subspace)}, out)


def _frac_str(x: Fraction | None) -> str | None:
    return None if x is None else str(x)


def _cmd_condition(cfg: RunConfig, stdin: TextIO, out: TextIO) -> None:
    mats = parse_matrices(_read_input(cfg, stdin))
    sampling = cfg.trials is not None
    if len(mats) != (1 if sampling else 2):
        raise UsageError("expected an omega block" + ("" if sampling else " followed by a phi block"))
    try:
        omega = OmegaMatrix(RationalMatrix(mats[0]))
        omega.n
        if sampling:
            rates = sample_generic_transformation(omega, cfg.seed, cfg.trials)
            obj = {
                "trials": rates.trials,
                "omega_generic": rates.omega_generic,
                "condition_a_rate": _frac_str(rates.condition_a_rate),
                "condition_b_rate": _frac_str(rates.condition_b_rate),
                "failures_a": [m.tolist() for m in rates.failures_a],
                "failures_b": [m.tolist() for m in rates.failures_b],
            }
        else:
            phi = RationalMatrix(mats[1])
            b = condition_b(phi)
            det = determinant(condition_a_matrix(omega, phi))
            obj = {
                "omega_generic": omega.generic,
                "condition_a": det != 0,
                "determinant": str(det),
                "condition_b": b.holds,
                "surjective": b.surjective,
                "violating_rows": None if b.violating_rows is None else list(b.violating_rows),
            }
    except DimensionError as exc:
        raise UsageError(str(exc)) from None
    if cfg.output_format == "text":
        for k, v in obj.items():
            if k.startswith("failures"):
                for m in v:
                    out.write(f"{k[:-1]}:\n" + format_matrix(m))
            else:
                out.write(f"{k}={json.dumps(v) if not isinstance(v, str) else v}\n")
    elif cfg.output_format == "csv":
        flat = {k: v for k, v in obj.items() if not k.startswith("failures")}
        out.write(",".join(flat) + "\n")
        out.write(",".join("" if v is None else (";".join(map(str, v)) if isinstance(v, list)
                                                 else str(v)) for v in flat.values()) + "\n")
    else:
        _emit(json.loads(json.dumps(obj, default=str)), out)
    if sampling and (rates.failures_a or rates.failures_b):
        raise _Failed("sampled transformations failed a genericity condition")


class _Failed(Exception):
    pass


def _cmd_verify(cfg: RunConfig, out: TextIO) -> None:
    vc = checks.VerifyConfig(g_max=cfg.g_max, n_max=cfg.n_max or 12,
                             chains=10_000 if cfg.trials is None else cfg.trials,
                             seed=cfg.seed or 0)
    failed = False
    for res in checks.run_all(vc):
        out.write(f"{'PASS' if res.ok else 'FAIL'}  {res.name}\n")
        for v in res.violations[:10]:
            out.write(f"      {v}\n")
        failed |= not res.ok
    if failed:
        raise _Failed("invariant violated")


def run(cfg: RunConfig, stdin: TextIO = sys.stdin, stdout: TextIO = sys.stdout,
        stderr: TextIO = sys.stderr) -> int:
    try:
        cfg.validate()
        c = cfg.command
        if c == "classify":
            stdout.write(serialize_report(classify(cfg.genus, cfg.pair, cfg.with_fine),
                                          cfg.output_format))
        elif c == "chain":
            _cmd_chain(cfg, stdout)
        elif c == "enumerate":
            _cmd_enumerate(cfg, stdout)
        elif c == "fine":
            _cmd_fine(cfg, stdout)
        elif c == "predecessors":
            _cmd_predecessors(cfg, stdout)
        elif c == "stability":
            _cmd_stability(cfg, stdin, stdout)
        elif c == "condition":
            _cmd_condition(cfg, stdin, stdout)
        elif c == "verify":
            _cmd_verify(cfg, stdout)
    except (UsageError, PairError, ParseError) as exc:
        stderr.write(f"nicepairs {cfg.command}: {exc}\n")
        return 2
    except _Failed as exc:
        stderr.write(f"nicepairs {cfg.command}: {exc}\n")
        return 1
    except Exception as exc:  # noqa: BLE001
        stderr.write(f"nicepairs {cfg.command}: internal error: {exc!r}\n")
        return 1
    return 0


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
