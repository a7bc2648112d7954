"""Command line front end: ``wedge [--seed N] [--samples N] (run FILE | COMMAND ARGS...)``.

Each command prints one JSON object per line on stdout; short summaries go
to stderr.  Exit status is 0 when everything passed, 1 when a verification
found failures and 2 for usage or precondition errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Callable, Dict, List, Tuple

from .dsl import Binding, Command, Environment, Located, parse
from .errors import WedgeError
from .skeleton import SkeletonIndex, closure_member, retract, saturate, verify_skeleton
from .topology import is_isolated
from .treealg import NodePath, TreeSpec, cf_node, ht, ims_descriptor, meet
from .valdivia import check_star, classify, in_induced_D, verify_witness_family

DEFAULT_SAMPLES = 100
EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(WedgeError):
    pass


class Context:
    def __init__(self, seed: int = 0, samples: int = DEFAULT_SAMPLES):
        self.seed = seed
        self.samples = samples
        self.env = Environment()

    def rng(self, cmd: Command) -> random.Random:
        return random.Random(int(cmd.flag("seed", self.seed)))

    def sample_count(self, cmd: Command) -> int:
        return int(cmd.flag("samples", self.samples))


# ---------------------------------------------------------------------------
# argument helpers


def _values(ctx: Context, cmd: Command) -> list:
    return [ctx.env.evaluate(a) for a in cmd.args]


def _arity(cmd: Command, values: list, *allowed: int):
    if len(values) not in allowed:
        raise UsageError(f"{cmd.name} takes {' or '.join(map(str, allowed))} arguments, got {len(values)}")


def _spec(value) -> TreeSpec:
    if isinstance(value, TreeSpec):
        return value
    if isinstance(value, Located):
        return value.spec
    raise UsageError(f"expected a tree spec, got {value}")


def _node(value, spec: TreeSpec) -> NodePath:
    if isinstance(value, Located):
        if value.spec != spec:
            raise UsageError(f"{value.node} was read in {value.spec}, not {spec}")
        return value.node
    if isinstance(value, NodePath):
        return value
    raise UsageError(f"expected a node, got {value}")


def _split_spec(values: list, nodes: int) -> Tuple[TreeSpec, list]:
    """Leading spec argument is optional when the nodes are ``tree.node`` pairs."""
    if len(values) == nodes + 1:
        return _spec(values[0]), values[1:]
    if len(values) == nodes and values and isinstance(values[0], Located):
        return values[0].spec, values
    raise UsageError(f"expected a tree spec and {nodes} node(s)")


def _index(value, spec: TreeSpec) -> SkeletonIndex:
    if isinstance(value, SkeletonIndex):
        return value
    if isinstance(value, list):
        return saturate(spec, [_node(v, spec) for v in value])
    raise UsageError(f"expected an index or a list of seed nodes, got {value}")


# ---------------------------------------------------------------------------
# commands; each returns (json, exit code, summary)


def cmd_check_star(ctx, cmd):
    values = _values(ctx, cmd)
    _arity(cmd, values, 1)
    spec = _spec(values[0])
    report = check_star(spec)
    out = {"spec": str(spec), **report.to_json()}
    return out, EXIT_OK, f"(*) {'holds' if report.holds else 'fails'} for {spec}"


def cmd_classify(ctx, cmd):
    values = _values(ctx, cmd)
    _arity(cmd, values, 1)
    spec = _spec(values[0])
    result = classify(spec)
    return {"spec": str(spec), **result.to_json()}, EXIT_OK, f"{spec}: {result.cls} ({result.rule})"


def cmd_meet(ctx, cmd):
    values = _values(ctx, cmd)
    spec, rest = _split_spec(values, 2)
    s, t = (_node(v, spec) for v in rest)
    m = meet(spec, s, t)
    return {"meet": str(m), "height": str(m.height)}, EXIT_OK, f"meet = {m}"


def cmd_node_info(ctx, cmd):
    values = _values(ctx, cmd)
    spec, rest = _split_spec(values, 1)
    t = _node(rest[0], spec)
    succ = ims_descriptor(spec, t)
    out = {
        "node": str(t),
        "ht": str(ht(spec, t)),
        "cf": str(cf_node(spec, t)),
        "ims": [str(x) for x in succ.nodes] if succ.is_finite else succ.kind,
        "isolated": is_isolated(spec, t),
        "inD": in_induced_D(spec, t),
    }
    return out, EXIT_OK, f"{t}: height {out['ht']}, cofinality {out['cf']}"


def cmd_saturate(ctx, cmd):
    values = _values(ctx, cmd)
    _arity(cmd, values, 1, 2)
    spec = _spec(values[0])
    index = _index(values[1] if len(values) > 1 else [], spec)
    return index.to_json(), EXIT_OK, f"index with {len(index.core)} core nodes, {len(index.tails)} tails"


def cmd_retract(ctx, cmd):
    values = _values(ctx, cmd)
    _arity(cmd, values, 2, 3)
    if len(values) == 3:
        spec = _spec(values[0])
        index_value, t_value = values[1], values[2]
    elif isinstance(values[1], Located):
        spec = values[1].spec
        index_value, t_value = values
    else:
        raise UsageError("retract takes a tree spec, an index and a node")
    index = _index(index_value, spec)
    t = _node(t_value, spec)
    r = retract(spec, index, t)
    membership = closure_member(spec, index, r)
    out = {"node": str(t), "retract": str(r), "membership": membership.kind}
    return out, EXIT_OK, f"r_A({t}) = {r}"


def cmd_verify_skeleton(ctx, cmd):
    values = _values(ctx, cmd)
    _arity(cmd, values, 1)
    spec = _spec(values[0])
    reports = verify_skeleton(spec, ctx.rng(cmd), samples=ctx.sample_count(cmd))
    passed = all(r.passed for r in reports)
    out = {"spec": str(spec), "passed": passed, "reports": [r.to_json() for r in reports]}
    summary = ", ".join(f"({r.axiom}) {r.samples} checks, {len(r.failures)} failures" for r in reports)
    return out, EXIT_OK if passed else EXIT_FAILED, summary


def cmd_valdivia_witness(ctx, cmd):
    values = _values(ctx, cmd)
    _arity(cmd, values, 1)
    spec = _spec(values[0])
    n = ctx.sample_count(cmd)
    report = verify_witness_family(spec, ctx.rng(cmd), pairs=n, nodes=n)
    out = {"spec": str(spec), "passed": report.passed, **report.to_json()}
    return out, EXIT_OK if report.passed else EXIT_FAILED, f"{len(report.failures)} failures"


def cmd_oracle_compare(ctx, cmd):
    from .oracle import compare_spec

    values = _values(ctx, cmd)
    _arity(cmd, values, 1)
    spec = _spec(values[0])
    report = compare_spec(spec, all_subsets=bool(cmd.flag("all-subsets", False)),
                          rng=ctx.rng(cmd), samples=ctx.sample_count(cmd))
    out = {"spec": str(spec), **report.to_json()}
    code = EXIT_OK if not report.mismatches else EXIT_FAILED
    return out, code, f"{report.checks} checks, {len(report.mismatches)} mismatches"


COMMANDS: Dict[str, Callable] = {
    "check-star": cmd_check_star,
    "classify": cmd_classify,
    "meet": cmd_meet,
    "node-info": cmd_node_info,
    "saturate": cmd_saturate,
    "retract": cmd_retract,
    "verify-skeleton": cmd_verify_skeleton,
    "valdivia-witness": cmd_valdivia_witness,
    "oracle-compare": cmd_oracle_compare,
}
KNOWN_FLAGS = {"seed", "samples", "all-subsets"}


def _error_json(exc: BaseException) -> dict:
    return {"error": str(exc), "type": type(exc).__name__}


def run_command(ctx: Context, cmd: Command) -> Tuple[dict, int, str]:
    handler = COMMANDS.get(cmd.name)
    if handler is None:
        raise UsageError(f"unknown command {cmd.name!r}")
    for key, _ in cmd.flags:
        if key not in KNOWN_FLAGS:
            raise UsageError(f"unknown flag --{key}")
    return handler(ctx, cmd)


def run_script(text: str, ctx: Context, out=None, err=None) -> int:
    """Execute every statement, printing one JSON line per command."""
    out = out or sys.stdout
    err = err or sys.stderr
    code = EXIT_OK
    try:
        script = parse(text)
    except (WedgeError, SyntaxError, NameError) as exc:
        print(json.dumps(_error_json(exc), sort_keys=True), file=out)
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    for stmt in script.statements:
        try:
            if isinstance(stmt, Binding):
                ctx.env.bind(stmt)
                continue
            result, status, summary = run_command(ctx, stmt)
        except (WedgeError, TypeError, ValueError, ArithmeticError, NameError, RuntimeError) as exc:
            print(json.dumps(_error_json(exc), sort_keys=True), file=out)
            print(f"error: {exc}", file=err)
            return EXIT_USAGE
        print(json.dumps(result, sort_keys=True), file=out)
        print(f"{stmt.name}: {summary}", file=err)
        code = max(code, status)
    return code


def _samples_default() -> int:
    value = os.environ.get("WEDGE_SAMPLES")
    return int(value) if value else DEFAULT_SAMPLES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wedge",
        description="Trees in the coarse wedge topology: skeletons, retractions and Valdivia checks.",
        epilog="commands: run FILE|-, " + ", ".join(COMMANDS),
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized checks (default 0)")
    parser.add_argument("--samples", type=int, default=None,
                        help="sample count for randomized checks (default 100, or $WEDGE_SAMPLES)")
    parser.add_argument("command", help="a command name, or 'run' to execute a script file")
    parser.add_argument("args", nargs=argparse.REMAINDER, help="command arguments in script syntax")
    return parser


def main(argv: List[str] = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    samples = ns.samples if ns.samples is not None else _samples_default()
    ctx = Context(seed=ns.seed, samples=samples)
    if ns.command == "run":
        if len(ns.args) != 1:
            print(json.dumps({"error": "run takes exactly one FILE (or - for stdin)"}))
            return EXIT_USAGE
        path = ns.args[0]
        try:
            text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
        except OSError as exc:
            print(json.dumps(_error_json(exc), sort_keys=True))
            return EXIT_USAGE
        return run_script(text, ctx)
    return run_script(" ".join([ns.command, *ns.args]), ctx)


if __name__ == "__main__":
    sys.exit(main())
