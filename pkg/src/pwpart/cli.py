"""``pwpart`` command line: solve, oracle, classify, reduce, gen, adjust, verify-q.

Every command prints JSON on stdout; diagnostics go to stderr.  Exit codes:
0 = yes (or success), 1 = no (or a failed verification), 2 = error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Sequence

from pwpart.corpus import random_instance
from pwpart.flow import UnsupportedRule, decide_flow
from pwpart.model import ElectionInstance, InstanceError, Mode, Profile, instance_to_json, parse_instance
from pwpart.oracle import DEFAULT_BUDGET, BudgetExceeded, ThreeDMInstance, decide_oracle
from pwpart.reduction import (
    AdjustmentTarget,
    ReductionError,
    build_adjustment_profile,
    reduce_lemma6,
    reduce_lemma7,
)
from pwpart.rules import RuleFamily, ScoringVector, classify, family_from_json, family_to_json, parse_rule_spec, score_vector
from pwpart.scoring import score_orders

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


class CliError(Exception):
    """A user-facing failure that maps to exit code 2."""


def _emit(doc: Any) -> None:
    json.dump(doc, sys.stdout, indent=1)
    sys.stdout.write("\n")


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def _write_json(path: str, doc: Any) -> None:
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def _resolve_rule(spec: str, m: int) -> RuleFamily | ScoringVector:
    try:
        rule = parse_rule_spec(spec)
        if isinstance(rule, RuleFamily):
            score_vector(rule, m)
    except ValueError as exc:
        raise CliError(f"rule {spec!r}: {exc}") from None
    return rule


# ---------------------------------------------------------------------------
# solve / oracle


def run_report(
    inst: ElectionInstance,
    mode: Mode | None = None,
    engine: str = "auto",
    budget: int = DEFAULT_BUDGET,
    prune: bool = False,
) -> tuple[dict[str, Any], Profile | None]:
    """Decide ``inst`` and describe how; returns the report and any witness."""
    mode = inst.mode if mode is None else mode
    if engine == "auto":
        engine = "flow" if classify(inst.vector).flow_tractable else "oracle"
    start = time.perf_counter()
    report: dict[str, Any] = {"mode": mode.value, "algorithm": engine}
    if engine == "flow":
        try:
            res = decide_flow(inst, mode)
        except UnsupportedRule as exc:
            raise CliError(str(exc)) from None
        witness = res.witness
        report.update(
            decision="yes" if res.decision else "no",
            target=res.target,
            max_flow=res.max_flow,
            deficits=dict(sorted(res.network.deficit.items())),
        )
    else:
        try:
            ores = decide_oracle(inst, mode, budget=budget, prune=prune)
        except BudgetExceeded as exc:
            raise CliError(f"oracle budget exceeded: {exc}") from None
        witness = ores.witness
        report.update(decision="yes" if ores.decision else "no", explored=ores.explored)
    report["wall_time"] = round(time.perf_counter() - start, 6)
    return report, witness


def _solve_file(path: str, mode: str | None, engine: str, budget: int, prune: bool) -> dict[str, Any]:
    try:
        inst = parse_instance(_read_text(path))
        report, _ = run_report(inst, Mode.parse(mode) if mode else None, engine, budget, prune)
    except (CliError, InstanceError) as exc:
        return {"file": path, "error": str(exc)}
    return {"file": path, **report}


def _solve(args: argparse.Namespace, engine: str) -> int:
    target = Path(args.instance)
    if target.is_dir():
        files = sorted(str(p) for p in target.glob("*.json"))
        jobs = [(f, args.mode, engine, args.budget, args.prune) for f in files]
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(_solve_file, *zip(*jobs))) if jobs else []
        else:
            results = [_solve_file(*job) for job in jobs]
        _emit(results)
        return EXIT_ERROR if any("error" in r for r in results) else EXIT_YES

    inst = parse_instance(_read_text(args.instance))
    mode = Mode.parse(args.mode) if args.mode else None
    report, witness = run_report(inst, mode, engine, args.budget, args.prune)
    report["witness"] = None
    if args.witness and witness is not None:
        orders = witness.orders()
        scores = score_orders(orders, inst.vector, inst.candidates)
        _write_json(args.witness, {"orders": [list(o) for o in orders], "scores": scores})
        report["witness"] = args.witness
    _emit(report)
    return EXIT_YES if report["decision"] == "yes" else EXIT_NO


def cmd_solve(args: argparse.Namespace) -> int:
    return _solve(args, args.engine)


def cmd_oracle(args: argparse.Namespace) -> int:
    return _solve(args, "oracle")


# ---------------------------------------------------------------------------
# classify / gen


def cmd_classify(args: argparse.Namespace) -> int:
    rule = parse_rule_spec(args.rule)
    vector = rule if isinstance(rule, ScoringVector) else score_vector(rule, args.m)
    if args.m is not None and len(vector) != args.m:
        raise CliError(f"vector has {len(vector)} entries, m={args.m}")
    _emit({"vector": list(vector.scores), **classify(vector).to_json()})
    return EXIT_YES


def cmd_gen(args: argparse.Namespace) -> int:
    if args.candidates < 1 or args.votes < 1 or args.max_blocks < 1:
        raise CliError("--candidates, --votes and --max-blocks must be positive")
    rule = _resolve_rule(args.rule, args.candidates)
    inst = random_instance(random.Random(args.seed), args.candidates, args.votes, args.max_blocks, rule, args.mode)
    doc = instance_to_json(inst)
    if args.out:
        _write_json(args.out, doc)
        _emit({"instance": args.out})
    else:
        _emit(doc)
    return EXIT_YES


# ---------------------------------------------------------------------------
# reduce / adjust / verify-q


def cmd_reduce(args: argparse.Namespace) -> int:
    try:
        inst3 = ThreeDMInstance.parse(_read_text(args.instance))
    except InstanceError as exc:
        raise CliError(f"3DM instance: {exc}") from None
    if args.lemma == 6:
        family = parse_rule_spec(args.family) if args.family else RuleFamily.lemma6_template(args.i, args.k)
        inst, layout = reduce_lemma6(inst3, args.k, args.i, family)
    else:
        l = 3 * inst3.M - 2  # noqa: E741
        family = parse_rule_spec(args.family) if args.family else RuleFamily.lemma7_template(args.i, args.k, l)
        inst, layout = reduce_lemma7(inst3, args.i, args.k, family)
    doc = instance_to_json(inst)
    report = layout.to_json()
    if args.out:
        _write_json(args.out, doc)
        sidecar = args.out[:-5] if args.out.endswith(".json") else args.out
        sidecar += ".layout.json"
        _write_json(sidecar, report)
        _emit({"instance": args.out, "layout": sidecar})
    else:
        _emit({"instance": doc, "layout": report})
    return EXIT_YES


def _csv(text: str) -> list[str]:
    return [part for part in text.split(",") if part]


def cmd_adjust(args: argparse.Namespace) -> int:
    named, dummies = _csv(args.named), _csv(args.dummies)
    try:
        offsets = [int(x) for x in _csv(args.offsets)]
    except ValueError:
        raise CliError("--offsets must be comma-separated integers") from None
    m = len(named) + len(dummies)
    rule = _resolve_rule(args.rule, m)
    vector = rule if isinstance(rule, ScoringVector) else score_vector(rule, m)
    target = AdjustmentTarget(tuple(named), tuple(offsets), tuple(dummies), args.margin)
    q = build_adjustment_profile(target, vector)
    rule_doc = {"vector": list(rule.scores)} if isinstance(rule, ScoringVector) else family_to_json(rule)
    _emit(
        {
            "named": named,
            "offsets": offsets,
            "dummies": dummies,
            "rule": rule_doc,
            "lambda": q.lam,
            "bound": q.bound,
            "votes": [list(o) for o in q.votes],
        }
    )
    return EXIT_YES


def verify_q(doc: dict[str, Any]) -> dict[str, Any]:
    """Re-score a score-adjustment profile document against its targets."""
    try:
        named, offsets, dummies = doc["named"], doc["offsets"], doc["dummies"]
        lam, votes, raw_rule = doc["lambda"], doc["votes"], doc["rule"]
    except (KeyError, TypeError) as exc:
        raise CliError(f"profile document missing field {exc}") from None
    names = list(named) + list(dummies)
    try:
        vector = ScoringVector(tuple(raw_rule["vector"])) if "vector" in raw_rule else score_vector(family_from_json(raw_rule), len(names))
    except ValueError as exc:
        raise CliError(f"rule: {exc}") from None
    for j, order in enumerate(votes):
        if sorted(order) != sorted(names):
            raise CliError(f"vote {j} is not a linear order over the candidates")
    scores = score_orders(votes, vector, names)
    problems = [f"{c} scores {scores[c]}, wanted {lam + x}" for c, x in zip(named, offsets) if scores[c] != lam + x]
    problems += [f"dummy {d} scores {scores[d]}, not below {lam}" for d in dummies if scores[d] >= lam]
    if "bound" in doc and len(votes) > doc["bound"]:
        problems.append(f"{len(votes)} votes exceed the bound {doc['bound']}")
    return {"ok": not problems, "lambda": lam, "votes": len(votes), "scores": scores, "problems": problems}


def cmd_verify_q(args: argparse.Namespace) -> int:
    try:
        doc = json.loads(_read_text(args.profile))
    except json.JSONDecodeError as exc:
        raise CliError(f"malformed JSON: {exc}") from None
    result = verify_q(doc)
    _emit(result)
    return EXIT_YES if result["ok"] else EXIT_NO


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pwpart", description="Possible-Winner tools for partitioned preferences.")
    sub = parser.add_subparsers(dest="command", required=True)

    def solve_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("instance", help="instance JSON file, or a directory of them")
        p.add_argument("--mode", choices=[m.value for m in Mode], help="override the instance's mode")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="oracle budget (default 10^6)")
        p.add_argument("--prune", action="store_true", help="use the pruned oracle search")
        p.add_argument("--witness", help="write a winning complete profile here")
        p.add_argument("--jobs", type=int, default=1, help="parallel workers for a directory batch")

    p = sub.add_parser("solve", help="decide an instance")
    solve_flags(p)
    p.add_argument("--engine", choices=("auto", "flow", "oracle"), default="auto")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="decide an instance by exhaustive search")
    solve_flags(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("classify", help="classify a scoring vector")
    p.add_argument("rule", help="e.g. borda, k-approval:3, two-one-zero, vector:3,1,1,0")
    p.add_argument("m", type=int, nargs="?", help="number of candidates (not needed for vector:)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("reduce", help="generate a Possible-Winner instance from 3DM")
    p.add_argument("instance", help="3DM JSON file")
    p.add_argument("--lemma", type=int, choices=(6, 7), required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--i", type=int, default=2)
    p.add_argument("--family", help="rule spec (default: the matching template)")
    p.add_argument("--out", help="instance output file; the layout goes next to it")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("gen", help="seeded random instance")
    p.add_argument("--candidates", type=int, required=True)
    p.add_argument("--votes", type=int, required=True)
    p.add_argument("--max-blocks", type=int, required=True)
    p.add_argument("--rule", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.CO_WINNER.value)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("adjust", help="build linear votes hitting score offsets")
    p.add_argument("--rule", required=True)
    p.add_argument("--named", required=True, help="comma-separated names")
    p.add_argument("--offsets", required=True, help="comma-separated integers")
    p.add_argument("--dummies", required=True, help="comma-separated names")
    p.add_argument("--margin", type=int, default=1)
    p.set_defaults(func=cmd_adjust)

    p = sub.add_parser("verify-q", help="re-score a score-adjustment profile")
    p.add_argument("profile")
    p.set_defaults(func=cmd_verify_q)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, InstanceError, ReductionError, ValueError) as exc:
        print(f"pwpart: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
