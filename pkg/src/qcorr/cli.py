"""Command line entry point: ``qcorr list | run | compute | verify``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import render
from .scenarios import (
    Scenario,
    ScenarioError,
    builtin_scenarios,
    check_golden,
    evaluate,
    get_scenario,
    run,
)


def _emit(reports, fmt: str, out: str | None) -> None:
    if fmt == "json":
        payload = [render.report_to_json(r) for r in reports]
        text = render.dumps(payload[0] if len(payload) == 1 else payload) + "\n"
    elif fmt == "csv":
        blocks = {}
        for r in reports:
            blocks.update(render.report_to_csv_blocks(r))
        if out:
            target = Path(out)
            target.mkdir(parents=True, exist_ok=True)
            for key, doc in blocks.items():
                (target / f"{key}.csv").write_text(doc)
            return
        text = "".join(f"# {key}\n{doc}" for key, doc in blocks.items())
    else:
        text = "\n\n".join(render.report_to_text(r) for r in reports) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_list(args) -> int:
    for s in builtin_scenarios():
        print(f"{s.name:<20} {s.description}")
    return 0


def cmd_run(args) -> int:
    if args.name == "all":
        scenarios = builtin_scenarios()
    else:
        scenarios = [get_scenario(args.name)]
    reports = [run(s) for s in scenarios]
    _emit(reports, args.format, args.out)
    return 0 if all(r.passed for r in reports) else 1


def cmd_compute(args) -> int:
    data = json.loads(Path(args.config).read_text())
    data.setdefault("name", Path(args.config).stem)
    scenario = Scenario.from_dict(data)
    state, obs = scenario.resolve()
    report = check_golden(evaluate(obs, state, scenario.name), scenario.expected)
    _emit([report], args.format, args.out)
    return 0 if report.passed else 1


def cmd_verify(args) -> int:
    ok = True
    for s in builtin_scenarios():
        r = run(s)
        ok &= r.passed
        worst = max(r.deviations.values()) if r.deviations else 0.0
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {s.name:<20} max deviation {worst:.2e}")
    print("all scenarios pass" if ok else "some scenarios FAILED")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qcorr",
        description="Classical and quantum correlation functions of joint qubit observables.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list builtin scenarios").set_defaults(func=cmd_list)

    formats = ("table", "csv", "json")
    r = sub.add_parser("run", help="run a builtin scenario (or 'all')")
    r.add_argument("name")
    r.add_argument("--format", choices=formats, default="table")
    r.add_argument("--out", help="output file (directory for csv)")
    r.set_defaults(func=cmd_run)

    c = sub.add_parser("compute", help="evaluate an ad-hoc state/observable config")
    c.add_argument("--config", required=True, help="JSON config file")
    c.add_argument("--format", choices=formats, default="table")
    c.add_argument("--out")
    c.set_defaults(func=cmd_compute)

    sub.add_parser("verify", help="check every builtin against its golden tables").set_defaults(
        func=cmd_verify
    )
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ScenarioError, ValueError, OSError) as e:
        print(f"qcorr: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
