"""Command-line client for the scenario operations.

By default every subcommand loads the config, runs the computation
in-process through the same handlers the HTTP service uses, and writes the
result to the configured output (stdout if no path). With ``--server`` the
scenario is POSTed to a running service instead and the response body is
written identically, so outputs are byte-stable in both modes.

Exit codes: 0 success, 2 config error, 3 physics/numerics domain error,
4 oracle failure.
"""

import argparse
import json
import sys
from typing import Optional

from . import __version__, runner
from .errors import DomainError, NumericalError, ScenarioError
from .scenario import Scenario, load_scenario

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_ORACLE = 4

_TABLE_COMMANDS = ("mode-function", "mode-max", "sweep")
_ENDPOINTS = {
    "eval-signal": "/eval-signal",
    "mode-function": "/mode-function",
    "mode-max": "/mode-max",
    "sensitivity": "/sensitivity",
    "optimize": "/optimize",
    "sweep": "/sweep",
    "oracle": "/oracle",
}


def _render_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _write_output(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _table_payload(columns, rows) -> dict:
    return {"columns": list(columns), "rows": [list(r) for r in rows],
            "tool_version": __version__}


def _run_local(args, sc: Scenario) -> dict:
    """Execute a subcommand in-process; returns the service-shaped payload."""
    if args.command == "eval-signal":
        return runner.eval_signal(sc)
    if args.command == "mode-function":
        table = runner.mode_function_table(sc)
        return {"columns": table.columns, "rows": [list(r) for r in table.rows],
                "csv": runner.render_csv(table)}
    if args.command == "mode-max":
        table = runner.mode_max_table(sc)
        return {"columns": table.columns, "rows": [list(r) for r in table.rows],
                "csv": runner.render_csv(table)}
    if args.command == "sensitivity":
        result = runner.sensitivity_result(sc)
        table = runner.Table(runner.SENSITIVITY_COLUMNS,
                             [runner._sensitivity_row(result)])
        return {"result": result, "csv": runner.render_csv(table)}
    if args.command == "optimize":
        outcome, table = runner.optimize_run(sc)
        return {"outcome": outcome,
                "sweep": {"columns": table.columns,
                          "rows": [list(r) for r in table.rows],
                          "csv": runner.render_csv(table)}}
    if args.command == "sweep":
        table = runner.sweep(sc, args.axis)
        return {"columns": table.columns, "rows": [list(r) for r in table.rows],
                "csv": runner.render_csv(table)}
    if args.command == "oracle":
        return runner.oracle_check(sc, seed=args.seed)
    raise AssertionError(f"unhandled command {args.command}")


def _run_remote(args, sc: Scenario) -> dict:
    import httpx

    body = {"scenario": sc.model_dump(mode="json")}
    if args.command == "sweep":
        body["axis"] = args.axis
    if args.command == "oracle" and args.seed is not None:
        body["seed"] = args.seed
    url = args.server.rstrip("/") + _ENDPOINTS[args.command]
    response = httpx.post(url, json=body, timeout=args.timeout)
    if response.status_code == 422:
        raise ScenarioError(json.dumps(response.json()))
    if response.status_code == 400:
        raise DomainError(response.json().get("detail", response.text))
    if response.status_code >= 500:
        raise NumericalError(response.json().get("detail", response.text))
    response.raise_for_status()
    return response.json()


def _emit(args, sc: Scenario, payload: dict) -> int:
    fmt = args.format or sc.output.format
    path = args.output if args.output is not None else sc.output.path

    if args.command == "oracle":
        _write_output(_render_json({**payload, "tool_version": __version__}), path)
        return EXIT_OK if payload["passed"] else EXIT_ORACLE

    if args.command in _TABLE_COMMANDS:
        if fmt == "csv":
            _write_output(payload["csv"], path)
        else:
            _write_output(_render_json(_table_payload(payload["columns"],
                                                      payload["rows"])), path)
        return EXIT_OK

    if args.command == "sensitivity":
        if fmt == "csv":
            _write_output(payload["csv"], path)
        else:
            _write_output(_render_json({"result": payload["result"],
                                        "tool_version": __version__}), path)
        return EXIT_OK

    if args.command == "optimize":
        if fmt == "csv":
            _write_output(payload["sweep"]["csv"], path)
        else:
            _write_output(_render_json({"outcome": payload["outcome"],
                                        "tool_version": __version__}), path)
        return EXIT_OK

    # eval-signal
    if fmt == "csv":
        columns = ["phi_s_exact", "phi_s_lmt", "lmt_expansion_rel_diff",
                   "omega_tau_l", "omega_T", "Q", "N", "scheme"]
        row = (payload["phi_s_exact"], payload["phi_s_lmt"],
               payload["lmt_expansion_rel_diff"], payload["omega_tau_l"],
               payload["omega_T"], payload["Q"], payload["N"], payload["variant"])
        _write_output(runner.render_csv(runner.Table(columns, [row])), path)
    else:
        _write_output(_render_json({**payload, "tool_version": __version__}), path)
    return EXIT_OK


def _serve(args) -> int:
    import uvicorn

    uvicorn.run("dmgrad.service.app:app", host=args.host, port=args.port,
                log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dmgrad",
        description="Sensitivity toolkit for vertical atom-gradiometer DM detectors")
    parser.add_argument("--version", action="version", version=f"dmgrad {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", required=True, help="scenario JSON file")
        p.add_argument("--output", help="output file (default: config output.path or stdout)")
        p.add_argument("--format", choices=["csv", "json"],
                       help="output format (default: config output.format)")
        p.add_argument("--server", help="base URL of a running dmgrad service; "
                                        "when set, the CLI acts as a thin HTTP client")
        p.add_argument("--timeout", type=float, default=60.0,
                       help="HTTP timeout in seconds for --server mode")

    for name, help_text in (
            ("eval-signal", "signal amplitude in both regimes and their difference"),
            ("mode-function", "interrogation-mode function table over omega*T"),
            ("mode-max", "per-Q maxima of the interrogation-mode function"),
            ("sensitivity", "coupling uncertainty and five-sigma bound"),
            ("optimize", "fountain-height optimization along the baseline"),
            ("sweep", "one row per grid point along a declared axis"),
            ("oracle", "closed form vs quadrature oracle cross-check")):
        p = sub.add_parser(name, help=help_text)
        add_common(p)
        if name == "sweep":
            p.add_argument("--axis", required=True,
                           choices=list(runner.SWEEP_AXES), help="sweep axis")
        if name == "oracle":
            p.add_argument("--seed", type=int, help="override the oracle RNG seed")

    serve = sub.add_parser("serve", help="run the HTTP service with uvicorn")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        return _serve(args)
    try:
        sc = load_scenario(args.config)
        payload = _run_remote(args, sc) if args.server else _run_local(args, sc)
        return _emit(args, sc, payload)
    except ScenarioError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as err:
        print(f"domain error: {err}", file=sys.stderr)
        return EXIT_DOMAIN
    except NumericalError as err:
        print(f"numerical error: {err}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
