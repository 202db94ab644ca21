"""Command-line front end.

Exit codes: 0 on success, 1 when a scenario assertion failed, 2 for usage,
parse or validation errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import LocalityLabError
from .product import ProductState, parse_factor_list
from .runner import (
    DEFAULT_PROBE_GATES,
    check_locality,
    render_json_dict,
    render_locality_text,
    render_text,
    run_scenario,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="locality-lab",
        description="Track product-notation factors, per-qubit descriptors and "
                    "the dense oracle through branching gate timelines.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario file and print its report")
    run.add_argument("file", help="scenario file (.scn)")
    run.add_argument("--json", action="store_true", help="emit the JSON report")

    check = sub.add_parser("check-locality",
                           help="tabulate which factors/descriptors each probe gate changes")
    check.add_argument("file", help="scenario file (.scn)")
    check.add_argument("--gates", default=",".join(DEFAULT_PROBE_GATES),
                       help="comma-separated single-qubit probe gates (default: X,Z,H)")

    expand = sub.add_parser("expand", help="print the tensor-sum form of a factor list")
    expand.add_argument("factors", help="factor list, e.g. '+X1 ; +X2'")
    expand.add_argument("-n", "--qubits", type=int, required=True, help="qubit count")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the diagnostics
        return int(exc.code or 0)
    try:
        if args.command == "run":
            report, code = run_scenario(args.file)
            if args.json:
                print(json.dumps(render_json_dict(report), indent=2))
            else:
                print(render_text(report), end="")
            return code
        if args.command == "check-locality":
            result = check_locality(args.file, args.gates.split(","))
            print(render_locality_text(result), end="")
            return 0
        assert args.command == "expand"
        state = ProductState.from_factors(args.qubits,
                                          parse_factor_list(args.factors, args.qubits))
        print(f"product:    {state.to_product_text()}")
        print(f"tensor sum: {state.to_tensor_sum_text()}")
        return 0
    except LocalityLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
