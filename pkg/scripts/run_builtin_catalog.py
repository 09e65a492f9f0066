#!/usr/bin/env python3
"""Run every builtin action through the full pipeline and summarize.

For each builtin this computes the character table, all multiplicity
quasi-polynomials, and the verification verdicts (symbolic theorems plus
the brute-force oracle up to --qmax), then prints one summary block per
action.  With --json-dir, the full machine-readable report for each
action is also written to <dir>/<name>.json.

Exit status is 0 when every verdict of every builtin passes, 1 otherwise.
"""

import argparse
import dataclasses
import json
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from equichar import report_to_dict  # noqa: E402
from equichar.cli import (BUILTINS, builtin, format_constituent,  # noqa: E402
                          run_analyze)


def summarize(report, elapsed):
    lines = []
    group = report.group
    lines.append(f"{report.name}: |G| = {group.order}, rank {group.rank}, "
                 f"period {report.period}  ({elapsed:.3f}s)")
    trivial = report.equivariant.multiplicities[report.table.trivial_index]
    orbit = " / ".join(
        f"gcd {d}: {format_constituent(trivial.constituent(d))}"
        for d in sorted({report.period, 1}))
    lines.append(f"  orbit count  {orbit}")
    failed = [v for v in report.verdicts if not v.passed]
    lines.append(f"  verdicts     {len(report.verdicts) - len(failed)}"
                 f"/{len(report.verdicts)} passed, oracle q <= "
                 f"{report.oracle_q_max}")
    for v in failed:
        lines.append(f"    FAIL {v.name}: {v.details}")
    return "\n".join(lines)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--qmax", type=int, default=24,
                        help="oracle range 1..QMAX (default 24)")
    parser.add_argument("--no-verify", action="store_true",
                        help="skip the brute-force oracle")
    parser.add_argument("--json-dir", type=Path,
                        help="write per-action JSON reports here")
    args = parser.parse_args(argv)

    if args.json_dir:
        args.json_dir.mkdir(parents=True, exist_ok=True)

    all_ok = True
    for name in sorted(BUILTINS):
        spec = builtin(name)
        spec = dataclasses.replace(
            spec, options=dataclasses.replace(
                spec.options, q_max=args.qmax, verify=not args.no_verify))
        start = time.perf_counter()
        report = run_analyze(spec)
        elapsed = time.perf_counter() - start
        print(summarize(report, elapsed))
        print()
        all_ok = all_ok and report.all_passed
        if args.json_dir:
            path = args.json_dir / f"{name}.json"
            path.write_text(json.dumps(report_to_dict(report), indent=2)
                            + "\n")
    print("catalog:", "all verdicts passed" if all_ok
          else "SOME VERDICTS FAILED")
    return 0 if all_ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
