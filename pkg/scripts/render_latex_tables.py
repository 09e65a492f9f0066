#!/usr/bin/env python3
"""Emit the multiplicity quasi-polynomials of a builtin action as LaTeX.

Each irreducible multiplicity is printed as an align*/cases block keyed by
gcd(period, q), ready to paste into a document.  With --all, every builtin
is rendered in sequence; otherwise pass one builtin name.
"""

import argparse
import dataclasses
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from equichar.cli import (BUILTINS, builtin, render_latex,  # noqa: E402
                          run_analyze)


def render_one(name):
    spec = builtin(name)
    spec = dataclasses.replace(
        spec, options=dataclasses.replace(spec.options, verify=False))
    return render_latex(run_analyze(spec))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    target = parser.add_mutually_exclusive_group(required=True)
    target.add_argument("name", nargs="?", choices=sorted(BUILTINS),
                        help="builtin action to render")
    target.add_argument("--all", action="store_true",
                        help="render every builtin")
    args = parser.parse_args(argv)

    names = sorted(BUILTINS) if args.all else [args.name]
    print("\n".join(render_one(name) for name in names), end="")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
