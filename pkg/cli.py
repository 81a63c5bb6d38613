"""
Command-line entry point.

    python cli.py compose 'map 2 -> 3 { ... } | { ... }' 'map 3 -> 2 { ... } | { ... }'
    python cli.py check --model rat --suite DR --cases 200 --seed 7 --ring Q
    python cli.py list --suite JOIN

Exit codes: 0 success / equal / pass, 1 not equal / fail, 2 usage or parse error,
3 internal invariant violation.
"""
import argparse
import json
import sys

from category_core import SUITES
from config import DEFAULT_RING, SUPPORTED_RINGS
from log_utils import setup_logging
from request_handlers import COMMANDS, EXIT_USAGE, EXTRA_SUITES, MODELS, run_command


def build_parser():
    parser = argparse.ArgumentParser(
        prog='diffrest',
        description="Rational maps, restriction categories and their completions",
    )
    parser.add_argument('command', choices=sorted(COMMANDS), help="operation to run")
    parser.add_argument('operands', nargs='*', help="map literals, fractions, points or bound names")
    parser.add_argument('--ring', choices=SUPPORTED_RINGS, default=DEFAULT_RING,
                        help="coefficient ring (default %(default)s)")
    parser.add_argument('--let', action='append', default=[], metavar='NAME=LITERAL',
                        help="bind a name to a literal; may be repeated")
    parser.add_argument('--json', action='store_true', help="print the JSON result instead of text")
    parser.add_argument('--model', choices=MODELS, help="model for check")
    parser.add_argument('--suite', choices=SUITES + EXTRA_SUITES, help="axiom suite for check and list")
    parser.add_argument('--cases', type=int, help="sampled cases per axiom")
    parser.add_argument('--seed', type=int, help="seed; DIFFREST_SEED in the environment takes precedence")
    parser.add_argument('--exhaustive', action='store_true', help="enumerate hom-sets where the model allows it")
    parser.add_argument('--size', type=int, help="largest cyclic monoid for the finpar models")
    parser.add_argument('--probe', help="probe map for join-candidate")
    parser.add_argument('--log-level', default=None, help="logging level (default from LOG_LEVEL)")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 on --help
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    setup_logging(args.log_level or 'WARNING')
    options = {
        'ring': args.ring,
        'let': args.let,
        'model': args.model,
        'suite': args.suite,
        'cases': args.cases,
        'seed': args.seed,
        'exhaustive': args.exhaustive,
        'size': args.size,
        'probe': args.probe,
    }
    options = {key: value for key, value in options.items() if value not in (None, [], False)}
    result = run_command(args.command, args.operands, options)
    if args.json:
        print(json.dumps(result.to_json(), indent=2, default=str))
    elif result.error:
        print(f"error: {result.error}", file=sys.stderr)
    else:
        print(result.text)
    return result.exit_code


if __name__ == '__main__':
    sys.exit(main())
