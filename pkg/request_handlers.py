"""
Command table shared by the command line (cli.py) and the HTTP API (app.py).

Each command takes positional string arguments (map literals, fraction literals,
points or names bound in the session) plus an options dict, and returns a
CommandResult carrying a JSON-ready result, a text rendering and the exit code.
"""
from dataclasses import dataclass, field
from fractions import Fraction
import logging
import os

from category_core import SUITES, check_suite, list_axioms, zero_unitary_probe
from classical_completion import ClModel, cl_complement, cl_of_base
from config import DEFAULT_CASES, DEFAULT_RING, DIFFREST_SEED, SUPPORTED_RINGS
from errors import ArityError, DiffRestError, InvariantViolation
from finpar import FinParModel
from fraction import (
    FRAC_CHECKS, Frac, IntegerRig, PolyRig, RationalRig, frac_eq, reduce_canonical, run_frac_suite,
)
from grammar import parse_frac
from join_completion import JnModel, jn_of_base
from log_utils import log_command_action
from poly import RING_Q, Poly
from ratcat import (
    UNDEFINED, RatModel, candidate_join, map_to_json, parse_map, print_map, rat_add, rat_compat, rat_compose,
    rat_differential, rat_eq, rat_eval, rat_is_additive, rat_is_linear, rat_leq, rat_pair, rat_restriction,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INVARIANT = 3

MODELS = ('rat', 'finpar', 'jn-rat', 'cl-finpar', 'cl-jn-rat', 'frac')
EXTRA_SUITES = ('FRAC', 'ZERO-UNITARY')


@dataclass
class CommandResult:
    success: bool
    exit_code: int
    result: object = None
    text: str = ''
    error: str = ''

    def to_json(self):
        data = {"success": self.success, "result": self.result, "exit_code": self.exit_code}
        if self.error:
            data["error"] = self.error
        return data


@dataclass
class Session:
    """Named bindings; a name can be bound once."""

    ring: str = DEFAULT_RING
    bindings: dict = field(default_factory=dict)

    def bind(self, name, text):
        if name in self.bindings:
            raise ArityError(f"{name} is already bound")
        if not name.isidentifier():
            raise ArityError(f"'{name}' is not a valid name")
        self.bindings[name] = text.strip()

    def lookup(self, token):
        return self.bindings.get(token.strip(), token)

    def map(self, token):
        return parse_map(self.lookup(token), self.ring)

    def fraction(self, token):
        num, den = parse_frac(self.lookup(token), self.ring)
        if num.is_constant() and den.is_constant():
            rig = IntegerRig() if self.ring != RING_Q else RationalRig()
            return Frac(num.constant_value(), den.constant_value(), rig)
        nvars = max(num.nvars, den.nvars)
        return Frac(num.with_nvars(nvars), den.with_nvars(nvars), PolyRig(self.ring, nvars))


def is_map_literal(text):
    return text.lstrip().startswith('map')


def resolve_seed(seed=None):
    """DIFFREST_SEED in the environment wins over an explicit seed."""
    env_seed = os.getenv('DIFFREST_SEED')
    if env_seed is not None:
        return int(env_seed)
    return DIFFREST_SEED if seed is None else int(seed)


def build_model(name, ring=RING_Q, size=3):
    if name == 'rat':
        return RatModel(ring)
    if name == 'finpar':
        return FinParModel(size)
    if name == 'jn-rat':
        return JnModel(RatModel(ring))
    if name == 'cl-finpar':
        return ClModel(FinParModel(size))
    if name == 'cl-jn-rat':
        return ClModel(JnModel(RatModel(ring)), split=(0, 1))
    raise ArityError(f"unknown model {name}; expected one of {', '.join(MODELS)}")


def _expect(args, count, usage):
    if len(args) != count:
        raise ArityError(f"usage: {usage}")


def _map_result(f):
    return CommandResult(True, EXIT_OK, map_to_json(f), print_map(f))


def _verdict(value, label):
    return CommandResult(True, EXIT_OK if value else EXIT_FAIL, value, f"{label}: {str(value).lower()}")


# --- Command handlers ---

def cmd_compose(session, args, options):
    if len(args) < 2:
        raise ArityError("usage: compose F G [H ...]")
    result = session.map(args[0])
    for token in args[1:]:
        result = rat_compose(result, session.map(token))
    return _map_result(result)


def cmd_diff(session, args, options):
    _expect(args, 1, "diff F")
    return _map_result(rat_differential(session.map(args[0])))


def cmd_restrict(session, args, options):
    _expect(args, 1, "restrict F")
    return _map_result(rat_restriction(session.map(args[0])))


def cmd_pair(session, args, options):
    _expect(args, 2, "pair F G")
    return _map_result(rat_pair(session.map(args[0]), session.map(args[1])))


def cmd_add(session, args, options):
    _expect(args, 2, "add F G")
    return _map_result(rat_add(session.map(args[0]), session.map(args[1])))


def cmd_eq(session, args, options):
    _expect(args, 2, "eq A B")
    left, right = session.lookup(args[0]), session.lookup(args[1])
    if is_map_literal(left) and is_map_literal(right):
        return _verdict(rat_eq(session.map(left), session.map(right)), "equal")
    a, b = session.fraction(left), session.fraction(right)
    if a.rig != b.rig:
        # a constant against a polynomial: compare both as polynomial fractions
        nvars = max(getattr(a.rig, 'nvars', 0), getattr(b.rig, 'nvars', 0))
        a, b = (_as_poly_frac(x, session.ring, nvars) for x in (a, b))
    return _verdict(frac_eq(a, b), "equal")


def _as_poly_frac(a, ring, nvars):
    rig = PolyRig(ring, nvars)
    if isinstance(a.rig, PolyRig):
        return Frac(a.num.with_nvars(nvars), a.den.with_nvars(nvars), rig)
    return Frac(Poly.constant(ring, a.num, nvars), Poly.constant(ring, a.den, nvars), rig)


def cmd_leq(session, args, options):
    _expect(args, 2, "leq F G")
    return _verdict(rat_leq(session.map(args[0]), session.map(args[1])), "below")


def cmd_compat(session, args, options):
    _expect(args, 2, "compat F G")
    return _verdict(rat_compat(session.map(args[0]), session.map(args[1])), "compatible")


def cmd_linear(session, args, options):
    _expect(args, 1, "linear F")
    return _verdict(rat_is_linear(session.map(args[0])), "linear")


def cmd_additive(session, args, options):
    _expect(args, 1, "additive F")
    return _verdict(rat_is_additive(session.map(args[0])), "additive")


def cmd_eval(session, args, options):
    _expect(args, 2, "eval F POINT")
    try:
        point = [Fraction(v.strip()) for v in args[1].split(',') if v.strip()]
    except ValueError as e:
        raise ArityError(f"point must be comma separated rationals: {e}")
    value = rat_eval(session.map(args[0]), point)
    if value == UNDEFINED:
        return CommandResult(True, EXIT_OK, UNDEFINED, UNDEFINED)
    rendered = [str(v) for v in value]
    return CommandResult(True, EXIT_OK, rendered, "(" + ", ".join(rendered) + ")")


def cmd_normalize(session, args, options):
    _expect(args, 1, "normalize A")
    text = session.lookup(args[0])
    if is_map_literal(text):
        return _map_result(session.map(text))
    canonical = reduce_canonical(session.fraction(text))
    return CommandResult(True, EXIT_OK, canonical.to_json(), str(canonical))


def cmd_join_candidate(session, args, options):
    if len(args) not in (2, 3):
        raise ArityError("usage: join-candidate F G [PROBE]")
    f, g = session.map(args[0]), session.map(args[1])
    probe_text = options.get('probe') or (args[2] if len(args) == 3 else None)
    probe = session.map(probe_text) if probe_text else None
    report = candidate_join(f, g, probe)
    lines = [f"candidate: {print_map(report.candidate)}"]
    if probe is not None:
        lines.append(f"probe: {print_map(report.probe)}")
        lines.append(f"probe;candidate: {print_map(report.composite_of_join)}")
        lines.append(f"candidate(probe;f, probe;g): {print_map(report.join_of_composites)}")
        lines.append(f"stable: {str(report.stable).lower()}")
    exit_code = EXIT_OK if report.stable is not False else EXIT_FAIL
    return CommandResult(True, exit_code, report.to_json(), "\n".join(lines))


def cmd_complement(session, args, options):
    """f \\ g computed in the classical completion of Jn(Rat)."""
    _expect(args, 2, "complement F G")
    base = JnModel(RatModel(session.ring))
    f, g = session.map(args[0]), session.map(args[1])
    result = cl_complement(cl_of_base(base, jn_of_base(base.base, f)), cl_of_base(base, jn_of_base(base.base, g)))
    return CommandResult(True, EXIT_OK, result.to_json(), str(result))


def cmd_check(session, args, options):
    model_name = options.get('model') or (args[0] if args else 'rat')
    suite = options.get('suite')
    cases = int(options.get('cases') or DEFAULT_CASES)
    seed = resolve_seed(options.get('seed'))
    exhaustive = bool(options.get('exhaustive'))
    if model_name == 'frac' or suite == 'FRAC':
        report = run_frac_suite(cases, seed)
    else:
        model = build_model(model_name, session.ring, int(options.get('size') or 3))
        if suite is None:
            raise ArityError(f"usage: check --model MODEL --suite {{{','.join(SUITES + EXTRA_SUITES)}}}")
        if suite == 'ZERO-UNITARY':
            report = zero_unitary_probe(model, cases, seed)
        else:
            report = check_suite(model, suite, cases, seed, exhaustive=exhaustive)
    lines = [f"suite {report.suite} on {report.model}: {report.cases} cases, {len(report.failures)} failures, "
             f"seed {report.seed}, {report.runtime:.3f}s"]
    lines += [f"  skipped {ident}" for ident in report.skipped]
    for failure in report.failures[:20]:
        lines.append(f"  FAIL {failure.axiom} {failure.label}: {failure.lhs} vs {failure.rhs} on {failure.inputs}")
    for key, value in report.notes.items():
        lines.append(f"  {key}: {value}")
    return CommandResult(report.passed, EXIT_OK if report.passed else EXIT_FAIL, report.to_json(), "\n".join(lines))


def cmd_list(session, args, options):
    suite = options.get('suite') or (args[0] if args else None)
    if suite == 'FRAC':
        idents = [f"FRAC.{name}" for name, _ in FRAC_CHECKS]
    else:
        idents = [a.ident for a in list_axioms(suite)]
        if suite is None:
            idents += [f"FRAC.{name}" for name, _ in FRAC_CHECKS]
    return CommandResult(True, EXIT_OK, idents, "\n".join(idents))


COMMANDS = {
    'compose': cmd_compose,
    'diff': cmd_diff,
    'restrict': cmd_restrict,
    'pair': cmd_pair,
    'add': cmd_add,
    'eq': cmd_eq,
    'leq': cmd_leq,
    'compat': cmd_compat,
    'linear': cmd_linear,
    'additive': cmd_additive,
    'eval': cmd_eval,
    'normalize': cmd_normalize,
    'join-candidate': cmd_join_candidate,
    'complement': cmd_complement,
    'check': cmd_check,
    'list': cmd_list,
}


def run_command(name, args=(), options=None, session=None):
    """Dispatch one command; errors become results with the matching exit code."""
    options = dict(options or {})
    ring = options.get('ring') or (session.ring if session else DEFAULT_RING)
    if ring not in SUPPORTED_RINGS:
        return CommandResult(False, EXIT_USAGE, None, '', f"unsupported ring {ring}; expected Z or Q")
    if session is None:
        session = Session(ring)
    session.ring = ring
    log_command_action(name, params={"args": list(args), **options})
    handler = COMMANDS.get(name)
    if handler is None:
        return CommandResult(False, EXIT_USAGE, None, '', f"unknown command {name}")
    try:
        for binding in options.get('let') or ():
            key, _, text = binding.partition('=')
            session.bind(key.strip(), text)
        return handler(session, list(args), options)
    except InvariantViolation as e:
        log_command_action(name, details=f"invariant violation: {e}", level="ERROR")
        return CommandResult(False, EXIT_INVARIANT, None, '', str(e))
    except DiffRestError as e:
        log_command_action(name, details=str(e), level="WARNING")
        return CommandResult(False, EXIT_USAGE, None, '', str(e))
