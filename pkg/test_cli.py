import io
import json
import os
import unittest
from unittest.mock import patch

import cli
import verify_setup
from errors import InvariantViolation
from log_utils import log_command_action
from request_handlers import (
    COMMANDS, EXIT_FAIL, EXIT_INVARIANT, EXIT_OK, EXIT_USAGE, Session, build_model, resolve_seed, run_command,
)

FIRST = "map 2 -> 3 { 5*x1*x2/x1 ; x1*x2^2/(x1+x2) ; (x1+x2)^2/(3*x2) } | { x1, x1+x2, x2, 3 }"
SECOND = "map 3 -> 2 { 7*(x1+x3)/(x1*x2) ; x1/1 } | { 4+x3+x1, x1, x2 }"
COMPOSITE = ("map 2 -> 2 { (105*x2^2 + 7*(x1+x2)^2)*(x1+x2)/(15*x1*x2^4) ; 5*x2 } "
             "| { x1, x1+x2, x2, 5, 3, 15*x2^2 + 12*x2 + (x1+x2)^2 }")
SAMPLE = "map 2 -> 2 { 1/x1 ; x1^2/(1+x2) } | { x1, 1+x2 }"
LEFT_POLE = "map 2 -> 1 { 1 } | { x1 - 1 }"
RIGHT_POLE = "map 2 -> 1 { 1 } | { x2 - 1 }"
DIAGONAL_SQUARE = "map 1 -> 2 { x1^2 ; x1^2 } | { }"


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with patch('sys.stdout', out), patch('sys.stderr', err):
        code = cli.main(list(argv))
    return code, out.getvalue(), err.getvalue()


class TestRunCommand(unittest.TestCase):
    """Dispatch, exit codes and sessions"""

    def test_compose_matches_hand_computation(self):
        result = run_command('compose', [FIRST, SECOND], {'ring': 'Z'})
        self.assertEqual(result.exit_code, EXIT_OK)
        verdict = run_command('eq', [result.text, COMPOSITE], {'ring': 'Z'})
        self.assertEqual(verdict.exit_code, EXIT_OK)
        self.assertTrue(verdict.result)

    def test_missing_generator_is_a_usage_error(self):
        first = FIRST.replace(", 3 }", " }")
        result = run_command('compose', [first, SECOND], {'ring': 'Z'})
        self.assertEqual(result.exit_code, EXIT_USAGE)
        self.assertFalse(result.success)

    def test_fraction_equality(self):
        self.assertEqual(run_command('eq', ["12/8", "3/2"]).exit_code, EXIT_OK)
        self.assertEqual(run_command('eq', ["2/6", "1/3"]).exit_code, EXIT_FAIL)

    def test_normalize_fraction(self):
        result = run_command('normalize', ["18/36"])
        self.assertEqual(result.exit_code, EXIT_OK)
        self.assertEqual(result.text, "(3, 6)")
        self.assertEqual(result.result, {"num": "3", "den": "6"})

    def test_eval_at_a_pole(self):
        result = run_command('eval', [SAMPLE, "0, 1"], {'ring': 'Q'})
        self.assertEqual(result.exit_code, EXIT_OK)
        self.assertEqual(result.result, 'undefined')
        value = run_command('eval', [SAMPLE, "2, 1"], {'ring': 'Q'})
        self.assertEqual(value.result, ['1/2', '2'])

    def test_bad_point(self):
        self.assertEqual(run_command('eval', [SAMPLE, "a,b"], {'ring': 'Q'}).exit_code, EXIT_USAGE)

    def test_join_candidate_unstable_under_probe(self):
        result = run_command('join-candidate', [LEFT_POLE, RIGHT_POLE], {'ring': 'Q', 'probe': DIAGONAL_SQUARE})
        self.assertEqual(result.exit_code, EXIT_FAIL)
        self.assertFalse(result.result['stable'])
        self.assertIn("stable: false", result.text)

    def test_join_candidate_without_probe(self):
        result = run_command('join-candidate', [LEFT_POLE, RIGHT_POLE], {'ring': 'Q'})
        self.assertEqual(result.exit_code, EXIT_OK)
        self.assertTrue(result.text.startswith("candidate: "))

    def test_let_bindings(self):
        result = run_command('compose', ['F', 'G'], {'ring': 'Z', 'let': [f"F={FIRST}", f"G={SECOND}"]})
        self.assertEqual(result.exit_code, EXIT_OK)

    def test_session_binds_once(self):
        session = Session('Q')
        run_command('linear', ['F'], {'let': ["F=map 1 -> 1 { 3*x1 } | { }"]}, session)
        again = run_command('linear', ['F'], {'let': ["F=map 1 -> 1 { x1 } | { }"]}, session)
        self.assertEqual(again.exit_code, EXIT_USAGE)
        self.assertIn("already bound", again.error)

    def test_linear_and_additive(self):
        self.assertEqual(run_command('linear', ["map 1 -> 1 { x1^2 } | { }"]).exit_code, EXIT_FAIL)
        self.assertEqual(run_command('additive', ["map 1 -> 1 { 2*x1 } | { x1 }"]).exit_code, EXIT_OK)

    def test_unknown_command_and_ring(self):
        self.assertEqual(run_command('frobnicate').exit_code, EXIT_USAGE)
        self.assertEqual(run_command('compose', [FIRST, SECOND], {'ring': 'R'}).exit_code, EXIT_USAGE)

    def test_invariant_violation_exit_code(self):
        def broken(session, args, options):
            raise InvariantViolation("pieces overlap")

        with patch.dict(COMMANDS, {'restrict': broken}):
            result = run_command('restrict', [SAMPLE])
        self.assertEqual(result.exit_code, EXIT_INVARIANT)
        self.assertEqual(result.error, "pieces overlap")

    def test_list(self):
        result = run_command('list', [], {'suite': 'CR'})
        self.assertIn('CR.lax0', result.result)
        everything = run_command('list')
        self.assertIn('FRAC.star-triple', everything.result)

    def test_build_model(self):
        self.assertEqual(build_model('cl-jn-rat', 'Q').name, "cl(jn(rat-Q))")
        self.assertEqual(build_model('finpar', size=2).name, "finpar-2")


class TestSeeds(unittest.TestCase):

    def test_environment_seed_wins(self):
        with patch.dict(os.environ, {'DIFFREST_SEED': '11'}):
            self.assertEqual(resolve_seed(5), 11)
            result = run_command('check', [], {'model': 'finpar', 'suite': 'R', 'cases': 2, 'seed': 5, 'size': 2})
        self.assertEqual(result.result['seed'], 11)

    def test_explicit_seed(self):
        with patch.dict(os.environ, {}, clear=False):
            os.environ.pop('DIFFREST_SEED', None)
            self.assertEqual(resolve_seed(5), 5)

    def test_check_is_reproducible(self):
        with patch.dict(os.environ, {'DIFFREST_SEED': '3'}):
            first = run_command('check', [], {'model': 'rat', 'suite': 'R', 'cases': 3, 'ring': 'Q'})
            second = run_command('check', [], {'model': 'rat', 'suite': 'R', 'cases': 3, 'ring': 'Q'})
        self.assertEqual(first.exit_code, EXIT_OK)
        first.result.pop('runtime')
        second.result.pop('runtime')
        self.assertEqual(first.result, second.result)


class TestCommandLine(unittest.TestCase):

    def test_compose(self):
        code, out, _ = run_cli('compose', FIRST, SECOND)
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith("map 2 -> 2"))

    def test_json_output(self):
        code, out, _ = run_cli('eq', '12/8', '3/2', '--json')
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertEqual(payload, {"success": True, "result": True, "exit_code": 0})

    def test_parse_error(self):
        code, _, err = run_cli('compose', 'map 2 -> { x1 } | { }', SECOND)
        self.assertEqual(code, 2)
        self.assertIn("syntax error", err)

    def test_usage_error(self):
        code, _, _ = run_cli('check', '--model', 'nowhere')
        self.assertEqual(code, 2)

    def test_check_exit_code(self):
        code, out, _ = run_cli('check', '--model', 'finpar', '--suite', 'R', '--cases', '3', '--size', '2',
                               '--exhaustive')
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith("suite R on finpar-2: "))
        self.assertIn("0 failures", out)

    def test_join_candidate_probe(self):
        code, out, _ = run_cli('join-candidate', LEFT_POLE, RIGHT_POLE, '--probe', DIAGONAL_SQUARE, '--ring', 'Q')
        self.assertEqual(code, 1)
        self.assertIn("stable: false", out)


class TestCommandLog(unittest.TestCase):

    def test_banner_line(self):
        with self.assertLogs('diffrest.commands', level='WARNING') as logs:
            message = log_command_action('compose', params={"args": ["F"]}, details="bad literal", level="WARNING")
        self.assertIn("WARNING | COMMAND: compose, Params: {'args': ['F']} - bad literal", message)
        self.assertEqual(len(logs.records), 3)
        self.assertEqual(logs.records[0].getMessage(), "=" * 80)


class TestSetupVerification(unittest.TestCase):

    def test_worked_examples(self):
        with patch('sys.stdout', io.StringIO()):
            self.assertEqual(verify_setup.smoke_checks(), [])
            self.assertTrue(verify_setup.main())

    def test_missing_dependency_fails(self):
        with patch('verify_setup.DEPENDENCIES', (('no_such_module_for_diffrest', 'nothing'),)), \
                patch('sys.stdout', io.StringIO()):
            self.assertEqual(verify_setup.missing_dependencies()[0].split()[0], 'nothing')
            self.assertFalse(verify_setup.main())


if __name__ == '__main__':
    unittest.main()
