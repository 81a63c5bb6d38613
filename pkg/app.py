# Windows console encoding fix
import sys
if sys.platform == 'win32':
    import codecs
    if sys.stdout.encoding != 'utf-8':
        sys.stdout = codecs.getwriter('utf-8')(sys.stdout.buffer, 'strict')
    if sys.stderr.encoding != 'utf-8':
        sys.stderr = codecs.getwriter('utf-8')(sys.stderr.buffer, 'strict')

import logging

from flask import Flask, jsonify, request

from category_core import SUITES, list_axioms
from config import SECRET_KEY, WEB_SERVER_HOST, WEB_SERVER_PORT
from fraction import FRAC_CHECKS
from log_utils import log_command_action, setup_logging
from request_handlers import COMMANDS, EXIT_INVARIANT, EXIT_USAGE, EXTRA_SUITES, MODELS, run_command

logger = logging.getLogger(__name__)

# --- Flask Setup ---
app = Flask(__name__)
app.config['SECRET_KEY'] = SECRET_KEY
app.config['JSON_SORT_KEYS'] = False

VERSION = "diffrest v. 1.0"


@app.route('/health')
def health():
    return {"status": "healthy", "version": VERSION, "commands": len(COMMANDS)}


@app.route('/api/commands', methods=['GET'])
def list_commands():
    axioms = {suite: [a.ident for a in list_axioms(suite)] for suite in SUITES}
    axioms['FRAC'] = [f"FRAC.{name}" for name, _ in FRAC_CHECKS]
    return jsonify({
        "success": True,
        "commands": sorted(COMMANDS),
        "models": list(MODELS),
        "suites": list(SUITES + EXTRA_SUITES),
        "axioms": axioms,
    })


@app.route('/api/<command>', methods=['POST'])
def api_command(command):
    """Body: {"args": [...], "options": {...}}; returns {"success", "result", "exit_code"}."""
    payload = request.get_json(silent=True)
    if payload is None:
        payload = {}
    if not isinstance(payload, dict):
        return jsonify({"success": False, "error": "request body must be a JSON object",
                        "exit_code": EXIT_USAGE}), 400
    args = payload.get('args') or []
    options = payload.get('options') or {}
    if not isinstance(args, list) or not isinstance(options, dict):
        return jsonify({"success": False, "error": "'args' must be a list and 'options' an object",
                        "exit_code": EXIT_USAGE}), 400
    if command not in COMMANDS:
        log_command_action(command, details="unknown command", level="WARNING")
        return jsonify({"success": False, "error": f"unknown command {command}", "exit_code": EXIT_USAGE}), 404

    result = run_command(command, [str(a) for a in args], options)
    status = 200
    if result.exit_code == EXIT_USAGE:
        status = 400
    elif result.exit_code == EXIT_INVARIANT:
        status = 500
    return jsonify(result.to_json()), status


if __name__ == '__main__':
    setup_logging()
    logger.info("Starting server on http://%s:%s", WEB_SERVER_HOST, WEB_SERVER_PORT)
    app.run(host=WEB_SERVER_HOST, port=WEB_SERVER_PORT, debug=False, use_reloader=False)
