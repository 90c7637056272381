from flask import Flask, request, jsonify
from flask_cors import CORS
from werkzeug.exceptions import HTTPException

import logging

from seqlibs import __version__
from seqlibs.config import Settings, load_settings
from seqlibs.dymvec import NoSolution, solve
from seqlibs.errors import SequenceError
from seqlibs.logs import setup_logging
from seqlibs.modelvector import compose_all, extend, parse_vector, render_vector
from seqlibs.numeric import render_rational
from seqlibs.sequences import parse_segment, render_segment
from seqlibs.stable import default_stable, load_stable

logger = logging.getLogger(__name__)


def _json_body(*required):
    data_json = request.get_json(silent=True)
    if not data_json or not isinstance(data_json, dict):
        return None, (jsonify({"error": "No data provided"}), 400)
    missing = [key for key in required if key not in data_json]
    if missing:
        return None, (jsonify({"error": f"Missing {', '.join(repr(k) for k in missing)} in request body"}), 400)
    return data_json, None


def create_app(settings: Settings | None = None) -> Flask:
    settings = settings or load_settings()
    setup_logging(settings.log_level)

    app = Flask(__name__)
    CORS(app)

    # Load the stable once when the server starts
    stable = load_stable(settings.stable_path) if settings.stable_path else default_stable()
    logger.info(f"Loaded stable with {len(stable.entries)} base vectors")

    @app.errorhandler(SequenceError)
    def sequence_error(e):
        return jsonify({"error": str(e)}), 400

    @app.errorhandler(Exception)
    def unexpected_error(e):
        if isinstance(e, HTTPException):
            return e
        logger.error(f"Processing error: {e}")
        return jsonify({"error": f"Processing error: {str(e)}"}), 500

    @app.route('/health')
    def health():
        return jsonify({"status": "ok", "version": __version__})

    @app.route('/stable')
    def stable_entries():
        return jsonify({
            "entries": [
                {"vector": base.key, "multiplicity": base.max_multiplicity, "labels": list(base.labels)}
                for base in stable.ordered
            ],
            "primes_recognizer": stable.primes_recognizer,
            "fallback_vector": render_vector(stable.fallback_vector) if stable.fallback_vector else None,
        })

    @app.route('/solve', methods=['POST'])
    def solve_problem():
        """
        Predict the next term of a sequence.

        Request Body:
            terms (str, required): comma separated rationals, e.g. "1, 0, 5, 8, 17"

        Returns:
            200: { prediction, description, interleaved, method, vector, weights }
            400: Missing or malformed terms
            404: No candidate theory is consistent with the terms
        """
        data_json, error = _json_body('terms')
        if error:
            return error

        solution = solve(parse_segment(str(data_json['terms'])), stable, settings.max_length)
        if isinstance(solution, NoSolution):
            return jsonify({"error": solution.reason}), 404

        return jsonify({
            "prediction": render_rational(solution.prediction),
            "description": list(solution.description),
            "interleaved": solution.interleaved,
            "method": solution.method.value,
            "vector": render_vector(solution.vector) if solution.vector is not None else None,
            "weights": [render_rational(w) for w in solution.weights] if solution.weights is not None else None,
        })

    @app.route('/compose', methods=['POST'])
    def compose_vectors():
        data_json, error = _json_body('vectors')
        if error:
            return error
        vectors = data_json['vectors']
        if not isinstance(vectors, list):
            return jsonify({"error": "'vectors' must be a list"}), 400

        composed = compose_all(parse_vector(str(v)) for v in vectors)
        return jsonify({"vector": render_vector(composed)})

    @app.route('/extend', methods=['POST'])
    def extend_terms():
        data_json, error = _json_body('vector', 'terms', 'k')
        if error:
            return error

        direction = data_json.get('direction', 'forward')
        if direction not in ('forward', 'backward'):
            return jsonify({"error": "'direction' must be 'forward' or 'backward'"}), 400
        if not isinstance(data_json['k'], int) or data_json['k'] < 1:
            return jsonify({"error": "'k' must be a positive integer"}), 400

        extended = extend(
            parse_vector(str(data_json['vector'])),
            parse_segment(str(data_json['terms'])),
            data_json['k'],
            direction,
        )
        return jsonify({"terms": render_segment(extended)})

    return app


if __name__ == '__main__':
    settings = load_settings()
    app = create_app(settings)
    logger.info("Starting Flask server...")
    app.run(host=settings.host, port=settings.port)
