import logging

from flask import Flask, jsonify, request

from core.errors import TranslationError
from core.pipeline import Dictionaries, translate_document, validate_dictionaries
from core.trace import Trace
from utils.config import Config

logger = logging.getLogger("web_dashboard")


def create_app(dictionaries: Dictionaries, config: Config) -> Flask:

    app = Flask(__name__)

    # Store components in app config
    app.config["DICTIONARIES"] = dictionaries
    app.config["APP_CONFIG"] = config

    @app.route("/api/health")
    def api_health():
        return jsonify({
            "status": "ok",
            "categories": len(dictionaries.ontology),
            "entries": len(dictionaries.lexicon),
            "patterns": len(dictionaries.patterns),
            "rewrites": len(dictionaries.rewrites),
        })

    @app.route("/api/translate", methods=["POST"])
    def api_translate():
        """Translate a document; each request gets a fresh discourse context."""
        payload = request.get_json(silent=True) or {}
        text = payload.get("text")
        if not isinstance(text, str):
            return jsonify({"error": "field 'text' must be a string"}), 400

        try:
            english, trace = translate_document(
                dictionaries, text,
                rewrite=bool(payload.get("rewrite", True)),
                trace=Trace(),
                habitual_category=config.get("analysis", "habitual_category"),
                default_pronoun=config.get("analysis", "default_pronoun") or "it",
            )
        except TranslationError as e:
            logger.warning("Translate request failed: %s", e)
            return jsonify({"error": str(e)}), 422

        response = {
            "translation": english,
            "errors": [event["message"] for event in trace.errors],
            "levels": trace.level_counts(),
        }
        if payload.get("trace"):
            response["trace"] = trace.to_list()
        return jsonify(response)

    @app.route("/api/validate")
    def api_validate():
        """Re-read the dictionary directory from disk and report every problem."""
        errors = validate_dictionaries(dictionaries.directory)
        return jsonify({
            "valid": not errors,
            "errors": [
                {"file": e.source, "line": e.line, "id": e.ident, "message": e.message}
                for e in errors
            ],
        })

    return app


def run_app(app: Flask, host: str = "127.0.0.1", port: int = 5000,
            debug: bool = False, threaded: bool = True) -> None:

    logger.info("Serving on http://%s:%d", host, port)
    app.run(host=host, port=port, debug=debug, threaded=threaded, use_reloader=False)
