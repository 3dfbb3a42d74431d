import copy
import json
import logging
import os
from typing import Any, Dict, List, Optional

logger = logging.getLogger("config")

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


class Config:
    """Built-in defaults with a JSON file merged over them section by section."""

    def __init__(self, config_file: str = "config.json"):

        self.config_file = config_file
        self.config = self._load_default_config()

        if os.path.exists(config_file):
            self.load()

    def _load_default_config(self) -> Dict[str, Any]:

        self.default_config = {
            "dictionaries": {
                "dir": "data/dict"
            },
            "analysis": {
                "habitual_category": "frequency",  # adverbs under this turn -teiru habitual
                "default_pronoun": "it"
            },
            "evaluation": {
                "mode": "blind",
                "excluded_tags": ["paper-garbled"],
                "workers": 4,
                "reports_dir": "reports_out"
            },
            "grading": {
                "pass_threshold": 6.0,
                "min_grade": 0,
                "max_grade": 10
            },
            "web_dashboard": {
                "host": "127.0.0.1",
                "port": 5000
            },
            "logging": {
                "level": "WARNING",
                "file": None,
                "max_size": 10 * 1024 * 1024,
                "backup_count": 5
            },
        }

        return copy.deepcopy(self.default_config)

    def load(self) -> bool:
        try:
            with open(self.config_file, "r", encoding="utf-8") as f:
                overrides = json.load(f)
        except (OSError, ValueError) as e:
            logger.warning("Ignoring config file %s: %s", self.config_file, e)
            return False
        if not isinstance(overrides, dict):
            logger.warning("Ignoring config file %s: top level is not an object", self.config_file)
            return False
        self._merge(self.config, overrides)
        return True

    def save(self) -> bool:
        try:
            with open(self.config_file, "w", encoding="utf-8") as f:
                json.dump(self.config, f, indent=2)
        except OSError as e:
            logger.error("Could not save config to %s: %s", self.config_file, e)
            return False
        return True

    def get(self, section: str, key: Optional[str] = None) -> Any:
        values = self.config.get(section)
        if values is None or key is None:
            return values
        return values.get(key)

    def set(self, section: str, key: str, value: Any) -> bool:
        self.config.setdefault(section, {})[key] = value
        return True

    def get_all(self) -> Dict[str, Any]:
        return copy.deepcopy(self.config)

    def _merge(self, target: Dict, overrides: Dict) -> None:
        for key, value in overrides.items():
            current = target.get(key)
            if isinstance(current, dict) and isinstance(value, dict):
                self._merge(current, value)
            else:
                target[key] = value

    def reset_to_defaults(self) -> bool:
        self.config = copy.deepcopy(self.default_config)
        return True

    def reset_section(self, section: str) -> bool:
        if section not in self.default_config:
            return False
        self.config[section] = copy.deepcopy(self.default_config[section])
        return True

    def validate(self) -> List[str]:
        """Human-readable problems with the current values; empty when usable."""
        errors = []

        def section(name: str) -> Dict[str, Any]:
            values = self.config.get(name)
            return values if isinstance(values, dict) else {}

        def positive_int(value: Any) -> bool:
            return isinstance(value, int) and not isinstance(value, bool) and value > 0

        directory = section("dictionaries").get("dir")
        if not isinstance(directory, str) or not directory:
            errors.append("Dictionaries dir must be a non-empty path")

        pronoun = section("analysis").get("default_pronoun")
        if not isinstance(pronoun, str) or not pronoun:
            errors.append("Analysis default_pronoun must be a non-empty string")

        evaluation = section("evaluation")
        if evaluation.get("mode") not in ("blind", "window"):
            errors.append("Evaluation mode must be one of: blind, window")
        if not positive_int(evaluation.get("workers")):
            errors.append("Evaluation workers must be a positive integer")
        if not isinstance(evaluation.get("excluded_tags"), list):
            errors.append("Evaluation excluded_tags must be a list")

        grading = section("grading")
        low, high = grading.get("min_grade"), grading.get("max_grade")
        grade_range = isinstance(low, int) and isinstance(high, int) and low < high
        if not grade_range:
            errors.append("Grading min_grade/max_grade must be integers with min < max")
        threshold = grading.get("pass_threshold")
        if not isinstance(threshold, (int, float)) or (grade_range and not low <= threshold <= high):
            errors.append("Grading pass_threshold must lie within the grade range")

        port = section("web_dashboard").get("port")
        if not positive_int(port) or port > 65535:
            errors.append("Web dashboard port must be a valid port number (1-65535)")

        log_settings = section("logging")
        if log_settings.get("level") not in LOG_LEVELS:
            errors.append("Logging level must be one of: " + ", ".join(LOG_LEVELS))
        if not positive_int(log_settings.get("max_size")):
            errors.append("Logging max_size must be a positive integer")
        backup_count = log_settings.get("backup_count")
        if not isinstance(backup_count, int) or backup_count < 0:
            errors.append("Logging backup_count must be a non-negative integer")

        return errors
