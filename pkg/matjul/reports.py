"""ReportStore: Jinja2 templates for human-readable CLI output.

Templates live in reports.json at the project root. Each entry has an id,
a template, the variables it expects and an example used by schema
validation.
"""
from typing import Any, Dict, List, Optional
import json
import logging
import os

import mdformat
from jinja2 import Environment, StrictUndefined, Undefined

from .config import env_flag

logger = logging.getLogger(__name__)

DEFAULT_REPORTS_PATH = os.path.join(os.path.dirname(os.path.dirname(__file__)), "reports.json")


def _make_env(strict: bool = False) -> Environment:
    if strict:
        return Environment(undefined=StrictUndefined, keep_trailing_newline=True)
    return Environment(undefined=Undefined, keep_trailing_newline=True)


class ReportStore:
    def __init__(self, path: Optional[str] = None, strict: Optional[bool] = None,
                 validate_schema: Optional[bool] = None):
        self.path = path or DEFAULT_REPORTS_PATH
        if strict is None:
            strict = env_flag("MATJUL_TEMPLATES_STRICT")
        self.strict = bool(strict)
        self.env = _make_env(self.strict)
        if validate_schema is None:
            validate_schema = env_flag("MATJUL_TEMPLATES_VALIDATE")
        self.validate_schema = bool(validate_schema)
        self._load()

    def _load(self) -> None:
        try:
            with open(self.path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError):
            logger.warning("could not load report templates from %s", self.path)
            data = {"templates": []}
        self._template_list: List[Dict[str, Any]] = data.get("templates", [])
        self._templates = {t.get("id"): t for t in self._template_list}
        if self.validate_schema:
            self._validate_templates()

    def list_templates(self) -> List[str]:
        return list(self._templates.keys())

    def get(self, template_id: str) -> Optional[Dict[str, Any]]:
        return self._templates.get(template_id)

    def render(self, template_id: str, variables: Optional[Dict[str, Any]] = None) -> str:
        entry = self.get(template_id)
        if not entry:
            raise KeyError(f"report template {template_id} not found")
        template = self.env.from_string(entry.get("template", ""))
        return template.render(**(variables or {}))

    def render_markdown(self, template_id: str, variables: Optional[Dict[str, Any]] = None) -> str:
        return mdformat.text(self.render(template_id, variables), options={"number": True})

    def _validate_templates(self) -> None:
        """Check ids, declared variables and that each example renders.

        Raises ValueError on the first malformed entry.
        """
        for entry in self._template_list:
            tid = entry.get("id")
            if not tid or not isinstance(tid, str):
                raise ValueError(f"Report template has invalid or missing id: {tid}")
            tpl = entry.get("template")
            if not tpl or not isinstance(tpl, str):
                raise ValueError(f"Report template {tid} missing or invalid template")
            declared = entry.get("variables", [])
            if not isinstance(declared, list) or not all(isinstance(x, str) for x in declared):
                raise ValueError(f"Report template {tid} variables must be a list of strings")
            example = entry.get("example", {}) or {}
            missing = set(declared) - set(example.keys())
            if missing:
                raise ValueError(f"Report template {tid} example missing variables: {missing}")
            try:
                _make_env(strict=True).from_string(tpl).render(**example)
            except Exception as e:
                raise ValueError(f"Report template {tid} example failed to render: {e}")


def set_default_reportstore(path: Optional[str] = None, strict: Optional[bool] = None,
                            validate_schema: Optional[bool] = None) -> ReportStore:
    """Replace the module-level default store and return it."""
    global rs
    rs = ReportStore(path=path, strict=strict, validate_schema=validate_schema)
    return rs


rs = set_default_reportstore()
