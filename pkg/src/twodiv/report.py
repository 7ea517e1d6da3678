"""
Report rendering.

  - JSON uses json.dumps over VerificationReport.to_json_dict (fixed key order)
  - YAML uses PyYAML safe_dump with sort_keys=False, so keys keep that order
  - tables and pipeline transcripts are Jinja2 templates under templates/
"""

from __future__ import annotations

import json
import logging
import os
from typing import Any, Optional

import yaml
from jinja2 import Environment, FileSystemLoader

from .models import PipelineTranscript, SharpnessReport, VerificationReport

logger = logging.getLogger(__name__)

FORMATS = ("json", "yaml", "table")


# ─────────────────────── Jinja2 environment ───────────────────────

def _valuation(value: Any) -> str:
    """None stands for a zero quantity, i.e. infinite valuation."""
    return "inf" if value is None else str(value)


def _status(passed: Optional[bool]) -> str:
    if passed is None:
        return "info"
    return "PASS" if passed else "FAIL"


def _create_jinja_env() -> Environment:
    """Create Jinja2 environment with templates directory."""
    template_dir = os.path.join(os.path.dirname(__file__), "templates")
    env = Environment(
        loader=FileSystemLoader(template_dir),
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )
    env.filters["valuation"] = _valuation
    env.filters["status"] = _status
    return env


# ─────────────────────── renderers ───────────────────────

def to_json(report: VerificationReport) -> str:
    return json.dumps(report.to_json_dict(), indent=2) + "\n"


def to_yaml(report: VerificationReport) -> str:
    return yaml.safe_dump(report.to_json_dict(), sort_keys=False, default_flow_style=False)


def to_table(report: VerificationReport) -> str:
    template = _create_jinja_env().get_template("report_table.txt.j2")
    return template.render(report=report, summary=report.summary())


def render_report(report: VerificationReport, fmt: str = "json") -> str:
    if fmt == "json":
        return to_json(report)
    if fmt == "yaml":
        return to_yaml(report)
    if fmt == "table":
        return to_table(report)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def render_sharpness(report: SharpnessReport, fmt: str = "table") -> str:
    if fmt == "table":
        return _create_jinja_env().get_template("sharpness.txt.j2").render(rows=report.rows)
    data = {"rows": [dict(row.model_dump(mode="json"), attained=row.attained) for row in report.rows]}
    if fmt == "yaml":
        return yaml.safe_dump(data, sort_keys=False, default_flow_style=False)
    return json.dumps(data, indent=2) + "\n"


def render_transcript(transcript: PipelineTranscript) -> str:
    template = _create_jinja_env().get_template("transcript.txt.j2")
    return template.render(t=transcript)


def write_output(text: str, path: Optional[str]) -> None:
    """Write to path, or to stdout when path is None."""
    if path is None:
        print(text, end="")
        return
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    logger.info("report written to %s", path)
