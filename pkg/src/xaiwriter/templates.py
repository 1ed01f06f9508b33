"""Keyed message templates with named slots.

Templates live in data/templates.json (versioned like the model
artifacts). Rendering refuses to emit unfilled slot markers: a missing
slot raises instead of leaking "{name}" to the user.
"""

from __future__ import annotations

import json
import re
from functools import lru_cache
from importlib import resources

TEMPLATE_FORMAT_VERSION = 1

_SLOT = re.compile(r"\{[a-z0-9_]+\}")


class MissingTemplateError(KeyError):
    pass


@lru_cache(maxsize=1)
def load_templates() -> dict[str, str]:
    raw = resources.files("xaiwriter.data").joinpath("templates.json").read_text("utf-8")
    obj = json.loads(raw)
    if obj.get("format_version") != TEMPLATE_FORMAT_VERSION:
        raise ValueError(f"unsupported template file version: {obj.get('format_version')}")
    return obj["templates"]


def render(template_id: str, **slots) -> str:
    templates = load_templates()
    if template_id not in templates:
        raise MissingTemplateError(template_id)
    text = templates[template_id].format_map({k: str(v) for k, v in slots.items()})
    leftover = _SLOT.search(text)
    if leftover:
        raise ValueError(f"template {template_id!r} left slot {leftover.group()} unfilled")
    return text
