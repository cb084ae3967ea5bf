#!/usr/bin/env python3
"""
Report I/O
Poset files in, JSON reports out. Poset files look like

    {"elements": ["b1", "x", ...],
     "covers": [["b1", "x"], ...],
     "top_tree_colors": {"x": "x", ...}}

where "top_tree_colors" is optional. A full "coloring" map may be given
instead for colorings that are not bijective on the top tree.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from dcomplete_poset import ColoredPoset, element_key

logger = logging.getLogger(__name__)

POSET_KEYS = ("elements", "covers", "top_tree_colors", "coloring")


class PosetFileError(ValueError):
    pass


def _element_list(data: Dict[str, Any], source: str) -> List[Union[str, int]]:
    elements = data.get("elements")
    if not isinstance(elements, list) or not elements:
        raise PosetFileError(f"{source}: field 'elements' must be a non-empty list")
    for idx, element in enumerate(elements):
        if isinstance(element, bool) or not isinstance(element, (str, int)):
            raise PosetFileError(f"{source}: elements[{idx}] must be a string or integer, got {element!r}")
    return elements


def _cover_list(data: Dict[str, Any], source: str) -> List[tuple]:
    covers = data.get("covers", [])
    if not isinstance(covers, list):
        raise PosetFileError(f"{source}: field 'covers' must be a list")
    pairs = []
    for idx, cover in enumerate(covers):
        if not isinstance(cover, list) or len(cover) != 2:
            raise PosetFileError(f"{source}: covers[{idx}] must be a [lower, upper] pair, got {cover!r}")
        pairs.append(tuple(cover))
    return pairs


def _color_map(data: Dict[str, Any], field: str, elements: List, source: str) -> Optional[Dict]:
    raw = data.get(field)
    if raw is None:
        return None
    if not isinstance(raw, dict):
        raise PosetFileError(f"{source}: field '{field}' must be an object")
    # JSON object keys are strings; map them back onto the element ids
    by_name = {str(e): e for e in elements}
    colors = {}
    for key, label in raw.items():
        if key not in by_name:
            raise PosetFileError(f"{source}: {field}[{key!r}] names an unknown element")
        if isinstance(label, bool) or not isinstance(label, (str, int)):
            raise PosetFileError(f"{source}: {field}[{key!r}] must be a string or integer label")
        colors[by_name[key]] = label
    return colors


def parse_poset_text(text: str, source: str = "<poset>") -> ColoredPoset:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise PosetFileError(f"{source}: line {e.lineno}, column {e.colno}: {e.msg}") from e
    if not isinstance(data, dict):
        raise PosetFileError(f"{source}: expected a JSON object at the top level")
    unknown = sorted(set(data) - set(POSET_KEYS))
    if unknown:
        raise PosetFileError(f"{source}: unknown fields {', '.join(unknown)}")
    if "top_tree_colors" in data and "coloring" in data:
        raise PosetFileError(f"{source}: give either 'top_tree_colors' or 'coloring', not both")
    elements = _element_list(data, source)
    covers = _cover_list(data, source)
    top_colors = _color_map(data, "top_tree_colors", elements, source)
    coloring = _color_map(data, "coloring", elements, source)
    try:
        return ColoredPoset(elements, covers, top_tree_colors=top_colors, coloring=coloring)
    except ValueError as e:
        raise PosetFileError(f"{source}: {e}") from e


def parse_poset_file(path: Union[str, Path]) -> ColoredPoset:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise PosetFileError(f"{path}: {e}") from e
    poset = parse_poset_text(text, str(path))
    logger.info(f"Loaded poset with {len(poset)} elements from {path}")
    return poset


def poset_to_json(poset: ColoredPoset) -> Dict[str, Any]:
    spec = poset.to_spec()
    if poset.tree_element is None:
        del spec["top_tree_colors"]
        spec["coloring"] = {str(x): poset.coloring[x] for x in sorted(poset.elements, key=element_key)}
    return spec


def dump_poset(poset: ColoredPoset) -> str:
    return json.dumps(poset_to_json(poset), indent=2)


def emit_report(report, include_elapsed: bool = False) -> str:
    """Stable JSON for a report; elapsed time only on request."""
    return json.dumps(report.to_dict(include_elapsed=include_elapsed), indent=2, sort_keys=True) + "\n"


def write_report(report, path: Union[str, Path], include_elapsed: bool = False) -> bool:
    try:
        Path(path).write_text(emit_report(report, include_elapsed))
        logger.info(f"Report written to {path}")
        return True
    except OSError as e:
        logger.error(f"Failed to write report {path}: {e}")
        return False
