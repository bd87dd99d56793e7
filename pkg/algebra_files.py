"""JSON algebra files, split-extension files and bimodule specs used by the CLI."""
from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Optional

from algebra import Algebra, build_algebra
from bimodule import Bimodule, dual_bimodule, regular_bimodule
from errors import FieldError, PresentationError
from exactlin import field_tag, make_field
from extcohom import ext_dc_c
from extension import SplitExtensionData, split_extension_from_morphisms
from quiver import Arrow, Presentation, Quiver

logger = logging.getLogger(__name__)

BUNDLED_DIR = Path(__file__).resolve().parent / "algebras"
ALGEBRA_KEYS = {"field", "vertices", "arrows", "relations"}
SPLIT_KEYS = {"algebra", "projection", "section"}


def read_json(path: str | Path) -> dict:
    path = Path(path).expanduser()
    with path.open(encoding="utf-8") as handle:
        data = json.load(handle)
    if not isinstance(data, dict):
        raise PresentationError(f"{path} does not contain a JSON object")
    return data


def bundled_path(name: str) -> Path:
    """Path of a bundled algebra file, given with or without the .json suffix."""
    filename = name if name.endswith(".json") else f"{name}.json"
    return BUNDLED_DIR / filename


# -------------------- Algebra files -------------------- #

def presentation_from_file(data: dict, field: Optional[str] = None) -> Presentation:
    """Presentation from an AlgebraFile mapping; ``field`` must agree with the file when both are given."""
    missing = {"vertices", "arrows"} - set(data)
    if missing:
        raise PresentationError(f"Algebra file lacks {sorted(missing)}")
    unknown = set(data) - ALGEBRA_KEYS
    if unknown:
        raise PresentationError(f"Unknown algebra file keys {sorted(unknown)}")
    tag = data.get("field", field or "Q")
    if field is not None and make_field(field) != make_field(tag):
        raise FieldError(f"--field {field} does not match the file's field {tag}")
    domain = make_field(tag)
    arrows = []
    for entry in data["arrows"]:
        try:
            arrows.append(Arrow(str(entry["name"]), str(entry["from"]), str(entry["to"])))
        except (KeyError, TypeError):
            raise PresentationError(f"Arrow entry {entry!r} needs name, from and to") from None
    quiver = Quiver([str(v) for v in data["vertices"]], arrows)
    return Presentation.from_strings(quiver, domain, [str(r) for r in data.get("relations", [])])


def presentation_to_file(presentation: Presentation) -> dict:
    return {
        "field": field_tag(presentation.field),
        "vertices": list(presentation.quiver.vertices),
        "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in presentation.quiver.arrows],
        "relations": [str(r) for r in presentation.relations],
    }


def load_presentation(path: str | Path, field: Optional[str] = None) -> Presentation:
    return presentation_from_file(read_json(path), field)


def load_algebra(path: str | Path, field: Optional[str] = None, cap: Optional[int] = None) -> Algebra:
    algebra = build_algebra(load_presentation(path, field), cap=cap)
    logger.info(f"Loaded {path}: dim {algebra.dim}")
    return algebra


def write_algebra_file(presentation: Presentation, path: str | Path) -> None:
    Path(path).write_text(json.dumps(presentation_to_file(presentation), indent=2) + "\n", encoding="utf-8")


# -------------------- Split-extension files -------------------- #

def load_split_extension(path: str | Path, C: Algebra, cap: Optional[int] = None) -> SplitExtensionData:
    """B with projection p: B -> C and section q: C -> B, read from a split-extension file."""
    path = Path(path).expanduser()
    data = read_json(path)
    missing = SPLIT_KEYS - set(data)
    if missing:
        raise PresentationError(f"Split-extension file {path} lacks {sorted(missing)}")
    algebra = data["algebra"]
    if isinstance(algebra, str):
        algebra = read_json(path.parent / algebra)
    field = field_tag(C.field)
    B = build_algebra(presentation_from_file(algebra, field), cap=cap)
    projection = {name: str(text) for name, text in data["projection"].items()}
    section = {name: str(text) for name, text in data["section"].items()}
    return split_extension_from_morphisms(B, C, projection, section)


# -------------------- Bimodule specs -------------------- #

def module_from_spec(spec: str, algebra: Algebra, cap: Optional[int] = None) -> Bimodule:
    """regular | dual | ext:<m> | file:<split-extension file>."""
    spec = spec.strip()
    if spec == "regular":
        return regular_bimodule(algebra)
    if spec == "dual":
        return dual_bimodule(algebra)
    if spec.startswith("ext:"):
        try:
            m = int(spec[4:])
        except ValueError:
            raise PresentationError(f"Malformed module spec {spec!r}; expected ext:<degree>") from None
        if m < 0:
            raise PresentationError(f"Negative Ext degree in {spec!r}")
        return ext_dc_c(algebra, m).module
    if spec.startswith("file:"):
        return load_split_extension(spec[5:], algebra, cap=cap).E
    raise PresentationError(f"Unknown module spec {spec!r}; expected regular, dual, ext:<m> or file:<path>")
