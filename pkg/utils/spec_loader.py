"""Structured-text algebra files.

    name: example
    generators: a b c
    weights: a=1 b=1 c=1        (optional)
    grades: a=1 b=1 c=2         (optional)
    degree: 4                   (optional)

    [relations]
    [b, a] = c
    [coproduct]
    a = a (x) I + I (x) a
    [antipode]
    a = -a
    [counit]                    (optional, defaults to 0)
    [star]                      (optional, defaults to x* = x)

Every pair of generators needs a relation line. Lines starting with '#' are ignored.
Generators may not reuse i, I, x, a function name or a deformation constant.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Tuple

from algebra.normalize import Presentation, PresentationError
from algebra.scalar import PARAMETERS
from hopf.presets import presentation_from_texts
from hopf.spec import HopfSpec
from utils.parsing import RESERVED_NAMES, ParseError

HEADER_KEYS = ("name", "generators", "weights", "grades", "degree")
SECTIONS = ("relations", "coproduct", "antipode", "counit", "star")
RELATION_RE = re.compile(r"^\[\s*([A-Za-z_]\w*)\s*,\s*([A-Za-z_]\w*)\s*\]\s*=\s*(.+)$")
IMAGE_RE = re.compile(r"^([A-Za-z_]\w*)\s*=\s*(.+)$")


class SpecFileError(ValueError):
    pass


@dataclass
class LoadedSpec:
    presentation: Presentation
    hopf: HopfSpec | None = None

    @property
    def name(self) -> str:
        return self.presentation.name


def _assignments(text: str, line_no: int) -> Dict[str, int]:
    values = {}
    for item in text.split():
        key, sep, value = item.partition("=")
        if not sep or not value.strip().lstrip("-").isdigit():
            raise SpecFileError(f"line {line_no}: expected name=int, got {item!r}")
        values[key.strip()] = int(value)
    return values


def parse_spec_text(text: str, source: str = "<text>") -> Tuple[dict, Dict[str, List[Tuple[int, str]]]]:
    header: dict = {}
    sections: Dict[str, List[Tuple[int, str]]] = {}
    current: str | None = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        section = re.fullmatch(r"\[\s*([a-z]+)\s*\]", line)
        if section:
            current = section.group(1)
            if current not in SECTIONS:
                raise SpecFileError(f"{source}:{line_no}: unknown section [{current}]")
            if current in sections:
                raise SpecFileError(f"{source}:{line_no}: section [{current}] appears twice")
            sections[current] = []
            continue
        if current is None:
            key, sep, value = line.partition(":")
            key = key.strip()
            if not sep or key not in HEADER_KEYS:
                raise SpecFileError(f"{source}:{line_no}: expected one of {list(HEADER_KEYS)} before any section")
            if key in ("weights", "grades"):
                header[key] = _assignments(value, line_no)
            elif key == "degree":
                if not value.strip().isdigit():
                    raise SpecFileError(f"{source}:{line_no}: degree must be a non-negative integer")
                header[key] = int(value)
            elif key == "generators":
                header[key] = tuple(value.replace(",", " ").split())
            else:
                header[key] = value.strip()
            continue
        sections[current].append((line_no, line))
    return header, sections


def load_spec_text(text: str, source: str = "<text>", degree: int | None = None) -> LoadedSpec:
    header, sections = parse_spec_text(text, source)
    generators = header.get("generators")
    if not generators:
        raise SpecFileError(f"{source}: no generators line")
    reserved = [g for g in generators if g in RESERVED_NAMES or g in PARAMETERS]
    if reserved:
        raise SpecFileError(f"{source}: reserved names used as generators: {reserved}")
    name = header.get("name") or Path(source).stem
    if degree is None:
        degree = header.get("degree")
    grades = header.get("grades")

    relations: Dict[Tuple[str, str], str] = {}
    for line_no, line in sections.get("relations", []):
        match = RELATION_RE.match(line)
        if not match:
            raise SpecFileError(f"{source}:{line_no}: expected '[x, y] = expr', got {line!r}")
        relations[(match.group(1), match.group(2))] = match.group(3)

    def images(section: str) -> Dict[str, str]:
        found = {}
        for line_no, line in sections.get(section, []):
            match = IMAGE_RE.match(line)
            if not match or match.group(1) not in generators:
                raise SpecFileError(f"{source}:{line_no}: expected '<generator> = expr' in [{section}], got {line!r}")
            found[match.group(1)] = match.group(2)
        return found

    try:
        presentation = presentation_from_texts(name, generators, relations, header.get("weights"), grades, degree)
    except ParseError as exc:
        raise SpecFileError(f"{source}: relation does not parse: {exc}") from exc
    except PresentationError as exc:
        raise SpecFileError(f"{source}: {exc}") from exc
    if "coproduct" not in sections:
        return LoadedSpec(presentation)
    if "antipode" not in sections:
        raise SpecFileError(f"{source}: a [coproduct] section needs an [antipode] section")
    try:
        hopf = HopfSpec.from_texts(
            name,
            presentation,
            images("coproduct"),
            images("antipode"),
            counits=images("counit") or {g: "0" for g in generators},
            stars=images("star") or None,
            degree=degree,
        )
    except ParseError as exc:
        raise SpecFileError(f"{source}: structure map does not parse: {exc}") from exc
    except ValueError as exc:
        raise SpecFileError(f"{source}: {exc}") from exc
    return LoadedSpec(presentation, hopf)


def load_spec_file(path: str | Path, degree: int | None = None) -> LoadedSpec:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"spec file not found: {path}")
    return load_spec_text(path.read_text(encoding="utf-8"), str(path), degree)
