"""Derived structure maps against their printed counterparts.

A difference is reported as "documented" when the derived structure passes the
full axiom suite, and as "fail" otherwise. Every differing coefficient is
itemized in the record details.
"""
from __future__ import annotations

from typing import Dict, Mapping

from algebra.freealg import NCPoly, TensorPoly, word_text
from evaluation.report import CheckRecord
from hopf.presets import PRINTED_VARIANTS, build_preset
from hopf.spec import HopfSpec

MAX_ITEMIZED = 12


def _term_label(key) -> str:
    if key and isinstance(key[0], tuple):
        return " (x) ".join(word_text(leg) for leg in key)
    return word_text(key)


def coefficient_deltas(derived, printed) -> Dict[str, str]:
    """Per differing basis element: 'derived <c>, printed <c>'."""
    deltas: Dict[str, str] = {}
    keys = {key for key, _ in derived.items()} | {key for key, _ in printed.items()}
    for key in sorted(keys, key=lambda k: (len(_term_label(k)), _term_label(k))):
        left = derived.coefficient(key)
        right = printed.coefficient(key)
        if left != right:
            deltas[_term_label(key)] = f"derived {left.to_text()}, printed {right.to_text()}"
        if len(deltas) >= MAX_ITEMIZED:
            break
    return deltas


def compare_elements(
    name: str,
    target: str,
    derived: Mapping[str, NCPoly | TensorPoly],
    printed: Mapping[str, NCPoly | TensorPoly],
    structure_passes: bool,
    degree: int | None = None,
    rank: Mapping[str, int] | None = None,
) -> CheckRecord:
    details: Dict[str, str] = {}
    witness = ""
    for key, value in printed.items():
        if key not in derived:
            raise KeyError(f"{name}: nothing derived for {key}")
        if derived[key] == value:
            continue
        if not witness:
            witness = f"{key}: derived {derived[key].to_text(rank)}"
        for term, delta in coefficient_deltas(derived[key], value).items():
            details[f"{key} [{term}]"] = delta
    if not witness:
        status = "pass"
    else:
        status = "documented" if structure_passes else "fail"
    return CheckRecord(name=name, target=target, status=status, witness=witness, degree=degree, details=details)


def structure_images(h: HopfSpec) -> Dict[str, NCPoly | TensorPoly]:
    images: Dict[str, NCPoly | TensorPoly] = {}
    for x, y, value in h.presentation.relations():
        images[f"[{x}, {y}]"] = value
    for g in h.generators:
        images[f"Delta({g})"] = h.coproducts[g]
        if h.antipodes:
            images[f"S({g})"] = h.antipodes[g]
    return images


def printed_images(name: str, degree: int) -> Dict[str, NCPoly | TensorPoly]:
    """Preset images with the printed variants substituted where they exist."""
    preset = build_preset(name, degree)
    images = structure_images(preset)
    interpreter = preset.interpreter()
    for key, text in PRINTED_VARIANTS.get(name, {}).items():
        value = interpreter.evaluate_text(text)
        images[key] = value if isinstance(value, TensorPoly) else interpreter.as_poly(value)
    return images
