from __future__ import annotations

from typing import Iterable, Set

from algebra.scalar import PARAMETERS, Scalar, surface_name
from hopf.spec import HopfSpec


def parameters(h: HopfSpec) -> Set[str]:
    """Inverse-parameter symbols occurring anywhere in the structure data."""
    found = set(h.presentation.parameters())
    images = list(h.coproducts.values()) + list(h.antipodes.values()) + list(h.stars.values())
    for image in images:
        for _, coef in image.items():
            found |= coef.parameters()
    for value in h.counits.values():
        found |= value.parameters()
    return found


def take_limit(h: HopfSpec, symbol: str) -> HopfSpec:
    """Sends one deformation constant to infinity: its inverse symbol becomes 0 everywhere."""
    symbol = PARAMETERS.get(symbol, symbol)
    if symbol not in parameters(h):
        raise ValueError(f"{surface_name(symbol)} does not occur in {h.name}")

    def limit(value: Scalar) -> Scalar:
        return value.limit(symbol)

    name = f"{h.name}[{surface_name(symbol)}->inf]"
    return h.map_scalars(limit, name=name, presentation=h.presentation.limit(symbol))


def take_limits(h: HopfSpec, symbols: Iterable[str]) -> HopfSpec:
    for symbol in symbols:
        h = take_limit(h, symbol)
    return h
