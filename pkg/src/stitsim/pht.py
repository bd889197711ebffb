"""Poisson hyperplane patterns in a window and their avoidance probabilities."""

from __future__ import annotations

from dataclasses import dataclass

from . import geometry as geo
from .measure import DrivingMeasure, measure_hitting, sample_hitting


@dataclass(frozen=True)
class PoissonHyperplanePattern:
    window: geo.Polytope
    rho: float
    hyperplanes: tuple[geo.Hyperplane, ...]


def simulate_pht(measure: DrivingMeasure, rho: float, window: geo.Polytope,
                 rng) -> PoissonHyperplanePattern:
    """Poisson(rho * mass(window)) hyperplanes, i.i.d. from the restriction."""
    if rho < 0:
        raise ValueError("rho must be non-negative")
    mass = measure_hitting(measure, window)
    count = int(rng.poisson(rho * mass)) if rho > 0 else 0
    hs = tuple(sample_hitting(measure, window, rng) for _ in range(count))
    return PoissonHyperplanePattern(window=window, rho=rho, hyperplanes=hs)


def empty_probability(measure: DrivingMeasure, rho: float, body) -> float:
    """P(no hyperplane of the pattern meets the body)."""
    import math
    return math.exp(-rho * measure_hitting(measure, body))


def tail_event_hits_ball(pattern: PoissonHyperplanePattern, body) -> bool:
    """Whether some hyperplane of the pattern meets the body."""
    return any(geo.hits(h, body) for h in pattern.hyperplanes)


def cells_of_pattern(pattern: PoissonHyperplanePattern):
    """Materialize the induced cell arrangement by repeated clipping.

    Not needed for hit events (which the tail experiments use); provided for
    rendering and inspection.  Quadratic in the number of hyperplanes.
    """
    from .stit import Tessellation

    cells = [pattern.window]
    for h in pattern.hyperplanes:
        nxt = []
        for cell in cells:
            if not geo.hits(h, cell):
                nxt.append(cell)
                continue
            lower = geo.clip_tolerant(cell, h.normal, h.d)
            upper = geo.clip_tolerant(cell, -h.normal, -h.d)
            nxt.extend(p for p in (lower, upper) if p is not None)
        cells = nxt
    return Tessellation(pattern.window, tuple(cells))


def pattern_to_json(pattern: PoissonHyperplanePattern) -> dict:
    return {
        "kind": "pht_pattern",
        "window": geo.polytope_to_json(pattern.window),
        "rho": pattern.rho,
        "hyperplanes": [geo.hyperplane_to_json(h) for h in pattern.hyperplanes],
    }
