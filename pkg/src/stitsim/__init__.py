"""Simulation and Monte-Carlo verification of iteration-stable tessellations
and Poisson hyperplane tessellations in bounded windows."""

from . import encapsulation, geometry, measure, pht, rain, stats, stit
from .rng import run_replicates, stream

__version__ = "0.1.0"

__all__ = [
    "encapsulation", "geometry", "measure", "pht", "rain", "stats", "stit",
    "run_replicates", "stream",
]
