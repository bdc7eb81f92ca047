from __future__ import annotations

import dataclasses
from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    """Desk-scale guards. Every exhaustive routine checks the relevant field."""

    eulerian_edges: int = 24        # arc-subset counter
    orientation_states: int = 2_000_000  # out-degree DP states in the f-AT search
    palette: int = 12               # sum of f per reduced piece, list choosability
    online_vertices: int = 8        # paint game
    enumerate_vertices: int = 8     # isomorphism-class generator
    chromatic_vertices: int = 9
    at_critical_vertices: int = 7
    reduction_vertices: int = 8     # find_at_reduction
    eta_vertices: int = 18          # exhaustive eta check over induced subgraphs of B

    def replace(self, **changes) -> "Limits":
        return dataclasses.replace(self, **changes)

    @classmethod
    def field_names(cls) -> list[str]:
        return [f.name for f in dataclasses.fields(cls)]


DEFAULT = Limits()
