"""Exact k-dismantlability decisions and dismantling certificates for finite graphs."""

from .graph import Graph, VertexPartition, VertexSet

__version__ = "0.1.0"

__all__ = ["Graph", "VertexSet", "VertexPartition", "__version__"]
