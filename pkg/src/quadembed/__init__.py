"""Exact verification workbench for embeddings of affine spaces into smooth quadrics."""

__version__ = "0.1.0"
