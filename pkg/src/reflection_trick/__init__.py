"""Reflection-group trick toolkit: flag nerves, right-angled Coxeter groups,
Davis complex truncations and quotients, and the genus arithmetic."""

__version__ = "0.1.0"
