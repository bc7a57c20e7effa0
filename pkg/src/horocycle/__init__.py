"""Exact-arithmetic kernel for filtered algebras, quantum moment maps and
matrix-coefficient asymptotics on SL2 and its determinant degeneration."""

__version__ = "0.1.0"
