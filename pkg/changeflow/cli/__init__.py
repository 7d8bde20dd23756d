"""
Command-line package: one module per command family

Each module exposes ``register(subparsers)``; ``changeflow.main`` wires them up.
"""
from changeflow.cli import bdr, csw, impact, simulate

COMMAND_MODULES = [bdr, impact, csw, simulate]

__all__ = ["COMMAND_MODULES", "bdr", "csw", "impact", "simulate"]
