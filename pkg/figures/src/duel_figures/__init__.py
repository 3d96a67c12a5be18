"""Figure rendering for cascade-duel CSV outputs."""

from .render import render
from .specs import KINDS, FigureSpec, SchemaError

__all__ = ["render", "KINDS", "FigureSpec", "SchemaError"]
