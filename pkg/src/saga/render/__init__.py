"""Dialect registry and rendering entry point."""

from __future__ import annotations

from ..abstract_code import AbstractCode
from .base import OutputFile, RenderConfig, Renderer, UnmappableType
from . import csharp, cxx, java

DIALECTS: dict[str, RenderConfig] = {
    "java": java.CONFIG,
    "csharp": csharp.CONFIG,
    "cxx": cxx.CONFIG,
}


def render_package(dialect: str, code: AbstractCode) -> list[OutputFile]:
    """Render an IR package to output files in the given dialect."""
    try:
        config = DIALECTS[dialect]
    except KeyError:
        raise ValueError(
            f"unknown dialect {dialect!r}; expected one of {sorted(DIALECTS)}"
        ) from None
    return Renderer(config).render_package(code)


__all__ = [
    "DIALECTS",
    "OutputFile",
    "RenderConfig",
    "Renderer",
    "UnmappableType",
    "render_package",
]
