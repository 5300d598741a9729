"""SAGA: compiler, runtime and code generator for the SAGA story DSL.

Pipeline: parse a ``.saga`` script into a StoryAst, resolve it into a
validated StoryGraph (a DAG of story states grouped into sections),
then either interpret it as an event-driven Moore machine, export it as
a dot/JSON graph, or compile it to human-readable state-machine code in
Java, C# or C++.
"""

from .ast import Label, StoryAst
from .codegen import compile_story, mangle
from .export import to_dot, to_graph_json
from .model import StoryGraph, resolve, validate_dag
from .parser import parse_text
from .render import render_package
from .runtime import new_state, signal_event

__version__ = "0.1.0"

__all__ = [
    "Label",
    "StoryAst",
    "StoryGraph",
    "compile_story",
    "mangle",
    "new_state",
    "parse_text",
    "render_package",
    "resolve",
    "signal_event",
    "to_dot",
    "to_graph_json",
    "validate_dag",
    "__version__",
]
