"""Combinable AST/CFG/DFG code-view graphs for Java snippets.

Thin wrapper over the native ``_codeview`` extension: the heavy lifting
(parsing, symbol table, control flow, reaching-definitions dataflow,
serialization) happens in C++.
"""

import json as _json

try:  # installed layout: extension lives inside the package
    from ._codeview import (  # type: ignore[attr-defined]
        BlacklistCoversRootError,
        EmptyInputError,
        SyntaxError,
        check_syntax,
        generate,
    )
except ImportError:  # build-tree layout: extension on sys.path
    from _codeview import (  # type: ignore[no-redef]
        BlacklistCoversRootError,
        EmptyInputError,
        SyntaxError,
        check_syntax,
        generate,
    )

__all__ = [
    "BlacklistCoversRootError",
    "EmptyInputError",
    "SyntaxError",
    "check_syntax",
    "generate",
    "generate_graph",
    "generate_file",
]


def generate_graph(source, **kwargs):
    """Like :func:`generate` with ``format="json"``, parsed into a dict."""
    kwargs.pop("format", None)
    return _json.loads(generate(source, format="json", **kwargs))


def generate_file(path, **kwargs):
    """Run the pipeline over a file's contents."""
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    kwargs.setdefault("origin", str(path))
    return generate(text, **kwargs)
