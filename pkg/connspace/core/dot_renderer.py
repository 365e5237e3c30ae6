"""
Graphviz DOT rendering of generic graphs.
"""

import logging
from pathlib import Path

from jinja2 import Template

from connspace.models.graph import GenericGraph

logger = logging.getLogger(__name__)

TEMPLATE_PATH = Path(__file__).parent.parent / "templates" / "generic_graph.dot.j2"


def _get_fallback_template() -> str:
    """Single-line template used when the packaged one is missing."""
    return (
        'digraph "{{ name }}" {\n'
        "{% for node in nodes %}"
        '  n{{ node.index }} [label="{{ node.label }}"{% if node.sink %}, shape=box{% endif %}];\n'
        "{% endfor %}"
        "{% for source, target in edges %}"
        "  n{{ source }} -> n{{ target }};\n"
        "{% endfor %}"
        "}"
    )


def render_generic_graph(graph: GenericGraph, name: str) -> str:
    """DOT digraph: vertices in canonical order labelled by their point sets, sinks as boxes."""
    try:
        with open(TEMPLATE_PATH, "r", encoding="utf-8") as f:
            template_content = f.read()
    except FileNotFoundError:
        logger.error(f"Template not found at {TEMPLATE_PATH}, using fallback")
        template_content = _get_fallback_template()

    sinks = set(graph.sinks())
    nodes = [
        {"index": i, "label": graph.ground.describe(vertex), "sink": i in sinks}
        for i, vertex in enumerate(graph.vertices)
    ]
    template = Template(template_content, trim_blocks=True, lstrip_blocks=True)
    return template.render(name=name, nodes=nodes, edges=sorted(graph.edges))
