from jinja2 import Environment, PackageLoader

from sidcodes.graph import ProductGraph

env = Environment(
    loader=PackageLoader('sidcodes'),
    autoescape=False,
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
)


def render_dot(graph: ProductGraph, code=None) -> str:
    """DOT text for the graph with codewords drawn as filled black nodes.

    Vertices appear in canonical order and edges sorted by endpoint index.
    """
    members = set(code) if code is not None else set()
    vertices = [graph.vertex(idx) for idx in range(graph.num_vertices)]
    template = env.get_template('product_graph.dot')
    return template.render(
        name=f'K{graph.m}x{"P" if graph.is_path else "C"}{graph.n}',
        vertices=vertices,
        members=members,
        edges=graph.edges(),
    )
