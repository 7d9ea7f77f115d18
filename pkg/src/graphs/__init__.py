"""Graph core: bitset graphs, set operations and JSON I/O."""

from .graph import (
    Graph,
    VertexSet,
    complement,
    connected_components,
    from_networkx,
    induced,
    is_anticomplete,
    is_complete,
    iter_bits,
    lowest,
    mask_of,
    max_degree_in,
    max_degree_in_mask,
    neighborhood,
    new_graph,
    set_of,
    to_networkx,
)
from .io import (
    blockade_from_dict,
    blockade_to_dict,
    dump_json,
    graph_from_dict,
    graph_to_dict,
    load_blockade,
    load_graph,
)

__all__ = [
    "Graph",
    "VertexSet",
    "complement",
    "connected_components",
    "from_networkx",
    "induced",
    "is_anticomplete",
    "is_complete",
    "iter_bits",
    "lowest",
    "mask_of",
    "max_degree_in",
    "max_degree_in_mask",
    "neighborhood",
    "new_graph",
    "set_of",
    "to_networkx",
    "blockade_from_dict",
    "blockade_to_dict",
    "dump_json",
    "graph_from_dict",
    "graph_to_dict",
    "load_blockade",
    "load_graph",
]
