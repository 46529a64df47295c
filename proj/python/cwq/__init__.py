"""Clique-width expressions, dominated partitions and coarse-geometry checks."""

from ._core import (
    CapExceeded,
    ColoredGraph,
    ContractError,
    Error,
    Expr,
    Graph,
    InputError,
    ParseError,
    banded_cover,
    brute_treewidth,
    build_minor_model,
    check_partqi_tight,
    check_qi,
    complete_graph,
    decompose,
    find_minor,
    gen_path,
    gen_spider,
    gen_subdivided_clique,
    has_minor,
    parse,
    print_expr,
    projection_map,
    pullback_cover,
    random_strict_expression,
    subdivide,
    validate_cover,
    verify_result,
)

__all__ = [name for name in dir() if not name.startswith("_")]
