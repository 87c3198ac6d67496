"""DOT rendering of finite trees and truncations."""
from typing import Iterable

import networkx as nx

from borelkit.trees.finite import FiniteTree
from borelkit.trees.seq import Seq


def node_label(s: Seq) -> str:
    return "∅" if not s else "(" + ",".join(str(e) for e in s) + ")"


def tree_graph(tree: FiniteTree) -> nx.DiGraph:
    graph = nx.DiGraph()
    for s in tree.sorted_nodes():
        graph.add_node(s, label=node_label(s))
        if s:
            graph.add_edge(s[:-1], s)
    return graph


def graph_to_dot(graph: nx.DiGraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    for node, data in graph.nodes(data=True):
        lines.append(f'  "{data.get("label", node)}";')
    for u, v in graph.edges():
        lines.append(f'  "{graph.nodes[u].get("label", u)}" -> "{graph.nodes[v].get("label", v)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_to_dot(tree: FiniteTree, name: str = "T") -> str:
    return graph_to_dot(tree_graph(tree), name)


def highlight_to_dot(tree: FiniteTree, marked: Iterable[Seq], name: str = "T") -> str:
    """DOT of ``tree`` with ``marked`` nodes drawn filled (e.g. the survivors of a derivative)."""
    graph = tree_graph(tree)
    marked = set(marked)
    lines = [f"digraph {name} {{"]
    for node, data in graph.nodes(data=True):
        style = " [style=filled]" if node in marked else ""
        lines.append(f'  "{data["label"]}"{style};')
    for u, v in graph.edges():
        lines.append(f'  "{graph.nodes[u]["label"]}" -> "{graph.nodes[v]["label"]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
