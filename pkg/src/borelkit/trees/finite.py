from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Tuple

from borelkit.exceptions import PreconditionError
from borelkit.trees.seq import Seq, is_prefix, prefixes, seq


@dataclass(frozen=True)
class FiniteTree:
    """A finite prefix-closed set of sequences."""

    nodes: FrozenSet[Seq] = frozenset()

    def __post_init__(self):
        nodes = frozenset(seq(s) for s in self.nodes)
        object.__setattr__(self, "nodes", nodes)
        for s in nodes:
            if s and s[:-1] not in nodes:
                raise PreconditionError(f"tree is not prefix-closed: {s} is present but {s[:-1]} is not")

    def __contains__(self, s) -> bool:
        return tuple(s) in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self):
        return iter(self.sorted_nodes())

    @property
    def is_empty(self) -> bool:
        return not self.nodes

    def sorted_nodes(self) -> List[Seq]:
        return sorted(self.nodes, key=lambda s: (len(s), s))

    def children(self, s: Seq) -> List[int]:
        return sorted(t[-1] for t in self._children_index().get(tuple(s), ()))

    def _children_index(self) -> Dict[Seq, Tuple[Seq, ...]]:
        cached = self.__dict__.get("_children_cache")
        if cached is None:
            index: Dict[Seq, List[Seq]] = {}
            for t in self.nodes:
                if t:
                    index.setdefault(t[:-1], []).append(t)
            cached = {k: tuple(v) for k, v in index.items()}
            object.__setattr__(self, "_children_cache", cached)
        return cached

    def is_leaf(self, s: Seq) -> bool:
        return tuple(s) in self.nodes and not self._children_index().get(tuple(s))

    def leaves(self) -> List[Seq]:
        return [s for s in self.sorted_nodes() if self.is_leaf(s)]

    def subtree(self, s: Seq) -> "FiniteTree":
        s = tuple(s)
        if s not in self.nodes:
            raise PreconditionError(f"{s} is not a node of the tree")
        return FiniteTree(frozenset(t[len(s) :] for t in self.nodes if is_prefix(s, t)))

    def height(self) -> int:
        """Length of the longest node, -1 for the empty tree."""
        return max((len(s) for s in self.nodes), default=-1)

    def max_entry(self) -> int:
        return max((e for s in self.nodes for e in s), default=-1)

    def graft(self, h: Seq) -> "FiniteTree":
        return FiniteTree(frozenset(prefixes(tuple(h))) | frozenset(tuple(h) + t for t in self.nodes))


def cl_tr(sequences: Iterable[Seq]) -> FiniteTree:
    """Smallest tree containing every given sequence."""
    nodes = set()
    for s in sequences:
        nodes.update(prefixes(seq(s)))
    return FiniteTree(frozenset(nodes))


def full_tree(depth: int, width: int) -> FiniteTree:
    """All sequences of length <= depth with entries < width."""
    level = [()]
    nodes = [()]
    for _ in range(depth):
        level = [s + (e,) for s in level for e in range(width)]
        nodes.extend(level)
    return FiniteTree(frozenset(nodes))
