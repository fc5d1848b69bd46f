"""Compute-graph representation: typed layer nodes connected into a DAG.

A Graph owns an ordered set of LayerSpec nodes plus directed edges from
producer to consumer. Each node produces exactly one tensor; fan-out is
expressed with multiple outgoing edges. Validation is explicit: construction
records structure, validate() reports every violation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional


class GraphError(Exception):
    """Base class for graph construction errors."""


class DuplicateNodeError(GraphError):
    pass


class UnknownNodeError(GraphError):
    pass


class CycleError(GraphError):
    pass


class GraphValidationError(GraphError):
    """Raised when an operation requires a valid graph but validate() fails."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


class Kind(str, Enum):
    INPUT = "Input"
    CONV = "Conv2d"
    FC = "FullyConnected"
    POOL = "Pool"
    ACTIVATION = "Activation"
    BATCH_NORM = "BatchNorm"
    LRN = "LRN"
    DROPOUT = "Dropout"
    CONCAT = "Concat"
    ADD = "Add"
    SOFTMAX = "Softmax"
    GLOBAL_POOL = "GlobalPool"


#: Kinds whose output tensor may alias their input buffer (framework
#: in-place execution). Used by the memory model, not the cost model.
INPLACE_KINDS = frozenset({Kind.ACTIVATION, Kind.DROPOUT})

#: Kinds that carry learned weights.
WEIGHTED_KINDS = frozenset({Kind.CONV, Kind.FC, Kind.BATCH_NORM})


@dataclass(frozen=True, order=True)
class TensorShape:
    """Per-image feature-map dimensions (no batch axis)."""

    channels: int
    height: int
    width: int

    def __post_init__(self):
        for name in ("channels", "height", "width"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")

    def element_count(self) -> int:
        return self.channels * self.height * self.width

    def spatial(self) -> tuple[int, int]:
        return (self.height, self.width)


def _pair(v) -> tuple[int, int]:
    if isinstance(v, int):
        return (v, v)
    h, w = v
    return (int(h), int(w))


@dataclass(frozen=True)
class LayerSpec:
    """One operator node. Attribute relevance depends on `kind`.

    Conv2d uses out_channels / kernel / stride / padding / groups / has_bias.
    FullyConnected uses out_features / has_bias. Pool uses pool_kind /
    kernel / stride / padding / ceil_mode. Remaining kinds need no attributes.
    """

    id: str
    kind: Kind
    out_channels: Optional[int] = None
    kernel: Optional[tuple[int, int]] = None
    stride: tuple[int, int] = (1, 1)
    padding: tuple[int, int] = (0, 0)
    groups: int = 1
    has_bias: bool = False
    out_features: Optional[int] = None
    pool_kind: str = "max"
    ceil_mode: bool = False

    def __post_init__(self):
        if not self.id:
            raise ValueError("node id must be a non-empty string")
        if self.kind == Kind.CONV:
            if self.out_channels is None or self.out_channels < 1:
                raise ValueError(f"{self.id}: Conv2d requires out_channels >= 1")
            if self.kernel is None:
                raise ValueError(f"{self.id}: Conv2d requires a kernel")
            if self.groups < 1:
                raise ValueError(f"{self.id}: groups must be >= 1")
            if self.out_channels % self.groups != 0:
                raise ValueError(
                    f"{self.id}: out_channels {self.out_channels} not divisible "
                    f"by groups {self.groups}"
                )
        if self.kind == Kind.FC and (self.out_features is None or self.out_features < 1):
            raise ValueError(f"{self.id}: FullyConnected requires out_features >= 1")
        if self.kind == Kind.POOL:
            if self.kernel is None:
                raise ValueError(f"{self.id}: Pool requires a kernel")
            if self.pool_kind not in ("max", "avg"):
                raise ValueError(f"{self.id}: pool_kind must be 'max' or 'avg'")
        if self.kernel is not None and min(self.kernel) < 1:
            raise ValueError(f"{self.id}: kernel dims must be >= 1")
        if min(self.stride) < 1:
            raise ValueError(f"{self.id}: stride must be >= 1")
        if min(self.padding) < 0:
            raise ValueError(f"{self.id}: padding must be >= 0")


# -- spec constructors ------------------------------------------------------

def input_spec(id: str = "input") -> LayerSpec:
    return LayerSpec(id=id, kind=Kind.INPUT)


def conv2d(id, out_channels, kernel, stride=1, padding=0, groups=1, has_bias=False) -> LayerSpec:
    return LayerSpec(
        id=id, kind=Kind.CONV, out_channels=out_channels, kernel=_pair(kernel),
        stride=_pair(stride), padding=_pair(padding), groups=groups, has_bias=has_bias,
    )


def fully_connected(id, out_features, has_bias=False) -> LayerSpec:
    return LayerSpec(id=id, kind=Kind.FC, out_features=out_features, has_bias=has_bias)


def pool(id, kernel, stride=1, padding=0, pool_kind="max", ceil_mode=False) -> LayerSpec:
    return LayerSpec(
        id=id, kind=Kind.POOL, kernel=_pair(kernel), stride=_pair(stride),
        padding=_pair(padding), pool_kind=pool_kind, ceil_mode=ceil_mode,
    )


def simple(id, kind: Kind) -> LayerSpec:
    return LayerSpec(id=id, kind=kind)


# -- required in-degree per kind -------------------------------------------

def _arity_ok(kind: Kind, indegree: int) -> bool:
    if kind == Kind.INPUT:
        return indegree == 0
    if kind in (Kind.CONCAT, Kind.ADD):
        return indegree >= 2
    return indegree == 1


class Graph:
    """DAG of LayerSpec nodes. Single-writer during construction; treat as
    read-only once validated."""

    def __init__(self):
        self._nodes: dict[str, LayerSpec] = {}
        self._edges: list[tuple[str, str]] = []
        self._succ: dict[str, list[str]] = {}
        self._pred: dict[str, list[str]] = {}

    # construction ---------------------------------------------------------

    def add_node(self, spec: LayerSpec) -> str:
        if spec.id in self._nodes:
            raise DuplicateNodeError(f"duplicate node id {spec.id!r}")
        self._nodes[spec.id] = spec
        self._succ[spec.id] = []
        self._pred[spec.id] = []
        return spec.id

    def connect(self, src: str, dst: str) -> None:
        for nid in (src, dst):
            if nid not in self._nodes:
                raise UnknownNodeError(f"unknown node id {nid!r}")
        if src == dst or self._reachable(dst, src):
            raise CycleError(f"edge {src!r} -> {dst!r} would create a cycle")
        self._edges.append((src, dst))
        self._succ[src].append(dst)
        self._pred[dst].append(src)

    def _reachable(self, start: str, target: str) -> bool:
        stack, seen = [start], set()
        while stack:
            n = stack.pop()
            if n == target:
                return True
            if n in seen:
                continue
            seen.add(n)
            stack.extend(self._succ[n])
        return False

    # queries --------------------------------------------------------------

    @property
    def node_ids(self) -> list[str]:
        return list(self._nodes)

    @property
    def edges(self) -> list[tuple[str, str]]:
        return list(self._edges)

    def node(self, id: str) -> LayerSpec:
        try:
            return self._nodes[id]
        except KeyError:
            raise UnknownNodeError(f"unknown node id {id!r}") from None

    def nodes(self) -> Iterable[LayerSpec]:
        return self._nodes.values()

    def predecessors(self, id: str) -> list[str]:
        return list(self._pred[id])

    def successors(self, id: str) -> list[str]:
        return list(self._succ[id])

    def __len__(self) -> int:
        return len(self._nodes)

    def __contains__(self, id: str) -> bool:
        return id in self._nodes

    @property
    def input_id(self) -> Optional[str]:
        for spec in self._nodes.values():
            if spec.kind == Kind.INPUT:
                return spec.id
        return None

    @property
    def output_ids(self) -> list[str]:
        return [nid for nid in self._nodes if not self._succ[nid]]

    # analysis -------------------------------------------------------------

    def topological_order(self) -> list[str]:
        """Kahn's algorithm with insertion-order tie breaking."""
        import heapq

        insertion = {nid: i for i, nid in enumerate(self._nodes)}
        indeg = {nid: len(self._pred[nid]) for nid in self._nodes}
        order: list[str] = []
        ready = [insertion[nid] for nid in self._nodes if indeg[nid] == 0]
        heapq.heapify(ready)
        ids = list(self._nodes)
        while ready:
            n = ids[heapq.heappop(ready)]
            order.append(n)
            for s in self._succ[n]:
                indeg[s] -= 1
                if indeg[s] == 0:
                    heapq.heappush(ready, insertion[s])
        if len(order) != len(self._nodes):
            raise CycleError("graph contains a cycle")
        return order

    def validate(self) -> list[str]:
        """Return every invariant violation (empty list means valid)."""
        violations: list[str] = []
        inputs = [s.id for s in self._nodes.values() if s.kind == Kind.INPUT]
        if len(inputs) != 1:
            violations.append(f"expected exactly one Input node, found {len(inputs)}")
        for spec in self._nodes.values():
            indeg = len(self._pred[spec.id])
            if not _arity_ok(spec.kind, indeg):
                violations.append(
                    f"node {spec.id!r} ({spec.kind.value}) has in-degree {indeg}"
                )
        try:
            self.topological_order()
        except CycleError:
            violations.append("graph contains a cycle")
        if inputs:
            seen = set()
            stack = [inputs[0]]
            while stack:
                n = stack.pop()
                if n in seen:
                    continue
                seen.add(n)
                stack.extend(self._succ[n])
            for nid in self._nodes:
                if nid not in seen:
                    violations.append(f"node {nid!r} not reachable from input")
        return violations

    def require_valid(self) -> None:
        violations = self.validate()
        if violations:
            raise GraphValidationError(violations)
