"""Interconnections of components sharing one signal space."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .behavior import (
    KernelRep,
    SignalSpace,
    SignalSpaceError,
    is_unconstrained,
    mcmillan_degree,
    minimal_kernel,
    output_cardinality,
)
from .polyalg import vstack

log = logging.getLogger(__name__)

# exhaustive partition search up to this many components, greedy above
EXHAUSTIVE_LIMIT = 10

REGULAR = "regular"
REGULAR_FEEDBACK = "regular_feedback"
MODES = (REGULAR, REGULAR_FEEDBACK)


class PartitionError(ValueError):
    pass


@dataclass(frozen=True)
class Network:
    space: SignalSpace
    components: tuple[KernelRep, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ValueError("a network needs at least one component")
        for c in comps:
            if c.space != self.space:
                raise SignalSpaceError("every component must share the network's signal space")
        names = tuple(self.names) or tuple(f"Sigma{i + 1}" for i in range(len(comps)))
        if len(names) != len(comps):
            raise ValueError("one name per component")
        object.__setattr__(self, "names", names)

    def __len__(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class IncidenceMatrix:
    """Binary component x signal-block matrix; 0 marks an unconstrained block."""

    s: tuple[tuple[int, ...], ...]
    components: tuple[str, ...] = ()
    signals: tuple[str, ...] = ()

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.s), len(self.s[0]) if self.s else len(self.signals)

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.s]

    def transpose(self) -> "IncidenceMatrix":
        n_cols = self.shape[1]
        return IncidenceMatrix(
            tuple(tuple(r[j] for r in self.s) for j in range(n_cols)),
            components=self.signals,
            signals=self.components,
        )

    def to_text(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.s)

    def to_json(self) -> dict:
        return {
            "components": list(self.components),
            "signals": list(self.signals),
            "S": self.to_lists(),
        }


@dataclass(frozen=True)
class ComponentPartition:
    """Disjoint groups of component indices, canonically ordered."""

    groups: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        groups = tuple(tuple(sorted(g)) for g in self.groups)
        if any(not g for g in groups):
            raise PartitionError("groups must be nonempty")
        object.__setattr__(self, "groups", tuple(sorted(groups)))

    @classmethod
    def singletons(cls, n: int) -> "ComponentPartition":
        return cls(tuple((i,) for i in range(n)))

    @classmethod
    def whole(cls, n: int) -> "ComponentPartition":
        return cls((tuple(range(n)),))

    @property
    def k(self) -> int:
        return len(self.groups)

    def validate(self, n: int) -> None:
        members = [i for g in self.groups for i in g]
        if sorted(members) != list(range(n)):
            raise PartitionError(f"{self.groups} is not a partition of {n} components")

    def __str__(self) -> str:
        return ",".join("{" + ",".join(str(i + 1) for i in g) + "}" for g in self.groups)


def interconnect(net: Network) -> KernelRep:
    """Stack the component kernels; the result's kernel is the intersection."""
    return KernelRep(net.space, vstack([c.r for c in net.components], cols=net.space.q))


def incidence(net: Network) -> IncidenceMatrix:
    s = tuple(
        tuple(0 if is_unconstrained(c, name) else 1 for name in net.space.names)
        for c in net.components
    )
    return IncidenceMatrix(s, components=net.names, signals=tuple(net.space.names))


def column_incidence(net: Network) -> list[list[int]]:
    """Incidence at the level of scalar signal columns instead of blocks."""
    return [
        [1 if any(c.r[i, j] for i in range(c.r.rows)) else 0 for j in range(net.space.q)]
        for c in net.components
    ]


@dataclass(frozen=True)
class RegularityReport:
    component_p: tuple[int, ...]
    component_n: tuple[int, ...]
    p: int
    n: int

    @property
    def regular(self) -> bool:
        return self.p == sum(self.component_p)

    @property
    def regular_feedback(self) -> bool:
        return self.regular and self.n == sum(self.component_n)


def regularity(net: Network) -> RegularityReport:
    """Output cardinalities and McMillan degrees of the parts and the whole."""
    whole = interconnect(net)
    return RegularityReport(
        component_p=tuple(output_cardinality(c) for c in net.components),
        component_n=tuple(mcmillan_degree(c) for c in net.components),
        p=output_cardinality(whole),
        n=mcmillan_degree(whole),
    )


def is_regular(net: Network) -> bool:
    return regularity(net).regular


def is_regular_feedback(net: Network) -> bool:
    return regularity(net).regular_feedback


def merge(net: Network, part: ComponentPartition) -> Network:
    part.validate(len(net))
    comps, names = [], []
    for g in part.groups:
        comps.append(KernelRep(net.space, vstack([net.components[i].r for i in g], cols=net.space.q)))
        names.append("+".join(net.names[i] for i in g))
    return Network(net.space, tuple(comps), tuple(names))


def set_partitions(n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All partitions of ``range(n)`` (restricted growth strings)."""
    if n == 0:
        yield ()
        return

    def grow(i: int, labels: list[int], n_blocks: int):
        if i == n:
            groups = [[] for _ in range(n_blocks)]
            for idx, lab in enumerate(labels):
                groups[lab].append(idx)
            yield tuple(tuple(g) for g in groups)
            return
        for lab in range(n_blocks + 1):
            labels.append(lab)
            yield from grow(i + 1, labels, max(n_blocks, lab + 1))
            labels.pop()

    yield from grow(0, [], 0)


@dataclass(frozen=True)
class PartitionResult:
    partition: ComponentPartition
    exhaustive: bool

    @property
    def k(self) -> int:
        return self.partition.k


def _group_invariants(net: Network):
    @lru_cache(maxsize=None)
    def inv(group: tuple[int, ...]) -> tuple[int, int]:
        stacked = KernelRep(net.space, vstack([net.components[i].r for i in group], cols=net.space.q))
        mk = minimal_kernel(stacked)
        return mk.r.rows, mcmillan_degree(mk)

    return inv


def _qualifies(groups, inv, p_total: int, n_total: int, mode: str) -> bool:
    ps, ns = zip(*(inv(g) for g in groups))
    if sum(ps) != p_total:
        return False
    return mode == REGULAR or sum(ns) == n_total


def regularizing_partition(net: Network, mode: str = REGULAR_FEEDBACK) -> PartitionResult:
    """Merge components until the interconnection is regular (feedback).

    For at most :data:`EXHAUSTIVE_LIMIT` components every set partition is
    tried, most groups first, ties broken by the lexicographic order of the
    canonically sorted groups; the result then has maximal ``k``.  Larger
    networks fall back to greedy pairwise merging, which is best effort.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    n_comp = len(net)
    whole = interconnect(net)
    p_total = output_cardinality(whole)
    n_total = mcmillan_degree(whole)
    inv = _group_invariants(net)

    if n_comp <= EXHAUSTIVE_LIMIT:
        candidates = sorted(
            (ComponentPartition(g).groups for g in set_partitions(n_comp)),
            key=lambda gs: (-len(gs), gs),
        )
        for groups in candidates:
            if _qualifies(groups, inv, p_total, n_total, mode):
                return PartitionResult(ComponentPartition(groups), exhaustive=True)
        raise AssertionError("the single-group partition always qualifies")

    log.info("greedy partition search for %d components", n_comp)
    groups = [(i,) for i in range(n_comp)]
    while not _qualifies(groups, inv, p_total, n_total, mode):
        best = None
        for a in range(len(groups)):
            for b in range(a + 1, len(groups)):
                trial = groups[:a] + groups[a + 1:b] + groups[b + 1:] + [tuple(sorted(groups[a] + groups[b]))]
                ps, ns = zip(*(inv(g) for g in trial))
                deficit = (sum(ps) - p_total, sum(ns) - n_total if mode == REGULAR_FEEDBACK else 0)
                if best is None or deficit < best[0]:
                    best = (deficit, a, b)
        _, a, b = best
        merged = tuple(sorted(groups[a] + groups[b]))
        groups = [g for i, g in enumerate(groups) if i not in (a, b)] + [merged]
    return PartitionResult(ComponentPartition(tuple(groups)), exhaustive=False)

