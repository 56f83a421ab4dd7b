"""Fusion rings of the relevant duals and the local-finiteness closure check.

Extension point: a new ring kind only needs ``unit``, ``validate``,
``conjugate`` and ``tensor`` callables; see ``make_fusion_ring``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

__all__ = [
    "FusionRing",
    "make_fusion_ring",
    "tensor_decompose",
    "conjugate_label",
    "Finite",
    "CapExceeded",
    "local_finiteness_check",
    "closure_is_sound",
    "parse_label",
]


@dataclass(frozen=True)
class FusionRing:
    kind: str
    parameter: object
    unit: object
    validate: Callable[[object], bool] = field(repr=False)
    conjugate: Callable[[object], object] = field(repr=False)
    tensor: Callable[[object, object], Counter] = field(repr=False)
    dimension: Callable[[object], int] | None = field(default=None, repr=False)

    def check(self, a) -> None:
        if not self.validate(a):
            raise ValueError(f"invalid label {a!r} for ring {self.kind}")


def _su2_rule(a: int, b: int) -> Counter:
    return Counter(range(abs(a - b), a + b + 1, 2))


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def make_fusion_ring(kind: str, parameter=None) -> FusionRing:
    """Kinds: su2spin (twice-spin labels), integers, cyclic(n), productSu2Int."""
    if kind in ("su2spin", "su2"):
        return FusionRing(
            "su2spin", None, 0,
            validate=lambda a: _is_int(a) and a >= 0,
            conjugate=lambda a: a,
            tensor=_su2_rule,
            dimension=lambda a: a + 1,
        )
    if kind in ("integers", "int", "Z"):
        return FusionRing(
            "integers", None, 0,
            validate=_is_int,
            conjugate=lambda a: -a,
            tensor=lambda a, b: Counter([a + b]),
            dimension=lambda a: 1,
        )
    if kind == "cyclic":
        if not _is_int(parameter) or parameter < 1:
            raise ValueError("cyclic ring needs n >= 1")
        n = parameter
        return FusionRing(
            "cyclic", n, 0,
            validate=lambda a: _is_int(a) and 0 <= a < n,
            conjugate=lambda a: (-a) % n,
            tensor=lambda a, b: Counter([(a + b) % n]),
            dimension=lambda a: 1,
        )
    if kind in ("productSu2Int", "product"):
        def tensor(a, b):
            return Counter({(s, a[1] + b[1]): m for s, m in _su2_rule(a[0], b[0]).items()})

        return FusionRing(
            "productSu2Int", None, (0, 0),
            validate=lambda a: isinstance(a, tuple) and len(a) == 2 and _is_int(a[0]) and a[0] >= 0 and _is_int(a[1]),
            conjugate=lambda a: (a[0], -a[1]),
            tensor=tensor,
            dimension=lambda a: a[0] + 1,
        )
    raise ValueError(f"unknown fusion ring kind {kind!r}")


def tensor_decompose(ring: FusionRing, a, b) -> Counter:
    ring.check(a)
    ring.check(b)
    return ring.tensor(a, b)


def conjugate_label(ring: FusionRing, a):
    ring.check(a)
    return ring.conjugate(a)


@dataclass
class Finite:
    labels: list  # sorted closed label set
    visit_order: list
    chain: list  # closure size after each BFS wave
    sound: bool = True

    @property
    def size(self) -> int:
        return len(self.labels)


@dataclass
class CapExceeded:
    count: int
    visit_order: list
    chain: list

    @property
    def strictly_growing(self) -> bool:
        return all(b > a for a, b in zip(self.chain, self.chain[1:]))


def _sort_key(a):
    return a if isinstance(a, tuple) else (a,)


def local_finiteness_check(ring: FusionRing, generators, cap: int = 10_000):
    """Breadth-first closure of generators, their conjugates and the unit.

    Each wave multiplies the new labels by the generating set (which already
    contains the conjugates); since every word in the generators is reached
    this way, the result is the full tensor-and-conjugate closure.
    """
    gens = list(dict.fromkeys(generators))
    if not gens:
        raise ValueError("generator set is empty")
    for g in gens:
        ring.check(g)
    if cap < len(gens):
        raise ValueError("cap must be at least the number of generators")
    seeds = list(dict.fromkeys(gens + [ring.conjugate(g) for g in gens]))
    step = list(dict.fromkeys(seeds + [ring.unit]))
    seen = set()
    order = []
    for a in step:
        if a not in seen:
            seen.add(a)
            order.append(a)
    chain = [len(seen)]
    if len(seen) > cap:
        return CapExceeded(len(seen), order, chain)
    frontier = list(order)
    while frontier:
        new = []
        for a in frontier:
            for g in step:
                for c in sorted(ring.tensor(a, g), key=_sort_key):
                    if c not in seen:
                        seen.add(c)
                        order.append(c)
                        new.append(c)
                        if len(seen) > cap:
                            chain.append(len(seen))
                            return CapExceeded(len(seen), order, chain)
        if new:
            chain.append(len(seen))
        frontier = new
    labels = sorted(seen, key=_sort_key)
    return Finite(labels, order, chain, closure_is_sound(ring, labels))


def closure_is_sound(ring: FusionRing, labels) -> bool:
    """Exhaustive check: tensor-closed, conjugate-closed and containing the unit."""
    S = set(labels)
    if ring.unit not in S:
        return False
    if any(ring.conjugate(a) not in S for a in S):
        return False
    return all(set(ring.tensor(a, b)) <= S for a in S for b in S)


def parse_label(ring: FusionRing, text: str):
    """'3' for scalar kinds, '(1,-2)' for productSu2Int."""
    s = text.strip()
    if ring.kind == "productSu2Int":
        body = s.strip("()")
        parts = [p.strip() for p in body.split(",")]
        if len(parts) != 2:
            raise ValueError(f"bad product label {text!r}")
        lab = (int(parts[0]), int(parts[1]))
    else:
        lab = int(s)
    ring.check(lab)
    return lab
