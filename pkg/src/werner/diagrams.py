"""Non-crossing chord and polygon diagrams on points 1..n of a circle.

A diagram is a set partition of {1..n}; chord diagrams are the partitions
whose blocks all have two elements. Lattice order: ``a`` lies above ``b``
when ``a`` subdivides ``b``, so the single n-gon is the bottom element and
the all-singleton partition the top.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb


class PartitionSyntaxError(ValueError):
    """Raised for malformed diagram text; ``position`` is a 0-based column."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Partition:
    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else 0))
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise ValueError("partition blocks must be nonempty")
            for x in b:
                if not 1 <= x <= self.n:
                    raise ValueError(f"element {x} outside 1..{self.n}")
                if x in seen:
                    raise ValueError(f"element {x} appears in more than one block")
                seen.add(x)
        if len(seen) != self.n:
            missing = sorted(set(range(1, self.n + 1)) - seen)
            raise ValueError(f"blocks do not cover {{1..{self.n}}}; missing {missing}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def of(cls, *blocks, n: int | None = None) -> "Partition":
        blocks = tuple(tuple(b) for b in blocks)
        if n is None:
            n = max((max(b) for b in blocks if b), default=0)
        return cls(n, blocks)

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(n, tuple((k,) for k in range(1, n + 1)))

    @classmethod
    def full(cls, n: int) -> "Partition":
        return cls(n, (tuple(range(1, n + 1)),))

    @property
    def is_matching(self) -> bool:
        return all(len(b) == 2 for b in self.blocks)

    def block_of(self) -> dict[int, int]:
        """Map element -> index of its block."""
        return {x: i for i, b in enumerate(self.blocks) for x in b}

    def relabel(self, perm: dict[int, int]) -> "Partition":
        return Partition(self.n, tuple(tuple(perm[x] for x in b) for b in self.blocks))

    def __str__(self) -> str:
        return format_partition(self)


def format_partition(p: Partition) -> str:
    return " | ".join(" ".join(str(x) for x in b) for b in p.blocks)


def parse_partition(text: str, n: int | None = None) -> Partition:
    """Parse ``"1 4 | 2 3"``. ``n`` defaults to the largest element."""
    blocks: list[list[int]] = []
    current: list[int] = []
    first_seen: dict[int, int] = {}
    i = 0
    block_start = 0
    while i <= len(text):
        ch = text[i] if i < len(text) else "|"
        if ch == "|":
            if not current:
                raise PartitionSyntaxError("empty block", block_start)
            blocks.append(current)
            current = []
            block_start = i + 1
            i += 1
        elif ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            x = int(text[i:j])
            if x < 1:
                raise PartitionSyntaxError("elements must be positive integers", i)
            if x in first_seen:
                raise PartitionSyntaxError(f"element {x} repeated (first at position {first_seen[x]})", i)
            first_seen[x] = i
            current.append(x)
            i = j
        else:
            raise PartitionSyntaxError(f"unexpected character {ch!r}", i)
    top = max(first_seen)
    if n is None:
        n = top
    elif top > n:
        raise PartitionSyntaxError(f"element {top} exceeds n={n}", first_seen[top])
    missing = sorted(set(range(1, n + 1)) - set(first_seen))
    if missing:
        raise PartitionSyntaxError(f"elements {missing} missing from the partition", len(text))
    return Partition(n, tuple(tuple(b) for b in blocks))


def catalan(m: int) -> int:
    if m < 0:
        raise ValueError("catalan index must be nonnegative")
    return comb(2 * m, m) // (m + 1)


def is_noncrossing(p: Partition) -> bool:
    """True iff no a < b < c < d with a, c in one block and b, d in another."""
    owner = p.block_of()
    # scan left to right with a stack of open blocks: a block may only reappear
    # when it is on top of the stack, otherwise some other open block interleaves
    last = {i: max(b) for i, b in enumerate(p.blocks)}
    stack: list[int] = []
    for x in range(1, p.n + 1):
        blk = owner[x]
        if stack and stack[-1] == blk:
            pass
        elif blk in stack:
            return False
        else:
            stack.append(blk)
        if x == last[blk]:
            stack.pop()
    return True


def _noncrossing_partitions(points: tuple[int, ...]):
    """Yield non-crossing partitions of an ordered tuple of points as block lists.

    The block containing the first point is chosen as a subset S; the gaps
    between consecutive elements of S (and after the last) are partitioned
    independently.
    """
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    k = len(rest)
    # subsets of rest in lexicographic order of their sorted contents
    for mask_members in _subsets_lex(k):
        chosen = [rest[i] for i in mask_members]
        block = (first,) + tuple(chosen)
        gaps = []
        prev = 0
        for i in mask_members:
            gaps.append(rest[prev:i])
            prev = i + 1
        gaps.append(rest[prev:])
        yield from _combine(block, gaps)


def _combine(block, gaps):
    if not gaps:
        yield [block]
        return
    head, tail = gaps[0], gaps[1:]
    for sub in _noncrossing_partitions(tuple(head)):
        for more in _combine(block, tail):
            yield more + sub


def _subsets_lex(k: int):
    def rec(start: int, acc: list[int]):
        yield list(acc)
        for i in range(start, k):
            acc.append(i)
            yield from rec(i + 1, acc)
            acc.pop()

    return rec(0, [])


def _sort_key(p: Partition):
    # canonical blocks are already ordered by their minima
    return p.blocks


@lru_cache(maxsize=None)
def _noncrossing_partitions_cached(n: int) -> tuple[Partition, ...]:
    parts = {Partition(n, tuple(bl)) for bl in _noncrossing_partitions(tuple(range(1, n + 1)))}
    return tuple(sorted(parts, key=_sort_key))


def enumerate_noncrossing_partitions(n: int) -> list[Partition]:
    """All non-crossing partitions of {1..n}, lexicographic in canonical block order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return []
    return list(_noncrossing_partitions_cached(n))


def _matchings(points: tuple[int, ...]):
    if not points:
        yield []
        return
    first = points[0]
    for j in range(1, len(points), 2):
        inside, outside = points[1:j], points[j + 1 :]
        for a in _matchings(inside):
            for b in _matchings(outside):
                yield [(first, points[j])] + a + b


def enumerate_noncrossing_matchings(n: int) -> list[Partition]:
    if n < 0 or n % 2:
        raise ValueError(f"non-crossing matchings need an even number of points, got {n}")
    if n == 0:
        return []
    ms = [Partition(n, tuple(bl)) for bl in _matchings(tuple(range(1, n + 1)))]
    return sorted(ms, key=_sort_key)


def all_partitions(n: int):
    """Every set partition of {1..n} (restricted growth strings)."""

    def rec(k: int, labels: list[int], top: int):
        if k == n:
            blocks: dict[int, list[int]] = {}
            for x, lab in enumerate(labels, start=1):
                blocks.setdefault(lab, []).append(x)
            yield Partition(n, tuple(tuple(b) for b in blocks.values()))
            return
        for lab in range(top + 2):
            labels.append(lab)
            yield from rec(k + 1, labels, max(top, lab))
            labels.pop()

    if n == 0:
        return
    yield from rec(0, [], -1)


def refines(a: Partition, b: Partition) -> bool:
    """True iff every block of ``a`` lies inside a block of ``b``."""
    if a.n != b.n:
        raise ValueError("partitions on different ground sets")
    owner = b.block_of()
    return all(len({owner[x] for x in blk}) == 1 for blk in a.blocks)


def common_coarsening(ps) -> Partition:
    """Finest partition refined by every input (their glb in the subdivision order)."""
    ps = list(ps)
    if not ps:
        raise ValueError("common_coarsening needs at least one partition")
    n = ps[0].n
    if any(p.n != n for p in ps):
        raise ValueError("partitions on different ground sets")
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in ps:
        for blk in p.blocks:
            for x in blk[1:]:
                rx, r0 = find(x), find(blk[0])
                if rx != r0:
                    parent[max(rx, r0)] = min(rx, r0)
    comps: dict[int, list[int]] = {}
    for x in range(1, n + 1):
        comps.setdefault(find(x), []).append(x)
    return Partition(n, tuple(tuple(c) for c in comps.values()))


def glue_matching(m: Partition) -> Partition:
    """Glue points 2j-1 and 2j of a matching on 2n points into vertex j.

    Blocks of the result are the connected components of the chord graph
    once each glued pair is identified.
    """
    if m.n % 2 or not m.is_matching:
        raise ValueError("glue_matching expects a perfect matching on an even number of points")
    n = m.n // 2
    glued = [tuple((x + 1) // 2 for x in chord) for chord in m.blocks]
    return common_coarsening([Partition.singletons(n)] + [_pair_partition(n, a, b) for a, b in glued])


def _pair_partition(n: int, a: int, b: int) -> Partition:
    if a == b:
        return Partition.singletons(n)
    rest = tuple((k,) for k in range(1, n + 1) if k not in (a, b))
    return Partition(n, ((a, b),) + rest)
