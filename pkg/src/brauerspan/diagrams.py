"""Pairing diagrams on two rows of vertices: enumeration, counting, text forms.

A (k,l)-Brauer diagram is a perfect matching on l+k vertices, the top row
labelled 1..l left to right and the bottom row l+1..l+k left to right.
A (l+k)\\n-diagram (``GroodDiagram``) is the same picture with exactly n
vertices left unmatched ("free").

Text grammar (used inside spanning-set export files)::

    brauer  :=  "B" k l ":" blocks
    grood   :=  "G" k l n ":" "free=[" v1 "," v2 ... "];" blocks
    blocks  :=  ( "(" a "," b ")" )*          # may be empty

Within each block the smaller label comes first, blocks are sorted by their
first label, and free-vertex lists are ascending; every serialized diagram is
in canonical form.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Union

Block = tuple[int, int]


def double_factorial(m: int) -> int:
    """(m)!! with the convention (-1)!! = 0!! = 1."""
    if m <= 0:
        return 1
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def count_brauer(k: int, l: int) -> int:
    """Number of (k,l)-Brauer diagrams: (l+k-1)!! when l+k is even, else 0."""
    if (l + k) % 2 != 0:
        return 0
    return double_factorial(l + k - 1)


def count_grood(k: int, l: int, n: int) -> int:
    """Number of (l+k)\\n-diagrams: C(l+k, n) * (l+k-n-1)!! when defined, else 0."""
    if n > l + k or (l + k - n) % 2 != 0:
        return 0
    return math.comb(l + k, n) * double_factorial(l + k - n - 1)


def _canonical_blocks(blocks) -> tuple[Block, ...]:
    pairs = tuple(sorted(tuple(sorted(b)) for b in blocks))
    return tuple((a, b) for a, b in pairs)


@dataclass(frozen=True)
class BrauerDiagram:
    """A perfect matching on {1..l+k}; top row 1..l, bottom row l+1..l+k."""

    k: int
    l: int
    blocks: tuple[Block, ...]

    def __post_init__(self):
        total = self.l + self.k
        if self.k < 0 or self.l < 0:
            raise ValueError("k and l must be non-negative")
        if total % 2 != 0:
            raise ValueError(f"no perfect matching on {total} vertices")
        canon = _canonical_blocks(self.blocks)
        object.__setattr__(self, "blocks", canon)
        covered = [v for b in canon for v in b]
        if sorted(covered) != list(range(1, total + 1)):
            raise ValueError("blocks must partition {1..l+k} into pairs")

    def is_top(self, v: int) -> bool:
        return v <= self.l

    def is_cross_row(self, block: Block) -> bool:
        a, b = block
        return self.is_top(a) != self.is_top(b)

    def transposed(self) -> "BrauerDiagram":
        """Exchange the two rows (top vertex t -> bottom slot t, and vice versa)."""
        remap = {}
        for t in range(1, self.l + 1):
            remap[t] = self.k + t
        for r in range(1, self.k + 1):
            remap[self.l + r] = r
        blocks = [(remap[a], remap[b]) for a, b in self.blocks]
        return BrauerDiagram(k=self.l, l=self.k, blocks=_canonical_blocks(blocks))

    def to_text(self) -> str:
        body = "".join(f"({a},{b})" for a, b in self.blocks)
        return f"B {self.k} {self.l} : {body}"

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class GroodDiagram:
    """A partial matching on {1..l+k} with exactly n free (unmatched) vertices."""

    k: int
    l: int
    n: int
    free_top: tuple[int, ...]
    free_bottom: tuple[int, ...]
    blocks: tuple[Block, ...]

    def __post_init__(self):
        total = self.l + self.k
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.n > total or (total - self.n) % 2 != 0:
            raise ValueError(f"no (l+k)\\n-diagram for k={self.k}, l={self.l}, n={self.n}")
        free_top = tuple(sorted(self.free_top))
        free_bottom = tuple(sorted(self.free_bottom))
        object.__setattr__(self, "free_top", free_top)
        object.__setattr__(self, "free_bottom", free_bottom)
        canon = _canonical_blocks(self.blocks)
        object.__setattr__(self, "blocks", canon)
        if len(free_top) + len(free_bottom) != self.n:
            raise ValueError("free vertex count must equal n")
        if any(not (1 <= v <= self.l) for v in free_top):
            raise ValueError("free_top labels must lie in the top row")
        if any(not (self.l < v <= total) for v in free_bottom):
            raise ValueError("free_bottom labels must lie in the bottom row")
        covered = sorted([v for b in canon for v in b] + list(free_top) + list(free_bottom))
        if covered != list(range(1, total + 1)):
            raise ValueError("free vertices and blocks must cover {1..l+k} exactly once")

    @property
    def free(self) -> tuple[int, ...]:
        return self.free_top + self.free_bottom

    def is_top(self, v: int) -> bool:
        return v <= self.l

    def to_text(self) -> str:
        free = ",".join(str(v) for v in self.free)
        body = "".join(f"({a},{b})" for a, b in self.blocks)
        return f"G {self.k} {self.l} {self.n} : free=[{free}];{body}"

    def __str__(self) -> str:
        return self.to_text()


Diagram = Union[BrauerDiagram, GroodDiagram]


def _matchings(vertices: tuple[int, ...]) -> Iterator[tuple[Block, ...]]:
    """All perfect matchings of the given sorted labels, in canonical order.

    Pairing the smallest unmatched vertex first yields block lists that are
    already canonical and appear in lexicographic order, so no sort pass is
    needed afterwards.
    """
    if not vertices:
        yield ()
        return
    first, rest = vertices[0], vertices[1:]
    for i, partner in enumerate(rest):
        remaining = rest[:i] + rest[i + 1:]
        for tail in _matchings(remaining):
            yield ((first, partner),) + tail


def enumerate_brauer(k: int, l: int) -> list[BrauerDiagram]:
    """All (k,l)-Brauer diagrams in canonical (lexicographic) order."""
    if k < 0 or l < 0:
        raise ValueError("k and l must be non-negative")
    if (l + k) % 2 != 0:
        return []
    vertices = tuple(range(1, l + k + 1))
    return [BrauerDiagram(k=k, l=l, blocks=m) for m in _matchings(vertices)]


def enumerate_grood(k: int, l: int, n: int) -> list[GroodDiagram]:
    """All (l+k)\\n-diagrams, ordered by (free-vertex set, block list)."""
    if n < 1:
        raise ValueError("n must be positive")
    total = l + k
    if n > total or (total - n) % 2 != 0:
        return []
    out = []
    for free in combinations(range(1, total + 1), n):
        free_top = tuple(v for v in free if v <= l)
        free_bottom = tuple(v for v in free if v > l)
        rest = tuple(v for v in range(1, total + 1) if v not in free)
        for blocks in _matchings(rest):
            out.append(GroodDiagram(k=k, l=l, n=n, free_top=free_top,
                                    free_bottom=free_bottom, blocks=blocks))
    return out


_BRAUER_RE = re.compile(r"^B\s+(\d+)\s+(\d+)\s*:\s*((?:\(\d+,\d+\))*)$")
_GROOD_RE = re.compile(r"^G\s+(\d+)\s+(\d+)\s+(\d+)\s*:\s*free=\[([\d,]*)\];((?:\(\d+,\d+\))*)$")
_PAIR_RE = re.compile(r"\((\d+),(\d+)\)")


def _parse_blocks(body: str) -> tuple[Block, ...]:
    return tuple((int(a), int(b)) for a, b in _PAIR_RE.findall(body))


def parse_diagram(text: str) -> Diagram:
    """Parse the text form produced by ``to_text`` back into a diagram."""
    text = text.strip()
    m = _BRAUER_RE.match(text)
    if m:
        k, l = int(m.group(1)), int(m.group(2))
        return BrauerDiagram(k=k, l=l, blocks=_parse_blocks(m.group(3)))
    m = _GROOD_RE.match(text)
    if m:
        k, l, n = int(m.group(1)), int(m.group(2)), int(m.group(3))
        free = tuple(int(v) for v in m.group(4).split(",") if v)
        free_top = tuple(v for v in free if v <= l)
        free_bottom = tuple(v for v in free if v > l)
        return GroodDiagram(k=k, l=l, n=n, free_top=free_top,
                            free_bottom=free_bottom, blocks=_parse_blocks(m.group(5)))
    raise ValueError(f"not a valid diagram string: {text!r}")
