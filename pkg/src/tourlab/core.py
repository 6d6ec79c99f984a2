"""Tournament representation, canonical forms, isomorphism, and induced queries.

A tournament on h vertices is an orientation of the complete graph K_h.
It is stored as a bit string of length C(h,2) over the fixed pair order
(1,2),(1,3),...,(1,h),(2,3),...: bit '1' at pair (i,j) with i<j means the
edge is directed i->j, bit '0' means j->i.  Vertices are 1-based in this
documentation and in all serialized formats; the Python API is 0-based.

All values are immutable after construction and safe to share between
concurrent workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable

__all__ = [
    "MAX_VERTICES",
    "Tournament",
    "CanonicalForm",
    "WrongLength",
    "BadCharacter",
    "BadSubset",
    "SizeMismatch",
    "parse",
    "transitive",
    "cyclic3",
    "reverse",
    "canonical_form",
    "aut_size",
    "induced",
    "contains_subtournament",
    "pair_count",
    "pair_index",
]

MAX_VERTICES = 10


class WrongLength(ValueError):
    """Bit string length does not match C(h,2)."""


class BadCharacter(ValueError):
    """Bit string contains a character other than '0' or '1'."""


class BadSubset(ValueError):
    """Vertex subset is empty, out of range, or has repeats."""


class SizeMismatch(ValueError):
    """Pattern tournament is larger than the host."""


def pair_count(h: int) -> int:
    return h * (h - 1) // 2


def pair_index(u: int, v: int, n: int) -> int:
    """Index of the 0-based pair u<v in the fixed lexicographic pair order."""
    return u * (n - 1) - u * (u - 1) // 2 + (v - u - 1)


@dataclass(frozen=True)
class Tournament:
    """An h-vertex tournament as an orientation bit string.

    ``bits[pair_index(u, v, h)] == '1'`` means edge u->v (0-based u < v).
    """

    h: int
    bits: str

    def __post_init__(self) -> None:
        if not 1 <= self.h <= MAX_VERTICES:
            raise WrongLength(f"h={self.h} outside supported range 1..{MAX_VERTICES}")
        if len(self.bits) != pair_count(self.h):
            raise WrongLength(
                f"expected {pair_count(self.h)} bits for h={self.h}, got {len(self.bits)}"
            )
        if self.bits.strip("01"):
            raise BadCharacter(f"orientation bits must be '0'/'1': {self.bits!r}")

    @property
    def m(self) -> int:
        """Number of edges, C(h,2)."""
        return pair_count(self.h)

    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        """Per-vertex bitmask of out-neighbours."""
        masks = [0] * self.h
        k = 0
        for u in range(self.h):
            for v in range(u + 1, self.h):
                if self.bits[k] == "1":
                    masks[u] |= 1 << v
                else:
                    masks[v] |= 1 << u
                k += 1
        return tuple(masks)

    def edge_bit(self, u: int, v: int) -> int:
        """1 if the edge between u<v is directed u->v, else 0."""
        return 1 if self.bits[pair_index(u, v, self.h)] == "1" else 0

    def has_edge(self, u: int, v: int) -> bool:
        """True iff the edge u->v is present (u, v in either order)."""
        return bool((self.out_masks[u] >> v) & 1)

    def out_degrees(self) -> tuple[int, ...]:
        return tuple(mask.bit_count() for mask in self.out_masks)

    def relabel(self, perm: Iterable[int]) -> "Tournament":
        """Apply a relabeling: vertex v is renamed perm[v]."""
        p = tuple(perm)
        if sorted(p) != list(range(self.h)):
            raise ValueError(f"not a permutation of range({self.h}): {p}")
        inv = [0] * self.h
        for v, label in enumerate(p):
            inv[label] = v
        out = []
        for a in range(self.h):
            for b in range(a + 1, self.h):
                out.append("1" if self.has_edge(inv[a], inv[b]) else "0")
        return Tournament(self.h, "".join(out))


@dataclass(frozen=True)
class CanonicalForm:
    """Lexicographically minimal orientation bit string over all relabelings.

    Two tournaments are isomorphic iff their canonical forms are equal, and
    the canon string is itself a valid Tournament encoding.
    """

    h: int
    bits: str

    def tournament(self) -> Tournament:
        return Tournament(self.h, self.bits)

    def __str__(self) -> str:
        return self.bits


def parse(text: str, h: int) -> Tournament:
    """Parse one line of '0'/'1' characters into a Tournament."""
    return Tournament(h, text.strip())


def transitive(h: int) -> Tournament:
    """The transitive tournament: edge i->j for all i<j (all bits 1)."""
    return Tournament(h, "1" * pair_count(h))


def cyclic3() -> Tournament:
    """The directed triangle 1->2->3->1; every vertex has out-degree 1."""
    return Tournament(3, "101")


def reverse(t: Tournament) -> Tournament:
    """Reverse every edge (the converse tournament)."""
    flipped = t.bits.translate(str.maketrans("01", "10"))
    return Tournament(t.h, flipped)


def _canon_search(h: int, out: tuple[int, ...]) -> tuple[int, int]:
    """Branch-and-bound search for the minimal relabeled bit sequence.

    Vertices are assigned to positions 0,1,... one at a time.  Placing a
    vertex fixes its row of the bit sequence: remaining vertices that beat
    it come first (0-bits), then the ones it beats (1-bits), which refines
    the ordered partition of unplaced vertices.  Rows are emitted in
    serialization order, so a partial emission is a true prefix and can be
    pruned against the incumbent.  Returns (canonical bits as an int,
    number of relabelings attaining it) -- the latter is aut(T).
    """
    m = h * (h - 1) // 2
    best: int | None = None
    naut = 0

    def extend(blocks: list[int], prefix: int, length: int, rem: int) -> None:
        nonlocal best, naut
        first = blocks[0]
        rest = blocks[1:]
        width = rem - 1
        cands = []
        f = first
        while f:
            v_bit = f & -f
            f ^= v_bit
            v = v_bit.bit_length() - 1
            ov = out[v]
            row = 0
            new_blocks = []
            for block in (first ^ v_bit, *rest):
                losers = block & ~ov
                winners = block & ov
                nw = winners.bit_count()
                row = (row << (losers.bit_count() + nw)) | ((1 << nw) - 1)
                if losers:
                    new_blocks.append(losers)
                if winners:
                    new_blocks.append(winners)
            cands.append((row, new_blocks))
        cands.sort(key=lambda c: c[0])

        new_length = length + width
        base = prefix << width
        for row, new_blocks in cands:
            value = base | row
            if best is not None and value > best >> (m - new_length):
                break  # rows ascend, so every later candidate prunes too
            if not new_blocks:
                if best is None or value < best:
                    best, naut = value, 1
                elif value == best:
                    naut += 1
            else:
                extend(new_blocks, value, new_length, width)

    full = (1 << h) - 1
    extend([full], 0, 0, h)
    assert best is not None
    return best, naut


@lru_cache(maxsize=1 << 16)
def _canonical_data(h: int, bits: str) -> tuple[str, int]:
    value, naut = _canon_search(h, Tournament(h, bits).out_masks)
    m = pair_count(h)
    canon = format(value, f"0{m}b") if m else ""
    return canon, naut


def canonical_form(t: Tournament) -> CanonicalForm:
    """Canonical form of t; equal canonical forms <=> isomorphic."""
    canon, _ = _canonical_data(t.h, t.bits)
    return CanonicalForm(t.h, canon)


def aut_size(t: Tournament) -> int:
    """Order of the automorphism group of t; divides h!."""
    _, naut = _canonical_data(t.h, t.bits)
    return naut


def _vertex_count(g) -> int:
    return g.h if isinstance(g, Tournament) else g.n


def induced(g, subset: Iterable[int]) -> Tournament:
    """Sub-tournament induced by a vertex subset, renumbered by increasing label.

    Accepts a Tournament or a BigTournament (anything with an ``edge_bit``
    accessor and an ``h``/``n`` vertex count).
    """
    n = _vertex_count(g)
    sub = list(subset)
    verts = sorted(set(sub))
    if not verts:
        raise BadSubset("empty subset")
    if len(verts) != len(sub):
        raise BadSubset(f"subset has repeated vertices: {sub}")
    if verts[0] < 0 or verts[-1] >= n:
        raise BadSubset(f"subset {verts} out of range for {n} vertices")
    bits = []
    for a, b in combinations(verts, 2):
        bits.append("1" if g.edge_bit(a, b) else "0")
    return Tournament(len(verts), "".join(bits))


def contains_subtournament(t: Tournament, pattern: Tournament) -> bool:
    """True iff some vertex subset of t induces a copy of pattern.

    Backtracking injection search: pattern vertices are embedded in index
    order, and each new image must orient consistently against all previous
    images, maintained as candidate bitmasks.
    """
    if pattern.h > t.h:
        raise SizeMismatch(f"pattern on {pattern.h} vertices, host on {t.h}")
    host_out = t.out_masks
    host_in = tuple(~mask & ((1 << t.h) - 1) & ~(1 << v) for v, mask in enumerate(host_out))
    pat_out = pattern.out_masks

    def embed(depth: int, images: list[int], free: int) -> bool:
        if depth == pattern.h:
            return True
        cand = free
        for a in range(depth):
            if (pat_out[a] >> depth) & 1:
                cand &= host_out[images[a]]
            else:
                cand &= host_in[images[a]]
            if not cand:
                return False
        while cand:
            v_bit = cand & -cand
            cand ^= v_bit
            v = v_bit.bit_length() - 1
            images.append(v)
            if embed(depth + 1, images, free ^ v_bit):
                return True
            images.pop()
        return False

    return embed(0, [], (1 << t.h) - 1)
