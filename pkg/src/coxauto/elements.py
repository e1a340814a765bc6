"""Group elements as reduced words with left inversion sets.

An :class:`Element` stores one reduced word together with the left inversion
set N(w) as a frozenset of interned root ids.  Two elements are equal iff
their inversion sets are equal, which is representation independent; the
stored word is *a* reduced word, not a canonical one.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from .errors import InternalInvariant
from .system import CoxeterSystem


class Element:
    """An element of a Coxeter group, keyed by its left inversion set."""

    __slots__ = ("system", "word", "inv", "_hash")

    def __init__(self, system: CoxeterSystem, word: tuple[int, ...],
                 inv: frozenset[int]):
        if len(word) != len(inv):
            raise InternalInvariant("word length differs from inversion count")
        self.system = system
        self.word = word
        self.inv = inv
        self._hash: int | None = None

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def descents_left(self) -> frozenset[int]:
        """D_L(w) = {s : a_s in N(w)}; simple root ids equal generator ids."""
        return self.inv & self.system.simple_ids

    def is_identity(self) -> bool:
        return not self.word

    def __eq__(self, other) -> bool:
        return (isinstance(other, Element)
                and self.system is other.system and self.inv == other.inv)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.inv)
        return self._hash

    def __repr__(self) -> str:
        return f"<{self.system.word_to_string(self.word)}>"

    def __str__(self) -> str:
        return self.system.word_to_string(self.word)


def identity(system: CoxeterSystem) -> Element:
    return Element(system, (), frozenset())


def generator(system: CoxeterSystem, s: int) -> Element:
    return Element(system, (s,), frozenset((s,)))


def mult_left(s: int, w: Element) -> Element:
    """s * w, with the inversion set updated incrementally.

    Ascent: N(sw) = {a_s} union s(N(w)).  Descent: N(sw) = s(N(w) - {a_s})
    and the word loses its unique exchange-located letter.
    """
    sys = w.system
    if s not in w.inv:
        new_inv = {s}
        for rid in w.inv:
            sg, rid2 = sys.reflect_id(s, rid)
            if sg < 0:
                raise InternalInvariant("unexpected sign flip on ascent")
            new_inv.add(rid2)
        return Element(sys, (s,) + w.word, frozenset(new_inv))
    new_inv = set()
    for rid in w.inv:
        if rid != s:
            sg, rid2 = sys.reflect_id(s, rid)
            if sg < 0:
                raise InternalInvariant("unexpected sign flip on descent")
            new_inv.add(rid2)
    # Exchange: drop letter j with r_1...r_{j-1}(a_{r_j}) = a_s, i.e. the
    # first j where the backward-transported a_s meets the letter's root.
    v = s
    for j, letter in enumerate(w.word):
        if v == letter:
            return Element(sys, w.word[:j] + w.word[j + 1:], frozenset(new_inv))
        sg, v = sys.reflect_id(letter, v)
        if sg < 0:
            raise InternalInvariant("transported root went negative early")
    raise InternalInvariant("exchange letter not found on descent")


def mult_right(w: Element, s: int) -> Element:
    """w * s; ascent iff w(a_s) is positive, which also gives the new root."""
    sys = w.system
    sign, rid = sys.act_word_on_root(w.word, 1, s)
    if sign > 0:
        return Element(sys, w.word + (s,), w.inv | {rid})
    new_inv = w.inv - {rid}
    v = s
    for j in range(len(w.word) - 1, -1, -1):
        letter = w.word[j]
        if v == letter:
            return Element(sys, w.word[:j] + w.word[j + 1:], new_inv)
        sg, v = sys.reflect_id(letter, v)
        if sg < 0:
            raise InternalInvariant("transported root went negative early")
    raise InternalInvariant("exchange letter not found on descent")


def right_ascents(w: Element) -> list[int]:
    sys = w.system
    out = []
    for s in range(sys.rank):
        sign, _ = sys.act_word_on_root(w.word, 1, s)
        if sign > 0:
            out.append(s)
    return out


def from_word(system: CoxeterSystem, word: Iterable[int]) -> Element:
    """Product of the letters, left to right; the word need not be reduced."""
    w = identity(system)
    for s in word:
        w = mult_right(w, s)
    return w


def is_reduced_word(system: CoxeterSystem, word: Sequence[int]) -> bool:
    """True iff every left-to-right prefix step strictly increases length."""
    w = identity(system)
    for s in word:
        sign, rid = system.act_word_on_root(w.word, 1, s)
        if sign < 0:
            return False
        w = Element(system, w.word + (s,), w.inv | {rid})
    return True


def weak_leq(u: Element, w: Element) -> bool:
    """u <=_R w, decided by inclusion of inversion sets."""
    if u.system is not w.system:
        raise ValueError("elements from different systems")
    return u.inv <= w.inv


def inverse(w: Element) -> Element:
    return from_word(w.system, tuple(reversed(w.word)))


def prefixes(w: Element) -> set[Element]:
    """All p <=_R w: the downward closure under removing a right descent."""
    seen: dict[frozenset[int], Element] = {w.inv: w}
    queue = deque([w])
    while queue:
        x = queue.popleft()
        for s in set(x.word):
            sign, _ = x.system.act_word_on_root(x.word, 1, s)
            if sign < 0:
                p = mult_right(x, s)
                if p.inv not in seen:
                    seen[p.inv] = p
                    queue.append(p)
    return set(seen.values())


def suffixes(w: Element) -> set[Element]:
    """All suffixes: the closure of {w} under w -> sw for s in D_L(w)."""
    seen: dict[frozenset[int], Element] = {w.inv: w}
    queue = deque([w])
    while queue:
        x = queue.popleft()
        for s in x.descents_left:
            v = mult_left(s, x)
            if v.inv not in seen:
                seen[v.inv] = v
                queue.append(v)
    return set(seen.values())


def coset_split(w: Element, subset: Iterable[int]) -> tuple[Element, Element]:
    """The unique decomposition w = w_I * w^I with w_I in W_I, w^I in X_I."""
    members = set(subset)
    rest = w
    left = identity(w.system)
    while True:
        ds = rest.descents_left & members
        if not ds:
            return left, rest
        s = min(ds)
        rest = mult_left(s, rest)
        nxt = mult_right(left, s)
        if nxt.length != left.length + 1:
            raise InternalInvariant("coset prefix stopped being reduced")
        left = nxt


def support(w: Element) -> frozenset[int]:
    """Letters occurring in any reduced word of w (well-defined)."""
    return frozenset(w.word)


def ball(system: CoxeterSystem, radius: int) -> list[Element]:
    """All elements of length <= radius, BFS by length, deduplicated."""
    out = [identity(system)]
    seen = {frozenset()}
    frontier = [out[0]]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for s in range(system.rank):
                sign, rid = system.act_word_on_root(w.word, 1, s)
                if sign > 0:
                    inv = w.inv | {rid}
                    if inv not in seen:
                        seen.add(inv)
                        ws = Element(system, w.word + (s,), inv)
                        nxt.append(ws)
        out.extend(nxt)
        frontier = nxt
        if not frontier:
            break
    return out


def reduced_word_counts(system: CoxeterSystem, max_length: int) -> list[int]:
    """Number of reduced words per length 0..max_length, by brute force.

    Walks the tree of reduced words directly (reduced words are closed
    under prefixes), independent of any automaton.
    """
    counts = [1] + [0] * max_length
    frontier = [identity(system)]
    for k in range(1, max_length + 1):
        nxt = []
        for w in frontier:
            for s in range(system.rank):
                sign, rid = system.act_word_on_root(w.word, 1, s)
                if sign > 0:
                    nxt.append(Element(system, w.word + (s,), w.inv | {rid}))
        counts[k] = len(nxt)
        frontier = nxt
    return counts


def recompute_inversions(w: Element) -> frozenset[int]:
    """N(w) from scratch by transporting each letter's root to the front.

    Independent of the incremental updates; used as a cross-check.
    """
    sys = w.system
    roots = set()
    for j, letter in enumerate(w.word):
        sign, rid = sys.act_word_on_root(w.word[:j], 1, letter)
        if sign < 0:
            raise InternalInvariant("word is not reduced")
        roots.add(rid)
    return frozenset(roots)
