"""Deterministic partial automata over the generators, all states final.

Shadow automata have elements as states, with transitions through the
shadow projection; canonical automata have n-small inversion sets as
states.  Minimization completes with a sink, runs Moore partition
refinement, and reports sizes on the trim partial automaton (the sink is
excluded, matching how state counts are quoted for these languages).
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .elements import Element, identity, mult_left
from .errors import InternalInvariant
from .garside import Shadow, VerdictStatus, project, verify_shadow
from .smallroots import SmallRootTable
from .system import CoxeterSystem


@dataclass
class Automaton:
    """Trim deterministic partial automaton; every state is accepting."""

    letter_labels: tuple[str, ...]
    payloads: list
    initial: int
    delta: list[tuple[int, ...]]  # -1 marks a missing transition
    kind: str = "automaton"
    state_map: tuple[int, ...] | None = None  # set by minimize()

    @property
    def alphabet_size(self) -> int:
        return len(self.letter_labels)

    @property
    def num_states(self) -> int:
        return len(self.delta)

    def transitions(self):
        for q, row in enumerate(self.delta):
            for a, q2 in enumerate(row):
                if q2 >= 0:
                    yield q, a, q2

    def num_transitions(self) -> int:
        return sum(1 for _ in self.transitions())

    def step(self, state: int, letter: int) -> int:
        return self.delta[state][letter]

    def read(self, word: Iterable[int]) -> int | None:
        q = self.initial
        for a in word:
            q = self.delta[q][a]
            if q < 0:
                return None
        return q

    def accepts(self, word: Iterable[int]) -> bool:
        return self.read(word) is not None

    def count_accepted(self, length: int) -> int:
        return self.counts_by_length(length)[length]

    def counts_by_length(self, max_length: int) -> list[int]:
        """Number of accepted words per length, by exact integer DP."""
        counts = [0] * self.num_states
        counts[self.initial] = 1
        out = [1]
        for _ in range(max_length):
            nxt = [0] * self.num_states
            for q, c in enumerate(counts):
                if c:
                    for q2 in self.delta[q]:
                        if q2 >= 0:
                            nxt[q2] += c
            counts = nxt
            out.append(sum(counts))
        return out

    def accepted_words(self, max_length: int) -> set[tuple[int, ...]]:
        out: set[tuple[int, ...]] = set()
        frontier = [((), self.initial)]
        out.add(())
        for _ in range(max_length):
            nxt = []
            for word, q in frontier:
                for a, q2 in enumerate(self.delta[q]):
                    if q2 >= 0:
                        w2 = word + (a,)
                        out.add(w2)
                        nxt.append((w2, q2))
            frontier = nxt
        return out

    def payload_label(self, q: int) -> str:
        p = self.payloads[q]
        if p is None:
            return f"q{q}"
        if isinstance(p, Element):
            return str(p)
        if isinstance(p, tuple):
            return "{" + ",".join(str(i) for i in p) + "}"
        return str(p)

    def to_dot(self, name: str = "automaton") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;",
                 '  __start [shape=none, label=""];']
        for q in range(self.num_states):
            lines.append(f'  q{q} [shape=circle, label="{self.payload_label(q)}"];')
        lines.append(f"  __start -> q{self.initial};")
        for q, a, q2 in self.transitions():
            lines.append(f'  q{q} -> q{q2} [label="{self.letter_labels[a]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _default_labels(sys: CoxeterSystem) -> tuple[str, ...]:
    return tuple(str(s + 1) for s in range(sys.rank))


# ---------------------------------------------------------------------------
# Builders

def build_shadow_automaton(shadow: Shadow, *, assume_verified: bool = False,
                           cap: int | None = None) -> Automaton:
    """States are the shadow's elements; x goes via s to pi_B(s x)."""
    if not assume_verified:
        verdict = verify_shadow(shadow, cap=cap)
        if verdict.status is VerdictStatus.NOT_SHADOW:
            from .errors import ShadowViolation
            raise ShadowViolation(f"not a Garside shadow: {verdict.reason}")
        if verdict.status is VerdictStatus.INDETERMINATE_AT_CAP:
            from .errors import CapIndeterminate
            raise CapIndeterminate(
                "shadow could not be verified within the join cap", verdict.cap)
    sys = shadow.system
    index = {el.inv: i for i, el in enumerate(shadow.elements)}
    delta = []
    for el in shadow.elements:
        row = [-1] * sys.rank
        for s in range(sys.rank):
            if s in el.inv:
                continue
            target = project(shadow, mult_left(s, el))
            row[s] = index[target.inv]
        delta.append(tuple(row))
    initial = index[frozenset()]
    return Automaton(letter_labels=_default_labels(sys),
                     payloads=list(shadow.elements), initial=initial,
                     delta=delta, kind="shadow")


def build_canonical_automaton(sys: CoxeterSystem, table: SmallRootTable,
                              *, with_witness: bool = False
                              ) -> tuple[Automaton, list[Element] | None]:
    """The n-canonical automaton: states are reachable n-small inversion sets.

    Transition by s is defined iff a_s is not in the state, and sends A to
    {a_s} union (s(A) restricted to the table).  States are explored from
    the empty set; optionally a witness element reaching each state is kept.
    """
    if table.system is not sys:
        raise ValueError("table from a different system")
    nodes = table.nodes
    rank = sys.rank
    # per-letter images of each node as bitmasks; None for exits
    image_bit: list[list[int | None]] = []
    for node in nodes:
        row: list[int | None] = []
        for s in range(rank):
            th = node.theta[s]
            row.append(1 << th if th >= 0 else None)
        image_bit.append(row)

    state_ids: dict[int, int] = {0: 0}
    masks: list[int] = [0]
    witnesses: list[Element] | None = [identity(sys)] if with_witness else None
    delta_rows: list[list[int]] = [[-1] * rank]
    frontier = [0]
    while frontier:
        nxt = []
        for q in frontier:
            mask = masks[q]
            members = _mask_bits(mask)
            for s in range(rank):
                if mask >> s & 1:
                    continue
                new_mask = 1 << s
                ok = True
                for nid in members:
                    img = image_bit[nid][s]
                    if img is not None:
                        new_mask |= img
                target = state_ids.get(new_mask)
                if target is None:
                    target = len(masks)
                    state_ids[new_mask] = target
                    masks.append(new_mask)
                    delta_rows.append([-1] * rank)
                    if witnesses is not None:
                        witnesses.append(mult_left(s, witnesses[q]))
                    nxt.append(target)
                delta_rows[q][s] = target
        frontier = nxt
    payloads = [tuple(_mask_bits(m)) for m in masks]
    auto = Automaton(letter_labels=_default_labels(sys), payloads=payloads,
                     initial=0, delta=[tuple(r) for r in delta_rows],
                     kind=f"canonical-{table.level}")
    return auto, witnesses


def _mask_bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


# ---------------------------------------------------------------------------
# Minimization

def minimize(auto: Automaton) -> Automaton:
    """Moore partition refinement over the sink-completed automaton.

    The returned automaton is trim and excludes the sink; its ``state_map``
    attribute sends each original state to its class in the result.
    """
    n = auto.num_states
    k = auto.alphabet_size
    sink = n
    delta = [tuple(q2 if q2 >= 0 else sink for q2 in row) for row in auto.delta]
    delta.append(tuple(sink for _ in range(k)))
    # all real states are final, the sink is not
    cls = [0] * n + [1]
    num_classes = 2
    while True:
        signatures: dict[tuple, int] = {}
        new_cls = [0] * (n + 1)
        for q in range(n + 1):
            sig = (cls[q],) + tuple(cls[t] for t in delta[q])
            nid = signatures.get(sig)
            if nid is None:
                nid = len(signatures)
                signatures[sig] = nid
            new_cls[q] = nid
        if len(signatures) == num_classes:
            cls = new_cls
            break
        num_classes = len(signatures)
        cls = new_cls

    sink_cls = cls[sink]
    # deterministic numbering: BFS over classes from the initial class
    class_delta: dict[int, list[int]] = {}
    for q in range(n):
        c = cls[q]
        if c not in class_delta:
            class_delta[c] = [cls[t] for t in delta[q]]
    order: dict[int, int] = {}
    queue = deque([cls[auto.initial]])
    order[cls[auto.initial]] = 0
    while queue:
        c = queue.popleft()
        for t in class_delta[c]:
            if t != sink_cls and t not in order:
                order[t] = len(order)
                queue.append(t)
    new_delta = []
    for c, pos in sorted(order.items(), key=lambda kv: kv[1]):
        row = [order[t] if t != sink_cls else -1 for t in class_delta[c]]
        new_delta.append(tuple(row))
    state_map = tuple(order[cls[q]] for q in range(n))
    result = Automaton(letter_labels=auto.letter_labels,
                       payloads=[None] * len(order), initial=0,
                       delta=new_delta, kind="minimal",
                       state_map=state_map)
    return result


# ---------------------------------------------------------------------------
# Morphisms and isomorphism

class MorphismVerdict(enum.Enum):
    NOT_MORPHISM = "not-a-morphism"
    MORPHISM = "morphism"
    TOTALLY_SURJECTIVE = "totally-surjective"


@dataclass(frozen=True)
class MorphismReport:
    verdict: MorphismVerdict
    witness: tuple | None = None


def check_morphism(f: Sequence[int], source: Automaton,
                   target: Automaton) -> MorphismReport:
    """Classify a state map as not a morphism, a morphism, or totally surjective.

    All states are final on both sides, so finality conditions reduce to
    surjectivity bookkeeping; edge preservation and edge lifting are
    checked explicitly and the strongest verified class is returned.
    """
    if len(f) != source.num_states:
        return MorphismReport(MorphismVerdict.NOT_MORPHISM, ("domain", len(f)))
    if source.alphabet_size != target.alphabet_size:
        return MorphismReport(MorphismVerdict.NOT_MORPHISM, ("alphabet",))
    if f[source.initial] != target.initial:
        return MorphismReport(MorphismVerdict.NOT_MORPHISM,
                              ("initial", f[source.initial]))
    for q, a, q2 in source.transitions():
        img = target.delta[f[q]][a]
        if img < 0 or img != f[q2]:
            return MorphismReport(MorphismVerdict.NOT_MORPHISM, ("edge", q, a))
    if set(f) != set(range(target.num_states)):
        return MorphismReport(MorphismVerdict.MORPHISM)
    preimages: dict[int, list[int]] = {}
    for q, fq in enumerate(f):
        preimages.setdefault(fq, []).append(q)
    for q1t, a, q2t in target.transitions():
        if not any(source.delta[q][a] >= 0 and f[source.delta[q][a]] == q2t
                   for q in preimages[q1t]):
            return MorphismReport(MorphismVerdict.MORPHISM)
    return MorphismReport(MorphismVerdict.TOTALLY_SURJECTIVE)


def isomorphic(a: Automaton, b: Automaton) -> bool:
    """Label-respecting isomorphism; deterministic automata admit at most
    one candidate map, found by parallel BFS from the initial states."""
    if a.num_states != b.num_states or a.alphabet_size != b.alphabet_size:
        return False
    mapping = {a.initial: b.initial}
    queue = deque([(a.initial, b.initial)])
    while queue:
        qa, qb = queue.popleft()
        for letter in range(a.alphabet_size):
            ta, tb = a.delta[qa][letter], b.delta[qb][letter]
            if (ta < 0) != (tb < 0):
                return False
            if ta < 0:
                continue
            seen = mapping.get(ta)
            if seen is None:
                mapping[ta] = tb
                queue.append((ta, tb))
            elif seen != tb:
                return False
    if len(mapping) != a.num_states or len(set(mapping.values())) != b.num_states:
        return False
    return True


def shortest_words(auto: Automaton) -> list[tuple[int, ...]]:
    """A shortest reading word per state, BFS with letters in order."""
    words: list[tuple[int, ...] | None] = [None] * auto.num_states
    words[auto.initial] = ()
    queue = deque([auto.initial])
    while queue:
        q = queue.popleft()
        for a in range(auto.alphabet_size):
            t = auto.delta[q][a]
            if t >= 0 and words[t] is None:
                words[t] = words[q] + (a,)
                queue.append(t)
    if any(w is None for w in words):
        raise InternalInvariant("automaton is not trim")
    return words  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# Alphabet restriction

def restrict_letters(auto: Automaton, letters: Sequence[int], *,
                     trim: bool = True) -> Automaton:
    """Keep only the given letters (relabelled in their sorted order).

    With trim=True, also keep only the states reachable from the initial
    one; with trim=False, all states survive, as in the letter-restricted
    automaton used for parabolic projections.
    """
    letters = sorted(letters)
    labels = tuple(auto.letter_labels[a] for a in letters)
    if trim:
        keep = []
        seen = {auto.initial}
        queue = deque([auto.initial])
        while queue:
            q = queue.popleft()
            keep.append(q)
            for a in letters:
                t = auto.delta[q][a]
                if t >= 0 and t not in seen:
                    seen.add(t)
                    queue.append(t)
        renum = {q: i for i, q in enumerate(keep)}
        delta = [tuple(renum[auto.delta[q][a]]
                       if auto.delta[q][a] in renum and auto.delta[q][a] >= 0 else -1
                       for a in letters) for q in keep]
        payloads = [auto.payloads[q] for q in keep]
        return Automaton(letter_labels=labels, payloads=payloads,
                         initial=renum[auto.initial], delta=delta,
                         kind=auto.kind + "-restricted")
    delta = [tuple(auto.delta[q][a] for a in letters)
             for q in range(auto.num_states)]
    return Automaton(letter_labels=labels, payloads=list(auto.payloads),
                     initial=auto.initial, delta=delta,
                     kind=auto.kind + "-letters")
