"""Random story/graph generators and independent oracles for tests.

Oracles here are deliberately separate from the implementations they
check: the cycle checker is a plain recursive DFS, reachability is a
plain BFS, and token streams are rebuilt by hand where needed.
"""

from __future__ import annotations

import random

from saga.ast import Label, SectionDecl, StoryAst, TransitionDecl

WORDS = [
    "dawn", "dusk", "storm", "ember", "tide", "won't", "hollow", "gate",
    "ash", "vow", "north", "deep",
]


def random_label(rng: random.Random, max_words=3) -> Label:
    count = rng.randint(1, max_words)
    return Label(tuple(rng.choice(WORDS) for _ in range(count)))


def random_dag_edges(rng: random.Random, n: int, extra=0.3) -> list[tuple[int, int]]:
    """Forward-only edge insertion: acyclic by construction."""
    edges = []
    for j in range(1, n):
        i = rng.randrange(j)
        edges.append((i, j))
    for _ in range(int(n * extra)):
        j = rng.randrange(1, n)
        i = rng.randrange(j)
        if (i, j) not in edges:
            edges.append((i, j))
    return edges


def dfs_has_cycle(n: int, edges: list[tuple[int, int]]) -> bool:
    """Independent cycle oracle: recursive three-color DFS."""
    succ = [[] for _ in range(n)]
    for a, b in edges:
        succ[a].append(b)
    state = [0] * n  # 0 unseen, 1 on stack, 2 done

    def visit(node) -> bool:
        state[node] = 1
        for nxt in succ[node]:
            if state[nxt] == 1:
                return True
            if state[nxt] == 0 and visit(nxt):
                return True
        state[node] = 2
        return False

    return any(state[i] == 0 and visit(i) for i in range(n))


def bfs_reachable(n: int, edges: list[tuple[int, int]], start: int) -> set[int]:
    succ = [[] for _ in range(n)]
    for a, b in edges:
        succ[a].append(b)
    seen = {start}
    queue = [start]
    while queue:
        node = queue.pop(0)
        for nxt in succ[node]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def random_story_ast(rng: random.Random, max_sections=3, max_nodes=8) -> StoryAst:
    """A structurally valid random story: forward-only edges over a global
    node numbering, split into contiguous sections, with cross-section
    edges in the WHERE list."""
    n = rng.randint(2, max_nodes)
    # every section gets at least 2 nodes so each can host an internal edge
    section_count = rng.randint(1, max(1, min(max_sections, n // 2)))
    labels = []
    seen = set()
    while len(labels) < n:
        lab = Label((f"n{len(labels)}",) + random_label(rng, 2).words)
        if lab.canonical not in seen:
            seen.add(lab.canonical)
            labels.append(lab)

    # contiguous partition into sections
    if section_count > 1:
        candidates = list(range(2, n - 1, 2))
        bounds = sorted(rng.sample(candidates, section_count - 1))
    else:
        bounds = []
    starts = [0] + bounds
    ends = bounds + [n]
    owner = [0] * n
    for s, (a, b) in enumerate(zip(starts, ends)):
        for i in range(a, b):
            owner[i] = s

    edges = random_dag_edges(rng, n)
    internal = [[] for _ in range(section_count)]
    cross = []
    for i, j in edges:
        if owner[i] == owner[j]:
            internal[owner[i]].append((i, j))
        else:
            cross.append((i, j))

    # every node must be mentioned by its own section's transitions,
    # otherwise WHERE endpoints would dangle
    for s, (a, b) in enumerate(zip(starts, ends)):
        mentioned = {x for e in internal[s] for x in e}
        for k in range(a, b):
            if k not in mentioned:
                edge = (a, k) if k > a else (a, a + 1)
                internal[s].append(edge)
                mentioned.update(edge)

    def make_events(rng):
        count = rng.randint(1, 2)
        out = []
        for _ in range(count):
            lab = Label((rng.choice(("e1", "e2", "e3")),))
            if lab not in out:
                out.append(lab)
        return tuple(out)

    sections = []
    for s in range(section_count):
        decls = tuple(
            TransitionDecl((labels[i],), labels[j], make_events(rng))
            for i, j in internal[s]
        )
        sections.append(SectionDecl(Label((f"Sect{s}", "part")), decls))

    where = tuple(
        TransitionDecl((labels[i],), labels[j], make_events(rng)) for i, j in cross
    )
    initial_candidates = sorted({i for s in range(section_count) for i, _ in internal[s]})
    initial = labels[rng.choice(initial_candidates)]
    return StoryAst(Label(("Random", "Tale")), initial, tuple(sections), where)


def random_or_story_pair(rng: random.Random, max_nodes=5):
    """One-section story with OR groups, plus its hand-expanded twin."""
    n = rng.randint(3, max_nodes)
    labels = [Label((f"n{i}",)) for i in range(n)]
    events = [Label((e,)) for e in ("e1", "e2", "e3")]

    expanded: list[TransitionDecl] = []
    grouped: list[TransitionDecl] = []
    for j in range(1, n):
        srcs = sorted(rng.sample(range(j), rng.randint(1, min(2, j))))
        evts = tuple(
            sorted(
                {rng.choice(events) for _ in range(rng.randint(1, 2))},
                key=lambda l: l.canonical,
            )
        )
        grouped.append(
            TransitionDecl(tuple(labels[s] for s in srcs), labels[j], evts)
        )
        for s in srcs:
            expanded.append(TransitionDecl((labels[s],), labels[j], evts))

    def story(decls):
        return StoryAst(
            Label(("Pair",)),
            labels[0],
            (SectionDecl(Label(("Only",)), tuple(decls)),),
            (),
        )

    used = sorted({e.canonical for t in grouped for e in t.events})
    return story(grouped), story(expanded), used


def all_event_sequences(alphabet: list[str], max_len: int):
    from itertools import product

    for length in range(max_len + 1):
        yield from product(alphabet, repeat=length)
