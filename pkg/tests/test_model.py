import random

import pytest

from saga.ast import Label, SectionDecl, StoryAst, TransitionDecl
from saga.model import (
    CycleError,
    NodeTransition,
    SectionTransition,
    StoryGraph,
    Section,
    StoryTransition,
    desugar_or,
    reachability_report,
    resolve,
    validate_dag,
)
from saga.parser import parse_text

from .generators import (
    bfs_reachable,
    dfs_has_cycle,
    random_dag_edges,
    random_story_ast,
)


def story(body: str) -> StoryAst:
    return parse_text("STORY T\n" + body)


def codes(diags):
    return [d.code for d in diags]


class TestDesugarOr:
    def test_single_source_is_identity(self):
        decl = TransitionDecl((Label.of("a"),), Label.of("b"), (Label.of("e"),))
        assert desugar_or(decl) == [decl]

    def test_one_transition_per_source(self):
        decl = TransitionDecl(
            (Label.of("a"), Label.of("b c")), Label.of("d"), (Label.of("e"),)
        )
        out = desugar_or(decl)
        assert [t.pre_nodes for t in out] == [(Label.of("a"),), (Label.of("b c"),)]
        assert all(t.dest == decl.dest and t.events == decl.events for t in out)


class TestTransitionInvariants:
    def test_self_loop_rejected(self):
        with pytest.raises(ValueError):
            NodeTransition(1, 1, (0,))

    def test_events_required(self):
        with pytest.raises(ValueError):
            NodeTransition(0, 1, ())

    def test_duplicate_events_collapse_during_resolve(self):
        ast = story(
            "INITIAL a\nSECTION s {\n    a GOES b WHEN e AND f AND e\n}\nWHERE"
        )
        graph = resolve(ast).graph
        (t,) = graph.sections[0].transitions
        assert [graph.event_label(e).canonical for e in t.events] == ["e", "f"]


class TestResolve:
    def test_sample_story(self, sample_graph):
        g = sample_graph
        assert g.name == Label.of("Sealed Fate")
        assert g.node_label(g.initial) == Label.of("Dark Beginning")
        assert [s.name.canonical for s in g.sections] == [
            "The Path of Evil",
            "Fate Decides",
        ]
        assert len(g.section_transitions) == 1

    def test_sample_fate_decides_nodes(self, sample_graph):
        fate = sample_graph.sections[1]
        assert [sample_graph.node_label(n).canonical for n in fate.nodes] == [
            "Good Won't Save You",
            "Winding Down",
            "Final Choice",
            "Battle",
            "Can't Escape",
        ]

    def test_node_ownership_is_first_mentioning_section(self, sample_graph):
        g = sample_graph
        betrayal = next(
            n for n in range(g.node_count)
            if g.node_label(n).canonical == "Betrayal"
        )
        assert g.section_of(betrayal).name == Label.of("The Path of Evil")

    def test_or_transition_desugared_in_graph(self, sample_graph):
        g = sample_graph
        merged = [
            t
            for t in g.sections[0].transitions
            if g.node_label(t.dst).canonical == "Point of No Return"
        ]
        assert len(merged) == 2

    def test_transitions_in_order_is_declaration_order(self, sample_graph):
        g = sample_graph
        order = g.transitions_in_order()
        assert order[: len(g.sections[0].transitions)] == list(
            g.sections[0].transitions
        )
        assert order[-1] == g.section_transitions[0]

    def test_duplicate_section_name_is_error(self):
        r = resolve(
            story(
                "INITIAL a\nSECTION s {\n    a GOES b WHEN e\n}\n"
                "SECTION s {\n    c GOES d WHEN e\n}\nWHERE"
            )
        )
        assert not r.ok and "duplicate-section-name" in codes(r.diagnostics)

    def test_node_in_multiple_sections_is_error(self):
        r = resolve(
            story(
                "INITIAL a\nSECTION s {\n    a GOES b WHEN e\n}\n"
                "SECTION t {\n    b GOES c WHEN e\n}\nWHERE"
            )
        )
        assert not r.ok and "node-in-multiple-sections" in codes(r.diagnostics)

    def test_self_loop_is_error(self):
        r = resolve(story("INITIAL a\nSECTION s {\n    a GOES a WHEN e\n}\nWHERE"))
        assert not r.ok and "self-loop" in codes(r.diagnostics)

    def test_where_endpoint_unowned_is_error(self):
        r = resolve(
            story(
                "INITIAL a\nSECTION s {\n    a GOES b WHEN e\n}\nWHERE\n"
                "    b GOES ghost WHEN e"
            )
        )
        assert not r.ok and "where-endpoint-unowned" in codes(r.diagnostics)

    def test_where_within_single_section_is_error(self):
        r = resolve(
            story(
                "INITIAL a\nSECTION s {\n    a GOES b WHEN e\n}\nWHERE\n"
                "    a GOES b WHEN f"
            )
        )
        assert not r.ok and "where-within-single-section" in codes(r.diagnostics)

    def test_unknown_initial_is_error(self):
        r = resolve(story("INITIAL ghost\nSECTION s {\n    a GOES b WHEN e\n}\nWHERE"))
        assert not r.ok and "unknown-initial-node" in codes(r.diagnostics)

    def test_duplicate_transition_warns(self):
        r = resolve(
            story(
                "INITIAL a\nSECTION s {\n    a GOES b WHEN e,\n    a GOES b WHEN e\n}\nWHERE"
            )
        )
        assert r.ok and "duplicate-transition" in codes(r.diagnostics)

    def test_nondeterministic_choice_warns(self):
        r = resolve(
            story(
                "INITIAL a\nSECTION s {\n    a GOES b WHEN e,\n    a GOES c WHEN f\n}\nWHERE"
            )
        )
        assert r.ok and "nondeterministic-choice" in codes(r.diagnostics)

    def test_all_errors_collected_in_one_pass(self):
        r = resolve(
            story(
                "INITIAL ghost\nSECTION s {\n    a GOES a WHEN e\n}\n"
                "SECTION s {\n    b GOES c WHEN e\n}\nWHERE"
            )
        )
        found = codes(r.diagnostics)
        assert "self-loop" in found
        assert "duplicate-section-name" in found
        assert "unknown-initial-node" in found


def graph_from_edges(n: int, edges) -> StoryGraph:
    """A synthetic one-section graph for DAG-checker tests."""
    labels = tuple(Label.of(f"n{i}") for i in range(n))
    trans = tuple(
        NodeTransition(a, b, (0,)) for a, b in edges
    )
    sect = Section(0, Label.of("only"), tuple(range(n)), trans)
    return StoryGraph(
        name=Label.of("G"),
        initial=0,
        sections=(sect,),
        section_transitions=(),
        node_labels=labels,
        event_labels=(Label.of("e"),),
        node_section=(0,) * n,
    )


class TestValidateDag:
    def test_topological_order_on_sample(self, sample_graph):
        order = validate_dag(sample_graph)
        pos = {n: i for i, n in enumerate(order)}
        for t in sample_graph.transitions_in_order():
            assert pos[t.src] < pos[t.dst]

    def test_cycle_raises_with_explicit_cycle(self):
        g = graph_from_edges(3, [(0, 1), (1, 2), (2, 0)])
        with pytest.raises(CycleError) as exc:
            validate_dag(g)
        cycle = exc.value.cycle
        assert cycle[0] == cycle[-1]
        assert len(cycle) == 4

    def test_two_node_cycle(self):
        g = graph_from_edges(2, [(0, 1), (1, 0)])
        with pytest.raises(CycleError):
            validate_dag(g)

    def test_agrees_with_dfs_oracle_on_random_graphs(self):
        rng = random.Random(7)
        for _ in range(200):
            n = rng.randint(2, 20)
            edges = random_dag_edges(rng, n, extra=0.6)
            if rng.random() < 0.5:
                # flip one edge to (maybe) manufacture a cycle
                a, b = rng.choice(edges)
                edges = [e for e in edges if e != (a, b)] + [(b, a)]
                edges = [e for e in edges if e[0] != e[1]]
            g = graph_from_edges(n, edges)
            expect_cycle = dfs_has_cycle(n, edges)
            if expect_cycle:
                with pytest.raises(CycleError):
                    validate_dag(g)
            else:
                order = validate_dag(g)
                assert sorted(order) == list(range(n))


class TestReachability:
    def test_sample_is_fully_reachable(self, sample_graph):
        report = reachability_report(sample_graph)
        assert "unreachable-node" not in codes(report)
        terminal = next(d for d in report if d.code == "terminal-nodes")
        assert "Battle" in terminal.message
        assert "Can't Escape" in terminal.message

    def test_unreachable_node_warns(self):
        r = resolve(
            story(
                "INITIAL a\nSECTION s {\n    a GOES b WHEN e,\n"
                "    x GOES y WHEN e\n}\nWHERE"
            )
        )
        report = reachability_report(r.graph)
        unreachable = [d.message for d in report if d.code == "unreachable-node"]
        assert len(unreachable) == 2

    def test_matches_bfs_oracle_on_random_stories(self):
        rng = random.Random(13)
        for _ in range(100):
            r = resolve(random_story_ast(rng))
            assert r.ok, r.diagnostics
            g = r.graph
            edges = [(t.src, t.dst) for t in g.transitions_in_order()]
            reachable = bfs_reachable(g.node_count, edges, g.initial)
            report = reachability_report(g)
            warnings = [d.message for d in report if d.code == "unreachable-node"]
            expected = {
                g.node_label(n).canonical
                for n in range(g.node_count)
                if n not in reachable
            }
            assert len(warnings) == len(expected)
            for label in expected:
                assert any(label in msg for msg in warnings)


class TestStructuralHash:
    def test_stable_across_reparse(self, sample_source, sample_graph):
        again = resolve(parse_text(sample_source)).graph
        assert again.structural_hash() == sample_graph.structural_hash()

    def test_sensitive_to_content(self, sample_source, sample_graph):
        other = resolve(
            parse_text(sample_source.replace("hope lost", "hope found"))
        ).graph
        assert other.structural_hash() != sample_graph.structural_hash()

    def test_canonical_json_is_parseable(self, sample_graph):
        import json

        doc = json.loads(sample_graph.canonical_json())
        assert doc["story"] == "Sealed Fate"
