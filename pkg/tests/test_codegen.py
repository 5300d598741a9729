import pytest

from saga.abstract_code import (
    Comment,
    ListDec,
    ListDecLiterals,
    ListInsert,
    ObjDecDef,
    Return,
    validate_ir,
)
from saga.codegen import (
    IdentifierMangler,
    compile_story,
    generate_pattern_modules,
    generate_story_instantiation,
    mangle,
)


class TestMangle:
    def test_spaces_become_underscores(self):
        assert mangle("nodes", "Fate Decides") == "nodes__Fate_Decides"

    def test_apostrophes_become_underscores(self):
        assert mangle("node", "Good Won't Save You") == "node__Good_Won_t_Save_You"

    def test_prefix_double_underscore(self):
        assert mangle("sect", "X") == "sect__X"

    def test_digits_survive(self):
        assert mangle("evts", "phase 2") == "evts__phase_2"

    def test_collisions_get_numeric_suffix(self):
        m = IdentifierMangler()
        assert m.mangle("node", "a b") == "node__a_b"
        assert m.mangle("node", "a'b") == "node__a_b_2"
        assert m.mangle("node", "a,b") == "node__a_b_3"

    def test_reserve_blocks_reuse(self):
        m = IdentifierMangler()
        m.reserve("story")
        with pytest.raises(ValueError):
            m.reserve("story")

    def test_mangle_avoids_reserved_names(self):
        m = IdentifierMangler()
        m.reserve("node__a")
        assert m.mangle("node", "a") == "node__a_2"


class TestPatternModules:
    def test_six_fixed_classes(self):
        names = [m.name for m in generate_pattern_modules()]
        assert names == [
            "Node",
            "NodeTransition",
            "Section",
            "SectionTransition",
            "Story",
            "StoryManager",
        ]

    def test_every_class_has_a_constructor(self):
        for mod in generate_pattern_modules():
            ctor = next(f for f in mod.funcs if f.is_constructor)
            assert ctor.name == mod.name

    def test_node_transition_shape(self):
        mod = next(
            m for m in generate_pattern_modules() if m.name == "NodeTransition"
        )
        assert [v.name for v in mod.vars] == [
            "srcNode",
            "dstNode",
            "nodeTransEvents",
        ]
        assert [f.name for f in mod.funcs] == [
            "NodeTransition",
            "GetSrcNode",
            "GetDstNode",
            "GetNodeTransEvents",
        ]

    def test_manager_signal_event_returns_bool(self):
        mod = next(m for m in generate_pattern_modules() if m.name == "StoryManager")
        sig = next(f for f in mod.funcs if f.name == "SignalEvent")
        assert sig.return_type.state.base.value == "bool"
        assert [p.name for p in sig.params] == ["evt"]


def flat(func):
    return [s for b in func.body for s in b.statements]


class TestInstantiation:
    def test_whole_package_validates(self, sample_graph):
        assert validate_ir(compile_story(sample_graph)) == []

    def test_driver_is_main_create_story_manager(self, sample_graph):
        code = compile_story(sample_graph)
        main = code.package.modules[-1]
        assert main.name == "Main"
        (func,) = main.funcs
        assert func.name == "CreateStoryManager"

    def test_fate_decides_nodes_and_inserts(self, sample_graph):
        func = generate_story_instantiation(sample_graph)
        stmts = flat(func)
        decls = [
            s
            for s in stmts
            if isinstance(s, ObjDecDef) and s.name.startswith("node__")
        ]
        fate = [s.name for s in decls][-5:]
        assert fate == [
            "node__Good_Won_t_Save_You",
            "node__Winding_Down",
            "node__Final_Choice",
            "node__Battle",
            "node__Can_t_Escape",
        ]
        fate_list = next(
            s
            for s in stmts
            if isinstance(s, ListDec) and s.name == "nodes__Fate_Decides"
        )
        assert fate_list.capacity == 5
        inserts = [
            s
            for s in stmts
            if isinstance(s, ListInsert) and s.receiver.name == "nodes__Fate_Decides"
        ]
        assert [s.index for s in inserts] == [0, 1, 2, 3, 4]

    def test_node_literals_keep_readable_names(self, sample_graph):
        func = generate_story_instantiation(sample_graph)
        node = next(
            s
            for s in flat(func)
            if isinstance(s, ObjDecDef) and s.name == "node__Good_Won_t_Save_You"
        )
        assert node.init.args[0].value == "Good Won't Save You"

    def test_event_lists_are_string_literals(self, sample_graph):
        func = generate_story_instantiation(sample_graph)
        and_list = next(
            s
            for s in flat(func)
            if isinstance(s, ListDecLiterals)
            and len(s.literals) == 2
        )
        assert [l.value for l in and_list.literals] == [
            "ally abandoned",
            "village burned",
        ]

    def test_four_region_banners_in_order(self, sample_graph):
        from saga.abstract_code import CommentDelimit

        func = generate_story_instantiation(sample_graph)
        banners = [s.text for s in flat(func) if isinstance(s, CommentDelimit)]
        assert banners == [
            "End Nodes",
            "End Node Transitions",
            "End Sections",
            "End Section Transitions",
        ]
        widths = {s.total_width for s in flat(func) if isinstance(s, CommentDelimit)}
        assert widths == {80}

    def test_section_comments_quote_names(self, sample_graph):
        func = generate_story_instantiation(sample_graph)
        comments = [s.text for s in flat(func) if isinstance(s, Comment)]
        assert '"The Path of Evil"' in comments
        assert '"Fate Decides"' in comments

    def test_returns_new_story_manager(self, sample_graph):
        func = generate_story_instantiation(sample_graph)
        ret = next(s for s in flat(func) if isinstance(s, Return))
        assert ret.value.type.kind == "StoryManager"
        assert ret.value.args[0].name == "story"

    def test_where_transition_uses_section_transition_type(self, sample_graph):
        func = generate_story_instantiation(sample_graph)
        sect_trans = [
            s
            for s in flat(func)
            if isinstance(s, ObjDecDef) and s.name.startswith("sectTrans__")
        ]
        assert len(sect_trans) == 1
        assert sect_trans[0].init.type.kind == "SectionTransition"
