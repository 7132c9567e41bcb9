import json

import pytest
from hypothesis import given, strategies as st

from microanim.analysis import InspectError, duration, max_duration
from microanim.dsl import GetValue, IfThenElse, Par2, ResultKind, Seq2
from microanim.engine import run_fps, step
from microanim.schedule import NegativeStart
from microanim.script import (
    ParseError,
    load_scenario,
    parse_script,
    scenario_to_jsonable,
    script_to_jsonable,
)

TWEEN = {"linearTo": {"path": "x", "for": 1, "to": 50}}


def scenario(animation, state=None):
    return json.dumps(
        {
            "name": "test",
            "description": "",
            "state": state if state is not None else {"x": 0, "y": 0},
            "animation": animation,
        }
    )


def test_load_compiles_and_inspects():
    sc = load_scenario(scenario({"par": [TWEEN, {"delay": 0.25}]}))
    assert duration(sc.animation) == pytest.approx(1.0, abs=1e-9)
    assert isinstance(sc.animation, Par2)


def test_unknown_tag_is_named():
    with pytest.raises(ParseError) as exc:
        load_scenario(scenario({"linerTo": {"path": "x", "for": 1, "to": 50}}))
    assert "linerTo" in str(exc.value)


def test_invalid_json_reports_position():
    with pytest.raises(ParseError) as exc:
        load_scenario('{"name": "x",')
    assert "line 1" in str(exc.value)


def test_seq_and_par_must_be_non_empty():
    with pytest.raises(ParseError):
        load_scenario(scenario({"seq": []}))
    with pytest.raises(ParseError):
        load_scenario(scenario({"par": []}))


def test_seq_folds_left():
    node = parse_script({"seq": [{"delay": 1}, {"delay": 2}, {"delay": 3}]})
    from microanim.script import compile_script

    anim = compile_script(node)
    assert isinstance(anim, Seq2)
    assert isinstance(anim.first, Seq2)
    assert duration(anim) == 6.0


def test_missing_state_or_animation():
    with pytest.raises(ParseError):
        load_scenario(json.dumps({"animation": TWEEN}))
    with pytest.raises(ParseError):
        load_scenario(json.dumps({"state": {}}))


def test_bad_state_rejected():
    with pytest.raises(ParseError):
        load_scenario(scenario(TWEEN, state={"x": [1, 2]}))


def test_flag_condition_compiles_to_boolean_read():
    sc = load_scenario(
        scenario(
            {"if": {"cond": {"flag": "on"}, "then": TWEEN, "else": {"delay": 1}}},
            state={"on": True, "x": 0},
        )
    )
    anim = sc.animation
    assert isinstance(anim, IfThenElse)
    assert isinstance(anim.cond, GetValue)
    assert anim.cond.read_kind is ResultKind.BOOLEAN
    out = step(anim, sc.state, 5.0)
    assert out.state.root["x"] == 50.0


@pytest.mark.parametrize(
    "cond,state,expected_branch",
    [
        ({"gt": ["n", 0]}, {"n": 2}, "then"),
        ({"gt": ["n", 0]}, {"n": 0}, "else"),
        ({"lt": ["n", 5]}, {"n": 2}, "then"),
        ({"eq": ["n", 2]}, {"n": 2}, "then"),
        ({"eq": ["on", True]}, {"on": True}, "then"),
        ({"eq": ["on", False]}, {"on": True}, "else"),
        ({"flag": "on"}, {"on": False}, "else"),
    ],
)
def test_condition_predicates(cond, state, expected_branch):
    state = dict(state, marker=0.0)
    sc = load_scenario(
        scenario(
            {
                "if": {
                    "cond": cond,
                    "then": {"set": {"path": "marker", "value": 1}},
                    "else": {"set": {"path": "marker", "value": 2}},
                }
            },
            state=state,
        )
    )
    out = step(sc.animation, sc.state, 1.0)
    assert out.state.root["marker"] == (1.0 if expected_branch == "then" else 2.0)


def test_conditions_cost_nothing():
    sc = load_scenario(
        scenario(
            {"if": {"cond": {"gt": ["n", 0]}, "then": {"delay": 1}, "else": {"delay": 1}}},
            state={"n": 1},
        )
    )
    assert max_duration(sc.animation) == pytest.approx(1.0, abs=1e-9)


def test_rel_seq_resolves_at_load_time():
    sc = load_scenario(
        scenario(
            {"relSeq": {"first": TWEEN, "second": {"linearTo": {"path": "y", "for": 1, "to": 9}}, "offset": -0.5}}
        )
    )
    assert duration(sc.animation) == pytest.approx(1.5, abs=1e-9)


def test_rel_seq_on_conditional_fails_at_load():
    body = {
        "relSeq": {
            "first": {"if": {"cond": {"flag": "on"}, "then": TWEEN, "else": {"delay": 1}}},
            "second": {"delay": 1},
            "offset": -0.5,
        }
    }
    with pytest.raises(InspectError):
        load_scenario(scenario(body, state={"on": True, "x": 0}))
    body["relMaxSeq"] = body.pop("relSeq")
    sc = load_scenario(scenario(body, state={"on": True, "x": 0}))
    assert max_duration(sc.animation) == pytest.approx(1.5, abs=1e-9)


def test_rel_seq_negative_start_fails_at_load():
    with pytest.raises(NegativeStart):
        load_scenario(
            scenario({"relSeq": {"first": TWEEN, "second": {"delay": 1}, "offset": -2}})
        )


def test_eq_text_literal_rejected():
    with pytest.raises(ParseError):
        load_scenario(
            scenario(
                {"if": {"cond": {"eq": ["c", "red"]}, "then": TWEEN, "else": TWEEN}},
                state={"c": "red", "x": 0},
            )
        )


def test_scenario_round_trips():
    body = {
        "name": "roundtrip",
        "description": "structural identity",
        "state": {"x": 0, "on": True},
        "animation": {
            "relMaxSeq": {
                "first": {
                    "if": {
                        "cond": {"flag": "on"},
                        "then": {"seq": [TWEEN, {"delay": 0.5}]},
                        "else": {"set": {"path": "x", "value": 3}},
                    }
                },
                "second": {"par": [TWEEN, {"delay": 2}]},
                "offset": 0.25,
            }
        },
    }
    sc = load_scenario(json.dumps(body))
    assert scenario_to_jsonable(sc) == body


# --- randomized round-trip ---------------------------------------------------

num = st.integers(-100, 100).map(float)
dur_num = st.integers(0, 40).map(lambda k: k / 4)
paths = st.sampled_from(["x", "y", "a.b"])

cond_nodes = st.one_of(
    paths.map(lambda p: {"flag": p}),
    st.tuples(st.sampled_from(["gt", "lt", "eq"]), paths, num).map(
        lambda t: {t[0]: [t[1], t[2]]}
    ),
    st.tuples(paths, st.booleans()).map(lambda t: {"eq": [t[0], t[1]]}),
)

leaf_nodes = st.one_of(
    st.tuples(paths, dur_num, num).map(
        lambda t: {"linearTo": {"path": t[0], "for": t[1], "to": t[2]}}
    ),
    st.tuples(paths, st.one_of(num, st.booleans(), st.just("green"))).map(
        lambda t: {"set": {"path": t[0], "value": t[1]}}
    ),
    dur_num.map(lambda d: {"delay": d}),
)


def _compound(inner):
    return st.one_of(
        st.lists(inner, min_size=1, max_size=3).map(lambda xs: {"seq": xs}),
        st.lists(inner, min_size=1, max_size=3).map(lambda xs: {"par": xs}),
        st.tuples(cond_nodes, inner, inner).map(
            lambda t: {"if": {"cond": t[0], "then": t[1], "else": t[2]}}
        ),
        st.tuples(inner, inner, dur_num).map(
            lambda t: {"relSeq": {"first": t[0], "second": t[1], "offset": t[2]}}
        ),
        st.tuples(inner, inner, dur_num).map(
            lambda t: {"relMaxSeq": {"first": t[0], "second": t[1], "offset": t[2]}}
        ),
    )


script_jsons = st.recursive(leaf_nodes, _compound, max_leaves=6)


@given(script_jsons)
def test_script_round_trip(body):
    assert script_to_jsonable(parse_script(body)) == body
