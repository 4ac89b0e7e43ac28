"""Model documents: parsing, serialization, round-trips, shipped files."""

import pytest

from edgeavail import models as md
from edgeavail.document import parse_model, serialize_model
from edgeavail.errors import ParseError, SemanticError
from edgeavail.solver import steady_state_gth, unavailability
from edgeavail.statespace import eliminate_vanishing, explore, to_ctmc

from conftest import DATA, MODELS

MINIMAL = """\
san-format 1
param lam = 0.25
place On = 1
place Off = 0
activity timed break rate "lam" {
  input "#On >= 1" { On -= 1 }
  case 1 { Off += 1 }
}
activity timed mend rate "4 * lam" {
  input "#Off >= 1" { Off -= 1 }
  case 1 { On += 1 }
}
reward up = "#On >= 1"
"""


def test_parse_minimal_document():
    m = parse_model(MINIMAL)
    assert [p.name for p in m.places] == ["On", "Off"]
    assert m.parameters == {"lam": 0.25}
    assert len(m.activities) == 2
    assert m.rewards[0].name == "up"


def test_header_is_required():
    with pytest.raises(ParseError):
        parse_model("param x = 1\n")
    with pytest.raises(ParseError):
        parse_model("san-format 2\nparam x = 1\n")


def test_comments_and_blank_lines_ignored():
    text = "\n# leading comment\nsan-format 1\n# more\n\nparam a = 1\nplace P = 1\n"
    m = parse_model(text + 'reward up = "#P >= 1"\n')
    assert m.parameters == {"a": 1.0}


def test_description_round_trips():
    m = parse_model(MINIMAL.replace("param", "#: desc line one\n#: and two\nparam", 1))
    assert m.description == "desc line one\nand two"
    assert parse_model(serialize_model(m)).description == m.description


def test_parameters_fold_in_declaration_order():
    text = ("san-format 1\nparam base = 2\nparam derived = base * 3\n"
            "place P = 1\nreward up = \"#P >= 1\"\n")
    assert parse_model(text).parameters["derived"] == 6.0


def test_forward_parameter_reference_rejected():
    text = ("san-format 1\nparam derived = base * 3\nparam base = 2\n"
            "place P = 1\nreward up = \"#P >= 1\"\n")
    with pytest.raises(SemanticError):
        parse_model(text)


def test_case_probabilities_fold_over_parameters():
    text = ("san-format 1\nparam c = 0.25\nplace A = 1\nplace B = 0\nplace C = 0\n"
            'activity instant pick {\n  input "#A >= 1" { A -= 1 }\n'
            "  case c { B += 1 }\n  case 1 - c { C += 1 }\n}\n"
            'activity timed putback rate "1" { input "#B >= 1 or #C >= 1" '
            "{ B = 0; C = 0; A = 1 } case 1 { }\n}\n"
            'reward up = "#A >= 1"\n')
    m = parse_model(text)
    assert m.activities[0].cases[0].probability == 0.25
    assert m.activities[0].cases[1].probability == 0.75


def test_undeclared_place_is_a_semantic_error():
    text = MINIMAL.replace('case 1 { Off += 1 }', 'case 1 { Gone += 1 }')
    with pytest.raises(SemanticError):
        parse_model(text)


def test_duplicate_names_rejected():
    with pytest.raises(SemanticError):
        parse_model("san-format 1\nparam a = 1\nplace a = 0\n")


def test_bad_probability_rejected():
    text = MINIMAL.replace("case 1 { Off += 1 }", "case 0.7 { Off += 1 }")
    with pytest.raises(SemanticError):
        parse_model(text)


def test_syntax_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        parse_model("san-format 1\nparam lam = 1 + * 2\n")
    assert err.value.line == 2


def test_two_state_fixture_solves_to_one_tenth():
    m = parse_model((DATA / "two_state.san").read_text())
    c = to_ctmc(eliminate_vanishing(explore(m)), "up")
    assert unavailability(c, steady_state_gth(c)) == pytest.approx(0.1, abs=1e-12)


def test_shipped_documents_parse_to_the_builders(table):
    built = md.builtin_models(table)
    for name, model in built.items():
        text = (MODELS / f"{name}.san").read_text()
        assert parse_model(text) == model, name


def test_shipped_documents_are_serialization_fixpoints(table):
    for name in ("ru", "du", "cu", "meh", "cluster"):
        text = (MODELS / f"{name}.san").read_text()
        assert serialize_model(parse_model(text)) == text, name


def test_round_trip_all_builders(table):
    for name, model in md.builtin_models(table).items():
        assert parse_model(serialize_model(model)) == model, name


def test_parsed_and_built_models_are_bisimilar(table):
    # same state space and identical generators, not just structural equality
    import numpy as np
    du_doc = parse_model((MODELS / "du.san").read_text())
    du = md.build_du(table)
    g1 = eliminate_vanishing(explore(du))
    g2 = eliminate_vanishing(explore(du_doc))
    assert g1.states == g2.states
    c1, c2 = to_ctmc(g1, "up"), to_ctmc(g2, "up")
    assert np.array_equal(c1.Q.toarray(), c2.Q.toarray())
    assert np.array_equal(c1.reward, c2.reward)


def test_ru_document_has_four_tangible_states():
    g = explore(parse_model((MODELS / "ru.san").read_text()))
    assert g.n_states == 4 and g.n_tangible == 4
