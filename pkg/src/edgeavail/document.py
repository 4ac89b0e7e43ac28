"""The ``.san`` model document format: parse and serialize whole models.

A document is UTF-8 text opening with the version header ``san-format 1``.
Statements, in any order as long as every referenced name is declared
somewhere in the document::

    san-format 1
    #: optional description lines, echoed back on serialization
    param lambda = 0.1          # value may use previously declared params
    place Up = 1
    activity timed fail rate "lambda" {
      input "#Up >= 1" { Up -= 1 }
      case 1 { Down += 1 }
    }
    activity instant pick {
      input "#Choice >= 1" { Choice -= 1 }
      case 0.85 { A += 1 }
      case 0.15 { B += 1 }
    }
    reward up = "#Up >= 1"

``#`` starts a comment unless immediately followed by an identifier, which is
a token-count reference (so ``Working = M - #HW_Fail`` works inside effect
blocks).  Rate, predicate, and reward expressions sit in double quotes;
effect expressions are bare.  Parameter values and case probabilities may be
expressions over previously declared parameters; they are folded to constants
at load time, so serialized documents always show plain numbers.

``parse_model(serialize_model(m))`` reproduces ``m`` exactly, and
serialization is deterministic, so serialized text is a fixpoint.
"""

from __future__ import annotations

from . import expr as ex
from .errors import ParseError, SemanticError
from .san import (Activity, CaseSpec, Effect, InputSpec, Place,
                  RewardPredicate, SanModel, validate)

HEADER = "san-format 1"

_STATEMENT_WORDS = {"param", "place", "activity", "reward"}


def _fold(e: ex.Expr, params: dict, what: str) -> float:
    p, places = ex.identifiers(e)
    if places:
        raise SemanticError(f"{what} must not reference places: #{sorted(places)[0]}")
    missing = sorted(p - set(params))
    if missing:
        raise SemanticError(f"{what} references undeclared parameter '{missing[0]}' "
                            "(parameters fold in declaration order)")
    return ex.eval_expr(e, None, params)


def parse_model(text: str) -> SanModel:
    """Parse a document into a validated model."""
    lines = text.split("\n")
    header_at = None
    for i, line in enumerate(lines):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if stripped.split() == HEADER.split():
            header_at = i
            break
        raise ParseError(f"first statement must be the header '{HEADER}'", i + 1, 1)
    if header_at is None:
        raise ParseError(f"missing header '{HEADER}'", 1, 1)

    description_lines = []
    for line in lines[header_at + 1:]:
        stripped = line.strip()
        if stripped.startswith("#:"):
            description_lines.append(stripped[2:].lstrip())
        elif stripped:
            break
    description = "\n".join(description_lines)

    # Blank the header in place so token positions stay file-absolute.
    body = "\n".join("" if i == header_at else line for i, line in enumerate(lines))
    cur = ex.TokenCursor(ex.tokenize(body))

    def fail(expected):
        t = cur.peek()
        raise ParseError(
            f"unexpected {t.kind} {t.text!r}" if t.kind != "EOF" else "unexpected end of input",
            t.line, t.column, expected)

    def expect(kind, text=None, expected=None):
        t = cur.peek()
        if not cur.at(kind, text):
            raise ParseError(
                f"unexpected {t.kind} {t.text!r}",
                t.line, t.column, expected or {text or kind})
        return cur.next()

    def parse_quoted_expr(what) -> ex.Expr:
        t = expect("STRING", expected={f'"{what}" in double quotes'})
        try:
            return ex.parse_expression(t.text)
        except ParseError as err:
            raise ParseError(f"in {what} at line {t.line}: {err}") from None

    def parse_effects() -> tuple:
        expect("{", expected={"'{'"})
        effects = []
        while not cur.at("}"):
            name = expect("IDENT", expected={"a place name", "'}'"})
            op_tok = cur.peek()
            if op_tok.kind not in ("+=", "-=", "="):
                fail({"'+='", "'-='", "'='"})
            cur.next()
            effects.append(Effect(name.text, op_tok.kind, ex.parse_expr(cur)))
            if cur.at(";"):
                cur.next()
        cur.next()  # }
        return tuple(effects)

    params: dict[str, float] = {}
    places: list[Place] = []
    activities: list[Activity] = []
    rewards: list[RewardPredicate] = []
    declared: set[str] = set()

    def declare(name_tok, what):
        if name_tok.text in declared:
            raise SemanticError(f"duplicate name '{name_tok.text}' "
                                f"(redeclared as {what} at line {name_tok.line})")
        if name_tok.text in ex.KEYWORDS:
            raise SemanticError(f"{what} name '{name_tok.text}' is a reserved word")
        declared.add(name_tok.text)

    while not cur.at("EOF"):
        t = cur.peek()
        if t.kind != "IDENT" or t.text not in _STATEMENT_WORDS:
            fail({"'param'", "'place'", "'activity'", "'reward'"})
        word = cur.next().text

        if word == "param":
            name = expect("IDENT", expected={"a parameter name"})
            declare(name, "parameter")
            expect("=", expected={"'='"})
            params[name.text] = _fold(ex.parse_expr(cur), params,
                                      f"parameter '{name.text}'")

        elif word == "place":
            name = expect("IDENT", expected={"a place name"})
            declare(name, "place")
            expect("=", expected={"'='"})
            neg = cur.at("-")
            if neg:
                cur.next()
            count_tok = expect("NUMBER", expected={"an integer token count"})
            count = float(count_tok.text) * (-1 if neg else 1)
            if count != int(count):
                raise SemanticError(f"place '{name.text}' needs an integer "
                                    f"initial count, got {count_tok.text}")
            places.append(Place(name.text, int(count)))

        elif word == "activity":
            kind = expect("IDENT", expected={"'timed'", "'instant'"})
            if kind.text not in ("timed", "instant"):
                raise ParseError(f"unknown activity kind '{kind.text}'",
                                 kind.line, kind.column,
                                 {"'timed'", "'instant'"})
            name = expect("IDENT", expected={"an activity name"})
            declare(name, "activity")
            rate = None
            if kind.text == "timed":
                expect("IDENT", "rate", expected={"'rate'"})
                rate = parse_quoted_expr(f"rate of '{name.text}'")
            expect("{", expected={"'{'"})
            expect("IDENT", "input", expected={"'input'"})
            predicate = parse_quoted_expr(f"input predicate of '{name.text}'")
            input_effects = parse_effects()
            cases = []
            while cur.at("IDENT", "case"):
                cur.next()
                prob = _fold(ex.parse_expr(cur), params,
                             f"case probability in '{name.text}'")
                cases.append(CaseSpec(prob, parse_effects()))
            expect("}", expected={"'case'", "'}'"})
            activities.append(Activity(name.text, rate,
                                       InputSpec(predicate, input_effects),
                                       tuple(cases)))

        else:  # reward
            name = expect("IDENT", expected={"a reward name"})
            expect("=", expected={"'='"})
            rewards.append(RewardPredicate(name.text,
                                           parse_quoted_expr(f"reward '{name.text}'")))

    model = SanModel(tuple(places), params, tuple(activities), tuple(rewards),
                     description=description)
    diags = validate(model)
    if diags:
        raise SemanticError("invalid model: " + "; ".join(diags))
    return model


def serialize_model(model: SanModel) -> str:
    """Render a validated model as document text (deterministic)."""

    def effects_text(effects) -> str:
        return "; ".join(f"{e.place} {e.op} {ex.to_text(e.value)}" for e in effects)

    out = [HEADER]
    for line in model.description.split("\n"):
        if model.description:
            out.append(f"#: {line}" if line else "#:")
    for name, value in model.parameters.items():
        out.append(f"param {name} = {ex.format_number(float(value))}")
    for p in model.places:
        out.append(f"place {p.name} = {p.initial_tokens}")
    for a in model.activities:
        head = (f"activity timed {a.name} rate \"{ex.to_text(a.rate)}\""
                if a.timed else f"activity instant {a.name}")
        out.append(head + " {")
        out.append(f"  input \"{ex.to_text(a.input.predicate)}\" "
                   f"{{ {effects_text(a.input.effects)} }}"
                   if a.input.effects else
                   f"  input \"{ex.to_text(a.input.predicate)}\" {{ }}")
        for c in a.cases:
            body = effects_text(c.effects)
            body = f"{{ {body} }}" if body else "{ }"
            out.append(f"  case {ex.format_number(c.probability)} {body}")
        out.append("}")
    for r in model.rewards:
        out.append(f"reward {r.name} = \"{ex.to_text(r.predicate)}\"")
    return "\n".join(out) + "\n"
