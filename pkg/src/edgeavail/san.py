"""Stochastic activity networks: places, activities, gates, and the token game.

A model is a set of integer-marked places plus activities.  Timed activities
carry an exponential rate expression (h^-1) that may depend on the marking;
instantaneous activities fire in zero time.  Each activity has an input gate
(an enabling predicate plus marking effects applied on firing) and one or
more probabilistic cases, each with its own effects.  Effects are ordered
assignments ``place += e`` / ``place -= e`` / ``place = e`` evaluated against
the partially updated marking, which is enough to express every output gate
used by the built-in models (including "reset and recount" style gates).

Models are plain data and never mutated after construction; every operation
here is a pure function of its inputs.  If several instantaneous activities
are enabled at once they are selected with equal weights — none of the
built-in models can reach such a marking, so this is a documented safety net.
Enabling of a timed activity that is lost and later regained resamples its
delay; with exponential rates this is indistinguishable from resuming.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from . import expr as ex
from .errors import NegativeTokens, NotEnabled

Marking = dict  # place name -> non-negative token count

_OPS = ("+=", "-=", "=")


@dataclass(frozen=True)
class Place:
    name: str
    initial_tokens: int = 0


@dataclass(frozen=True)
class Effect:
    """One marking assignment: ``place op value`` with op in ``+= -= =``."""
    place: str
    op: str
    value: ex.Expr


@dataclass(frozen=True)
class InputSpec:
    predicate: ex.Expr
    effects: tuple = ()


@dataclass(frozen=True)
class CaseSpec:
    probability: float
    effects: tuple = ()


@dataclass(frozen=True)
class Activity:
    """Timed when ``rate`` is an expression, instantaneous when it is None."""
    name: str
    rate: ex.Expr | None
    input: InputSpec
    cases: tuple

    @property
    def timed(self) -> bool:
        return self.rate is not None


@dataclass(frozen=True)
class RewardPredicate:
    name: str
    predicate: ex.Expr


@dataclass
class SanModel:
    places: tuple
    parameters: dict
    activities: tuple
    rewards: tuple
    description: str = ""

    def place_names(self):
        return [p.name for p in self.places]

    def initial_marking(self) -> Marking:
        return {p.name: p.initial_tokens for p in self.places}

    def activity(self, name: str) -> Activity:
        for a in self.activities:
            if a.name == name:
                return a
        raise KeyError(name)

    def reward(self, name: str) -> RewardPredicate:
        for r in self.rewards:
            if r.name == name:
                return r
        raise KeyError(name)


# ── helpers for building effects in code ─────────────────────────────────────

def take(place: str, count: int = 1) -> Effect:
    return Effect(place, "-=", ex.Num(float(count)))

def put(place: str, count: int = 1) -> Effect:
    return Effect(place, "+=", ex.Num(float(count)))

def set_to(place: str, value) -> Effect:
    if isinstance(value, (int, float)):
        value = ex.Num(float(value))
    return Effect(place, "=", value)


# ── validation ───────────────────────────────────────────────────────────────

PROB_SUM_TOL = 1e-12


def validate(model: SanModel) -> list[str]:
    """Return every violation found; an empty list means the model is well-formed."""
    diags = []
    place_names = set()
    for p in model.places:
        if p.name in place_names:
            diags.append(f"duplicate place name '{p.name}'")
        place_names.add(p.name)
        if p.name in ex.KEYWORDS:
            diags.append(f"place name '{p.name}' is a reserved word")
        if p.initial_tokens < 0:
            diags.append(f"place '{p.name}' has negative initial tokens ({p.initial_tokens})")

    for name in model.parameters:
        if name in ex.KEYWORDS:
            diags.append(f"parameter name '{name}' is a reserved word")
        if name in place_names:
            diags.append(f"name '{name}' declared as both a parameter and a place")

    def check_expr(e, where):
        params, places = ex.identifiers(e)
        for name in sorted(params - set(model.parameters)):
            diags.append(f"{where}: undeclared parameter '{name}'")
        for name in sorted(places - place_names):
            diags.append(f"{where}: undeclared place '#{name}'")

    def check_effects(effects, where):
        for eff in effects:
            if eff.place not in place_names:
                diags.append(f"{where}: effect targets undeclared place '{eff.place}'")
            if eff.op not in _OPS:
                diags.append(f"{where}: bad effect operator '{eff.op}'")
            check_expr(eff.value, where)

    seen_acts = set()
    for a in model.activities:
        where = f"activity '{a.name}'"
        if a.name in seen_acts:
            diags.append(f"duplicate activity name '{a.name}'")
        seen_acts.add(a.name)
        if a.rate is not None:
            check_expr(a.rate, f"{where} rate")
            if isinstance(a.rate, ex.Num) and a.rate.value <= 0:
                diags.append(f"{where}: non-positive rate {a.rate.value}")
        check_expr(a.input.predicate, f"{where} predicate")
        check_effects(a.input.effects, f"{where} input")
        if not a.cases:
            diags.append(f"{where}: no cases")
        total = 0.0
        for i, c in enumerate(a.cases):
            if not 0.0 <= c.probability <= 1.0:
                diags.append(f"{where} case {i}: probability {c.probability} outside [0, 1]")
            total += c.probability
            check_effects(c.effects, f"{where} case {i}")
        if a.cases and abs(total - 1.0) > PROB_SUM_TOL:
            diags.append(f"{where}: case probabilities sum to {total!r}")

    seen_rewards = set()
    for r in model.rewards:
        if r.name in seen_rewards:
            diags.append(f"duplicate reward name '{r.name}'")
        seen_rewards.add(r.name)
        check_expr(r.predicate, f"reward '{r.name}'")

    return diags


# ── compiled form (shared by the explorer and the simulator) ─────────────────

class CompiledActivity:
    __slots__ = ("name", "timed", "pred", "rate", "input_effects", "case_probs",
                 "case_effects")

    def __init__(self, name, timed, pred, rate, input_effects, case_probs, case_effects):
        self.name = name
        self.timed = timed
        self.pred = pred
        self.rate = rate
        self.input_effects = input_effects
        self.case_probs = case_probs
        self.case_effects = case_effects


class CompiledModel:
    """A model lowered onto integer marking vectors in canonical place order.

    Canonical order is sorted place name, so identical markings hash the same
    regardless of declaration order.
    """

    def __init__(self, model: SanModel):
        self.model = model
        self.place_order = tuple(sorted(p.name for p in model.places))
        self.index = {name: i for i, name in enumerate(self.place_order)}
        initial = model.initial_marking()
        self.initial = tuple(initial[name] for name in self.place_order)
        params = model.parameters

        def compile_effects(effects):
            out = []
            for eff in effects:
                out.append((self.index[eff.place], _OPS.index(eff.op),
                            ex.compile_expr(eff.value, self.index, params)))
            return tuple(out)

        self.activities = []
        for a in model.activities:
            self.activities.append(CompiledActivity(
                name=a.name,
                timed=a.timed,
                pred=ex.compile_expr(a.input.predicate, self.index, params),
                rate=ex.compile_expr(a.rate, self.index, params) if a.timed else None,
                input_effects=compile_effects(a.input.effects),
                case_probs=tuple(c.probability for c in a.cases),
                case_effects=tuple(compile_effects(c.effects) for c in a.cases),
            ))
        self.timed_activities = [a for a in self.activities if a.timed]
        self.instant_activities = [a for a in self.activities if not a.timed]
        self.rewards = {r.name: ex.compile_expr(r.predicate, self.index, params)
                        for r in model.rewards}

    def marking_tuple(self, m: Mapping[str, int]) -> tuple:
        try:
            return tuple(int(m[name]) for name in self.place_order)
        except KeyError as k:
            raise ValueError(f"marking is missing place {k.args[0]!r}") from None

    def marking_dict(self, vec) -> Marking:
        return {name: vec[i] for i, name in enumerate(self.place_order)}

    def fire_vec(self, vec, act: CompiledActivity, case_index: int) -> tuple:
        """Apply input effects then the chosen case's effects, in order."""
        m = list(vec)
        for effects in (act.input_effects, act.case_effects[case_index]):
            for place_i, op, value_fn in effects:
                v = value_fn(m)
                if op == 0:
                    new = m[place_i] + v
                elif op == 1:
                    new = m[place_i] - v
                else:
                    new = v
                rounded = round(new)
                if abs(new - rounded) > 1e-9:
                    raise ValueError(
                        f"activity '{act.name}' drives place "
                        f"'{self.place_order[place_i]}' to non-integer count {new!r}")
                if rounded < 0:
                    raise NegativeTokens(self.place_order[place_i], act.name)
                m[place_i] = rounded
        return tuple(m)


def compiled(model: SanModel) -> CompiledModel:
    """Compile ``model``, memoizing the result on the instance."""
    cm = getattr(model, "_compiled", None)
    if cm is None:
        cm = CompiledModel(model)
        model._compiled = cm
    return cm


# ── token-game operations on plain markings ──────────────────────────────────

def enabled_activities(model: SanModel, m: Marking) -> list[str]:
    """Names of activities whose input predicate holds in ``m``, in declaration order."""
    cm = compiled(model)
    vec = cm.marking_tuple(m)
    return [a.name for a in cm.activities if a.pred(vec) != 0.0]


def fire(model: SanModel, m: Marking, activity: str, case_index: int = 0) -> Marking:
    """Fire ``activity`` with the chosen case and return the successor marking.

    ``m`` itself is never modified.
    """
    cm = compiled(model)
    vec = cm.marking_tuple(m)
    for a in cm.activities:
        if a.name == activity:
            break
    else:
        raise KeyError(activity)
    if a.pred(vec) == 0.0:
        raise NotEnabled(activity)
    if not 0 <= case_index < len(a.case_probs):
        raise IndexError(f"activity '{activity}' has no case {case_index}")
    return cm.marking_dict(cm.fire_vec(vec, a, case_index))
