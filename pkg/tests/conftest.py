import pathlib

import pytest

from edgeavail.expr import parse_expression as P
from edgeavail.models import default_table
from edgeavail.san import (Activity, CaseSpec, InputSpec, Place,
                           RewardPredicate, SanModel, put, take)

REPO = pathlib.Path(__file__).resolve().parents[1]
DATA = pathlib.Path(__file__).resolve().parent / "data"
MODELS = REPO / "models"


def two_state_model(lam=0.1, mu=0.9) -> SanModel:
    return SanModel(
        places=(Place("Up", 1), Place("Down", 0)),
        parameters={"lam": lam, "mu": mu},
        activities=(
            Activity("fail", P("lam"), InputSpec(P("#Up >= 1"), (take("Up"),)),
                     (CaseSpec(1.0, (put("Down"),)),)),
            Activity("repair", P("mu"), InputSpec(P("#Down >= 1"), (take("Down"),)),
                     (CaseSpec(1.0, (put("Up"),)),)),
        ),
        rewards=(RewardPredicate("up", P("#Up >= 1")),),
        description="two-state fail/repair",
    )


@pytest.fixture(scope="session")
def table():
    return default_table()


@pytest.fixture
def two_state():
    return two_state_model()
