"""Discrete-event Monte-Carlo estimation of steady-state reward.

An oracle deliberately independent of the state-space/solver path: it plays
the token game directly on markings and never builds a generator matrix.

Per step, every enabled timed activity's delay is resampled from its
exponential rate; with memoryless rates this is statistically identical to
keeping per-activity clocks, so the next event is drawn from the total rate
and attributed proportionally.  Instantaneous activities fire immediately
(equal weights if several are enabled at once); more than a million
consecutive zero-time firings is reported as a livelock.

The estimate is the time average of a 0/1 reward over ``(warmup, horizon]``
with a batch-means 95% confidence interval (Student-t over equal-width
batches).  Randomness comes from numpy's PCG64 seeded through
``SeedSequence``, so a given seed reproduces the run bit for bit and
replication seeds are spawned from the master seed without overlap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import VanishingLivelock
from .san import SanModel, compiled

LIVELOCK_LIMIT = 1_000_000
DEFAULT_BATCHES = 20


@dataclass(frozen=True)
class SimEstimate:
    point: float          # time-average reward
    ci_halfwidth: float   # 95%, Student-t
    batches: int          # batches (or replications)
    horizon: float        # model-time hours per trajectory
    seed: int


def _check_common(model, reward, horizon, warmup):
    cm = compiled(model)
    if reward not in cm.rewards:
        raise ValueError(f"model has no reward named '{reward}'")
    if warmup is None:
        warmup = 0.01 * horizon
    if not horizon > warmup >= 0:
        raise ValueError(f"need horizon > warmup >= 0, got {horizon} and {warmup}")
    return cm, warmup


def _batch_uptimes(cm, reward_fn, horizon, warmup, batches, rng):
    """One trajectory; returns per-batch up-time over (warmup, horizon]."""
    width = (horizon - warmup) / batches
    up = np.zeros(batches)
    vec = cm.initial
    t = 0.0
    consecutive_instant = 0
    while t < horizon:
        enabled_instant = [a for a in cm.instant_activities if a.pred(vec) != 0.0]
        if enabled_instant:
            consecutive_instant += 1
            if consecutive_instant > LIVELOCK_LIMIT:
                raise VanishingLivelock(LIVELOCK_LIMIT)
            a = enabled_instant[0] if len(enabled_instant) == 1 else \
                enabled_instant[rng.integers(len(enabled_instant))]
            vec = cm.fire_vec(vec, a, _pick_case(a, rng))
            continue
        consecutive_instant = 0

        enabled = []
        total = 0.0
        for a in cm.timed_activities:
            if a.pred(vec) != 0.0:
                r = a.rate(vec)
                total += r
                enabled.append((a, r))
        if not enabled:  # dead marking: the trajectory stays here forever
            t_next = horizon
            a = None
        else:
            t_next = t + rng.exponential(1.0 / total)
            u = rng.random() * total
            acc = 0.0
            for a, r in enabled:
                acc += r
                if u < acc:
                    break

        if reward_fn(vec) != 0.0:
            lo = max(t, warmup)
            hi = min(t_next, horizon)
            if hi > lo:
                b0 = min(int((lo - warmup) / width), batches - 1)
                b1 = min(int((hi - warmup) / width), batches - 1)
                if b0 == b1:
                    up[b0] += hi - lo
                else:
                    up[b0] += warmup + (b0 + 1) * width - lo
                    for b in range(b0 + 1, b1):
                        up[b] += width
                    up[b1] += hi - (warmup + b1 * width)
        t = t_next
        if a is not None and t < horizon:
            vec = cm.fire_vec(vec, a, _pick_case(a, rng))
        elif a is None:
            break
    return up / width


def _pick_case(a, rng) -> int:
    if len(a.case_probs) == 1:
        return 0
    u = rng.random()
    acc = 0.0
    for i, p in enumerate(a.case_probs):
        acc += p
        if u < acc:
            return i
    return len(a.case_probs) - 1


def _t_interval(values: np.ndarray) -> tuple[float, float]:
    n = len(values)
    mean = float(values.mean())
    s = float(values.std(ddof=1))
    half = float(stats.t.ppf(0.975, n - 1)) * s / math.sqrt(n)
    return mean, half


def simulate(model: SanModel, reward: str, horizon: float, warmup: float | None = None,
             batches: int = DEFAULT_BATCHES, seed: int = 12345) -> SimEstimate:
    """Batch-means estimate of the steady-state reward from one long trajectory."""
    if batches < 2:
        raise ValueError(f"batches must be >= 2, got {batches}")
    cm, warmup = _check_common(model, reward, horizon, warmup)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    means = _batch_uptimes(cm, cm.rewards[reward], horizon, warmup, batches, rng)
    point, half = _t_interval(means)
    return SimEstimate(point, half, batches, horizon, int(seed))


def simulate_replicated(model: SanModel, reward: str, horizon: float,
                        warmup: float | None = None, replications: int = 10,
                        seed: int = 12345) -> SimEstimate:
    """Independent replications with seeds spawned from the master seed."""
    if replications < 2:
        raise ValueError(f"replications must be >= 2, got {replications}")
    cm, warmup = _check_common(model, reward, horizon, warmup)
    reward_fn = cm.rewards[reward]
    children = np.random.SeedSequence(seed).spawn(replications)
    means = np.array([
        _batch_uptimes(cm, reward_fn, horizon, warmup, 1, np.random.default_rng(child))[0]
        for child in children
    ])
    point, half = _t_interval(means)
    return SimEstimate(point, half, replications, horizon, int(seed))
