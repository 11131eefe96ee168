"""Shared test helpers: an independent enumeration oracle and corpora."""

from __future__ import annotations

import time
from typing import List, Sequence, Tuple

import numpy as np
import pytest

from fairchores import (
    GeneratorConfig,
    Instance,
    MmsProfile,
    generate,
    mms_profile,
)

# Frozen corpus seeds; changing any of these invalidates pinned expectations.
SEED_MAIN_CORPUS = 41119
SEED_LIFT_CORPUS = 6006
SEED_SCHED_CORPUS = 7007
SEED_ENUM_CORPUS = 8008


def enumerate_min_makespan(values: Sequence[int], machines: int) -> int:
    """Exhaustive minimum makespan over every one of the machines^m maps.

    Independent of the branch-and-bound oracle: base-n digit decoding
    enumerates each assignment exactly once, with no pruning anywhere.
    Vectorized in chunks so m <= 10 stays affordable.
    """
    m = len(values)
    vals = np.asarray(values, dtype=np.int64)
    total = machines**m
    powers = np.array([machines**j for j in range(m)], dtype=np.int64)
    best = None
    chunk = 1 << 19
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % machines
        worst = np.zeros(len(idx), dtype=np.int64)
        for b in range(machines):
            load = ((digits == b) * vals[None, :]).sum(axis=1)
            np.maximum(worst, load, out=worst)
        low = int(worst.min())
        best = low if best is None else min(best, low)
    return int(best) if best is not None else 0


def main_corpus_config() -> GeneratorConfig:
    return GeneratorConfig(
        seed=SEED_MAIN_CORPUS, agents=(2, 5), chores=(2, 14), value_max=50
    )


@pytest.fixture(scope="session")
def corpus_500() -> List[Instance]:
    """The 500-instance corpus shared by the two big property suites."""
    return list(generate(main_corpus_config(), 500))


@pytest.fixture(scope="session")
def profiles_500(corpus_500) -> Tuple[List[MmsProfile], float]:
    """Exact share profiles for the shared corpus plus oracle wall time."""
    started = time.perf_counter()
    profiles = [mms_profile(inst) for inst in corpus_500]
    elapsed = time.perf_counter() - started
    return profiles, elapsed
