"""Random instance generation and brute-force sequence enumeration.

The generator draws every parameter from the uniform ranges used for the
benchmark batches (compression rate fixed to 1, due-date ladders built by
accumulating uniform steps from a fixed origin).  Enumeration over all class
interleavings, with exact per-sequence compression optimization, is the
independent optimality oracle for the state-space solver and for MILP
certificates.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Iterator

import numpy as np

from .instance import ClassParams, Instance
from .schedule import Schedule, Sequence, solve_sequence

RNG_NAME = "numpy-default_rng"
INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class GenParams:
    """Sampling plan for one random instance (ranges are closed [a, b])."""

    jobs: tuple[int, ...]
    seed: int = 0
    pt_nom_range: tuple[float, float] = (6.0, 10.0)
    pt_low_range: tuple[float, float] = (2.0, 6.0)
    dd_start: float = 10.0
    dd_step_range: tuple[float, float] = (0.5, 12.0)
    st_range: tuple[float, float] = (1.0, 3.0)
    sc_range: tuple[float, float] = (0.5, 2.5)
    alpha_range: tuple[float, float] = (0.5, 2.5)
    beta_range: tuple[float, float] = (0.5, 2.5)
    gamma: float = 1.0

    def __post_init__(self):
        if len(self.jobs) < 2:
            raise ValueError("at least two classes are required")
        if any(n < 1 for n in self.jobs):
            raise ValueError("every class needs at least one job")
        for name in ("pt_nom_range", "pt_low_range", "dd_step_range",
                     "st_range", "sc_range", "alpha_range", "beta_range"):
            a, b = getattr(self, name)
            if a > b:
                raise ValueError(f"{name} is not well-ordered: {a} > {b}")
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")

    def metadata(self) -> dict:
        """Reproducibility record stored alongside generated instances."""
        return {
            "generator": RNG_NAME,
            "seed": self.seed,
            "jobs": list(self.jobs),
        }


def generate(params: GenParams) -> Instance:
    """Deterministic instance for a seed; always passes validation.

    pt_low is resampled until it does not exceed the class's pt_nom, and
    setup matrices get exact zero diagonals.
    """
    rng = np.random.default_rng(params.seed)

    def u(rg: tuple[float, float]) -> float:
        return float(rng.uniform(rg[0], rg[1]))

    classes = []
    for n_k in params.jobs:
        pt_nom = u(params.pt_nom_range)
        pt_low = u(params.pt_low_range)
        attempts = 0
        while pt_low > pt_nom:
            pt_low = u(params.pt_low_range)
            attempts += 1
            if attempts > 1000:
                raise ValueError(
                    f"pt_low_range {params.pt_low_range} cannot fall below sampled pt_nom {pt_nom}"
                )
        beta = u(params.beta_range)
        alpha = tuple(u(params.alpha_range) for _ in range(n_k))
        dd = []
        prev = params.dd_start
        for _ in range(n_k):
            prev = prev + u(params.dd_step_range)
            dd.append(prev)
        classes.append(
            ClassParams(pt_nom=pt_nom, pt_low=pt_low, beta=beta,
                        gamma=params.gamma, alpha=alpha, dd=tuple(dd))
        )
    k_count = len(params.jobs)
    st = [[0.0] * k_count for _ in range(k_count)]
    sc = [[0.0] * k_count for _ in range(k_count)]
    for h in range(k_count):
        for k in range(k_count):
            if h == k:
                continue
            st[h][k] = u(params.st_range)
            sc[h][k] = u(params.sc_range)
    return Instance(
        classes=tuple(classes),
        st=tuple(tuple(r) for r in st),
        sc=tuple(tuple(r) for r in sc),
    )


def count_sequences(inst: Instance) -> int:
    """Number of distinct class interleavings: N! / prod(N_k!)."""
    total = factorial(inst.total_jobs)
    for n_k in inst.jobs_per_class:
        total //= factorial(n_k)
    if total > INT64_MAX:
        raise OverflowError(f"sequence count {total} exceeds the int64 range")
    return total


def enumerate_sequences(inst: Instance) -> Iterator[Sequence]:
    """All class interleavings in lexicographic order of the class list."""
    remaining = list(inst.jobs_per_class)
    prefix: list[int] = []
    n = inst.total_jobs

    def rec() -> Iterator[Sequence]:
        if len(prefix) == n:
            yield Sequence(tuple(prefix))
            return
        for k in range(len(remaining)):
            if remaining[k] == 0:
                continue
            remaining[k] -= 1
            prefix.append(k)
            yield from rec()
            prefix.pop()
            remaining[k] += 1

    yield from rec()


def brute_force_solve(inst: Instance, cap: int = 10**6) -> Schedule:
    """Global optimum by full enumeration; ties keep the lexicographically
    smallest class list (guaranteed by enumeration order plus strict
    improvement)."""
    total = count_sequences(inst)
    if total > cap:
        raise ValueError(f"sequence count {total} exceeds the enumeration cap {cap}")
    best: Schedule | None = None
    for seq in enumerate_sequences(inst):
        sched = solve_sequence(inst, seq)
        if best is None or sched.cost < best.cost - 1e-9:
            best = sched
    assert best is not None
    return best
