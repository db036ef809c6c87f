"""Job sequences, timelines, and exact compression optimization.

A sequence is the list of classes served per stage; within a class, jobs
take their due-date slots in order, so the class list determines everything.
Timelines are built no-idle: every optimal schedule can be realized without
inserted idle time, and the cost of a (sequence, compression) pair is

    sum alpha[k][i] * tardiness  +  sum beta[k] * gamma[k] * u[k][i]
    +  sum setup costs along the sequence.

For a fixed sequence the best compressions are found exactly by a backward
pass of piecewise-linear cost-to-go functions: each stage folds a tardiness
hinge and the linear compression cost into the successor's function, then a
sliding-window minimum absorbs the continuous processing-time choice.
"""

from __future__ import annotations

from dataclasses import dataclass

from .instance import Instance, horizon_upper_bound
from .pwl import MERGE_TOL, Pwl


class SequenceError(ValueError):
    """A class list does not match the instance's job multiplicities."""


class PlanBoundsError(ValueError):
    """A compression amount lies outside [0, u_max] for its class."""


@dataclass(frozen=True)
class Sequence:
    """Classes served per stage, 0-based; the m-th occurrence of class k
    serves the m-th due-date slot of that class."""

    order: tuple[int, ...]

    @classmethod
    def from_1based(cls, order) -> "Sequence":
        return cls(tuple(int(k) - 1 for k in order))

    def to_1based(self) -> list[int]:
        return [k + 1 for k in self.order]

    def check(self, inst: Instance) -> None:
        counts = [0] * inst.n_classes
        for pos, k in enumerate(self.order):
            if not 0 <= k < inst.n_classes:
                raise SequenceError(f"stage {pos}: class index {k} out of range")
            counts[k] += 1
        if tuple(counts) != inst.jobs_per_class:
            raise SequenceError(
                f"class multiplicities {tuple(counts)} do not match instance {inst.jobs_per_class}"
            )

    def stages(self, inst: Instance) -> list["StageJob"]:
        """Expand into per-stage jobs with their setup data."""
        self.check(inst)
        seen = [0] * inst.n_classes
        prev: int | None = None
        out = []
        for pos, k in enumerate(self.order):
            out.append(
                StageJob(
                    stage=pos,
                    cls=k,
                    idx=seen[k],
                    prev_cls=prev,
                    st=inst.setup_time(prev, k),
                    sc=inst.setup_cost(prev, k),
                )
            )
            seen[k] += 1
            prev = k
        return out


@dataclass(frozen=True)
class StageJob:
    """One served job: its class, within-class index, and setup burden."""

    stage: int
    cls: int
    idx: int
    prev_cls: int | None
    st: float
    sc: float


@dataclass(frozen=True)
class CompressionPlan:
    """Per-job resource amounts u[k][i] >= 0, bounded by each class's u_max."""

    u: tuple[tuple[float, ...], ...]

    @classmethod
    def zero(cls, inst: Instance) -> "CompressionPlan":
        return cls(tuple((0.0,) * cp.n_jobs for cp in inst.classes))

    def check(self, inst: Instance, tol: float = 1e-9) -> None:
        if len(self.u) != inst.n_classes or any(
            len(row) != cp.n_jobs for row, cp in zip(self.u, inst.classes)
        ):
            raise PlanBoundsError("plan shape does not match the instance")
        for k, (row, cp) in enumerate(zip(self.u, inst.classes)):
            for i, v in enumerate(row):
                if v < -tol or v > cp.u_max + tol:
                    raise PlanBoundsError(
                        f"u[{k + 1}][{i + 1}] = {v} outside [0, {cp.u_max}]"
                    )


@dataclass(frozen=True)
class Timeline:
    """Derived per-job quantities, laid out [class][job], plus cost totals."""

    start: tuple[tuple[float, ...], ...]
    setup_time: tuple[tuple[float, ...], ...]
    proc: tuple[tuple[float, ...], ...]
    completion: tuple[tuple[float, ...], ...]
    tardiness: tuple[tuple[float, ...], ...]
    setup_cost: tuple[tuple[float, ...], ...]
    tardiness_cost: float
    compression_cost: float
    setup_cost_total: float
    total_cost: float


@dataclass(frozen=True)
class Schedule:
    """A sequence, its compression plan, and the resulting timeline."""

    sequence: Sequence
    plan: CompressionPlan
    timeline: Timeline

    @property
    def cost(self) -> float:
        return self.timeline.total_cost


def u_from_tau(inst: Instance, k: int, tau: float) -> float:
    """Resource amount that realizes processing time tau for class k."""
    cp = inst.classes[k]
    if tau < cp.pt_low - 1e-9 or tau > cp.pt_nom + 1e-9:
        raise ValueError(f"tau {tau} outside [{cp.pt_low}, {cp.pt_nom}] for class {k + 1}")
    return (cp.pt_nom - tau) / cp.gamma


def build_timeline(inst: Instance, seq: Sequence, plan: CompressionPlan) -> Timeline:
    """Forward no-idle construction of starts, setups, completions, and cost."""
    plan.check(inst)
    k_count = inst.n_classes
    start = [[0.0] * cp.n_jobs for cp in inst.classes]
    setup_t = [[0.0] * cp.n_jobs for cp in inst.classes]
    proc = [[0.0] * cp.n_jobs for cp in inst.classes]
    comp = [[0.0] * cp.n_jobs for cp in inst.classes]
    tard = [[0.0] * cp.n_jobs for cp in inst.classes]
    setup_c = [[0.0] * cp.n_jobs for cp in inst.classes]
    t = 0.0
    for job in seq.stages(inst):
        cp = inst.classes[job.cls]
        u = plan.u[job.cls][job.idx]
        pt = cp.pt_nom - cp.gamma * u
        start[job.cls][job.idx] = t
        setup_t[job.cls][job.idx] = job.st
        proc[job.cls][job.idx] = pt
        c = t + job.st + pt
        comp[job.cls][job.idx] = c
        tard[job.cls][job.idx] = max(c - cp.dd[job.idx], 0.0)
        setup_c[job.cls][job.idx] = job.sc
        t = c
    tard_cost = sum(
        inst.classes[k].alpha[i] * tard[k][i]
        for k in range(k_count)
        for i in range(inst.classes[k].n_jobs)
    )
    compr_cost = sum(
        inst.classes[k].beta * inst.classes[k].gamma * plan.u[k][i]
        for k in range(k_count)
        for i in range(inst.classes[k].n_jobs)
    )
    setup_total = sum(v for row in setup_c for v in row)
    return Timeline(
        start=tuple(tuple(r) for r in start),
        setup_time=tuple(tuple(r) for r in setup_t),
        proc=tuple(tuple(r) for r in proc),
        completion=tuple(tuple(r) for r in comp),
        tardiness=tuple(tuple(r) for r in tard),
        setup_cost=tuple(tuple(r) for r in setup_c),
        tardiness_cost=tard_cost,
        compression_cost=compr_cost,
        setup_cost_total=setup_total,
        total_cost=tard_cost + compr_cost + setup_total,
    )


# -- stage transforms shared with the state-space solver ----------------


def stage_objective(child_value: Pwl, alpha: float, dd: float, beta: float) -> Pwl:
    """F(s) = tardiness hinge at s + child cost-to-go at s - beta * s.

    s is the served job's completion time; the -beta*s term carries the
    compression credit so that the window minimum below is a function of the
    decision window's position only.
    """
    high = child_value.high
    return child_value.add(Pwl.hinge(alpha, dd, high)).add_affine(-beta, 0.0)


def stage_value(objective: Pwl, beta: float, pt_low: float, pt_nom: float,
                st: float, sc: float, high: float) -> Pwl:
    """Cost-to-go before the stage, as a function of the stage's start time t.

    Equals sc + beta*(pt_nom + st) + beta*t + min of the stage objective over
    completions s in [t + st + pt_low, t + st + pt_nom].
    """
    windowed = objective.window_min(pt_nom - pt_low)
    shifted = windowed.shift(st + pt_low, high=high)
    return shifted.add_affine(beta, sc + beta * (pt_nom + st))


def snap_u(u: float, u_max: float, tol: float = 1e-9) -> float:
    """Remove float residue at the compression bounds (0 and u_max)."""
    if abs(u) <= tol:
        return 0.0
    if abs(u - u_max) <= tol:
        return u_max
    return min(max(u, 0.0), u_max)


def select_completion(objective: Pwl, lo: float, hi: float) -> float:
    """Deterministic choice among equal-cost completion times.

    Take the fully-compressed endpoint of the window when it attains the
    minimum (compressing is then free); otherwise the latest minimizer, so
    work is deferred and jobs finish just in time.  This selection is what
    the reported optimal tableaus use.
    """
    best = objective.min_over(lo, hi)
    if objective.value_at(lo) <= best + MERGE_TOL:
        return lo
    return objective.argmin_over(lo, hi, prefer="highest")


def optimize_compressions(inst: Instance, seq: Sequence) -> tuple[CompressionPlan, float]:
    """Exact minimizer of the total cost over all compression plans for seq.

    Backward pass: cost-to-go functions along the job chain.  Forward pass:
    recover one optimal completion per stage with select_completion.
    """
    jobs = seq.stages(inst)
    high = horizon_upper_bound(inst)
    value = Pwl.zero(high)
    objectives: list[Pwl] = [None] * len(jobs)  # type: ignore[list-item]
    for job in reversed(jobs):
        cp = inst.classes[job.cls]
        obj = stage_objective(value, cp.alpha[job.idx], cp.dd[job.idx], cp.beta)
        objectives[job.stage] = obj
        value = stage_value(obj, cp.beta, cp.pt_low, cp.pt_nom, job.st, job.sc, high)
    total = value.value_at(0.0)

    u = [[0.0] * cp.n_jobs for cp in inst.classes]
    t = 0.0
    for job in jobs:
        cp = inst.classes[job.cls]
        lo = t + job.st + cp.pt_low
        hi = t + job.st + cp.pt_nom
        s = select_completion(objectives[job.stage], lo, hi)
        tau = s - t - job.st
        u[job.cls][job.idx] = snap_u((cp.pt_nom - tau) / cp.gamma, cp.u_max)
        t = s
    plan = CompressionPlan(tuple(tuple(r) for r in u))
    return plan, total


def solve_sequence(inst: Instance, seq: Sequence) -> Schedule:
    """Optimal schedule for a fixed sequence."""
    plan, _ = optimize_compressions(inst, seq)
    return Schedule(sequence=seq, plan=plan, timeline=build_timeline(inst, seq, plan))


# -- JSON serialization -----------------------------------------------


def schedule_to_dict(inst: Instance, sched: Schedule) -> dict:
    tl = sched.timeline
    return {
        "order": sched.sequence.to_1based(),
        "u": {str(k + 1): list(row) for k, row in enumerate(sched.plan.u)},
        "timeline": {
            "S": [list(r) for r in tl.start],
            "La": [list(r) for r in tl.setup_time],
            "pt": [list(r) for r in tl.proc],
            "C": [list(r) for r in tl.completion],
            "T": [list(r) for r in tl.tardiness],
            "Om": [list(r) for r in tl.setup_cost],
            "tardiness_cost": tl.tardiness_cost,
            "compression_cost": tl.compression_cost,
            "setup_cost": tl.setup_cost_total,
            "total_cost": tl.total_cost,
        },
    }


def schedule_from_dict(inst: Instance, doc: dict) -> Schedule:
    """Rebuild a schedule from its JSON form; the timeline block is optional
    on input and always recomputed."""
    if not isinstance(doc, dict) or "order" not in doc or "u" not in doc:
        raise ValueError("schedule document needs 'order' and 'u'")
    seq = Sequence.from_1based(doc["order"])
    seq.check(inst)
    u = []
    for k, cp in enumerate(inst.classes):
        row = doc["u"].get(str(k + 1))
        if row is None or len(row) != cp.n_jobs:
            raise ValueError(f"u['{k + 1}'] must list {cp.n_jobs} amounts")
        u.append(tuple(float(v) for v in row))
    plan = CompressionPlan(tuple(u))
    return Schedule(sequence=seq, plan=plan, timeline=build_timeline(inst, seq, plan))
