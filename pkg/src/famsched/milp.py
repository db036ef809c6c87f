"""Mixed-integer linear models for the scheduling problem.

Three formulations are compiled from an instance into a solver-agnostic
model object:

* model 1 - relative-position binaries x plus immediate-successor binaries
  delta (2*N^2 binaries);
* model 2 - immediate-successor binaries only (N^2 binaries);
* model 3 - stage-assignment binaries from the state-space view (N^2).

Models are emitted as standard LP text and checked against assignments; no
solver is embedded.  Size reports count structural constraint rows only:
variable-domain declarations become bounds, and the objective is counted as
one auxiliary among the "other" (non-binary) variables.

Variable naming (1-based class/job ids, 0-based stage ids):
``x_h_j_k_i``, ``d_h_j_k_i``, ``u_k_i``, ``S_k_i``, ``pt_k_i``, ``T_k_i``,
``Om_k_i``, ``La_k_i``, ``C_k_i``, ``xs_k_i_j``, ``tau_j``, ``Omt_j``,
``Lat_j``, ``St_j``, ``Ct_j``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .instance import Instance, horizon_upper_bound
from .schedule import Schedule

SIZE_CONVENTION = (
    "other = continuous variables + 1 (objective auxiliary); "
    "constraints = structural rows, variable-domain declarations excluded"
)


@dataclass(frozen=True)
class Variable:
    name: str
    kind: str  # "binary" | "continuous"
    lb: float = 0.0
    ub: float | None = None


@dataclass(frozen=True)
class Constraint:
    name: str
    terms: tuple[tuple[float, str], ...]
    sense: str  # "<=", "=", ">="
    rhs: float


@dataclass
class MilpModel:
    name: str
    variables: list[Variable] = field(default_factory=list)
    constraints: list[Constraint] = field(default_factory=list)
    objective: list[tuple[float, str]] = field(default_factory=list)
    objective_constant: float = 0.0

    def variable_names(self) -> set[str]:
        return {v.name for v in self.variables}

    def binaries(self) -> list[Variable]:
        return [v for v in self.variables if v.kind == "binary"]

    def continuous(self) -> list[Variable]:
        return [v for v in self.variables if v.kind == "continuous"]

    def validate(self) -> None:
        names = [v.name for v in self.variables]
        if len(names) != len(set(names)):
            raise ValueError("duplicate variable names")
        cnames = [c.name for c in self.constraints]
        if len(cnames) != len(set(cnames)):
            raise ValueError("duplicate constraint names")
        declared = set(names)
        for c in self.constraints:
            for _, var in c.terms:
                if var not in declared:
                    raise ValueError(f"constraint {c.name} references unknown variable {var}")
        for coef, var in self.objective:
            if var not in declared:
                raise ValueError(f"objective references unknown variable {var}")


@dataclass(frozen=True)
class SizeReport:
    binary_count: int
    other_count: int
    constraint_count: int
    convention: str = SIZE_CONVENTION


def size_report(model: MilpModel) -> SizeReport:
    return SizeReport(
        binary_count=len(model.binaries()),
        other_count=len(model.continuous()) + 1,
        constraint_count=len(model.constraints),
    )


class _Builder:
    def __init__(self, name: str):
        self.model = MilpModel(name=name)

    def var(self, name: str, kind: str, lb: float = 0.0, ub: float | None = None) -> str:
        self.model.variables.append(Variable(name, kind, lb, ub))
        return name

    def con(self, name: str, terms, sense: str, rhs: float) -> None:
        kept = tuple((float(c), v) for c, v in terms if c != 0.0)
        self.model.constraints.append(Constraint(name, kept, sense, float(rhs)))

    def done(self) -> MilpModel:
        self.model.validate()
        return self.model


def _jobs(inst: Instance) -> list[tuple[int, int]]:
    """(class, job) pairs, 1-based, in class-major order."""
    return [(k + 1, i + 1) for k in range(inst.n_classes) for i in range(inst.classes[k].n_jobs)]


def _check_big_m(inst: Instance, big_m: float | None) -> float:
    h = horizon_upper_bound(inst)
    if big_m is None:
        return h
    if big_m < h:
        raise ValueError(f"big-M {big_m} is below the completion-time bound {h}")
    return float(big_m)


def _add_job_continuous(b: _Builder, jobs, names) -> None:
    for prefix in names:
        for k, i in jobs:
            b.var(f"{prefix}_{k}_{i}", "continuous")


def _add_common_delta_rows(b: _Builder, inst: Instance, jobs) -> None:
    """Successor-variable rows shared by models 1 and 2."""
    n = len(jobs)
    for k, i in jobs:
        sc_terms = [(1.0, f"Om_{k}_{i}")]
        st_terms = [(1.0, f"La_{k}_{i}")]
        for h, j in jobs:
            sc_terms.append((-inst.sc[h - 1][k - 1], f"d_{h}_{j}_{k}_{i}"))
            st_terms.append((-inst.st[h - 1][k - 1], f"d_{h}_{j}_{k}_{i}"))
        b.con(f"scost_{k}_{i}", sc_terms, "=", 0.0)
        b.con(f"stime_{k}_{i}", st_terms, "=", 0.0)
    b.con(
        "all_jobs",
        [(1.0, f"d_{h}_{j}_{k}_{i}") for h, j in jobs for k, i in jobs],
        "=",
        n - 1,
    )
    for k, i in jobs:
        b.con(f"pred_{k}_{i}", [(1.0, f"d_{h}_{j}_{k}_{i}") for h, j in jobs], "<=", 1.0)
    for h, j in jobs:
        b.con(f"succ_{h}_{j}", [(1.0, f"d_{h}_{j}_{k}_{i}") for k, i in jobs], "<=", 1.0)
    for k in range(1, inst.n_classes + 1):
        nk = inst.classes[k - 1].n_jobs
        for i in range(1, nk + 1):
            b.con(
                f"gdd_lo_{k}_{i}",
                [(1.0, f"d_{k}_{i}_{k}_{j}") for j in range(1, i + 1)],
                "=",
                0.0,
            )
        for i in range(1, nk - 1):
            b.con(
                f"gdd_hi_{k}_{i}",
                [(1.0, f"d_{k}_{i}_{k}_{j}") for j in range(i + 2, nk + 1)],
                "=",
                0.0,
            )
    for k, i in jobs:
        cp = inst.classes[k - 1]
        b.con(f"ubound_{k}_{i}", [(1.0, f"u_{k}_{i}")], "<=", cp.u_max)
        b.con(
            f"ptdef_{k}_{i}",
            [(1.0, f"pt_{k}_{i}"), (cp.gamma, f"u_{k}_{i}")],
            "=",
            cp.pt_nom,
        )


def _tardiness_objective(inst: Instance, jobs) -> list[tuple[float, str]]:
    obj = []
    for k, i in jobs:
        cp = inst.classes[k - 1]
        obj.append((cp.alpha[i - 1], f"T_{k}_{i}"))
    for k, i in jobs:
        cp = inst.classes[k - 1]
        obj.append((cp.beta * cp.gamma, f"u_{k}_{i}"))
    for k, i in jobs:
        obj.append((1.0, f"Om_{k}_{i}"))
    return obj


def build_model1(inst: Instance, big_m: float | None = None, simple_link: bool = False) -> MilpModel:
    """Formulation with relative-position and successor binaries.

    ``simple_link`` swaps the big-M link row x >= 1 - M(1 - delta) for the
    equivalent x >= delta.
    """
    m = _check_big_m(inst, big_m)
    jobs = _jobs(inst)
    b = _Builder("model1")
    for h, j in jobs:
        for k, i in jobs:
            b.var(f"x_{h}_{j}_{k}_{i}", "binary", 0.0, 1.0)
    for h, j in jobs:
        for k, i in jobs:
            b.var(f"d_{h}_{j}_{k}_{i}", "binary", 0.0, 1.0)
    _add_job_continuous(b, jobs, ("u", "S", "pt", "T", "Om", "La"))
    b.model.objective = _tardiness_objective(inst, jobs)

    for k, i in jobs:
        cp = inst.classes[k - 1]
        b.con(
            f"tard_{k}_{i}",
            [(1.0, f"T_{k}_{i}"), (-1.0, f"S_{k}_{i}"), (-1.0, f"La_{k}_{i}"), (-1.0, f"pt_{k}_{i}")],
            ">=",
            -cp.dd[i - 1],
        )
    _add_common_delta_rows(b, inst, jobs)
    for h, j in jobs:
        for k, i in jobs:
            if (h, j) == (k, i):
                continue
            b.con(
                f"after_{h}_{j}_{k}_{i}",
                [
                    (1.0, f"S_{k}_{i}"),
                    (-1.0, f"S_{h}_{j}"),
                    (-1.0, f"La_{h}_{j}"),
                    (-1.0, f"pt_{h}_{j}"),
                    (-m, f"x_{h}_{j}_{k}_{i}"),
                ],
                ">=",
                -m,
            )
            b.con(
                f"before_{h}_{j}_{k}_{i}",
                [
                    (1.0, f"S_{h}_{j}"),
                    (-1.0, f"S_{k}_{i}"),
                    (-1.0, f"La_{k}_{i}"),
                    (-1.0, f"pt_{k}_{i}"),
                    (m, f"x_{h}_{j}_{k}_{i}"),
                ],
                ">=",
                0.0,
            )
    for k in range(1, inst.n_classes + 1):
        nk = inst.classes[k - 1].n_jobs
        for i in range(1, nk + 1):
            for j in range(1, i):
                b.con(f"gx_one_{k}_{i}_{j}", [(1.0, f"x_{k}_{j}_{k}_{i}")], "=", 1.0)
            for j in range(i, nk + 1):
                b.con(f"gx_zero_{k}_{i}_{j}", [(1.0, f"x_{k}_{j}_{k}_{i}")], "=", 0.0)
    for h, j in jobs:
        for k, i in jobs:
            if (h, j) == (k, i):
                continue
            b.con(
                f"cyc2_{h}_{j}_{k}_{i}",
                [(1.0, f"x_{h}_{j}_{k}_{i}"), (1.0, f"x_{k}_{i}_{h}_{j}")],
                "=",
                1.0,
            )
    for h, j in jobs:
        for k, i in jobs:
            if (h, j) == (k, i):
                continue
            for l, mm in jobs:
                if (l, mm) in ((h, j), (k, i)):
                    continue
                b.con(
                    f"cyc3_{h}_{j}_{k}_{i}_{l}_{mm}",
                    [
                        (1.0, f"x_{h}_{j}_{k}_{i}"),
                        (1.0, f"x_{k}_{i}_{l}_{mm}"),
                        (1.0, f"x_{l}_{mm}_{h}_{j}"),
                    ],
                    "<=",
                    2.0,
                )
    for h, j in jobs:
        for k, i in jobs:
            if simple_link:
                b.con(
                    f"link_{h}_{j}_{k}_{i}",
                    [(1.0, f"x_{h}_{j}_{k}_{i}"), (-1.0, f"d_{h}_{j}_{k}_{i}")],
                    ">=",
                    0.0,
                )
            else:
                b.con(
                    f"link_{h}_{j}_{k}_{i}",
                    [(1.0, f"x_{h}_{j}_{k}_{i}"), (-m, f"d_{h}_{j}_{k}_{i}")],
                    ">=",
                    1.0 - m,
                )
    return b.done()


def build_model2(inst: Instance, big_m: float | None = None) -> MilpModel:
    """Successor-binaries-only formulation with explicit completion times."""
    m = _check_big_m(inst, big_m)
    jobs = _jobs(inst)
    b = _Builder("model2")
    for h, j in jobs:
        for k, i in jobs:
            b.var(f"d_{h}_{j}_{k}_{i}", "binary", 0.0, 1.0)
    _add_job_continuous(b, jobs, ("u", "S", "pt", "T", "Om", "La", "C"))
    b.model.objective = _tardiness_objective(inst, jobs)

    for k, i in jobs:
        cp = inst.classes[k - 1]
        b.con(
            f"comp_{k}_{i}",
            [(1.0, f"C_{k}_{i}"), (-1.0, f"S_{k}_{i}"), (-1.0, f"La_{k}_{i}"), (-1.0, f"pt_{k}_{i}")],
            "=",
            0.0,
        )
        b.con(f"tard_{k}_{i}", [(1.0, f"T_{k}_{i}"), (-1.0, f"C_{k}_{i}")], ">=", -cp.dd[i - 1])
    _add_common_delta_rows(b, inst, jobs)
    for h, j in jobs:
        for k, i in jobs:
            if (h, j) == (k, i):
                continue
            b.con(
                f"after_{h}_{j}_{k}_{i}",
                [(1.0, f"S_{k}_{i}"), (-1.0, f"C_{h}_{j}"), (-m, f"d_{h}_{j}_{k}_{i}")],
                ">=",
                -m,
            )
    for k, i in jobs:
        terms = [(1.0, f"C_{k}_{i}"), (-1.0, f"pt_{k}_{i}")]
        terms += [(m, f"d_{h}_{j}_{k}_{i}") for h, j in jobs]
        b.con(f"first_{k}_{i}", terms, ">=", 0.0)
    return b.done()


def build_model3(inst: Instance, big_m: float | None = None) -> MilpModel:
    """Stage-assignment formulation derived from the state-space view."""
    m = _check_big_m(inst, big_m)
    jobs = _jobs(inst)
    n = len(jobs)
    stages = range(n)
    b = _Builder("model3")
    for k, i in jobs:
        for j in stages:
            b.var(f"xs_{k}_{i}_{j}", "binary", 0.0, 1.0)
    _add_job_continuous(b, jobs, ("S", "C", "pt", "T"))
    for prefix in ("tau", "Omt", "Lat", "St", "Ct"):
        for j in stages:
            b.var(f"{prefix}_{j}", "continuous")
    obj: list[tuple[float, str]] = []
    const = 0.0
    for k, i in jobs:
        cp = inst.classes[k - 1]
        obj.append((cp.alpha[i - 1], f"T_{k}_{i}"))
    for k, i in jobs:
        cp = inst.classes[k - 1]
        obj.append((-cp.beta, f"pt_{k}_{i}"))
        const += cp.beta * cp.pt_nom
    for j in stages:
        obj.append((1.0, f"Omt_{j}"))
    b.model.objective = obj
    b.model.objective_constant = const

    for k, i in jobs:
        cp = inst.classes[k - 1]
        b.con(f"tard_{k}_{i}", [(1.0, f"T_{k}_{i}"), (-1.0, f"C_{k}_{i}")], ">=", -cp.dd[i - 1])
        b.con(f"pt_lo_{k}_{i}", [(1.0, f"pt_{k}_{i}")], ">=", cp.pt_low)
        b.con(f"pt_hi_{k}_{i}", [(1.0, f"pt_{k}_{i}")], "<=", cp.pt_nom)
    for j in range(1, n):
        for h in range(1, inst.n_classes + 1):
            for k in range(1, inst.n_classes + 1):
                sc = inst.sc[h - 1][k - 1]
                st = inst.st[h - 1][k - 1]
                prev_terms = [f"xs_{h}_{i}_{j - 1}" for i in range(1, inst.classes[h - 1].n_jobs + 1)]
                cur_terms = [f"xs_{k}_{i}_{j}" for i in range(1, inst.classes[k - 1].n_jobs + 1)]
                b.con(
                    f"scost_{j}_{h}_{k}",
                    [(1.0, f"Omt_{j}")]
                    + [(-sc, v) for v in prev_terms]
                    + [(-sc, v) for v in cur_terms],
                    ">=",
                    -sc,
                )
                b.con(
                    f"stime_{j}_{h}_{k}",
                    [(1.0, f"Lat_{j}")]
                    + [(-st, v) for v in prev_terms]
                    + [(-st, v) for v in cur_terms],
                    ">=",
                    -st,
                )
    b.con("scost_0", [(1.0, "Omt_0")], "=", 0.0)
    b.con("stime_0", [(1.0, "Lat_0")], "=", 0.0)
    for j in range(1, n):
        b.con(f"chain_{j}", [(1.0, f"St_{j}"), (-1.0, f"Ct_{j - 1}")], "=", 0.0)
    b.con("chain_0", [(1.0, "St_0")], "=", 0.0)
    for j in stages:
        b.con(
            f"scomp_{j}",
            [(1.0, f"Ct_{j}"), (-1.0, f"St_{j}"), (-1.0, f"Lat_{j}"), (-1.0, f"tau_{j}")],
            "=",
            0.0,
        )
    for j in stages:
        for k, i in jobs:
            b.con(
                f"ptlink_{j}_{k}_{i}",
                [(1.0, f"tau_{j}"), (-1.0, f"pt_{k}_{i}"), (-m, f"xs_{k}_{i}_{j}")],
                ">=",
                -m,
            )
            b.con(
                f"slink_{j}_{k}_{i}",
                [(1.0, f"S_{k}_{i}"), (-1.0, f"St_{j}"), (-m, f"xs_{k}_{i}_{j}")],
                ">=",
                -m,
            )
            b.con(
                f"clink_{j}_{k}_{i}",
                [(1.0, f"C_{k}_{i}"), (-1.0, f"Ct_{j}"), (-m, f"xs_{k}_{i}_{j}")],
                ">=",
                -m,
            )
    for k in range(1, inst.n_classes + 1):
        for i in range(2, inst.classes[k - 1].n_jobs + 1):
            b.con(f"gdd_{k}_{i}", [(1.0, f"S_{k}_{i}"), (-1.0, f"C_{k}_{i - 1}")], ">=", 0.0)
    for j in stages:
        b.con(f"stage_one_{j}", [(1.0, f"xs_{k}_{i}_{j}") for k, i in jobs], "=", 1.0)
    for k in range(1, inst.n_classes + 1):
        nk = inst.classes[k - 1].n_jobs
        b.con(
            f"class_total_{k}",
            [(1.0, f"xs_{k}_{i}_{j}") for i in range(1, nk + 1) for j in stages],
            "=",
            float(nk),
        )
    for k, i in jobs:
        b.con(f"once_{k}_{i}", [(1.0, f"xs_{k}_{i}_{j}") for j in stages], "=", 1.0)
    return b.done()


def build_model(inst: Instance, which: int, big_m: float | None = None) -> MilpModel:
    if which == 1:
        return build_model1(inst, big_m)
    if which == 2:
        return build_model2(inst, big_m)
    if which == 3:
        return build_model3(inst, big_m)
    raise ValueError(f"unknown model id {which}")


# -- schedule encoding and certificate checking -------------------------


def encode_schedule(inst: Instance, sched: Schedule, which: int) -> dict[str, float]:
    """Assignment of every model variable implied by a feasible schedule."""
    stages = sched.sequence.stages(inst)  # raises on multiplicity mismatch
    sched.plan.check(inst)
    tl = sched.timeline
    pos = {(job.cls + 1, job.idx + 1): job.stage for job in stages}
    jobs = _jobs(inst)
    a: dict[str, float] = {}

    def job_vals(k: int, i: int) -> dict[str, float]:
        return {
            "u": sched.plan.u[k - 1][i - 1],
            "S": tl.start[k - 1][i - 1],
            "pt": tl.proc[k - 1][i - 1],
            "T": tl.tardiness[k - 1][i - 1],
            "Om": tl.setup_cost[k - 1][i - 1],
            "La": tl.setup_time[k - 1][i - 1],
            "C": tl.completion[k - 1][i - 1],
        }

    if which in (1, 2):
        for h, j in jobs:
            for k, i in jobs:
                a[f"d_{h}_{j}_{k}_{i}"] = 1.0 if pos[(k, i)] == pos[(h, j)] + 1 else 0.0
        if which == 1:
            for h, j in jobs:
                for k, i in jobs:
                    a[f"x_{h}_{j}_{k}_{i}"] = 1.0 if pos[(h, j)] < pos[(k, i)] else 0.0
        fields = ("u", "S", "pt", "T", "Om", "La") if which == 1 else ("u", "S", "pt", "T", "Om", "La", "C")
        for k, i in jobs:
            vals = job_vals(k, i)
            for f in fields:
                a[f"{f}_{k}_{i}"] = vals[f]
        return a
    if which == 3:
        for k, i in jobs:
            for j in range(len(jobs)):
                a[f"xs_{k}_{i}_{j}"] = 1.0 if pos[(k, i)] == j else 0.0
        for k, i in jobs:
            vals = job_vals(k, i)
            for f in ("S", "C", "pt", "T"):
                a[f"{f}_{k}_{i}"] = vals[f]
        for job in stages:
            j = job.stage
            a[f"tau_{j}"] = tl.proc[job.cls][job.idx]
            a[f"Omt_{j}"] = tl.setup_cost[job.cls][job.idx]
            a[f"Lat_{j}"] = tl.setup_time[job.cls][job.idx]
            a[f"St_{j}"] = tl.start[job.cls][job.idx]
            a[f"Ct_{j}"] = tl.completion[job.cls][job.idx]
        return a
    raise ValueError(f"unknown model id {which}")


@dataclass(frozen=True)
class CheckViolation:
    kind: str  # "constraint" | "bound" | "integrality"
    name: str
    amount: float
    detail: str


@dataclass(frozen=True)
class CheckReport:
    violations: tuple[CheckViolation, ...]
    objective: float

    @property
    def ok(self) -> bool:
        return not self.violations


def check_assignment(model: MilpModel, assignment: dict[str, float], tol: float = 1e-6) -> CheckReport:
    """Feasibility certificate: every row and bound checked against tol."""
    for v in model.variables:
        if v.name not in assignment:
            raise ValueError(f"assignment missing variable {v.name}")
    out: list[CheckViolation] = []
    for v in model.variables:
        val = assignment[v.name]
        if val < v.lb - tol:
            out.append(CheckViolation("bound", v.name, v.lb - val, f"{v.name}={val} < lb {v.lb}"))
        if v.ub is not None and val > v.ub + tol:
            out.append(CheckViolation("bound", v.name, val - v.ub, f"{v.name}={val} > ub {v.ub}"))
        if v.kind == "binary" and abs(val - round(val)) > tol:
            out.append(CheckViolation("integrality", v.name, abs(val - round(val)), f"{v.name}={val} not integral"))
    for c in model.constraints:
        lhs = sum(coef * assignment[var] for coef, var in c.terms)
        gap = 0.0
        if c.sense == "<=":
            gap = lhs - c.rhs
        elif c.sense == ">=":
            gap = c.rhs - lhs
        else:
            gap = abs(lhs - c.rhs)
        if gap > tol:
            out.append(CheckViolation("constraint", c.name, gap, f"{c.name}: lhs={lhs} {c.sense} rhs={c.rhs}"))
    objective = model.objective_constant + sum(coef * assignment[var] for coef, var in model.objective)
    return CheckReport(tuple(out), objective)


# -- LP text ------------------------------------------------------------


def _fmt(v: float) -> str:
    if v == int(v) and abs(v) < 1e15:
        return str(int(v))
    return repr(v)


def _terms_text(terms) -> str:
    parts = []
    for coef, var in terms:
        sign = "-" if coef < 0 else "+"
        parts.append(f"{sign} {_fmt(abs(coef))} {var}")
    if not parts:
        return "0 " + "__zero__"
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else text


def emit_lp(model: MilpModel) -> str:
    """Standard LP text: objective, rows, bounds, binary section."""
    lines = [f"\\ Problem: {model.name}"]
    if model.objective_constant:
        lines.append(f"\\ objective_constant: {model.objective_constant!r}")
    lines.append("Minimize")
    obj = _terms_text(model.objective)
    lines.append(f" obj: {obj}")
    lines.append("Subject To")
    for c in model.constraints:
        sense = "=" if c.sense == "=" else c.sense
        lines.append(f" {c.name}: {_terms_text(c.terms)} {sense} {_fmt(c.rhs)}")
    lines.append("Bounds")
    for v in model.continuous():
        if v.ub is None:
            lines.append(f" {v.name} >= {_fmt(v.lb)}")
        else:
            lines.append(f" {_fmt(v.lb)} <= {v.name} <= {_fmt(v.ub)}")
    lines.append("Binaries")
    for v in model.binaries():
        lines.append(f" {v.name}")
    lines.append("End")
    return "\n".join(lines) + "\n"


_TOKEN = re.compile(r"(<=|>=|=|\+|-|[A-Za-z_][A-Za-z0-9_.]*|[0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?)")
_SECTION = re.compile(
    r"^\s*(minimize|maximize|subject\s+to|st|s\.t\.|bounds|binaries|binary|bin|generals|general|gen|end)\s*$",
    re.IGNORECASE,
)


def _parse_terms(tokens: list[str]) -> list[tuple[float, str]]:
    terms: list[tuple[float, str]] = []
    sign = 1.0
    coef: float | None = None
    for tok in tokens:
        if tok == "+":
            sign, coef = 1.0, None
        elif tok == "-":
            sign, coef = -1.0, None
        elif re.fullmatch(r"[0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?", tok):
            coef = float(tok)
        else:
            if tok != "__zero__":
                terms.append((sign * (1.0 if coef is None else coef), tok))
            sign, coef = 1.0, None
    return terms


def parse_lp(text: str) -> MilpModel:
    """Minimal LP reader for files produced by emit_lp."""
    model = MilpModel(name="parsed")
    section = None
    obj_tokens: list[str] = []
    con_lines: list[str] = []
    binaries: list[str] = []
    bound_lines: list[str] = []
    for raw in text.splitlines():
        if raw.lstrip().startswith("\\"):
            msg = raw.lstrip()[1:].strip()
            if msg.startswith("objective_constant:"):
                model.objective_constant = float(msg.split(":", 1)[1])
            continue
        if _SECTION.match(raw):
            section = _SECTION.match(raw).group(1).lower()
            continue
        line = raw.strip()
        if not line:
            continue
        if section in ("minimize", "maximize"):
            obj_tokens.append(line)
        elif section in ("subject to", "st", "s.t."):
            if re.match(r"^[A-Za-z_][\w.]*\s*:", line):
                con_lines.append(line)
            elif con_lines:
                con_lines[-1] += " " + line
        elif section == "bounds":
            bound_lines.append(line)
        elif section in ("binaries", "binary", "bin"):
            binaries.extend(line.split())
    obj_text = " ".join(obj_tokens)
    if ":" in obj_text:
        obj_text = obj_text.split(":", 1)[1]
    model.objective = _parse_terms(_TOKEN.findall(obj_text))
    for line in con_lines:
        name, rest = line.split(":", 1)
        tokens = _TOKEN.findall(rest)
        sense_idx = next(i for i, t in enumerate(tokens) if t in ("<=", ">=", "="))
        terms = _parse_terms(tokens[:sense_idx])
        rhs_tokens = tokens[sense_idx + 1:]
        rhs_sign = -1.0 if "-" in rhs_tokens else 1.0
        rhs = rhs_sign * float(rhs_tokens[-1])
        model.constraints.append(Constraint(name.strip(), tuple(terms), tokens[sense_idx], rhs))
    seen: set[str] = set()
    for name in binaries:
        model.variables.append(Variable(name, "binary", 0.0, 1.0))
        seen.add(name)
    for line in bound_lines:
        tokens = _TOKEN.findall(line)
        names = [t for t in tokens if re.match(r"^[A-Za-z_]", t) and t not in ("free",)]
        if not names:
            continue
        name = names[0]
        nums = [float(t) for t in tokens if re.fullmatch(r"[0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?", t)]
        signs = [i for i, t in enumerate(tokens) if t == "-"]
        lb = 0.0
        ub: float | None = None
        if "free" in line:
            lb = float("-inf")
        elif line.find(name) == 0 or tokens[0] == name:
            # "name >= lb" or "name <= ub"
            val = nums[0] if nums else 0.0
            if signs:
                val = -val
            if ">=" in tokens:
                lb = val
            else:
                ub = val
        else:
            # "lb <= name <= ub" or "lb <= name"
            lb = nums[0] if nums else 0.0
            if len(nums) > 1:
                ub = nums[1]
        if name not in seen:
            model.variables.append(Variable(name, "continuous", lb, ub))
            seen.add(name)
    return model
