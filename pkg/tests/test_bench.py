"""Instance generator conformance and the enumeration oracle."""

import pytest

from famsched.bench import (
    GenParams,
    brute_force_solve,
    count_sequences,
    enumerate_sequences,
    generate,
)
from famsched.dp import backward_induction
from famsched.instance import ClassParams, Instance, validate_instance
from tests.conftest import EX1_COST, EX1_ORDER_1BASED, EX1_U


def test_generation_deterministic():
    params = GenParams(jobs=(3, 4), seed=42)
    assert generate(params) == generate(params)


def test_generated_ranges_hold():
    for seed in range(120):
        inst = generate(GenParams(jobs=(3, 3), seed=seed))
        assert validate_instance(inst) == []
        for cp in inst.classes:
            assert 6.0 <= cp.pt_nom <= 10.0
            assert 2.0 <= cp.pt_low <= 6.0
            assert cp.pt_low <= cp.pt_nom
            assert 0.5 <= cp.beta <= 2.5
            assert cp.gamma == 1.0
            assert all(0.5 <= a <= 2.5 for a in cp.alpha)
            prev = 10.0
            for d in cp.dd:
                step = d - prev
                assert 0.5 <= step <= 12.0
                prev = d
        for h in range(2):
            for k in range(2):
                if h == k:
                    assert inst.st[h][k] == 0.0
                    assert inst.sc[h][k] == 0.0
                else:
                    assert 1.0 <= inst.st[h][k] <= 3.0
                    assert 0.5 <= inst.sc[h][k] <= 2.5


def test_param_validation():
    with pytest.raises(ValueError):
        GenParams(jobs=(3,))
    with pytest.raises(ValueError):
        GenParams(jobs=(3, 0))
    with pytest.raises(ValueError):
        GenParams(jobs=(2, 2), st_range=(3.0, 1.0))


@pytest.mark.parametrize("jobs,count", [((4, 3), 35), ((5, 5), 252), ((1, 1, 1), 6)])
def test_count_sequences(jobs, count):
    classes = tuple(
        ClassParams(8.0, 4.0, 1.0, 1.0, (1.0,) * n, tuple(float(10 + i) for i in range(n)))
        for n in jobs
    )
    k = len(jobs)
    st = tuple(tuple(0.0 for _ in range(k)) for _ in range(k))
    inst = Instance(classes, st, st)
    assert count_sequences(inst) == count


def test_count_sequences_overflow():
    classes = tuple(
        ClassParams(8.0, 4.0, 1.0, 1.0, (1.0,) * 35, tuple(float(10 + i) for i in range(35)))
        for _ in range(2)
    )
    inst = Instance(classes, ((0.0, 1.0), (1.0, 0.0)), ((0.0, 1.0), (1.0, 0.0)))
    with pytest.raises(OverflowError):
        count_sequences(inst)


def test_enumeration_visits_every_sequence(ex1):
    seqs = list(enumerate_sequences(ex1))
    assert len(seqs) == count_sequences(ex1)
    assert len({s.order for s in seqs}) == len(seqs)
    orders = [s.order for s in seqs]
    assert orders == sorted(orders)  # lexicographic enumeration


def test_brute_force_ex1(ex1):
    sched = brute_force_solve(ex1)
    assert sched.cost == pytest.approx(EX1_COST, abs=1e-9)
    assert sched.sequence.to_1based() == EX1_ORDER_1BASED
    for got, want in zip(sched.plan.u, EX1_U):
        assert got == pytest.approx(want, abs=1e-9)


def test_brute_force_costless_instance():
    classes = (
        ClassParams(8.0, 4.0, 1.0, 1.0, (0.0, 0.0), (10.0, 12.0)),
        ClassParams(6.0, 4.0, 1.5, 1.0, (0.0,), (11.0,)),
    )
    zeros = ((0.0, 0.0), (0.0, 0.0))
    inst = Instance(classes, zeros, zeros)
    sched = brute_force_solve(inst)
    assert sched.cost == pytest.approx(0.0, abs=1e-12)


def test_brute_force_cap(ex1):
    with pytest.raises(ValueError, match="cap"):
        brute_force_solve(ex1, cap=10)


def test_brute_force_matches_dp_on_randoms():
    shapes = [(2, 2), (3, 2), (1, 3), (3, 3), (2, 1)]
    for trial in range(20):
        inst = generate(GenParams(jobs=shapes[trial % len(shapes)], seed=500 + trial))
        dp_cost = backward_induction(inst).optimal_cost()
        assert brute_force_solve(inst).cost == pytest.approx(dp_cost, abs=1e-6)


def test_sample_means_near_range_midpoints():
    # sanity over many samples: observed means near (a+b)/2
    pts, sts, alphas = [], [], []
    for seed in range(400):
        inst = generate(GenParams(jobs=(2, 2), seed=7000 + seed))
        for cp in inst.classes:
            pts.append(cp.pt_nom)
            alphas.extend(cp.alpha)
        sts.append(inst.st[0][1])
        sts.append(inst.st[1][0])
    for values, lo, hi in ((pts, 6.0, 10.0), (sts, 1.0, 3.0), (alphas, 0.5, 2.5)):
        mid = (lo + hi) / 2
        mean = sum(values) / len(values)
        assert abs(mean - mid) <= 0.05 * mid
