import pytest

from hwdesign import verifier
from hwdesign.assembler import (
    AssignmentPlan,
    Infeasible,
    OpenCase,
    assemble_hw,
    assignment_plan,
    check_n,
    feasible_r,
    published_case_row,
)
from hwdesign.core import C3, DesignError
from hwdesign.k21 import GAMMAS
from hwdesign.tripartite import ALPHAS


def test_feasible_r():
    assert feasible_r(21) == {0, 1, 3, 5, 7, 8, 9, 10}
    assert feasible_r(63) == set(range(32))
    assert feasible_r(105) == set(range(53))
    assert feasible_r(22) == set() and feasible_r(42) == set()


@pytest.mark.parametrize("n", [0, 7, 22, 42, 84])
def test_check_n_rejects(n):
    with pytest.raises(Infeasible):
        check_n(n)


def test_plan_examples():
    p = assignment_plan(63, 9)
    assert (p.a, p.b, p.gamma, p.alphas, p.s) == (1, 2, 1, (1, 7, 0), 22)
    p = assignment_plan(63, 31)
    assert p.gamma == 10 and p.alphas == (7, 7, 7) and p.s == 0
    p = assignment_plan(63, 0)
    assert p.gamma == 0 and p.alphas == (0, 0, 0)
    p = assignment_plan(105, 12)
    assert p.gamma == 5 and p.alphas == (7, 0, 0, 0, 0, 0)


def test_repaired_rows_at_63():
    p = assignment_plan(63, 23)
    assert p.repaired and p.gamma == 8 and p.alphas == (1, 7, 7)
    p = assignment_plan(63, 30)
    assert p.repaired and p.gamma == 9 and p.alphas == (7, 7, 7)


def test_published_rows_fail_checksum_where_repaired():
    for r, off in ((23, 1), (30, -1)):
        gamma, alphas = published_case_row(1, r)
        assert gamma + sum(alphas) == r + off
        with pytest.raises(DesignError, match="checksum"):
            AssignmentPlan(63, r, gamma, alphas)


@pytest.mark.parametrize("t", [1, 2, 3])
def test_checksum_exhaustive(t):
    n = 42 * t + 21
    for r in range(0, (n - 1) // 2 + 1):
        p = assignment_plan(n, r)
        assert p.gamma in GAMMAS and all(a in ALPHAS for a in p.alphas)
        assert len(p.alphas) == 3 * t
        assert p.gamma + sum(p.alphas) == r
        assert p.s == (n - 1) // 2 - r


@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_only_b2_endpoint_rows_need_repair(t):
    n = 42 * t + 21
    repaired = [r for r in range(n // 2 + 1) if assignment_plan(n, r).repaired]
    assert repaired == [21 * t + 2, 21 * t + 9]


def test_n21():
    for r in (2, 4, 6):
        with pytest.raises(OpenCase):
            assignment_plan(21, r)
    with pytest.raises(Infeasible):
        assignment_plan(21, 11)
    assert assignment_plan(21, 8).alphas == ()


def test_out_of_range_r():
    with pytest.raises(Infeasible):
        assignment_plan(63, 32)
    with pytest.raises(Infeasible):
        assignment_plan(63, -1)


@pytest.mark.parametrize("r", [0, 2, 9, 17, 23, 30, 31])
def test_assemble_63(r):
    f = assemble_hw(63, r)
    assert len(f.factors) == 31
    assert sum(x.kind == C3 for x in f.factors) == r
    assert all(len(x.cycles) in (9, 21) for x in f.factors)
    assert verifier.verify(f, 63, r, 31 - r).accepted


def test_assemble_is_deterministic():
    assert assemble_hw(63, 12) == assemble_hw(63, 12)


def test_assemble_refuses_when_verifier_rejects(monkeypatch):
    def reject(*a, **k):
        rep = verifier.VerificationReport("forced")
        rep.add("forced", "test rejection")
        return rep

    monkeypatch.setattr(verifier, "verify", reject)
    with pytest.raises(DesignError, match="failed verification"):
        assemble_hw(21, 1)
