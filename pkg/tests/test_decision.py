import pytest

from solvgroups.decision import (PreconditionError, Retraction, SearchConfig, Status,
                                 conjugator_search, cyclic_decide, retraction_from_solution,
                                 retraction_synthesis_nilpotent, two_gen_decide, two_gen_necessary,
                                 verify_retraction)
from solvgroups.magnus import Homomorphism, eq, is_identity
from solvgroups.tags import GroupTag
from solvgroups.words import Word, parse_word, substitute

P = lambda s, r=2: parse_word(s, r)
X = lambda s: parse_word(s, 0)
M2, M3 = GroupTag.metabelian(2), GroupTag.metabelian(3)


def test_cyclic_worked_cases():
    h = P("z1^2*z2^3")
    report = cyclic_decide(h, GroupTag.solvable(2, 2))
    assert report.status is Status.RETRACT
    assert [str(c) for c in report.retraction.certificate] == ["x1^-1", "x1"]
    assert verify_retraction(report.retraction, (h,), M2)

    report = cyclic_decide(P("z1^2*z2^2"), M2)
    assert report.status is Status.NOT_VERBALLY_CLOSED
    assert report.witness["certificate"]["gcd"] == 2

    report = cyclic_decide(P("(z1,z2)"), M2)
    assert report.status is Status.NOT_VERBALLY_CLOSED
    assert report.witness["certificate"]["gcd"] == 0


def test_cyclic_witness_is_solved_in_g():
    h = P("z1^4*z2^-2*(z1,z2)")
    w = cyclic_decide(h, M2).witness
    lhs = P(w["equation"]["lhs"])
    assert eq(substitute(lhs, [P(s) for s in w["solution"]]), h, M2)


def test_cyclic_rejects_trivial():
    with pytest.raises(ValueError):
        cyclic_decide(P("(z1,z2,(z1,z2))"), M2)


def test_verify_retraction():
    h = P("z1^2*z2^3")
    assert verify_retraction(Retraction((P("z1"),), (X("x1"), Word.identity(0))), (P("z1"),), M2)
    assert verify_retraction(Retraction((h,), (X("x1^-1"), X("x1"))), (h,), M2)
    assert not verify_retraction(Retraction((h,), (X("x1"), Word.identity(0))), (h,), M2)
    with pytest.raises(TypeError):
        verify_retraction(Homomorphism(M2, M2, (h, h)), (h,), M2)
    with pytest.raises(ValueError):
        Retraction((h,), (P("z1"), X("x1")))


def test_necessary_condition():
    assert two_gen_necessary(P("z1", 3), P("z2", 3), M3).holds
    nc = two_gen_necessary(P("z1^2"), P("z2"), M2)
    assert not nc.holds and nc.invariant_factors == [1, 2]
    assert two_gen_necessary(P("z1*z2"), P("z2"), M2).holds


def test_two_gen_examples():
    report = two_gen_decide(P("z1", 3), P("z2", 3), M3)
    assert report.status is Status.RETRACT
    assert [str(w) for w in report.retraction.images] == ["z1", "z2", "1"]

    report = two_gen_decide(P("z1^2", 3), P("z2", 3), GroupTag.solvable(3, 2))
    assert report.status is Status.NOT_VERBALLY_CLOSED

    g, f = P("z1*(z1,z2)"), P("z2")
    MN = GroupTag.nilpotent(2, 4)
    report = two_gen_decide(g, f, MN)
    assert report.status is Status.RETRACT
    assert verify_retraction(report.retraction, (g, f), MN)


def test_two_gen_search_finds_retraction_in_m2():
    g, f = P("z1*(z1,z2)"), P("z2")
    report = two_gen_decide(g, f, M2)
    assert report.status is Status.RETRACT
    assert verify_retraction(report.retraction, (g, f), M2)


def test_two_gen_undecided_is_reported():
    report = two_gen_decide(P("z1*(z1,z2,z2)"), P("z2*(z2,z1)"), M2, SearchConfig(bound=1))
    assert report.status is Status.UNDECIDED
    assert report.retraction is None


def test_synthesis_examples():
    rho = retraction_synthesis_nilpotent(P("z1", 3), P("z2", 3), GroupTag.nilpotent(3, 4))
    assert [str(w) for w in rho.images] == ["z1", "z2", "1"]
    g, f = P("z1*z2", 3), P("z2", 3)
    MN34 = GroupTag.nilpotent(3, 4)
    rho = retraction_synthesis_nilpotent(g, f, MN34)
    assert verify_retraction(rho, (g, f), MN34)
    assert not rho.certificate[2].constants()
    with pytest.raises(PreconditionError):
        retraction_synthesis_nilpotent(P("z1^2"), P("z2"), GroupTag.nilpotent(2, 4))


def test_retraction_from_solution():
    g, f = P("z1", 3), P("z2", 3)
    one = Word.identity(0)
    rho = retraction_from_solution(g, f, [X("x1"), X("x2"), one], one, M3)
    assert [str(w) for w in rho.images] == ["z1", "z2", "1"]

    v = X("(x1,x2^-1)")
    h = [~v * X("x1") * v, ~v * X("x2") * v, one]
    t = conjugator_search(g, f, h, M3, len(v))
    assert t is not None
    rho = retraction_from_solution(g, f, h, t, M3)
    assert verify_retraction(rho, (g, f), M3)
    with pytest.raises(PreconditionError):
        retraction_from_solution(g, f, h, one, M3)


def test_conjugator_search_edges():
    g, f = P("z1", 3), P("z2", 3)
    one = Word.identity(0)
    assert conjugator_search(g, f, [X("x1"), X("x2"), one], M3, 0).is_identity
    assert conjugator_search(g, f, [X("x1^2"), X("x2"), one], M3, 4) is None


def test_report_json_roundtrip():
    report = cyclic_decide(P("z1^2*z2^3"), M2)
    payload = report.to_json()
    assert payload["status"] == "Retract"
    assert payload["retraction"]["images"] == ["z2^-3*z1^-2", "z1^2*z2^3"]
    assert not is_identity(P(payload["retraction"]["images"][1]), M2)
