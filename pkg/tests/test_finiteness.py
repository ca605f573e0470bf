from apsieve import SpaceType, condition_report, enumerate_classes, monomial_count, rank_bound
from apsieve.finiteness import _ilog


def test_monomial_count_examples():
    assert monomial_count(3, 1) == 3
    assert monomial_count(5, 1) == 5
    assert monomial_count(3, 2) == 9
    assert monomial_count(3, 3) == 19


def test_rank_bound_33():
    bound = rank_bound(3, 3)
    assert bound.monomials == 19
    assert bound.min_half_degree == 115
    assert not bound.inequality_holds(114)
    assert all(bound.inequality_holds(m) for m in range(115, 2000))


def test_rank_bound_monotone_in_rank():
    previous = 0
    for r in range(1, 6):
        bound = rank_bound(3, r)
        assert bound.min_half_degree >= previous
        previous = bound.min_half_degree


def test_per_class_estimate_above_bound(ctx3):
    # above the bound, the top-anchored window's valuation sums stay below
    # N * (log3(4 * m_r) + 1), the estimate behind the finiteness argument
    bound = rank_bound(3, 3)
    for halves in [(115, 116, 120), (130, 140, 150), (115, 200, 243)]:
        space = SpaceType(ctx3, halves)
        m_r = halves[-1]
        window = (m_r, 3 * m_r)
        report = condition_report(enumerate_classes(space, window))
        cap = bound.monomials * (_ilog(3, 4 * m_r) + 1)
        for c in report.per_class:
            assert c.valuation_sum <= cap


def test_all_candidates_below_bound(ctx3):
    from apsieve.classifier import PROP_CASE1, PROP_CASE2, PROP_CASE3, PROP_CASE4

    bound = rank_bound(3, 3)
    tops = [t[-1] for t in PROP_CASE1 + PROP_CASE2 + PROP_CASE3 + PROP_CASE4]
    assert max(tops) == 45
    assert max(tops) < bound.min_half_degree
