import random

import pytest

from apsieve import (
    PrimeContext,
    SpaceType,
    condition_report,
    eliminate_by_psi,
    enumerate_classes,
    gcd_oracle,
    main_lemma_val,
    theorem_1_1_test,
)


def test_space_type_validation(ctx3):
    with pytest.raises(ValueError):
        SpaceType(ctx3, ())
    with pytest.raises(ValueError):
        SpaceType(ctx3, (1, 2))
    with pytest.raises(ValueError):
        SpaceType(ctx3, (4, 2))
    s = SpaceType(ctx3, (2, 4, 6))
    assert s.cohomology_degrees() == (3, 7, 11)


def test_enumerate_classes_239(ctx3):
    module = enumerate_classes(SpaceType(ctx3, (2, 3, 9)), (1, 27))
    assert len(module.classes) == 17
    assert sum(mult for _, mult in module.classes) == 19
    assert module.degrees() == (2, 3, 4, 5, 6, 7, 8, 9, 11, 12, 13, 14, 15, 18, 20, 21, 27)


def test_enumerate_classes_4812(ctx3):
    module = enumerate_classes(SpaceType(ctx3, (4, 8, 12)), (4, 12))
    assert module.classes == ((4, 1), (8, 2), (12, 3))
    assert module.witnesses == (4,)


def test_enumerate_classes_single_generator(ctx3):
    module = enumerate_classes(SpaceType(ctx3, (2,)), (1, 6))
    assert module.degrees() == (2, 4, 6)


def test_condition_report_4812(ctx3):
    module = enumerate_classes(SpaceType(ctx3, (4, 8, 12)), (4, 12))
    report = condition_report(module)
    assert [c.valuation_sum for c in report.per_class] == [2, 2, 2]
    assert report.holds_everywhere


def test_condition_report_246_fails_at_bottom(ctx3):
    module = enumerate_classes(SpaceType(ctx3, (2, 4, 6)), (2, 6))
    report = condition_report(module)
    by_degree = {c.degree: c for c in report.per_class}
    assert by_degree[2].valuation_sum == 2
    assert not by_degree[2].passes
    assert not report.holds_everywhere


def test_condition_report_hand_values(ctx3):
    report = condition_report(enumerate_classes(SpaceType(ctx3, (2, 21, 27)), (21, 81)))
    v = {c.degree: c.valuation_sum for c in report.per_class}
    assert report.holds_everywhere
    assert v[21] == 16
    assert v[27] == 17

    report2 = condition_report(enumerate_classes(SpaceType(ctx3, (18, 24, 26)), (26, 78)))
    v2 = {c.degree: c.valuation_sum for c in report2.per_class}
    assert report2.holds_everywhere
    assert v2[26] == 23


def test_condition_report_needs_two_classes(ctx3):
    module = enumerate_classes(SpaceType(ctx3, (2,)), (2, 2))
    with pytest.raises(ValueError):
        condition_report(module)


def test_nu_bound_dominates(ctx3):
    for halves, window in [((2, 3, 9), (1, 27)), ((4, 8, 12), (4, 36)), ((2, 21, 27), (21, 81))]:
        report = condition_report(enumerate_classes(SpaceType(ctx3, halves), window))
        for c in report.per_class:
            assert c.valuation_sum <= c.nu_bound


def test_exactness_against_gcd_oracle():
    rng = random.Random(8)
    for p in (3, 5):
        ctx = PrimeContext(p)
        for _ in range(6):
            rank = rng.randint(1, 3)
            halves = tuple(sorted(rng.sample(range(2, 30), rank)))
            space = SpaceType(ctx, halves)
            module = enumerate_classes(space, (2, 100))
            if not (2 <= len(module.classes) <= 12):
                continue
            report = condition_report(module)
            for idx, cond in enumerate(report.per_class):
                assert gcd_oracle(module, idx, 50) == cond.valuation_sum


def test_gcd_oracle_guards(ctx3):
    module = enumerate_classes(SpaceType(ctx3, (4, 8, 12)), (4, 12))
    with pytest.raises(ValueError):
        gcd_oracle(module, 0, 2)
    assert gcd_oracle(module, 0, 50).value == 2
    module2 = enumerate_classes(SpaceType(ctx3, (2, 4, 6)), (2, 6))
    assert gcd_oracle(module2, 0, 50).value == 2


def test_window_monotonicity(ctx3):
    # shrinking the window never increases any per-class valuation sum
    space = SpaceType(ctx3, (2, 21, 27))
    wide = condition_report(enumerate_classes(space, (21, 81)))
    narrow = condition_report(enumerate_classes(space, (23, 63)))
    wide_by_degree = {c.degree: c.valuation_sum for c in wide.per_class}
    for c in narrow.per_class:
        assert c.valuation_sum <= wide_by_degree[c.degree]


def test_main_lemma_val_examples(ctx3):
    assert main_lemma_val(ctx3, 4, 1, 1) == 2
    assert main_lemma_val(ctx3, 1, 2, 2) == 2
    assert main_lemma_val(ctx3, 5, 1, 3) == 1
    with pytest.raises(ValueError):
        main_lemma_val(ctx3, 4, 2, 1)


def test_main_lemma_val_is_exact_product_valuation(ctx3):
    # big-integer cross-check of the run-product valuation at the root base
    from conftest import bigint_val

    k0 = ctx3.k0
    for m, t, i in [(4, 1, 1), (5, 1, 3), (2, 2, 4), (7, 2, 5)]:
        prod = 1
        for j in range(t, 3 * t + 1):
            if j != i:
                prod *= k0 ** (m * i) - k0 ** (m * j)
        assert main_lemma_val(ctx3, m, t, i) == bigint_val(3, prod)


def test_gcd_test_examples(ctx3):
    assert not theorem_1_1_test(SpaceType(ctx3, (4, 8, 12))).passed
    assert theorem_1_1_test(SpaceType(ctx3, (4, 8, 12))).m == 4
    assert theorem_1_1_test(SpaceType(ctx3, (2, 3, 9))).passed
    assert theorem_1_1_test(SpaceType(ctx3, (6, 8, 10))).passed


def test_eliminate_by_psi_pinned_windows(ctx3):
    cert = eliminate_by_psi(SpaceType(ctx3, (4, 8, 12)))
    assert cert is not None and cert.window == (4, 12) and cert.witness == 4
    cert2 = eliminate_by_psi(SpaceType(ctx3, (2, 21, 27)))
    assert cert2 is not None and cert2.window == (21, 81)
    assert eliminate_by_psi(SpaceType(ctx3, (2, 4, 6))) is None
    cert3 = eliminate_by_psi(SpaceType(ctx3, (18, 24, 26)))
    assert cert3 is not None and cert3.replay()


def test_eliminate_by_psi_certificates_replay(ctx3):
    for halves in [(2, 30, 36), (2, 39, 45), (16, 30, 36), (19, 30, 36), (21, 27, 29), (30, 36, 38)]:
        cert = eliminate_by_psi(SpaceType(ctx3, halves))
        assert cert is not None, halves
        assert cert.replay(), halves
        d_lo, d_hi = cert.window
        assert d_lo <= cert.witness and 3 * cert.witness <= d_hi


def test_eliminate_by_psi_239_is_inconclusive(ctx3):
    # the standard window family does not certify (2,3,9): the best window
    # fails marginally (valuation sum 9 at class 9 on [9, 27])
    assert eliminate_by_psi(SpaceType(ctx3, (2, 3, 9))) is None
    report = condition_report(enumerate_classes(SpaceType(ctx3, (2, 3, 9)), (9, 27)))
    by_degree = {c.degree: c for c in report.per_class}
    assert by_degree[9].valuation_sum == 9
    assert not by_degree[9].passes
