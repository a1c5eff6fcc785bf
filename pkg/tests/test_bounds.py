import math

import numpy as np
import pytest

from hadlab import ahp, bounds, matcore, numlin
from hadlab.complement import InapplicableSplitError, SingularBlockError, complement_polar
from hadlab.matcore import PartitionedHadamard
from hadlab.scan import enumerate_splits


def test_hadamard_bound_values():
    assert bounds.einf_bound_hadamard(1, 16) == pytest.approx(0.2, abs=1e-15)
    assert bounds.einf_bound_hadamard(4, 36) == pytest.approx(1.0, abs=1e-12)
    assert bounds.einf_bound_hadamard(2, 16) == pytest.approx(
        2 * math.sqrt(2) / (math.sqrt(2) + 4), abs=1e-15
    )


def test_generic_bound_value():
    assert bounds.einf_bound_generic(2, 16) == pytest.approx(5 / 3, abs=1e-15)
    with pytest.raises(ValueError):
        bounds.einf_bound_generic(4, 16)


def test_bound_report_for_scalar_corner():
    report = bounds.bound_e_inf(np.array([[1]]), 16)
    assert report.a_is_hadamard
    assert report.bound1 == pytest.approx(0.2)
    assert report.bound2 is not None and report.bound3 is not None
    assert report.c == pytest.approx(1 - 0.25, abs=1e-12)  # |1 - 1/sqrt(16)|


def test_bound_report_rejects_large_corner(w4):
    with pytest.raises(ValueError):
        bounds.bound_e_inf(w4[:3, :3], 4)


def test_bound_report_singular_corner():
    report = bounds.bound_e_inf(np.ones((2, 2), dtype=np.int64), 16)
    assert report.c is None and report.bound2 is None
    assert report.bound3 is not None
    by_cond = {t.condition: t for t in report.thresholds}
    assert not by_cond[2].applicable and not by_cond[3].applicable


def test_threshold_examples():
    rep = bounds.ahp_thresholds(2, 4, a_is_hadamard=True)
    t1 = {t.condition: t for t in rep.thresholds}[1]
    assert t1.applicable and t1.threshold == 2.0 and t1.passes

    fail36 = {t.condition: t for t in bounds.ahp_thresholds(4, 36, a_is_hadamard=True).thresholds}[1]
    assert fail36.threshold == 36.0 and not fail36.passes and fail36.critical_n == 40
    pass40 = {t.condition: t for t in bounds.ahp_thresholds(4, 40, a_is_hadamard=True).thresholds}[1]
    assert pass40.passes

    t3_at4 = {t.condition: t for t in bounds.ahp_thresholds(1, 4).thresholds}[3]
    assert t3_at4.threshold == pytest.approx(4.0) and not t3_at4.passes
    assert t3_at4.critical_n == 8
    t3_at8 = {t.condition: t for t in bounds.ahp_thresholds(1, 8).thresholds}[3]
    assert t3_at8.passes


def test_threshold_with_concrete_block(w2):
    report = bounds.ahp_thresholds(2, 16, a=w2)
    assert report.a_is_hadamard
    by_cond = {t.condition: t for t in report.thresholds}
    assert by_cond[1].passes
    assert by_cond[2].applicable and by_cond[2].threshold is not None


def test_critical_order_rounds_to_multiples_of_four():
    assert bounds.critical_order(0.0) == 4
    assert bounds.critical_order(2.0) == 4
    assert bounds.critical_order(4.0) == 8
    assert bounds.critical_order(35.5) == 36
    assert bounds.critical_order(36.0) == 40


def test_cubic_remark_values():
    assert bounds.hadamard_case_cubic_remark(1, 8) < 1.0
    # weaker than the direct Hadamard bound
    assert bounds.hadamard_case_cubic_remark(2, 8) >= bounds.einf_bound_hadamard(2, 8)
    assert bounds.hadamard_case_cubic_remark(2, 16) > bounds.einf_bound_hadamard(2, 16)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_cubic_remark_below_one_iff_cube_exceeded(r):
    for n in range(4 * (r * r // 4 + 1), 260, 4):
        if n <= r * r:
            continue
        value = bounds.hadamard_case_cubic_remark(r, n)
        assert (value < 1) == (n > r**3)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_bounds_strictly_decrease_in_order(r):
    grid = [n for n in range(max(4, r * r + 4), 200, 4)]
    b1 = [bounds.einf_bound_hadamard(r, n) for n in grid]
    b2 = [bounds.einf_bound_from_c(r, n, 0.5) for n in grid]
    b3 = [bounds.einf_bound_generic(r, n) for n in grid]
    for seq in (b1, b2, b3):
        assert all(x > y for x, y in zip(seq, seq[1:]))


def _einf_of_split(part):
    pol = numlin.polar(part.d.astype(float))
    if pol.singular:
        return None
    return numlin.max_abs(part.d - math.sqrt(part.n) * pol.u)


@pytest.mark.parametrize(
    "matrix,r,limit",
    [
        ("walsh3", 1, None),
        ("walsh3", 2, 200),
        ("walsh3", 3, 200),
        ("walsh4", 2, 150),
        ("walsh4", 3, 150),
        ("walsh5", 2, 100),
        ("walsh5", 3, 100),
        ("paley12", 3, 150),
    ],
)
def test_bound_soundness_sweep(matrix, r, limit):
    h = matcore.catalog_matrix(matrix)
    n = h.shape[0]
    for rows, cols in enumerate_splits(h, r, limit=limit, seed=5):
        part = PartitionedHadamard(h, rows, cols)
        einf = _einf_of_split(part)
        if einf is None:
            continue
        report = bounds.bound_e_inf(part.a, n).with_actual_einf(einf)
        for bound in report.applicable_bounds():
            assert einf <= bound + 1e-9
        if report.any_threshold_passes():
            assert ahp.ahp_check(part.d).is_ahp


def test_einf_below_one_forces_sign_agreement(w8):
    # entrywise: |E| < 1 pins sgn(U) = D where U = (D - E)/sqrt(N)
    for rows, cols in enumerate_splits(w8, 2, limit=100, seed=11):
        part = PartitionedHadamard(w8, rows, cols)
        try:
            f = complement_polar(part)
        except (SingularBlockError, InapplicableSplitError):
            continue
        if f.einf < 1:
            assert np.array_equal(np.sign(f.u).astype(np.int64), part.d)


def test_report_json_omits_inapplicable_bounds():
    report = bounds.ahp_thresholds(3, 8)
    obj = report.to_json()
    assert "bound1" not in obj  # corner not declared Hadamard
    assert "bound2" not in obj  # no concrete corner, c unavailable
    assert "bound3" not in obj  # r^2 > N
    assert [t["condition"] for t in obj["thresholds"]] == [1, 2, 3]
