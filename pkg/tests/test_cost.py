import pytest

from mcgate import cost
from mcgate.errors import PreconditionError


def test_reference_values():
    assert cost.exact_count(30) == 3250
    assert cost.thm1_bound(30, 13) == 6528
    assert cost.thm3_bound(30, 13) == 1424
    assert cost.barenco_iten_levels(1e-3) == 10
    assert cost.barenco_iten_count(30, 1e-3) == 7400
    assert cost.su2_single_bound(30) == 440
    assert cost.su2_multi_bound(30, 1) == 440
    assert cost.su2_multi_bound(8, 2) == 104
    assert cost.toffoli_mt(3) == 10
    assert cost.mcx_mt_c2x(5, 2) == 14


@pytest.mark.parametrize("n", [12, 20, 31, 50])
def test_barenco_closed_form_matches_recurrence(n):
    assert cost.barenco_iten_count(n, 1e-3) == cost.barenco_iten_recurrence(n, 10)


def test_general_su2_quote_depends_on_parity():
    assert cost.su2_general_quoted(10) == 158
    assert cost.su2_general_quoted(11) == 182


def test_domains():
    with pytest.raises(PreconditionError):
        cost.exact_count(2)
    with pytest.raises(PreconditionError):
        cost.thm3_bound(20, 13)
    with pytest.raises(PreconditionError):
        cost.thm1_bound(10, 13)
    with pytest.raises(PreconditionError):
        cost.barenco_iten_levels(1.0)
    with pytest.raises(PreconditionError):
        cost.barenco_iten_count(10, 1e-3)
    with pytest.raises(PreconditionError):
        cost.su2_multi_bound(10, 0)


@pytest.mark.parametrize("n", range(14, 44))
def test_thm1_beats_recursive_baseline_up_to_43(n):
    assert cost.thm1_bound(n, 13) < cost.barenco_iten_count(n, 1e-3)


def test_thm1_loses_to_recursive_baseline_from_44():
    # 384n - 4992 against 320n - 2200
    assert cost.thm1_bound(44, 13) > cost.barenco_iten_count(44, 1e-3)


@pytest.mark.parametrize("n", range(21, 60))
def test_thm3_beats_thm1_and_baseline(n):
    assert cost.thm3_bound(n, 13) < cost.thm1_bound(n, 13)
    assert cost.thm3_bound(n, 13) < cost.barenco_iten_count(n, 1e-3)


def test_crossover():
    assert cost.crossover_vs_exact(1e-3) == 18
    assert cost.thm3_formula(18, 13) < cost.exact_count(18)
    assert cost.thm3_formula(17, 13) >= cost.exact_count(17)


@pytest.mark.parametrize("k", range(2, 30))
@pytest.mark.parametrize("nt", [1, 2, 5])
def test_mcsu2_counts_within_published_bound(k, nt):
    assert cost.mcsu2_cnots(k, nt) <= cost.su2_multi_bound(k + 1, nt)
    if k >= 6:
        assert cost.mcsu2_cnots(k, nt) == cost.su2_multi_bound(k + 1, nt)


@pytest.mark.parametrize("n_base", [2, 5, 13])
@pytest.mark.parametrize("extra", range(1, 20))
def test_predictions_within_bounds(n_base, extra):
    k = n_base + extra
    n = k + 1
    assert cost.predicted_cnots("approx-thm1", k, n_base) <= cost.thm1_bound(n, n_base)
    assert cost.predicted_cnots("approx-thm3", k, n_base) <= cost.thm3_formula(n, n_base)
    if extra >= 5:
        assert cost.predicted_cnots("approx-thm3", k, n_base) == cost.thm3_formula(n, n_base)


def test_predictions_fall_back_to_exact():
    assert cost.predicted_cnots("approx-thm3", 10, 13) == cost.exact_count(11)
    assert cost.predicted_cnots("exact", 1) == 2
    with pytest.raises(PreconditionError):
        cost.predicted_cnots("barenco", 20, 5)


def test_compare_table():
    table = cost.compare_table(range(10, 31), 1e-3)
    assert table.n_base == 13
    assert table.k_levels == 10
    assert table.row(10).thm1 is None
    assert table.row(10).barenco_iten is None
    assert table.row(12).barenco_iten == cost.barenco_iten_count(12, 1e-3)
    assert table.row(20).thm3 is None
    assert table.row(21).thm3 == cost.thm3_bound(21, 13)
    with pytest.raises(KeyError):
        table.row(40)


def test_csv():
    text = cost.to_csv(cost.compare_table([30], 1e-3))
    lines = text.splitlines()
    assert lines[0] == ",".join(cost.CSV_COLUMNS)
    assert lines[1] == "30,3250,6528,1424,7400,440,440"


def test_csv_with_measured_column():
    table = cost.compare_table([5], 0.3)
    rows = [table.rows[0].model_copy(update={"measured": 50})]
    text = cost.to_csv(table.model_copy(update={"rows": rows}))
    header, row = text.splitlines()
    assert header.endswith(",measured")
    assert row.endswith(",50")
