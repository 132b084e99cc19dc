import pytest

from models.frame_analysis import row_diagnostics
from models.gabor_ops import analysis_coefficients
from models.signal import FiniteSignal, random_signal
from utils.report_helpers import COEFFICIENT_COLUMNS, coefficient_csv, coefficient_table, diagnostics_summary


def test_coefficient_table_single_point(single_point):
    rows = list(analysis_coefficients(single_point, FiniteSignal.delta((0, 0))))
    table = coefficient_table(rows)
    assert list(table.columns) == COEFFICIENT_COLUMNS
    # every modulation of the centred atom meets δ_0 with coefficient 1
    assert len(table) == 4
    assert table["modulus"].tolist() == pytest.approx([1.0] * 4)
    assert table[["m1", "m2"]].values.tolist() == [[0, 0], [0, 1], [1, 0], [1, 1]]


def test_coefficient_csv_is_stable(parseval_4_3_5, rng):
    h = random_signal(rng, 2)
    rows = list(analysis_coefficients(parseval_4_3_5, h))
    text = coefficient_csv(rows)
    assert text.splitlines()[0] == ",".join(COEFFICIENT_COLUMNS)
    assert text == coefficient_csv(list(reversed(rows)))


def test_diagnostics_summary(onb_5_10):
    summary = diagnostics_summary(row_diagnostics(onb_5_10), onb_5_10.M)
    assert summary["min_diagonal"] == pytest.approx(1.0)
    assert summary["max_off_row"] == pytest.approx(0.0)
    assert summary["min_bracket"] == pytest.approx(1.0)
    assert diagnostics_summary([], 2)["max_diagonal"] == 0.0
