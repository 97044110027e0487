import json
import os

import pandas as pd
import pytest

from config import Config
from src.harness.sweep import run_sweep
from src.harness.sweep_config import SweepConfig
from src.models.sweep import SweepRow
from src.reporting.report_generator import (ReportGenerator, csv_text, emit_csv, emit_summary, metadata_path,
                                            rows_to_frame, summary_statistics, write_metadata)
from src.utils.errors import OutputError


@pytest.fixture
def sweep_config(tmp_path):
    return SweepConfig.for_scenario('fig2', r_points=3, shots=300, n_bootstrap=5, seed=21,
                                    output_path=str(tmp_path / 'fig2.csv'))


@pytest.fixture
def rows(sweep_config):
    return run_sweep(sweep_config)


def test_emit_csv_layout(rows, sweep_config):
    """Test the header and one line per grid point."""
    path = emit_csv(rows, sweep_config.output_path)
    with open(path, encoding='utf-8') as f:
        lines = f.read().splitlines()
    assert lines[0] == ','.join(Config.CSV_COLUMNS)
    assert len(lines) == 1 + 9

    frame = pd.read_csv(path)
    assert list(frame.columns) == Config.CSV_COLUMNS
    assert frame['p'].tolist() == [0.9] * 3 + [0.75] * 3 + [0.6] * 3
    assert frame['seed_used'].tolist() == [row.seed_used for row in rows]
    anchor = frame[(frame['p'] == 0.9) & (frame['r'] == 1.0)].iloc[0]
    assert anchor['sigma_total'] == pytest.approx(1.203973, abs=1e-6)


def test_emit_csv_default_grid_row_count(tmp_path):
    """Test 33 rows for the bath-temperature scenario on an 11-point grid."""
    cfg = SweepConfig.for_scenario('fig2', r_points=11, shots=100, n_bootstrap=3, seed=2)
    path = emit_csv(run_sweep(cfg), str(tmp_path / 'out' / 'fig2.csv'))
    assert len(pd.read_csv(path)) == 33


def test_emit_csv_is_byte_identical(sweep_config, tmp_path):
    """Test that equal seeds produce identical files."""
    first = emit_csv(run_sweep(sweep_config), str(tmp_path / 'a.csv'))
    second = emit_csv(run_sweep(sweep_config), str(tmp_path / 'b.csv'))
    with open(first, 'rb') as a, open(second, 'rb') as b:
        assert a.read() == b.read()


def test_csv_text_matches_written_file(rows, sweep_config):
    """Test that the in-memory CSV text is what emit_csv writes."""
    path = emit_csv(rows, sweep_config.output_path)
    with open(path, encoding='utf-8', newline='') as f:
        assert f.read() == csv_text(rows)
    assert list(rows_to_frame(rows).columns) == SweepRow.columns()


def test_emit_csv_without_rows(tmp_path):
    """Test that an empty sweep creates no file."""
    path = str(tmp_path / 'empty.csv')
    with pytest.raises(OutputError):
        emit_csv([], path)
    assert not os.path.exists(path)


def test_emit_csv_wraps_os_errors(rows, tmp_path, mocker):
    """Test that write failures surface as OutputError."""
    mocker.patch('pandas.DataFrame.to_csv', side_effect=OSError('disk full'))
    with pytest.raises(OutputError, match='disk full'):
        emit_csv(rows, str(tmp_path / 'x.csv'))


def test_write_metadata_wraps_os_errors(rows, sweep_config, mocker):
    """Test that a failing sidecar write surfaces as OutputError."""
    mocker.patch('src.reporting.report_generator.open', side_effect=PermissionError('read-only'), create=True)
    with pytest.raises(OutputError, match='read-only'):
        write_metadata(sweep_config, rows, sweep_config.output_path)


def test_write_metadata(rows, sweep_config):
    """Test the sidecar description of a run."""
    path = write_metadata(sweep_config, rows, sweep_config.output_path)
    assert path == metadata_path(sweep_config.output_path)
    with open(path, encoding='utf-8') as f:
        meta = json.load(f)
    assert meta['rng_algorithm'] == 'PCG64'
    assert meta['master_seed'] == 21
    assert meta['row_seeds'] == [row.seed_used for row in rows]
    assert meta['shots_per_basis'] == 300
    assert meta['n_bootstrap'] == 5
    assert meta['units'] == 'nats'
    assert meta['columns'] == Config.CSV_COLUMNS
    assert meta['config']['p_values'] == [0.9, 0.75, 0.6]
    assert 'bootstrap' in meta['bootstrap_procedure']


def test_summary(rows):
    """Test the plain-text consistency report."""
    stats = summary_statistics(rows)
    assert stats['rows'] == 9
    assert stats['indeterminate'] == 0
    assert stats['max_additivity_violation'] < 1e-10
    assert stats['max_protocol_disagreement'] < 1e-10

    text = emit_summary(rows)
    assert text.startswith('Rows: 9 (0 indeterminate)')
    assert 'Sigma_coh spread across p' in text
    assert 'Sigma_pop spread across alpha' not in text
    with pytest.raises(OutputError):
        emit_summary([])


def test_plot_and_pdf(rows, sweep_config, tmp_path):
    """Test that the figure and the PDF report are written."""
    report = ReportGenerator(sweep_config, rows)
    figure = report.plot_sweep(str(tmp_path / 'plots' / 'fig2.png'))
    pdf = report.generate_pdf_report(str(tmp_path / 'fig2.pdf'), figure_path=figure)
    assert os.path.getsize(figure) > 0
    with open(pdf, 'rb') as f:
        assert f.read(4) == b'%PDF'


def test_report_generator_requires_rows(sweep_config):
    """Test that an empty sweep cannot be reported."""
    with pytest.raises(OutputError):
        ReportGenerator(sweep_config, [])
