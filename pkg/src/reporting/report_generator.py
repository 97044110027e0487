import json
import math
import os
from typing import Dict, List, Optional

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
import pandas as pd
from reportlab.lib import colors
from reportlab.lib.pagesizes import letter
from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet
from reportlab.platypus import Image, Paragraph, SimpleDocTemplate, Spacer, Table, TableStyle

from config import Config
from src import __version__
from src.harness.sweep import (BOOTSTRAP_PROCEDURE, TOMOGRAPHY_COLUMNS, max_negativity,
                               spread, tomography_deviation)
from src.harness.sweep_config import SweepConfig
from src.models.sweep import SweepRow
from src.utils.errors import OutputError
from utils.logger import setup_logger

logger = setup_logger(__name__)

PANELS = (
    ('sigma_total', 'sigma_total_tomo', r'$\Sigma$'),
    ('sigma_pop', 'sigma_pop_tomo', r'$\Sigma^{pop}$'),
    ('sigma_coh', 'sigma_coh_tomo', r'$\Sigma^{coh}$'),
)
CSV_FORMAT = {'float_format': '%.12g', 'na_rep': 'nan', 'lineterminator': '\n'}


def _ensure_parent(path: str) -> None:
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)


def rows_to_frame(rows: List[SweepRow]) -> pd.DataFrame:
    return pd.DataFrame([row.as_record() for row in rows], columns=SweepRow.columns())


def csv_text(rows: List[SweepRow]) -> str:
    """The exact text emit_csv writes for ``rows``."""
    return rows_to_frame(rows).to_csv(None, index=False, **CSV_FORMAT)


def emit_csv(rows: List[SweepRow], path: str) -> str:
    """Write one header row and one row per grid point; floats keep 12 significant digits."""
    if not rows:
        raise OutputError(f"No rows to write; {path} was not created")
    try:
        _ensure_parent(path)
        rows_to_frame(rows).to_csv(path, index=False, encoding='utf-8', **CSV_FORMAT)
    except OSError as e:
        raise OutputError(f"Could not write {path}: {e}") from e
    logger.info(f"Wrote {len(rows)} rows to {path}")
    return path


def summary_statistics(rows: List[SweepRow]) -> Dict[str, float]:
    gaps = [row.additivity_gap for row in rows if math.isfinite(row.additivity_gap)]
    protocol = [abs(row.sigma_coh - row.sigma_coh_direct) for row in rows
                if math.isfinite(row.sigma_coh) and math.isfinite(row.sigma_coh_direct)]
    stats = {
        'rows': len(rows),
        'indeterminate': sum(1 for row in rows if row.indeterminate),
        'max_additivity_violation': max(gaps, default=0.0),
        'max_protocol_disagreement': max(protocol, default=0.0),
        'max_negativity': max_negativity(rows),
        'max_negativity_tomo': max_negativity(rows, TOMOGRAPHY_COLUMNS),
    }
    stats.update(tomography_deviation(rows))
    return stats


def _spread_line(rows: List[SweepRow], column: str, across: str, label: str) -> Optional[str]:
    values = spread(rows, column, across)
    if len({getattr(row, across) for row in rows}) < 2 or not values:
        return None
    (first, r), worst = max(values.items(), key=lambda item: item[1])
    return f"{label}: max {worst:.6g} nats at r={r:g}"


def emit_summary(rows: List[SweepRow]) -> str:
    """Plain-text report of the consistency figures of a sweep."""
    if not rows:
        raise OutputError("No rows to summarise")
    stats = summary_statistics(rows)
    lines = [
        f"Rows: {stats['rows']} ({stats['indeterminate']} indeterminate)",
        f"Max additivity violation: {stats['max_additivity_violation']:.3e}",
        f"Max difference-protocol vs direct Sigma_coh: {stats['max_protocol_disagreement']:.3e}",
        f"Max negativity (analytic): {stats['max_negativity']:.3e}",
        f"Max negativity (tomography): {stats['max_negativity_tomo']:.3e}",
        f"Tomography vs analytic: max |deviation| {stats['max_abs_deviation']:.6g} "
        f"({stats['stderr_multiple']:.2f} stderr); "
        f"{100.0 * stats['fraction_within_3_stderr']:.1f}% of {stats['compared']} within 3 stderr",
    ]
    for line in (_spread_line(rows, 'sigma_coh', 'p', 'Sigma_coh spread across p'),
                 _spread_line(rows, 'sigma_pop', 'alpha_deg', 'Sigma_pop spread across alpha')):
        if line:
            lines.append(line)
    return '\n'.join(lines)


def metadata_path(csv_path: str) -> str:
    return f"{csv_path}.meta.json"


def write_metadata(config: SweepConfig, rows: List[SweepRow], csv_path: str) -> str:
    """Sidecar JSON describing how the CSV was produced."""
    meta = {
        'software': {'name': 'entropy_production', 'version': __version__},
        'rng_algorithm': Config.RNG_ALGORITHM,
        'master_seed': config.seed,
        'row_seeds': [row.seed_used for row in rows],
        'shots_per_basis': config.shots,
        'n_bootstrap': config.n_bootstrap,
        'bootstrap_procedure': BOOTSTRAP_PROCEDURE,
        'error_bars': 'simulation-based parametric bootstrap, not a laboratory estimate',
        'units': 'nats',
        'columns': SweepRow.columns(),
        'config': config.as_dict(),
        'rows': len(rows),
        'indeterminate_rows': sum(1 for row in rows if row.indeterminate),
    }
    path = metadata_path(csv_path)
    try:
        _ensure_parent(path)
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(meta, f, indent=2, sort_keys=True)
            f.write('\n')
    except OSError as e:
        raise OutputError(f"Could not write {path}: {e}") from e
    logger.info(f"Wrote metadata to {path}")
    return path


class ReportGenerator:
    def __init__(self, config: SweepConfig, rows: List[SweepRow]):
        if not rows:
            raise OutputError("No rows to report")
        self.config = config
        self.rows = rows
        self.frame = rows_to_frame(rows)
        self.styles = getSampleStyleSheet()

    def plot_sweep(self, output_path: str) -> str:
        """Three panels (Sigma, Sigma_pop, Sigma_coh) against r, one curve per (p, alpha)."""
        fig, axes = plt.subplots(1, 3, figsize=(15, 4.5), sharex=True)
        try:
            for (p, alpha), group in self.frame.groupby(['p', 'alpha_deg'], sort=False):
                coherence = group['coherence_initial'].iloc[0]
                label = f"p={p:g}, C1={coherence:.2g}"
                for ax, (analytic, tomo, title) in zip(axes, PANELS):
                    line, = ax.plot(group['r'], group[analytic], label=label)
                    ax.errorbar(group['r'], group[tomo], yerr=group[f"{tomo}_err"], fmt='o',
                                markersize=3, capsize=2, color=line.get_color())
                    ax.set_title(title)
                    ax.set_xlabel('r')
            axes[0].set_ylabel('nats')
            axes[0].legend()
            fig.suptitle(f"{self.config.scenario}: lines analytic, points simulated tomography "
                         f"({self.config.shots} shots)")
            fig.tight_layout()
            _ensure_parent(output_path)
            fig.savefig(output_path)
        except OSError as e:
            raise OutputError(f"Could not write {output_path}: {e}") from e
        finally:
            plt.close(fig)
        logger.info(f"Wrote figure to {output_path}")
        return output_path

    def generate_pdf_report(self, output_path: str, figure_path: Optional[str] = None) -> str:
        """PDF with the sweep settings, the summary and the analytic budget table."""
        doc = SimpleDocTemplate(output_path, pagesize=letter)
        elements = []

        title_style = ParagraphStyle(
            'CustomTitle',
            parent=self.styles['Heading1'],
            fontSize=20,
            spaceAfter=20
        )
        elements.append(Paragraph(f"Entropy production sweep: {self.config.scenario}", title_style))
        elements.append(Paragraph(
            f"Seed {self.config.seed}, {self.config.shots} shots per basis, "
            f"{self.config.n_bootstrap} bootstrap resamples",
            self.styles['Normal']
        ))
        elements.append(Spacer(1, 12))

        for line in emit_summary(self.rows).splitlines():
            elements.append(Paragraph(line, self.styles['Normal']))
        elements.append(Spacer(1, 12))

        if figure_path and os.path.exists(figure_path):
            elements.append(Image(figure_path, width=500, height=150))
            elements.append(Spacer(1, 12))

        table_data = [["p", "r", "alpha (deg)", "Sigma", "Sigma_pop", "Sigma_coh"]]
        for row in self.rows:
            table_data.append([f"{row.p:g}", f"{row.r:.3f}", f"{row.alpha_deg:.2f}",
                               f"{row.sigma_total:.6f}", f"{row.sigma_pop:.6f}", f"{row.sigma_coh:.6f}"])
        budget_table = Table(table_data, colWidths=[50, 60, 80, 90, 90, 90], repeatRows=1)
        budget_table.setStyle(TableStyle([
            ('BACKGROUND', (0, 0), (-1, 0), colors.grey),
            ('TEXTCOLOR', (0, 0), (-1, 0), colors.whitesmoke),
            ('ALIGN', (0, 0), (-1, -1), 'CENTER'),
            ('FONTNAME', (0, 0), (-1, 0), 'Helvetica-Bold'),
            ('FONTSIZE', (0, 0), (-1, -1), 9),
            ('BOTTOMPADDING', (0, 0), (-1, 0), 8),
            ('GRID', (0, 0), (-1, -1), 1, colors.black)
        ]))
        elements.append(Paragraph("Analytic entropy budget (nats)", self.styles['Heading2']))
        elements.append(budget_table)

        try:
            _ensure_parent(output_path)
            doc.build(elements)
        except OSError as e:
            raise OutputError(f"Could not write {output_path}: {e}") from e
        logger.info(f"Wrote PDF report to {output_path}")
        return output_path
