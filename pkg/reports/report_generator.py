import base64
import html
import logging
import os
from io import BytesIO
from typing import Dict, List, Optional, Tuple

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from core.evaluation import EvalReport, GradeSummary
from utils.config import Config

logger = logging.getLogger("reports")

LEVEL_COLORS = {"idiomatic": "#764ba2", "valency": "#667eea", "general": "#adb5bd"}


class ReportGenerator:
    def __init__(self, config: Config, reports_dir: Optional[str] = None):

        self.config = config

        # Ensure reports directory exists
        self.reports_dir = reports_dir or config.get("evaluation", "reports_dir") or "reports_out"
        os.makedirs(self.reports_dir, exist_ok=True)

    def generate_eval_report(self, report: EvalReport, include_charts: bool = True,
                             report_name: str = "eval_report") -> Dict[str, str]:
        """Write `<name>.json` and `<name>.html`; returns both paths."""
        json_path = os.path.join(self.reports_dir, f"{report_name}.json")
        html_path = os.path.join(self.reports_dir, f"{report_name}.html")

        with open(json_path, "w", encoding="utf-8") as f:
            f.write(report.to_json())
            f.write("\n")

        report_data = {
            "title": "Translation Regression Report",
            "subtitle": f"Mode: {report.mode} &middot; {report.passes}/{report.total} passed "
                        f"({float(report.pass_rate):.0%})",
            "summary": self._generate_summary(report),
            "charts": self._generate_level_chart(report) if include_charts else "",
            "tables": self._generate_case_table(report),
        }
        with open(html_path, "w", encoding="utf-8") as f:
            f.write(self._fill(report_data))

        logger.info("Wrote evaluation report to %s", self.reports_dir)
        return {"json": json_path, "html": html_path}

    def generate_grade_report(self, summary: GradeSummary, include_charts: bool = True,
                              report_name: str = "grade_report") -> str:
        html_path = os.path.join(self.reports_dir, f"{report_name}.html")
        report_data = {
            "title": "Grading Report",
            "subtitle": f"{summary.passes}/{len(summary.sentences)} sentences pass "
                        f"(mean grade &ge; {summary.threshold:g})",
            "summary": self._card("Pass rate", f"{float(summary.pass_rate):.0%}", "text-primary"),
            "charts": self._generate_grade_chart(summary) if include_charts else "",
            "tables": self._generate_grade_table(summary),
        }
        with open(html_path, "w", encoding="utf-8") as f:
            f.write(self._fill(report_data))
        return html_path

    def _fill(self, report_data: Dict[str, str]) -> str:
        # Replace placeholders in template
        content = self._get_default_template()
        for key, value in report_data.items():
            content = content.replace(f"{{{{{key}}}}}", str(value))
        return content

    def _card(self, title: str, value: str, css: str) -> str:
        return (f'<div class="col-md-3 mb-3"><div class="card text-center"><div class="card-body">'
                f'<h6 class="card-title">{title}</h6><h3 class="{css}">{value}</h3></div></div></div>')

    def _generate_summary(self, report: EvalReport) -> str:
        """Generate summary statistics section."""
        cards = [
            self._card("Pass rate", f"{float(report.pass_rate):.0%}", "text-primary"),
            self._card("Cases", f"{report.passes}/{report.total}", "text-success"),
            self._card("Excluded", str(len(report.results) - report.total), "text-warning"),
            self._card("Clauses", str(report.clauses), "text-info"),
        ]
        return '<div class="row">' + "".join(cards) + "</div>"

    def _encode(self, fig) -> str:
        buffer = BytesIO()
        fig.savefig(buffer, format="png", dpi=120, bbox_inches="tight")
        plt.close(fig)
        return base64.b64encode(buffer.getvalue()).decode()

    def _generate_level_chart(self, report: EvalReport) -> str:
        """Bar chart of which transfer level won each clause."""
        charts_html = "<h3>Transfer Level Usage</h3>\n"
        try:
            levels = list(report.level_counts)
            counts = [report.level_counts[level] for level in levels]
            fig, ax = plt.subplots(figsize=(6, 3.5))
            ax.bar(levels, counts, color=[LEVEL_COLORS.get(level, "#6c757d") for level in levels])
            ax.set_ylabel("Clauses")
            ax.grid(True, axis="y", alpha=0.3)
            image = self._encode(fig)
            charts_html += f'<img src="data:image/png;base64,{image}" class="img-fluid" alt="Transfer level usage">\n'
        except Exception as e:
            logger.warning("Chart generation failed: %s", e)
            charts_html += f"<p>Error generating charts: {html.escape(str(e))}</p>"
        return charts_html

    def _generate_grade_chart(self, summary: GradeSummary) -> str:
        charts_html = "<h3>Mean Grade per Sentence</h3>\n"
        try:
            ids = [sentence.sentence_id for sentence in summary.sentences]
            means = [float(sentence.mean) for sentence in summary.sentences]
            colors = ["#28a745" if sentence.passed else "#dc3545" for sentence in summary.sentences]
            fig, ax = plt.subplots(figsize=(max(6, len(ids) * 0.6), 3.5))
            ax.bar(ids, means, color=colors)
            ax.axhline(summary.threshold, color="black", linestyle="--", linewidth=1)
            ax.set_ylim(0, 10)
            ax.set_ylabel("Mean grade")
            plt.setp(ax.xaxis.get_majorticklabels(), rotation=45)
            image = self._encode(fig)
            charts_html += f'<img src="data:image/png;base64,{image}" class="img-fluid" alt="Mean grades">\n'
        except Exception as e:
            logger.warning("Chart generation failed: %s", e)
            charts_html += f"<p>Error generating charts: {html.escape(str(e))}</p>"
        return charts_html

    def _table(self, heading: str, columns: List[str], rows: List[List[Tuple[str, str]]]) -> str:
        """Rows are lists of (cell html, css class) pairs; cell text must already be escaped."""
        head = "".join(f"<th>{column}</th>" for column in columns)
        body = "".join(
            "\n<tr>" + "".join(f'<td class="{css}">{cell}</td>' if css else f"<td>{cell}</td>"
                               for cell, css in row) + "</tr>"
            for row in rows
        )
        return f"""
<h3>{heading}</h3>
<table class="table table-striped table-sm">
<thead><tr>{head}</tr></thead>
<tbody>{body}
</tbody>
</table>
"""

    def _generate_case_table(self, report: EvalReport) -> str:
        rows = []
        for result in report.results:
            if result.excluded:
                status, css = "excluded", "text-muted"
            elif result.passed:
                status, css = "&#10003;", "text-success"
            else:
                status, css = "&#10007;", "text-danger"
            levels = ", ".join(f"{level}:{count}" for level, count in result.levels.items() if count)
            rows.append([(html.escape(result.id), ""), (html.escape(result.source), ""),
                         (html.escape(result.expected), ""), (html.escape(result.output), ""),
                         (levels, ""), (status, css)])
        return self._table("Cases", ["ID", "Source", "Expected", "Output", "Levels", "Result"], rows)

    def _generate_grade_table(self, summary: GradeSummary) -> str:
        rows = [[(html.escape(sentence.sentence_id), ""), (f"{float(sentence.mean):.2f}", ""),
                 (str(sentence.graders), ""),
                 ("pass", "text-success") if sentence.passed else ("fail", "text-danger")]
                for sentence in summary.sentences]
        return self._table("Sentences", ["Sentence", "Mean", "Graders", "Result"], rows)

    def _get_default_template(self) -> str:
        return """<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="UTF-8">
<title>{{title}}</title>
<link href="https://stackpath.bootstrapcdn.com/bootstrap/4.5.2/css/bootstrap.min.css" rel="stylesheet">
<style>
  .banner { background: #343a40; color: #fff; padding: 1.5rem 0; margin-bottom: 1.5rem; }
  td.text-muted { font-style: italic; }
</style>
</head>
<body>
<div class="banner"><div class="container">
  <h1>{{title}}</h1>
  <div>{{subtitle}}</div>
</div></div>
<main class="container">
  <h2>Summary</h2>
  {{summary}}
  {{charts}}
  {{tables}}
  <p class="text-muted small mt-4">levelmt</p>
</main>
</body>
</html>
"""
