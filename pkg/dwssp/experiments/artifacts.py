"""
Experiment output directories.

Layout::

    spec.json                 the ExperimentSpec
    solution_<label>.csv      x,u at the final time
    trace_<label>.csv         step,t,tv,maxnorm,newton_iters,residual
    reference.csv             the reference the errors are measured against
    errors.csv                label,max_error
    table.csv                 convergence studies only
    plot.gp                   gnuplot script reading the CSVs above

Every file is written atomically; identical results give identical bytes.
"""
import logging
import os
import re
from typing import List

import pandas as pd

from ..config import CSV_FLOAT_FORMAT
from ..utils import Utils
from .runs import ExperimentResult, convergence_frame

logger = logging.getLogger(__name__)

_UNSAFE = re.compile(r"[^A-Za-z0-9._-]+")


def file_label(label: str) -> str:
    """``dw-family:8@cfl3.25`` -> ``dw-family-8-cfl3.25``."""
    return _UNSAFE.sub("-", label).strip("-") or "method"


def _frame_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")


def plot_script(result: ExperimentResult) -> str:
    lines: List[str] = [
        "# gnuplot script; run from this directory with: gnuplot -p plot.gp",
        "set datafile separator ','",
        "set key outside right",
    ]
    spec = result.spec
    if result.table:
        lines += [
            "set logscale xy",
            "set xlabel 'n'",
            "set ylabel 'max-norm error at t = %g'" % spec.t_end,
            "set title 'convergence: %s, cfl %g'" % (spec.problem.value, spec.cfl),
        ]
        plots = [
            "'table.csv' using 1:%d with linespoints title '%s'" % (2 + 2 * i, label)
            for i, label in enumerate(result.table[0].errors)
        ]
    else:
        lines += [
            "set xlabel 'x'",
            "set ylabel 'u'",
            "set title '%s, n = %d, cfl %g, t = %g'" % (spec.problem.value, spec.n, spec.cfl, spec.t_end),
        ]
        plots = []
        if result.reference is not None:
            plots.append("'reference.csv' using 1:2 with lines lw 2 title 'reference'")
        plots += [
            "'solution_%s.csv' using 1:2 with linespoints title '%s'" % (file_label(label), label)
            for label in result.solutions
        ]
    lines.append("plot " + ", \\\n     ".join(plots))
    return "\n".join(lines) + "\n"


def write_artifacts(result: ExperimentResult, out_dir: str) -> str:
    """Write the files of *result* into *out_dir* (created if needed)."""
    os.makedirs(out_dir, exist_ok=True)
    Utils.atomic_write_json(os.path.join(out_dir, "spec.json"), result.spec.to_dict())
    for label, u in result.solutions.items():
        Utils.atomic_write_text(os.path.join(out_dir, f"solution_{file_label(label)}.csv"), u.to_csv())
    for label, trace in result.traces.items():
        trace.to_csv(os.path.join(out_dir, f"trace_{file_label(label)}.csv"))
    if result.reference is not None:
        Utils.atomic_write_text(os.path.join(out_dir, "reference.csv"), result.reference.to_csv())
    if result.errors:
        errors = pd.DataFrame({"label": list(result.errors), "max_error": list(result.errors.values())})
        Utils.atomic_write_text(os.path.join(out_dir, "errors.csv"), _frame_csv(errors))
    if result.table:
        Utils.atomic_write_text(os.path.join(out_dir, "table.csv"), _frame_csv(convergence_frame(result.table)))
    Utils.atomic_write_text(os.path.join(out_dir, "plot.gp"), plot_script(result))
    logger.info(f"Wrote artifacts for {result.spec.problem.value} to {out_dir}")
    return out_dir
