"""
Comparison studies and their output files.

YAML specs are read by :mod:`dwssp.experiments.config_loader`, which needs
the optional ``yaml`` extra and is therefore not imported here.
"""
from .artifacts import file_label, plot_script, write_artifacts
from .problems import (ExperimentSpec, Problem, default_methods, initial_data,
                       reference_solution)
from .runs import (ConvergenceRow, DissipationEstimate, ExperimentResult, convergence_frame,
                   convergence_rows, dissipation_probe, max_error, observed_orders, run_burgers,
                   run_convergence_table, run_experiment, run_jobs, run_square_wave)

__all__ = [
    "Problem", "ExperimentSpec", "default_methods", "initial_data", "reference_solution",
    "ExperimentResult", "ConvergenceRow", "DissipationEstimate",
    "run_square_wave", "run_convergence_table", "run_burgers", "run_experiment", "run_jobs",
    "dissipation_probe", "observed_orders", "convergence_rows", "convergence_frame", "max_error",
    "write_artifacts", "plot_script", "file_label",
]
