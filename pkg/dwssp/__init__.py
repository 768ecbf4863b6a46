"""
Public package interface for dwssp.
"""

from importlib import import_module

from . import config

__all__ = ["DownwindTableau", "ShuOsherRep", "DownwindLmm", "catalog_method", "resolve_method",
           "make_optimal_family", "shu_osher_to_butcher", "stability_function", "method_report",
           "rk_downwind_ssp_coefficient", "certification_report", "optimal_lmm",
           "PeriodicGrid", "GridFunction", "make_semidiscretization",
           "NewtonSettings", "StepContext", "MonitorTrace", "rk_step", "lmm_step", "run",
           "ExperimentSpec", "run_experiment", "write_artifacts", "Utils", "config"]

_LAZY_EXPORTS = {
    "DownwindTableau":      (".methods",     "DownwindTableau"),
    "ShuOsherRep":          (".methods",     "ShuOsherRep"),
    "DownwindLmm":          (".methods",     "DownwindLmm"),
    "catalog_method":       (".methods",     "catalog_method"),
    "resolve_method":       (".methods",     "resolve_method"),
    "make_optimal_family":  (".methods",     "make_optimal_family"),
    "shu_osher_to_butcher": (".methods",     "shu_osher_to_butcher"),
    "stability_function":   (".methods",     "stability_function"),
    "method_report":        (".methods",     "method_report"),
    "rk_downwind_ssp_coefficient": (".ssp",  "rk_downwind_ssp_coefficient"),
    "certification_report": (".ssp",         "certification_report"),
    "optimal_lmm":          (".ssp",         "optimal_lmm"),
    "PeriodicGrid":         (".spatial",     "PeriodicGrid"),
    "GridFunction":         (".spatial",     "GridFunction"),
    "make_semidiscretization": (".spatial",  "make_semidiscretization"),
    "NewtonSettings":       (".solver",      "NewtonSettings"),
    "StepContext":          (".solver",      "StepContext"),
    "MonitorTrace":         (".solver",      "MonitorTrace"),
    "rk_step":              (".solver",      "rk_step"),
    "lmm_step":             (".solver",      "lmm_step"),
    "run":                  (".solver",      "run"),
    "ExperimentSpec":       (".experiments", "ExperimentSpec"),
    "run_experiment":       (".experiments", "run_experiment"),
    "write_artifacts":      (".experiments", "write_artifacts"),
    "Utils":                (".utils",       "Utils"),
}


def __getattr__(name):
    """Load public exports only when they are requested."""
    if name not in _LAZY_EXPORTS:
        raise AttributeError(f"module {__name__!r} has no attribute {name!r}")

    module_name, attribute_name = _LAZY_EXPORTS[name]
    module = import_module(module_name, __name__)
    value = getattr(module, attribute_name)
    globals()[name] = value
    return value


def __dir__():
    """Expose lazy exports to introspection tools."""
    return sorted(set(globals()) | set(__all__))
