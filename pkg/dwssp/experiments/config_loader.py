"""
Load an ExperimentSpec from a YAML file.

YAML schema
-----------
problem: burgers            # required: advection-square | advection-sine | burgers
n: 512                      # optional, per-problem default
cfl: 6.5                    # optional
t_end: 0.16                 # optional; Burgers supports 0.16 only
spatial: weno5              # optional: first | weno5
r: 8                        # optional family parameter, must exceed 2 + sqrt(2)
methods:                    # optional; defaults to the three comparators
  - backward-euler
  - trapezoidal
  - dw-family:8
sizes: [32, 64, 128, 256]   # optional; makes the run a convergence study
second_cfl: 3.25            # optional extra downwind-family run
splitting: engquist-osher    # optional Burgers flux splitting: lax-friedrichs | engquist-osher

Install optional dependencies before use:
    pip install "dwssp[yaml]"
"""
try:
    import yaml
except ImportError as _e:
    raise ImportError(
        "Config loading requires PyYAML. "
        'Install it with: pip install "dwssp[yaml]"'
    ) from _e

import os

from ..exceptions import DwsspValidationError
from .problems import ExperimentSpec


def load_spec_from_config(path: str) -> ExperimentSpec:
    """
    Parse *path* (YAML) and return a validated ExperimentSpec.

    Raises:
        FileNotFoundError: If the config file does not exist.
        DwsspValidationError: If the document is malformed or a field is out of range.
    """
    if not os.path.exists(path):
        raise FileNotFoundError(f"Experiment config not found: {path}")

    with open(path, encoding="utf-8") as f:
        try:
            cfg = yaml.safe_load(f)
        except yaml.YAMLError as exc:
            raise DwsspValidationError(f"{path}: invalid YAML: {exc}") from exc

    if not isinstance(cfg, dict) or not cfg.get("problem"):
        raise DwsspValidationError("Experiment config must include a 'problem' field")

    return ExperimentSpec.from_dict(cfg)
