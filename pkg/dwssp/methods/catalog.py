"""
Built-in methods and the JSON method format.

Names: forward-euler, backward-euler, trapezoidal, ssprk22, ssprk33,
dw-family:<r> (Runge-Kutta) and lmm:forward-euler, lmm:backward-euler,
lmm:trapezoidal (multistep). Anything else is treated as a path to a JSON
method document.
"""
import json
import logging
import os
from typing import Any, Dict, Union

from ..exceptions import DwsspValidationError, MethodFormatError
from ..utils import Utils
from .family import make_optimal_family, shu_osher_to_butcher
from .tableau import DownwindLmm, DownwindTableau

logger = logging.getLogger(__name__)

Method = Union[DownwindTableau, DownwindLmm]

FAMILY_PREFIX = "dw-family:"
LMM_PREFIX = "lmm:"


def _rk(name: str, A, b) -> DownwindTableau:
    s = len(b)
    return DownwindTableau(A=A, Atilde=[[0.0] * s for _ in range(s)], b=b,
                           btilde=[0.0] * s, name=name)


_BUILTIN_RK = {
    "forward-euler": lambda: _rk("forward-euler", [[0.0]], [1.0]),
    "backward-euler": lambda: _rk("backward-euler", [[1.0]], [1.0]),
    "trapezoidal": lambda: _rk("trapezoidal", [[0.0, 0.0], [0.5, 0.5]], [0.5, 0.5]),
    "ssprk22": lambda: _rk("ssprk22", [[0.0, 0.0], [1.0, 0.0]], [0.5, 0.5]),
    "ssprk33": lambda: _rk(
        "ssprk33",
        [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.25, 0.25, 0.0]],
        [1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0],
    ),
}

_BUILTIN_LMM = {
    "forward-euler": ([1.0], [1.0, 0.0]),
    "backward-euler": ([1.0], [0.0, 1.0]),
    "trapezoidal": ([1.0], [0.5, 0.5]),
}

BUILTIN_NAMES = (
    sorted(_BUILTIN_RK)
    + [f"{FAMILY_PREFIX}<r>"]
    + [f"{LMM_PREFIX}{n}" for n in sorted(_BUILTIN_LMM)]
)


def family_tableau(r: float) -> DownwindTableau:
    t = shu_osher_to_butcher(make_optimal_family(r))
    return DownwindTableau(A=t.A, Atilde=t.Atilde, b=t.b, btilde=t.btilde, c=t.c,
                           name=f"{FAMILY_PREFIX}{r:g}")


def catalog_method(name: str) -> Method:
    """Look up a built-in method by name.

    Raises:
        DwsspValidationError: If the name is unknown or a family parameter is invalid.
    """
    key = name.strip().lower()
    if key in _BUILTIN_RK:
        return _BUILTIN_RK[key]()
    if key.startswith(FAMILY_PREFIX):
        raw = key[len(FAMILY_PREFIX):]
        try:
            r = Utils.parse_number(raw, "r")
        except ValueError as exc:
            raise DwsspValidationError(f"invalid family parameter in {name!r}: {exc}") from exc
        return family_tableau(r)
    if key.startswith(LMM_PREFIX) and key[len(LMM_PREFIX):] in _BUILTIN_LMM:
        alpha, beta = _BUILTIN_LMM[key[len(LMM_PREFIX):]]
        return DownwindLmm(alpha=alpha, beta=beta, betatilde=[0.0] * len(beta), name=key)
    raise DwsspValidationError(
        f"unknown method {name!r}; built-ins are {', '.join(BUILTIN_NAMES)}"
    )


def resolve_method(spec: str) -> Method:
    """Catalog name or path to a JSON method file."""
    if os.path.isfile(spec):
        return load_method(spec)
    return catalog_method(spec)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def _require(data: Dict[str, Any], key: str) -> Any:
    if key not in data:
        raise MethodFormatError(f"missing field {key!r}", field=key)
    return data[key]


def method_from_dict(data: Dict[str, Any]) -> Method:
    """Build a method from a parsed JSON document.

    Numeric entries may be numbers or exact strings such as ``"17/8"``.
    """
    if not isinstance(data, dict):
        raise MethodFormatError("method document must be a JSON object")
    try:
        if "k" in data:
            k = int(_require(data, "k"))
            doc = {
                "k": k,
                "alpha": Utils.parse_vector(_require(data, "alpha"), "alpha"),
                "beta": Utils.parse_vector(_require(data, "beta"), "beta"),
                "betatilde": Utils.parse_vector(data.get("betatilde", [0] * (k + 1)), "betatilde"),
                "name": str(data.get("name", "")),
            }
            return DownwindLmm.from_dict(doc)
        s = int(_require(data, "s"))
        doc = {
            "s": s,
            "A": Utils.parse_matrix(_require(data, "A"), "A"),
            "Atilde": Utils.parse_matrix(data.get("Atilde", [[0] * s] * s), "Atilde"),
            "b": Utils.parse_vector(_require(data, "b"), "b"),
            "btilde": Utils.parse_vector(data.get("btilde", [0] * s), "btilde"),
            "name": str(data.get("name", "")),
        }
        if "c" in data:
            doc["c"] = Utils.parse_vector(data["c"], "c")
        return DownwindTableau.from_dict(doc)
    except MethodFormatError:
        raise
    except (TypeError, ValueError) as exc:
        field = str(exc).split(":", 1)[0].split("[", 1)[0] if ":" in str(exc) else None
        raise MethodFormatError(f"invalid method document: {exc}", field=field) from exc


def method_to_json(method: Method) -> str:
    return json.dumps(method.to_dict(), indent=2) + "\n"


def load_method(path: str) -> Method:
    """Read a method from a JSON file.

    Raises:
        MethodFormatError: With ``line``/``column`` for syntax errors and
            ``field`` for missing or malformed entries.
    """
    with open(path, encoding="utf-8") as f:
        text = f.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MethodFormatError(
            f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}",
            line=exc.lineno, column=exc.colno,
        ) from exc
    method = method_from_dict(data)
    logger.debug(f"Loaded method {method.name or type(method).__name__} from {path}")
    return method
