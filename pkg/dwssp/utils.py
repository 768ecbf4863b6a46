import json
import logging
import os
from fractions import Fraction
from typing import Any, Optional, Sequence, Union

import numpy as np

logger = logging.getLogger(__name__)

Number = Union[int, float, str, Fraction]


class Utils:

    @staticmethod
    def parse_number(value: Number, field: str = "value") -> float:
        """Parse a JSON number or an exact string such as ``"17/8"``.

        Strings go through :class:`fractions.Fraction` so parsing never
        depends on the locale.

        Raises:
            ValueError: If the value is not a finite real number.
        """
        if isinstance(value, bool):
            raise ValueError(f"{field}: booleans are not numbers")
        if isinstance(value, (int, float, Fraction)):
            out = float(value)
        elif isinstance(value, str):
            try:
                out = float(Fraction(value.strip()))
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"{field}: cannot parse {value!r} as a number") from exc
        else:
            raise ValueError(f"{field}: expected a number, got {type(value).__name__}")
        if not np.isfinite(out):
            raise ValueError(f"{field}: value must be finite")
        return out

    @staticmethod
    def readonly(values: Any, ndim: Optional[int] = None, field: str = "array") -> np.ndarray:
        """Copy *values* into a float64 array and lock it against writes."""
        arr = np.array(values, dtype=float)
        if ndim is not None and arr.ndim != ndim:
            raise ValueError(f"{field} must be {ndim}-dimensional, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError(f"{field} contains non-finite entries")
        arr.setflags(write=False)
        return arr

    @staticmethod
    def to_nested_list(arr: np.ndarray) -> list:
        return np.asarray(arr, dtype=float).tolist()

    @staticmethod
    def parse_vector(raw: Sequence[Number], field: str) -> list:
        if not isinstance(raw, (list, tuple)):
            raise ValueError(f"{field}: expected a list")
        return [Utils.parse_number(x, f"{field}[{i}]") for i, x in enumerate(raw)]

    @staticmethod
    def parse_matrix(raw: Sequence[Sequence[Number]], field: str) -> list:
        if not isinstance(raw, (list, tuple)):
            raise ValueError(f"{field}: expected a list of rows")
        return [Utils.parse_vector(row, f"{field}[{i}]") for i, row in enumerate(raw)]

    @staticmethod
    def atomic_write_text(path: str, text: str) -> None:
        """Write *text* to *path* atomically (temp file + os.replace).

        A crash mid-write leaves the previous file intact.
        """
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        tmp_path = f"{path}.tmp"
        try:
            with open(tmp_path, "w", encoding="utf-8", newline="") as f:
                f.write(text)
                f.flush()
                os.fsync(f.fileno())
            os.replace(tmp_path, path)
        except BaseException:
            try:
                os.remove(tmp_path)
            except OSError:
                pass
            raise
        logger.debug(f"Wrote {path}")

    @staticmethod
    def atomic_write_json(path: str, data: Any) -> None:
        Utils.atomic_write_text(path, json.dumps(data, indent=2, sort_keys=True) + "\n")

    @staticmethod
    def read_json(path: str) -> Any:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
