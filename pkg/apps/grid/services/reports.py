"""
Report plumbing shared by the CLI verbs, the API views and the Celery tasks.

Reports are plain dicts serialized deterministically: JSON with sorted keys,
CSV with a fixed column order and shortest round-trip float text.
"""
import csv
import io
import json
import math
from contextlib import contextmanager
from dataclasses import dataclass, asdict, is_dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence, Union

import numpy as np
from django.core.management.base import CommandError

from config.exceptions import ParameterError, SparsekitError
from apps.grid.services.config import sparsekit_setting


@dataclass(frozen=True)
class CertifiedInterval:
    """Two-sided certified bracket of a supremum that is not computed exactly."""

    lower: float
    upper: float

    def __post_init__(self):
        if self.lower > self.upper:
            raise ParameterError(f"Certified interval has lower {self.lower} > upper {self.upper}")

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, value: float, rel_tol: float = 0.0) -> bool:
        slack = rel_tol * max(abs(self.lower), abs(self.upper), abs(value))
        return self.lower - slack <= value <= self.upper + slack

    def scaled(self, factor: float) -> 'CertifiedInterval':
        return CertifiedInterval(self.lower * factor, self.upper * factor)

    def as_dict(self) -> Dict[str, float]:
        return {'lower': self.lower, 'upper': self.upper}


def to_jsonable(obj: Any) -> Any:
    """Convert numpy scalars/arrays, dataclasses and tuples to JSON-ready values."""
    if isinstance(obj, CertifiedInterval):
        return obj.as_dict()
    if hasattr(obj, 'as_dict'):
        return to_jsonable(obj.as_dict())
    if is_dataclass(obj) and not isinstance(obj, type):
        return to_jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(key): to_jsonable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(item) for item in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        if math.isnan(value):
            return 'nan'
        return value
    return obj


def report_envelope(
    kind: str,
    payload: Dict[str, Any],
    seed: Optional[int] = None,
    truncated: bool = False,
    certified: Optional[CertifiedInterval] = None
) -> Dict[str, Any]:
    """Wrap a payload with the fields every report carries."""
    report = {
        'kind': kind,
        'version': sparsekit_setting('VERSION'),
        'seed': seed,
        'truncated': bool(truncated),
        'certified': certified.as_dict() if certified is not None else None,
    }
    report.update(payload)
    return to_jsonable(report)


def dumps_json(report: Dict[str, Any]) -> str:
    return json.dumps(to_jsonable(report), sort_keys=True, indent=2, allow_nan=False) + '\n'


def write_json(report: Dict[str, Any], path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_json(report), encoding='utf-8')


def format_cell(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def dumps_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_cell(value) for value in row])
    return buffer.getvalue()


def write_csv(path: Union[str, Path], header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    Path(path).write_text(dumps_csv(header, rows), encoding='utf-8')


@contextmanager
def command_refusals():
    """Turn service refusals into CommandError with the documented exit codes."""
    try:
        yield
    except SparsekitError as exc:
        raise CommandError(str(exc), returncode=exc.exit_code) from exc
    except OSError as exc:
        raise CommandError(f"{exc.strerror}: {exc.filename}", returncode=1) from exc
