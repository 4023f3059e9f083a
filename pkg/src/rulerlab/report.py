"""Run configuration, result reports and their CSV / JSON encodings"""

from csv         import writer
from dataclasses import asdict, dataclass, field
from io          import StringIO
from logging     import getLogger
from typing      import Any, Dict, List, Optional, Sequence

try:
    from ujson   import dumps as _dumps, loads
    _DUMPS_KWARGS = {'sort_keys': True, 'indent': 2, 'escape_forward_slashes': False}
except ImportError:
    from json    import dumps as _dumps, loads
    _DUMPS_KWARGS = {'sort_keys': True, 'indent': 2}

from .const import DEFAULT_SEED, OUTPUT_FORMATS, REAL_DIGITS
from .exc import RulerLabUsageError

_LOGGER = getLogger(__name__)


def format_real(value: float) -> str:
    """15 significant digits, shortest form"""
    return f'{value:.{REAL_DIGITS}g}'


@dataclass
class RunConfig:
    """Everything a run depends on; identical configs give identical bytes"""
    subcommand:  str
    n:           Optional[int] = None
    max_n:       Optional[int] = None
    steps:       Optional[int] = None
    tol:         Optional[float] = None
    transient:   Optional[int] = None
    lifespan:    Optional[int] = None
    position:    Optional[float] = None
    jitter:      bool = False
    concurrent:  bool = False
    format:      str = 'csv'
    output:      Optional[str] = None
    seed:        int = DEFAULT_SEED

    def __post_init__(self):
        if self.format not in OUTPUT_FORMATS:
            raise RulerLabUsageError(f'Unknown format {self.format!r}; use one of {", ".join(OUTPUT_FORMATS)}')

    def echo(self) -> Dict[str, Any]:
        """Config as it appears in report provenance; the output path is left out"""
        return {k: v for k, v in asdict(self).items() if v is not None and k != 'output'}


@dataclass(frozen=True)
class Verdict:
    check:    str
    identity: str
    passed:   bool
    detail:   str = ''


@dataclass
class Report:
    """Rows under `columns`, verification verdicts and provenance"""
    title:      str
    columns:    List[str]
    rows:       List[Dict[str, Any]] = field(default_factory=list)
    verdicts:   List[Verdict] = field(default_factory=list)
    provenance: Dict[str, Any] = field(default_factory=dict)
    extras:     Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    @property
    def failures(self) -> List[Verdict]:
        return [v for v in self.verdicts if not v.passed]


def _cell(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return format_real(value)
    return str(value)


def _jsonable(value: Any) -> Any:
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        return float(format_real(value))
    if isinstance(value, int):
        return int(value)
    if isinstance(value, str):
        return value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return str(value)


def emit_csv(report: Report) -> bytes:
    buffer = StringIO()
    out = writer(buffer, lineterminator='\n')
    out.writerow(report.columns)
    for row in report.rows:
        out.writerow([_cell(row.get(col)) for col in report.columns])
    return buffer.getvalue().encode('utf-8')


def emit_json(report: Report) -> bytes:
    payload = {
        'title':      report.title,
        'columns':    list(report.columns),
        'rows':       [{col: _jsonable(row.get(col)) for col in report.columns} for row in report.rows],
        'verdicts':   [_jsonable(asdict(v)) for v in report.verdicts],
        'provenance': _jsonable(report.provenance),
    }
    if report.extras:
        payload['extras'] = _jsonable(report.extras)
    return (_dumps(payload, **_DUMPS_KWARGS) + '\n').encode('utf-8')


def verdict_report(verdicts: Sequence[Verdict], provenance: Dict[str, Any]) -> Report:
    """Verdict table: one row per checked identity"""
    return Report(
        title      = 'verify',
        columns    = ['check', 'identity', 'passed', 'detail'],
        rows       = [asdict(v) for v in verdicts],
        verdicts   = list(verdicts),
        provenance = provenance,
    )


def load_config_file(path: str) -> Dict[str, Any]:
    """Flat JSON object of flag defaults, e.g. {"n": 5, "format": "json"}"""
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = loads(f.read())
    except OSError as e:
        raise RulerLabUsageError(f'Cannot read config file {path}: {e}') from e
    except ValueError as e:
        raise RulerLabUsageError(f'Config file {path} is not valid JSON: {e}') from e
    if not isinstance(data, dict):
        raise RulerLabUsageError(f'Config file {path} must hold a JSON object')
    _LOGGER.debug(f'Loaded config file {path}: {sorted(data)}')
    return {str(k).replace('-', '_'): v for k, v in data.items()}
