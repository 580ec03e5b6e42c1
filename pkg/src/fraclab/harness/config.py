"""Corpus configuration: YAML document validated against ``config.schema.json``."""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema
import yaml

from ..errors import ConfigError
from ..ineqchecks import CHECK_IDS, VARIANTS, Tolerances
from ..testfuncs import corpus_labels

DEFAULT_ALPHAS = (0.25, 0.5, 0.75, 1.5, 2.5)
DEFAULT_M = (0.25, 0.5, 1.0)
DEFAULT_Q = (2.0, 3.0)
DEFAULT_INTERVALS = ((0.0, 1.0), (0.5, 2.5))
DEFAULT_X_FRACTIONS = (0.25, 0.5, 0.75)
DEFAULT_XY_FRACTIONS = ((0.0, 1.0), (0.1, 0.9))


class _Loader(yaml.SafeLoader):
    pass


# YAML 1.1 reads "1e-9" as a string; accept exponent floats without a dot
_Loader.add_implicit_resolver(
    "tag:yaml.org,2002:float",
    re.compile(r"""^(?:[-+]?(?:[0-9][0-9_]*)\.[0-9_]*(?:[eE][-+]?[0-9]+)?
                |[-+]?(?:[0-9][0-9_]*)(?:[eE][-+]?[0-9]+)
                |\.[0-9_]+(?:[eE][-+]?[0-9]+)?
                |[-+]?\.(?:inf|Inf|INF)
                |\.(?:nan|NaN|NAN))$""", re.X),
    list("-+0123456789."),
)


@dataclass(frozen=True)
class CorpusConfig:
    functions: tuple
    alphas: tuple = DEFAULT_ALPHAS
    intervals: tuple = DEFAULT_INTERVALS
    x_fractions: tuple = DEFAULT_X_FRACTIONS
    xy_fractions: tuple = DEFAULT_XY_FRACTIONS
    m_values: tuple = DEFAULT_M
    q_values: tuple = DEFAULT_Q
    tolerances: Tolerances = field(default_factory=Tolerances)
    checks: tuple = CHECK_IDS
    variants: tuple = VARIANTS
    residuals: bool = True
    out_dir: str = "reports"
    basename: str = "report"
    format: str = "structured"

    def canonical(self):
        """JSON-compatible dict of every field, used for the digest."""
        d = asdict(self)
        d["tolerances"] = asdict(self.tolerances)
        for key in ("functions", "alphas", "x_fractions", "m_values", "q_values", "checks", "variants"):
            d[key] = list(d[key])
        d["intervals"] = [list(iv) for iv in self.intervals]
        d["xy_fractions"] = [list(p) for p in self.xy_fractions]
        # output location does not change report content
        for key in ("out_dir", "basename", "format"):
            d.pop(key)
        return d

    def digest(self):
        body = json.dumps(self.canonical(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(body.encode()).hexdigest()


def _schema():
    text = resources.files("fraclab.harness").joinpath("config.schema.json").read_text()
    return json.loads(text)


def _line_of(node, path):
    """Best-effort source line for a schema error path."""
    for key in path:
        if isinstance(node, yaml.MappingNode):
            nxt = next((v for k, v in node.value if k.value == key), None)
        elif isinstance(node, yaml.SequenceNode) and isinstance(key, int) and key < len(node.value):
            nxt = node.value[key]
        else:
            nxt = None
        if nxt is None:
            break
        node = nxt
    return node.start_mark.line + 1 if node is not None else None


def parse_config(text):
    """Parse and validate a configuration document, filling defaults."""
    try:
        node = yaml.compose(text, Loader=_Loader)
        data = yaml.load(text, Loader=_Loader)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"line {mark.line + 1}: " if mark is not None else ""
        raise ConfigError(f"{where}malformed configuration: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a mapping")
    try:
        jsonschema.validate(data, _schema())
    except jsonschema.ValidationError as exc:
        field_path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        line = _line_of(node, list(exc.absolute_path)) if node is not None else None
        where = f"line {line}, " if line else ""
        raise ConfigError(f"{where}field '{field_path}': {exc.message}") from None

    known = corpus_labels()
    functions = known if data["functions"] == "all" else list(data["functions"])
    for label in functions:
        if label not in known:
            raise ConfigError(f"field 'functions': unknown function label {label!r}")
    alphas = tuple(float(a) for a in data.get("alphas", DEFAULT_ALPHAS))
    for a in alphas:
        if a < 0:
            raise ConfigError(f"field 'alphas': alpha must be >= 0, got {a!r}")
    intervals = tuple((float(a), float(b)) for a, b in data.get("intervals", DEFAULT_INTERVALS))
    for a, b in intervals:
        if not a < b:
            raise ConfigError(f"field 'intervals': need a < b, got [{a!r}, {b!r}]")
    xy = tuple((float(u), float(v)) for u, v in data.get("xy_fractions", DEFAULT_XY_FRACTIONS))
    for u, v in xy:
        if not u < v:
            raise ConfigError(f"field 'xy_fractions': need x < y, got [{u!r}, {v!r}]")
    tol = Tolerances(**data.get("tolerances", {}))
    out = data.get("output", {})
    return CorpusConfig(
        functions=tuple(functions),
        alphas=alphas,
        intervals=intervals,
        x_fractions=tuple(float(v) for v in data.get("x_fractions", DEFAULT_X_FRACTIONS)),
        xy_fractions=xy,
        m_values=tuple(float(v) for v in data.get("m_values", DEFAULT_M)),
        q_values=tuple(float(v) for v in data.get("q_values", DEFAULT_Q)),
        tolerances=tol,
        checks=tuple(data.get("checks", CHECK_IDS)),
        variants=tuple(data.get("variants", VARIANTS)),
        residuals=bool(data.get("residuals", True)),
        out_dir=out.get("dir", "reports"),
        basename=out.get("basename", "report"),
        format=out.get("format", "structured"),
    )


def load_config(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    return parse_config(text)


def default_config():
    """Every corpus function with all defaults."""
    return parse_config("functions: all\n")
