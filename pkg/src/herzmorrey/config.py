"""Experiment configuration: INI files with [grid], [exponents], [space],
[family], [tolerances] and [output] sections, plus descriptor parsers.

Descriptors
-----------
Exponents:  ``const:<v>``, ``logdecay:<base>:<amplitude>``,
            ``logdecay-shifted:<base>:<amplitude>:<bump>:<radius>``
Functions:  ``char-annulus:<j>``, ``char-ball:<k>``, ``power:<a>:<k_lo>:<k_hi>``,
            ``gauss:<center>:<width>``, ``zero``.  Integer slots of the
            indicator families accept ranges ``<a>..<b>`` that expand to one
            function per integer.
"""

from __future__ import annotations

import configparser
import dataclasses
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError
from .exponents import Constant, ExponentField, LogDecay, LogDecayShifted, Role
from .functions import ZERO, CharAnnulus, CharBall, GaussBump, Power, RadialFunction

__all__ = [
    "GridConfig",
    "SpaceConfig",
    "Tolerances",
    "OutputConfig",
    "ExperimentConfig",
    "parse_exponent",
    "parse_function",
    "expand_family",
    "load_config",
    "parse_config_text",
]


def _num(text: str, what: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"{what}: expected a decimal number, got {text!r}") from None


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"{what}: expected an integer, got {text!r}") from None


def parse_exponent(desc: str, role: Role | str = Role.LEBESGUE, dimension: int | None = None) -> ExponentField:
    """Build an exponent field from its descriptor string."""
    role = Role(role)
    parts = desc.strip().split(":")
    kind, args = parts[0].lower(), parts[1:]
    arity = {"const": 1, "logdecay": 2, "logdecay-shifted": 4}
    if kind not in arity:
        raise ConfigError(f"unknown exponent family {kind!r} in {desc!r}")
    if len(args) != arity[kind]:
        raise ConfigError(f"exponent {desc!r}: {kind} takes {arity[kind]} parameter(s), got {len(args)}")
    vals = [_num(a, f"exponent {desc!r}") for a in args]
    try:
        if kind == "const":
            return Constant(vals[0], role=role, dimension=dimension)
        if kind == "logdecay":
            return LogDecay(vals[0], vals[1], role=role, dimension=dimension)
        return LogDecayShifted(*vals, role=role, dimension=dimension)
    except ValueError as exc:
        raise ConfigError(f"exponent {desc!r}: {exc}") from None


def _int_range(text: str, what: str) -> list[int]:
    if ".." in text:
        a, b = text.split("..", 1)
        lo, hi = _int(a, what), _int(b, what)
        if lo > hi:
            raise ConfigError(f"{what}: empty range {text!r}")
        return list(range(lo, hi + 1))
    return [_int(text, what)]


def expand_family(desc: str) -> list[RadialFunction]:
    """All functions named by one descriptor (ranges expand)."""
    parts = desc.strip().split(":")
    kind, args = parts[0].lower(), parts[1:]
    what = f"function {desc!r}"
    if kind == "zero" and not args:
        return [ZERO]
    if kind in ("char-annulus", "char-ball") and len(args) == 1:
        cls = CharAnnulus if kind == "char-annulus" else CharBall
        return [cls(j) for j in _int_range(args[0], what)]
    try:
        if kind == "power" and len(args) == 3:
            return [Power(_num(args[0], what), _int(args[1], what), _int(args[2], what))]
        if kind == "gauss" and len(args) == 2:
            return [GaussBump(_num(args[0], what), _num(args[1], what))]
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{what}: {exc}") from None
    raise ConfigError(f"unknown or malformed function descriptor {desc!r}")


def parse_function(desc: str) -> RadialFunction:
    fns = expand_family(desc)
    if len(fns) != 1:
        raise ConfigError(f"function {desc!r} names {len(fns)} functions, expected one")
    return fns[0]


@dataclass(frozen=True)
class GridConfig:
    dimension: int = 2
    k_min: int = -40
    k_max: int = 40
    nodes_per_annulus: int = 32
    angular_nodes: int = 16
    seed: int | None = None


@dataclass(frozen=True)
class SpaceConfig:
    alpha: float = 0.0
    lam: float = 0.0
    p1: float = 1.0
    p2: float = 1.0


@dataclass(frozen=True)
class Tolerances:
    bisection_rtol: float = 1e-10
    shell_budget: float = 0.1
    # family-wide max/min ratio above which the report flags growth
    growth_flag: float = 10.0


@dataclass(frozen=True)
class OutputConfig:
    dir: str = "out"
    report: str = "report.json"
    csv: str = "rows.csv"


@dataclass(frozen=True)
class ExperimentConfig:
    grid: GridConfig = field(default_factory=GridConfig)
    q1: str = "logdecay:1.2:0.3"
    beta: str = "const:0.5"
    space: SpaceConfig = field(default_factory=SpaceConfig)
    family: tuple = ("char-annulus:-8..8",)
    tolerances: Tolerances = field(default_factory=Tolerances)
    output: OutputConfig = field(default_factory=OutputConfig)

    def __post_init__(self):
        # parse eagerly so malformed descriptors fail at load time
        self.q1_field()
        self.beta_field()
        self.functions()
        g = self.grid
        if g.dimension < 1:
            raise ConfigError(f"grid.dimension must be >= 1, got {g.dimension}")
        if g.k_min >= g.k_max:
            raise ConfigError(f"grid.k_min must be below grid.k_max, got {g.k_min} >= {g.k_max}")
        if g.nodes_per_annulus < 4:
            raise ConfigError(f"grid.nodes_per_annulus must be >= 4, got {g.nodes_per_annulus}")
        if g.angular_nodes < 8:
            raise ConfigError(f"grid.angular_nodes must be >= 8, got {g.angular_nodes}")
        if self.space.p1 <= 0 or self.space.p2 <= 0:
            raise ConfigError("space.p1 and space.p2 must be positive")

    def q1_field(self) -> ExponentField:
        return parse_exponent(self.q1, Role.LEBESGUE, self.grid.dimension)

    def beta_field(self) -> ExponentField:
        return parse_exponent(self.beta, Role.ORDER, self.grid.dimension)

    def functions(self) -> list[tuple[str, RadialFunction]]:
        """(function id, function) pairs in declared family order."""
        out = []
        for desc in self.family:
            for f in expand_family(desc):
                out.append((f.label, f))
        return out

    def with_overrides(self, nodes: int | None = None, seed: int | None = None, out: str | None = None,
                       **space) -> "ExperimentConfig":
        grid = self.grid
        if nodes is not None:
            grid = dataclasses.replace(grid, nodes_per_annulus=int(nodes))
        if seed is not None:
            grid = dataclasses.replace(grid, seed=int(seed))
        output = self.output if out is None else dataclasses.replace(self.output, dir=str(out))
        sp = dataclasses.replace(self.space, **{k: v for k, v in space.items() if v is not None})
        return dataclasses.replace(self, grid=grid, output=output, space=sp)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["family"] = list(self.family)
        return d


_SECTIONS = {
    "grid": {"dimension", "k_min", "k_max", "nodes_per_annulus", "angular_nodes", "seed"},
    "exponents": {"q1", "beta"},
    "space": {"alpha", "lambda", "p1", "p2"},
    "family": {"functions"},
    "tolerances": {"bisection_rtol", "shell_budget", "growth_flag"},
    "output": {"dir", "report", "csv"},
}


def parse_config_text(text: str, source: str = "<config>") -> ExperimentConfig:
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    try:
        cp.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(f"{source}: cannot parse config: {exc}") from None
    for sec in cp.sections():
        if sec not in _SECTIONS:
            raise ConfigError(f"{source}: unknown section [{sec}]")
        for key in cp[sec]:
            if key not in _SECTIONS[sec]:
                raise ConfigError(f"{source}: unknown field {sec}.{key}")

    def get(sec, key, conv, default):
        if cp.has_option(sec, key):
            raw = cp.get(sec, key).strip()
            return conv(raw, f"{sec}.{key}")
        return default

    gd = GridConfig()
    seed_raw = cp.get("grid", "seed", fallback="").strip() if cp.has_section("grid") else ""
    grid = GridConfig(
        dimension=get("grid", "dimension", _int, gd.dimension),
        k_min=get("grid", "k_min", _int, gd.k_min),
        k_max=get("grid", "k_max", _int, gd.k_max),
        nodes_per_annulus=get("grid", "nodes_per_annulus", _int, gd.nodes_per_annulus),
        angular_nodes=get("grid", "angular_nodes", _int, gd.angular_nodes),
        seed=_int(seed_raw, "grid.seed") if seed_raw else None,
    )
    sd = SpaceConfig()
    space = SpaceConfig(
        alpha=get("space", "alpha", _num, sd.alpha),
        lam=get("space", "lambda", _num, sd.lam),
        p1=get("space", "p1", _num, sd.p1),
        p2=get("space", "p2", _num, sd.p2),
    )
    td = Tolerances()
    tol = Tolerances(
        bisection_rtol=get("tolerances", "bisection_rtol", _num, td.bisection_rtol),
        shell_budget=get("tolerances", "shell_budget", _num, td.shell_budget),
        growth_flag=get("tolerances", "growth_flag", _num, td.growth_flag),
    )
    od = OutputConfig()
    output = OutputConfig(
        dir=cp.get("output", "dir", fallback=od.dir).strip(),
        report=cp.get("output", "report", fallback=od.report).strip(),
        csv=cp.get("output", "csv", fallback=od.csv).strip(),
    )
    ed = ExperimentConfig.__dataclass_fields__
    fam_raw = cp.get("family", "functions", fallback=None)
    family = ed["family"].default if fam_raw is None else tuple(
        p.strip() for p in fam_raw.replace("\n", ",").split(",") if p.strip()
    )
    if not family:
        raise ConfigError(f"{source}: family.functions is empty")
    try:
        return ExperimentConfig(
            grid=grid,
            q1=cp.get("exponents", "q1", fallback=ed["q1"].default).strip(),
            beta=cp.get("exponents", "beta", fallback=ed["beta"].default).strip(),
            space=space,
            family=family,
            tolerances=tol,
            output=output,
        )
    except ConfigError as exc:
        raise ConfigError(f"{source}: {exc}") from None


def load_config(path) -> ExperimentConfig:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {p}: {exc.strerror}") from None
    return parse_config_text(text, source=str(p))
