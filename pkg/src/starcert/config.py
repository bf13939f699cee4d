"""Run configuration: parsing of function literals, ranges and config files."""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field, fields

from .disk import DEFAULT_ANGULAR, DEFAULT_MAX_RADIUS, DEFAULT_RADIAL, DEFAULT_REFINE_STEPS
from .criteria import CERT_TOL, THEOREM_IDS
from .errors import ConfigError

COMMANDS = ("check", "example1", "fuzz", "witness", "tabulate")
_TOKEN = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)(e[+-]?\d+)?([+-](\d+\.?\d*|\.\d+)(e[+-]?\d+)?i)?$|^[+-]?(\d+\.?\d*|\.\d+)(e[+-]?\d+)?i$")


def parse_coefficient(token, key="coefficients") -> complex:
    """Parse ``re``, ``re+im i`` or ``im i`` (whitespace ignored)."""
    tok = str(token).replace(" ", "").lower()
    if not _TOKEN.match(tok):
        raise ConfigError(key, f"malformed coefficient token {token!r}")
    return complex(tok.replace("i", "j"))


def parse_coefficients(value, key="coefficients") -> list[complex]:
    """Comma-separated tokens, or a list of ``[re, im]`` pairs / tokens / numbers."""
    if value is None:
        return None
    if isinstance(value, str):
        items = [t for t in value.split(",")]
        if not value.strip() or any(not t.strip() for t in items):
            raise ConfigError(key, "empty coefficient list or token")
        return [parse_coefficient(t, key) for t in items]
    if not isinstance(value, (list, tuple)) or not value:
        raise ConfigError(key, "expected a non-empty array of [re, im] pairs")
    out = []
    for item in value:
        if isinstance(item, (list, tuple)):
            if len(item) != 2 or not all(isinstance(x, (int, float)) for x in item):
                raise ConfigError(key, f"expected [re, im] pair, got {item!r}")
            out.append(complex(item[0], item[1]))
        elif isinstance(item, (int, float, complex)) and not isinstance(item, bool):
            out.append(complex(item))
        elif isinstance(item, str):
            out.append(parse_coefficient(item, key))
        else:
            raise ConfigError(key, f"unreadable coefficient {item!r}")
    if not all(math.isfinite(c.real) and math.isfinite(c.imag) for c in out):
        raise ConfigError(key, "coefficients must be finite")
    return out


def parse_int_range(text, key="n") -> list[int]:
    """``"1..4"``, ``"2"`` or ``"1,3,5"``."""
    text = str(text).strip()
    try:
        if ".." in text:
            lo, hi = text.split("..")
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise ConfigError(key, f"malformed integer range {text!r}") from None


def parse_float_list(text, key="alpha") -> list[float]:
    """Comma list, with ``a,b,...,c`` expanding to the progression ``a, b, ..., c``."""
    items = [t.strip() for t in str(text).split(",")]
    try:
        if "..." in items:
            if items.count("...") != 1 or items[-2] != "..." or len(items) < 4:
                raise ValueError
            head = [float(t) for t in items[:-2]]
            end = float(items[-1])
            step = head[1] - head[0]
            if step == 0:
                raise ValueError
            count = int(round((end - head[0]) / step)) + 1
            values = [head[0] + i * step for i in range(count)]
            if count < len(head) or abs(values[-1] - end) > 1e-9 * max(1.0, abs(end)):
                raise ValueError
            values[-1] = end
            return values
        return [float(t) for t in items]
    except (ValueError, IndexError):
        raise ConfigError(key, f"malformed list {text!r}") from None


@dataclass
class RunConfig:
    command: str
    theorem: str | None = None
    p: list | None = None
    g: list | None = None
    f: list | None = None
    h: list | None = None
    n: int | None = None
    alpha: float | None = None
    mu: float | None = None
    A: float | None = None
    k: float | None = None
    orientation: str = "plus"
    family: str = "poly_p"
    cap: float = 0.3
    degree: int = 4
    trials: int = 1000
    sweep: int = 0
    n_values: list = field(default_factory=list)
    alpha_values: list = field(default_factory=list)
    mu_values: list = field(default_factory=list)
    grid_radial: int = DEFAULT_RADIAL
    grid_angular: int = DEFAULT_ANGULAR
    max_radius: float = DEFAULT_MAX_RADIUS
    refine_steps: int = DEFAULT_REFINE_STEPS
    seed: int = 0
    out_dir: str = "out"
    tolerance: float = CERT_TOL

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise ConfigError("command", f"must be one of {', '.join(COMMANDS)}")
        if self.theorem is not None:
            self.theorem = str(self.theorem).upper()
            if self.theorem not in THEOREM_IDS:
                raise ConfigError("theorem", f"unknown theorem id {self.theorem!r}")
        if self.alpha is not None and not abs(self.alpha) < math.pi / 2:
            raise ConfigError("alpha", "|alpha| must be < pi/2 (radians)")
        if self.mu is not None and not 0 < self.mu <= 1:
            raise ConfigError("mu", "mu must lie in (0, 1]")
        if self.alpha is not None and self.mu is not None:
            raise ConfigError("mu", "give either alpha or mu, not both")
        if self.n is not None and (int(self.n) != self.n or self.n < 1):
            raise ConfigError("n", "n must be an integer >= 1")
        if self.A is not None and not self.A > 0:
            raise ConfigError("A", "A must be positive")
        if self.orientation not in ("plus", "minus"):
            raise ConfigError("orientation", "must be 'plus' or 'minus'")
        if self.grid_radial < 2:
            raise ConfigError("grid.radial", "must be >= 2")
        if self.grid_angular < 4:
            raise ConfigError("grid.angular", "must be >= 4")
        if not 0 < self.max_radius < 1:
            raise ConfigError("grid.max_radius", "must lie in (0, 1)")
        if self.refine_steps < 0:
            raise ConfigError("refine.steps", "must be >= 0")
        if not self.tolerance > 0:
            raise ConfigError("tolerance", "must be positive")
        if self.trials < 1:
            raise ConfigError("trials", "must be >= 1")
        for v in self.alpha_values:
            if not abs(v) < math.pi / 2:
                raise ConfigError("alpha", f"|alpha| must be < pi/2, got {v!r}")
        for v in self.mu_values:
            if not 0 < v <= 1:
                raise ConfigError("mu", f"mu must lie in (0, 1], got {v!r}")
        for v in self.n_values:
            if v < 1:
                raise ConfigError("n", "n must be >= 1")
        if self.command == "check":
            if self.theorem is None:
                raise ConfigError("theorem", "required for check")
            need = "f" if self.theorem in ("C2", "C5", "C8") else "p"
            if getattr(self, need) is None:
                raise ConfigError(need, f"{self.theorem} needs the function '{need}'")
        if self.command == "tabulate" and self.theorem is None:
            raise ConfigError("theorem", "required for tabulate")
        if self.command == "fuzz" and self.theorem is None:
            raise ConfigError("theorem", "required for fuzz")
        if self.command == "witness" and self.h is None and self.p is None:
            raise ConfigError("h", "witness needs 'h' (or 'p' to be rotated)")
        return self


_NESTED = {
    ("grid", "radial"): "grid_radial",
    ("grid", "angular"): "grid_angular",
    ("grid", "max_radius"): "max_radius",
    ("refine", "steps"): "refine_steps",
}
_USER_KEY = {v: f"{a}.{b}" for (a, b), v in _NESTED.items()}
_FIELD_TYPES = {
    "n": int, "alpha": float, "mu": float, "A": float, "k": float, "cap": float,
    "degree": int, "trials": int, "sweep": int, "grid_radial": int, "grid_angular": int,
    "max_radius": float, "refine_steps": int, "seed": int, "tolerance": float,
}


def config_from_mapping(data) -> RunConfig:
    """Build a RunConfig from a parsed config document (dotted or nested grid/refine keys)."""
    if not isinstance(data, dict):
        raise ConfigError("<root>", "config must be a JSON object")
    names = {f.name for f in fields(RunConfig)}
    flat = {}
    for key, value in data.items():
        if key in ("grid", "refine") and isinstance(value, dict):
            for sub, v in value.items():
                if (key, sub) not in _NESTED:
                    raise ConfigError(f"{key}.{sub}", "unknown key")
                flat[_NESTED[(key, sub)]] = v
            continue
        if "." in key:
            head, _, sub = key.partition(".")
            if (head, sub) not in _NESTED:
                raise ConfigError(key, "unknown key")
            flat[_NESTED[(head, sub)]] = value
            continue
        target = {"out": "out_dir", "declared_A": "A"}.get(key, key)
        if target not in names:
            raise ConfigError(key, "unknown key")
        flat[target] = value
    if "command" not in flat:
        raise ConfigError("command", "missing")
    for key in ("p", "g", "f", "h"):
        if key in flat:
            flat[key] = parse_coefficients(flat[key], key)
    for key, typ in _FIELD_TYPES.items():
        if key in flat and flat[key] is not None:
            v = flat[key]
            if isinstance(v, bool) or not isinstance(v, (int, float)) or (typ is int and int(v) != v):
                raise ConfigError(_USER_KEY.get(key, key), f"expected {typ.__name__}, got {v!r}")
            flat[key] = typ(v)
    if "n_values" in flat and isinstance(flat["n_values"], str):
        flat["n_values"] = parse_int_range(flat["n_values"], "n_values")
    if "alpha_values" in flat and isinstance(flat["alpha_values"], str):
        flat["alpha_values"] = parse_float_list(flat["alpha_values"], "alpha_values")
    if "mu_values" in flat and isinstance(flat["mu_values"], str):
        flat["mu_values"] = parse_float_list(flat["mu_values"], "mu_values")
    return RunConfig(**flat).validate()


def load_config(path) -> RunConfig:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError("<file>", f"invalid JSON: {exc}") from None
    except OSError as exc:
        raise ConfigError("<file>", str(exc)) from None
    return config_from_mapping(data)
