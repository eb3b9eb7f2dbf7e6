"""TOML run configurations.

Layout::

    [algebra]
    n = 2
    m = 5
    phi = [[0, 1, 0, 0, 0], [-1, 0, 0, 0, 0], ...]   # or: phi_pairs = [[1, 2, 1]]
    chars = [[0, 0, 1, 0, 0], ...]                   # 2n rows
    mask = "NNPN"
    sigmas = [[0, 0, 0, 1, 0]]                       # n - 1 rows
    epsilon = [0, 0, 1, 0, 0]

    [module]                                         # optional
    xi = [0, 0, 0, 1]
    f = [0, 0, 0, 0, 0]

    [window]
    box = 1                                          # radius, or [[lo, hi], ...] per coordinate
    degree_cap = 1
    ambient_margin = 0

    [run]
    seed = 0
    samples = 500
    max_iter = 32
    count = 20

Numbers are integers or quoted exact rationals ("-2/7", "0.125").  TOML
floats are refused since their value is not what was typed.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import tomli

from .closure import DEFAULT_MAX_ITER, Window
from .exact import to_rational
from .lattice import AlgebraSignature, Character, ConfigurationError, ModuleSignature, SemigroupMask, SkewForm


class ConfigError(ConfigurationError):
    """Bad configuration text; ``line``/``column`` are 1-based when known."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line, self.column = line, column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


_KEYS = {
    "algebra": {"n", "m", "phi", "phi_pairs", "chars", "mask", "sigmas", "epsilon"},
    "module": {"xi", "f"},
    "window": {"box", "degree_cap", "ambient_margin"},
    "run": {"seed", "samples", "max_iter", "count"},
}


@dataclass(frozen=True)
class WindowConfig:
    box: Tuple[Tuple[int, int], ...]
    degree_cap: int = 1
    ambient_margin: int = 0

    def window(self) -> Window:
        return Window(self.box, self.degree_cap)


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    samples: int = 500
    max_iter: int = DEFAULT_MAX_ITER
    count: int = 20


@dataclass(frozen=True)
class Config:
    algebra: AlgebraSignature
    module: Optional[ModuleSignature]
    window: WindowConfig
    run: RunConfig = field(default_factory=RunConfig)
    digest: str = ""
    source: str = "<string>"

    def with_overrides(self, *, seed=None, samples=None, max_iter=None, count=None, window_box=None,
                       degree_cap=None) -> "Config":
        run = self.run
        run = replace(
            run,
            seed=run.seed if seed is None else seed,
            samples=run.samples if samples is None else samples,
            max_iter=run.max_iter if max_iter is None else max_iter,
            count=run.count if count is None else count,
        )
        win = self.window
        if window_box is not None:
            win = replace(win, box=tuple((-window_box, window_box) for _ in range(self.algebra.m)))
        if degree_cap is not None:
            win = replace(win, degree_cap=degree_cap)
        return replace(self, run=run, window=win)


class _Locator:
    """Finds the line/column of ``key`` inside ``[section]`` in the raw text."""

    def __init__(self, text: str):
        self.lines = text.splitlines()

    def find(self, section: Optional[str], key: Optional[str] = None):
        current = None
        for no, line in enumerate(self.lines, start=1):
            stripped = line.strip()
            head = re.match(r"\[\s*([A-Za-z0-9_.-]+)\s*\]", stripped)
            if head:
                current = head.group(1)
                if key is None and current == section:
                    return no, line.index("[") + 1
                continue
            if key is not None and current == section:
                mk = re.match(r"\s*" + re.escape(key) + r"\s*=", line)
                if mk:
                    return no, line.index(key) + 1
        return None, None


def _number(x, where: str, loc):
    if isinstance(x, float):
        raise ConfigError(f"{where}: float {x!r} is not exact; write it as a quoted rational", *loc)
    try:
        return to_rational(x)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: {exc}", *loc) from None


def _int(x, where: str, loc, minimum: Optional[int] = None) -> int:
    v = _number(x, where, loc)
    if not isinstance(v, int):
        raise ConfigError(f"{where}: expected an integer, got {x!r}", *loc)
    if minimum is not None and v < minimum:
        raise ConfigError(f"{where}: must be >= {minimum}", *loc)
    return v


def _vector(x, where: str, loc, length: Optional[int] = None, integral: bool = False) -> Tuple:
    if not isinstance(x, list):
        raise ConfigError(f"{where}: expected a list", *loc)
    if length is not None and len(x) != length:
        raise ConfigError(f"{where}: expected {length} entries, got {len(x)}", *loc)
    conv = _int if integral else _number
    return tuple(conv(v, f"{where}[{k}]", loc) for k, v in enumerate(x))


def _rows(x, where: str, loc, count: Optional[int], length: int, integral: bool = False) -> Tuple[Tuple, ...]:
    if not isinstance(x, list):
        raise ConfigError(f"{where}: expected a list of rows", *loc)
    if count is not None and len(x) != count:
        raise ConfigError(f"{where}: expected {count} rows, got {len(x)}", *loc)
    return tuple(_vector(r, f"{where}[{k}]", loc, length, integral) for k, r in enumerate(x))


def parse_config(text: str, source: str = "<string>") -> Config:
    try:
        doc = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        line = getattr(exc, "lineno", None)
        col = getattr(exc, "colno", None)
        msg = getattr(exc, "msg", str(exc))
        if line is None:
            m = re.search(r"line (\d+), column (\d+)", str(exc))
            if m:
                line, col = int(m.group(1)), int(m.group(2))
            msg = re.sub(r"\s*\(at line \d+, column \d+\)", "", str(exc))
        raise ConfigError(f"TOML syntax: {msg}", line, col) from None
    where = _Locator(text)

    for section, body in doc.items():
        if section not in _KEYS:
            raise ConfigError(f"unknown section [{section}]", *where.find(section))
        if not isinstance(body, dict):
            raise ConfigError(f"{section} must be a table", *where.find(None, section))
        for key in body:
            if key not in _KEYS[section]:
                raise ConfigError(f"unknown key {section}.{key}", *where.find(section, key))
    if "algebra" not in doc:
        raise ConfigError("missing [algebra] section")
    alg = doc["algebra"]

    def loc(key, section="algebra"):
        return where.find(section, key)

    def need(key):
        if key not in alg:
            raise ConfigError(f"missing algebra.{key}", *where.find("algebra"))
        return alg[key]

    n = _int(need("n"), "algebra.n", loc("n"), minimum=1)
    m = _int(need("m"), "algebra.m", loc("m"), minimum=2)
    if ("phi" in alg) == ("phi_pairs" in alg):
        raise ConfigError("give exactly one of algebra.phi or algebra.phi_pairs", *where.find("algebra"))
    if "phi" in alg:
        matrix = _rows(alg["phi"], "algebra.phi", loc("phi"), m, m)
    else:
        mat = [[0] * m for _ in range(m)]
        for k, entry in enumerate(alg["phi_pairs"]):
            i, j, v = _vector(entry, f"algebra.phi_pairs[{k}]", loc("phi_pairs"), 3)
            if not (isinstance(i, int) and isinstance(j, int) and 1 <= i <= m and 1 <= j <= m and i != j):
                raise ConfigError(f"algebra.phi_pairs[{k}]: indices must be distinct 1..{m}", *loc("phi_pairs"))
            mat[i - 1][j - 1] = v
            mat[j - 1][i - 1] = -v
        matrix = tuple(map(tuple, mat))
    try:
        phi = SkewForm(matrix)
    except (ConfigurationError, ValueError) as exc:
        raise ConfigError(f"algebra.phi: {exc}", *loc("phi")) from None
    chars = tuple(Character(w) for w in _rows(need("chars"), "algebra.chars", loc("chars"), 2 * n, m))
    mask_text = need("mask")
    try:
        mask = SemigroupMask.of(mask_text) if isinstance(mask_text, str) else SemigroupMask(tuple(mask_text))
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"algebra.mask: {exc}", *loc("mask")) from None
    if len(mask) != 2 * n:
        raise ConfigError(f"algebra.mask: expected {2 * n} slots, got {len(mask)}", *loc("mask"))
    sigmas = _rows(alg.get("sigmas", []), "algebra.sigmas", loc("sigmas"), n - 1, m, integral=True)
    epsilon = _vector(need("epsilon"), "algebra.epsilon", loc("epsilon"), m, integral=True)
    try:
        sig = AlgebraSignature(n=n, m=m, phi=phi, chars=chars, mask=mask, sigmas=sigmas, epsilon=epsilon)
    except (ConfigurationError, ValueError) as exc:
        raise ConfigError(f"algebra: {exc}", *where.find("algebra")) from None

    msig = None
    if "module" in doc:
        mod = doc["module"]
        for key in ("xi", "f"):
            if key not in mod:
                raise ConfigError(f"missing module.{key}", *where.find("module"))
        xi = _vector(mod["xi"], "module.xi", loc("xi", "module"), 2 * n)
        f = _vector(mod["f"], "module.f", loc("f", "module"), m)
        msig = ModuleSignature(xi, Character(f))

    win = doc.get("window", {})
    box_raw = win.get("box", 1)
    wl = loc("box", "window")
    if isinstance(box_raw, list):
        box = _rows(box_raw, "window.box", wl, m, 2, integral=True)
        if any(lo > hi for lo, hi in box):
            raise ConfigError("window.box: each entry is [lo, hi] with lo <= hi", *wl)
    else:
        r = _int(box_raw, "window.box", wl, minimum=0)
        box = tuple((-r, r) for _ in range(m))
    window = WindowConfig(
        box=box,
        degree_cap=_int(win.get("degree_cap", 1), "window.degree_cap", loc("degree_cap", "window"), minimum=0),
        ambient_margin=_int(win.get("ambient_margin", 0), "window.ambient_margin",
                            loc("ambient_margin", "window"), minimum=0),
    )
    run = doc.get("run", {})
    run_cfg = RunConfig(
        seed=_int(run.get("seed", 0), "run.seed", loc("seed", "run")),
        samples=_int(run.get("samples", 500), "run.samples", loc("samples", "run"), minimum=1),
        max_iter=_int(run.get("max_iter", DEFAULT_MAX_ITER), "run.max_iter", loc("max_iter", "run"), minimum=1),
        count=_int(run.get("count", 20), "run.count", loc("count", "run"), minimum=1),
    )
    digest = hashlib.sha256(text.encode()).hexdigest()[:16]
    return Config(sig, msig, window, run_cfg, digest, source)


def load_config(path) -> Config:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {p}: {exc.strerror}") from None
    return parse_config(text, str(p))


def dump_config(sig: AlgebraSignature, msig: Optional[ModuleSignature] = None,
                window: Optional[WindowConfig] = None, run: Optional[RunConfig] = None) -> str:
    """TOML text that parses back to the same signature (used to write fixtures)."""

    def num(x):
        return str(x) if isinstance(x, int) else f'"{x}"'

    def vec(v):
        return "[" + ", ".join(num(x) for x in v) + "]"

    def rows(rs):
        return "[" + ", ".join(vec(r) for r in rs) + "]"

    mask = "".join("N" if sig.mask.is_nat(p) else "P" for p in range(2 * sig.n))
    out: List[str] = [
        "[algebra]",
        f"n = {sig.n}",
        f"m = {sig.m}",
        f"phi = {rows(sig.phi.matrix)}",
        f"chars = {rows(ch.weights for ch in sig.chars)}",
        f'mask = "{mask}"',
        f"sigmas = {rows(sig.sigmas)}",
        f"epsilon = {vec(sig.epsilon)}",
    ]
    if msig is not None:
        out += ["", "[module]", f"xi = {vec(msig.xi)}", f"f = {vec(msig.f.weights)}"]
    if window is not None:
        box = window.box
        cube = len({b for b in box}) == 1 and box[0][0] == -box[0][1]
        out += ["", "[window]", f"box = {box[0][1] if cube else rows(box)}", f"degree_cap = {window.degree_cap}",
                f"ambient_margin = {window.ambient_margin}"]
    if run is not None:
        out += ["", "[run]", f"seed = {run.seed}", f"samples = {run.samples}", f"max_iter = {run.max_iter}",
                f"count = {run.count}"]
    return "\n".join(out) + "\n"


def config_dict(cfg: Config) -> Dict[str, Any]:
    return {"source": cfg.source, "digest": cfg.digest, "n": cfg.algebra.n, "m": cfg.algebra.m}
