"""Search and enumeration bounds.

Every exhaustive procedure reads its limits from a :class:`Bounds` instance.
The CLI can override them from a plain ``key = value`` file (see README).
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path

from .errors import InputError


@dataclass(frozen=True)
class Bounds:
    axiom_order: int = 32
    ideal_order: int = 16
    words_order: int = 64
    max_vars: int = 8
    eval_budget: int = 10**9
    subpower_size: int = 200_000
    construction_param: int = 4
    vn_n: int = 8
    enum_order: int = 6
    separation_candidates: int = 200_000
    # suite sizes used by `verify`
    scnm_n: int = 5
    scnm_m: int = 7
    sisg_order: int = 5
    oracle_graph_vertices: int = 5

    def with_overrides(self, **kw) -> "Bounds":
        return replace(self, **kw)


DEFAULT_BOUNDS = Bounds()


def load_bounds(path: str | Path, base: Bounds = DEFAULT_BOUNDS) -> Bounds:
    """Read ``key = value`` lines (``#`` comments allowed) into a Bounds."""
    known = {f.name for f in fields(Bounds)}
    overrides = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in known:
            raise InputError(f"{path}:{lineno}: unknown bound {key!r}")
        try:
            overrides[key] = int(value.replace("_", ""))
        except ValueError:
            raise InputError(f"{path}:{lineno}: {key} must be an integer") from None
    return base.with_overrides(**overrides)
