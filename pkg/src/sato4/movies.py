"""Disc movies: validated move sequences ending at the 2-component unlink.

A script is a certificate that the starting link bounds two disjoint
immersed discs: Reidemeister moves are the regular isotopy of the disc
slices, and each self-crossing change is one transverse double point of
a disc.  Every change contributes a record carrying the crossing sign
at change time and the mod-2 linking weight of its smoothing loop with
the other component; phi and the integer engine invariant accumulate
over these records.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import rewrites
from .diagram import LinkDiagram, parse_pd
from .errors import MoveError, ScriptError

__all__ = [
    "Move",
    "SelfIntersectionRecord",
    "HomotopyScript",
    "MovieResult",
    "apply_move",
    "record_self_crossing_change",
    "smoothing_loop_linking",
    "run_script",
    "phi",
    "beta_engine",
]

MOVE_KINDS = ("r1_add", "r1_remove", "r2_add", "r2_remove", "r3", "sc")


@dataclass(frozen=True)
class Move:
    """One step of a movie; the fields used depend on the kind."""

    kind: str
    crossing: int | None = None
    crossings: tuple[int, ...] = ()
    arc: int | None = None
    arcs: tuple[int, int] | None = None
    sign: int = 1
    over_first: bool = True
    over: bool = True

    def __post_init__(self):
        if self.kind not in MOVE_KINDS:
            raise MoveError(f"unknown move kind {self.kind!r}")

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind in ("sc", "r1_remove"):
            out["crossing"] = self.crossing
        elif self.kind == "r1_add":
            out.update(arc=self.arc, sign=self.sign, over_first=self.over_first)
        elif self.kind == "r2_add":
            out.update(arcs=list(self.arcs), over=self.over)
        elif self.kind == "r2_remove":
            out["crossings"] = list(self.crossings)
        elif self.kind == "r3":
            out["crossings"] = list(self.crossings)
        return out

    @staticmethod
    def from_json(obj: dict) -> "Move":
        kind = obj.get("kind")
        if kind in ("sc", "r1_remove"):
            return Move(kind, crossing=int(obj["crossing"]))
        if kind == "r1_add":
            return Move(
                kind,
                arc=int(obj["arc"]),
                sign=int(obj.get("sign", 1)),
                over_first=bool(obj.get("over_first", True)),
            )
        if kind == "r2_add":
            x, y = obj["arcs"]
            return Move(kind, arcs=(int(x), int(y)), over=bool(obj.get("over", True)))
        if kind in ("r2_remove", "r3"):
            return Move(kind, crossings=tuple(int(c) for c in obj["crossings"]))
        raise MoveError(f"unknown move kind {kind!r}")


@dataclass(frozen=True)
class SelfIntersectionRecord:
    """One disc double point: component, sign, loop linking, its parity."""

    component: int
    eps: int
    lam: int
    w: int

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise MoveError("record sign must be +1 or -1")
        if self.w != self.lam % 2 or self.w not in (0, 1):
            raise MoveError("record weight must be the loop linking mod 2")

    def to_json(self) -> dict:
        return {"component": self.component, "eps": self.eps, "lambda": self.lam, "w": self.w}


@dataclass(frozen=True)
class HomotopyScript:
    """An initial diagram (as PD text) plus an ordered list of moves."""

    link: str
    moves: tuple[Move, ...]
    name: str = ""

    def to_json(self) -> dict:
        return {"link": self.link, "moves": [m.to_json() for m in self.moves]}

    @staticmethod
    def from_json(obj: dict, name: str = "") -> "HomotopyScript":
        return HomotopyScript(
            link=obj["link"],
            moves=tuple(Move.from_json(m) for m in obj.get("moves", ())),
            name=name,
        )

    def initial_diagram(self) -> LinkDiagram:
        return parse_pd(self.link)


@dataclass(frozen=True)
class MovieResult:
    """Outcome of a validated script run."""

    final: LinkDiagram
    records: tuple[SelfIntersectionRecord, ...]
    move_count: int
    initial_encoding: str
    name: str = ""

    def records_json(self) -> list[dict]:
        return [r.to_json() for r in self.records]


def apply_move(d: LinkDiagram, m: Move) -> LinkDiagram:
    """Apply one move, validating its site; linking numbers are preserved."""
    if m.kind == "r1_add":
        return rewrites.add_kink(d, m.arc, m.sign, m.over_first)
    if m.kind == "r1_remove":
        return rewrites.remove_kink(d, m.crossing)
    if m.kind == "r2_add":
        return _apply_r2_add(d, m)
    if m.kind == "r2_remove":
        if len(m.crossings) != 2:
            raise MoveError("r2_remove takes two crossing ids")
        return rewrites.remove_r2(d, *m.crossings)
    if m.kind == "r3":
        if len(m.crossings) != 3:
            raise MoveError("r3 takes three crossing ids")
        return rewrites.slide_r3(d, tuple(m.crossings))
    if m.kind == "sc":
        new, _record = record_self_crossing_change(d, m.crossing)
        return new
    raise MoveError(f"unknown move kind {m.kind!r}")


def _apply_r2_add(d: LinkDiagram, m: Move) -> LinkDiagram:
    x, y = m.arcs
    if x == y:
        raise MoveError("r2_add needs two distinct arcs")
    for face in d.faces:
        da_x = next((da for da in face if da[0] == x), None)
        da_y = next((da for da in face if da[0] == y), None)
        if da_x and da_y:
            new, _ = rewrites.insert_r2(d, da_x, da_y, m.over)
            return new
    raise MoveError(f"arcs {x} and {y} do not cobound a face")


def smoothing_loop_linking(d: LinkDiagram, cid: int) -> tuple[int, int]:
    """Linking numbers of the two smoothing loops with the other component.

    Requires a 2-component diagram and a self-crossing; the loops' values
    are opposite whenever the diagram's own linking number vanishes.
    Ordered by the loops' smallest identifiers.
    """
    if d.component_count != 2:
        raise MoveError(f"need exactly 2 components, got {d.component_count}")
    if not d.is_self_crossing(cid):
        raise MoveError(
            f"crossing {cid} joins distinct components; "
            "changing it would break disc disjointness"
        )
    s = d.strand_components(cid)[0]
    other = 1 if s == 2 else 2
    other_arc = d.components[other - 1][0]
    sm = d.smooth(cid)
    t_idx = sm.component_of(other_arc)
    pieces = [k for k in range(1, sm.component_count + 1) if k != t_idx]
    if len(pieces) != 2:
        raise MoveError("smoothing a self-crossing must split its component")
    return tuple(sm.linking_number(p, t_idx) for p in pieces)


def record_self_crossing_change(
    d: LinkDiagram, cid: int
) -> tuple[LinkDiagram, SelfIntersectionRecord]:
    """Switch a self-crossing and return the new diagram with its record.

    The weight is measured in the diagram current at change time: lambda
    is the linking number of one smoothing loop with the other component
    (the loop with the smallest identifier; the other loop negates lambda
    and keeps its parity).
    """
    if d.component_count != 2:
        raise MoveError(f"need exactly 2 components, got {d.component_count}")
    if not d.is_self_crossing(cid):
        raise MoveError(
            f"crossing {cid} joins distinct components; "
            "changing it would break disc disjointness"
        )
    if d.linking_number(1, 2) != 0:
        raise MoveError("crossing changes are only recorded at linking number 0")
    lam, lam_other = smoothing_loop_linking(d, cid)
    if (lam + lam_other) != 0:
        raise MoveError("smoothing loops do not balance; inconsistent diagram")
    eps = d.sign(cid)
    s = d.strand_components(cid)[0]
    record = SelfIntersectionRecord(component=s, eps=eps, lam=lam, w=lam % 2)
    return d.switch(cid), record


def run_script(script: HomotopyScript, diagram: LinkDiagram | None = None) -> MovieResult:
    """Apply every move in order; the movie must end at the 2-component unlink."""
    d = script.initial_diagram() if diagram is None else diagram
    if d.component_count != 2:
        raise ScriptError(f"initial diagram has {d.component_count} components, need 2")
    if d.linking_number(1, 2) != 0:
        raise ScriptError("initial diagram has nonzero linking number")
    initial_encoding = d.canonical_encoding
    records: list[SelfIntersectionRecord] = []
    for idx, m in enumerate(script.moves):
        try:
            if m.kind == "sc":
                d, rec = record_self_crossing_change(d, m.crossing)
                records.append(rec)
            else:
                d = apply_move(d, m)
        except MoveError as e:
            raise ScriptError(f"move {idx} ({m.kind}) failed: {e}", move_index=idx) from e
    if d.crossings or d.component_count != 2:
        raise ScriptError(
            f"script does not close the discs: final diagram {d.serialize()}"
        )
    return MovieResult(
        final=d,
        records=tuple(records),
        move_count=len(script.moves),
        initial_encoding=initial_encoding,
        name=script.name,
    )


def phi(result: MovieResult, e_cal: int = 1) -> int:
    """The mod-4 obstruction: sum of weight times calibrated sign."""
    if e_cal not in (1, -1):
        raise ValueError("e_cal must be +1 or -1")
    return sum(r.w * e_cal * r.eps for r in result.records) % 4


def beta_engine(result: MovieResult, e_cal: int = 1) -> int:
    """Integer engine invariant: calibrated signed sum of squared loop linkings."""
    if e_cal not in (1, -1):
        raise ValueError("e_cal must be +1 or -1")
    return e_cal * sum(r.eps * r.lam * r.lam for r in result.records)
