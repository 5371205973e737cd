"""Decoding lattices: parsing, validation, LM rescoring, best-path search.

A lattice is a DAG of word arcs between integer nodes, each arc carrying an
acoustic score and a language score (both log-domain, higher is better).
The file format is line-based for diffability:

    LAT v1 start=<id> end=<id>
    <from> <to> <word> <am_score> <lm_score>
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .ngram import BOS, NGramModel


class InvalidLattice(ValueError):
    """The lattice breaks a structural invariant."""


class NoPath(ValueError):
    """No start-to-end path exists."""


@dataclass(frozen=True)
class Arc:
    src: int
    dst: int
    word: str
    am_score: float
    lm_score: float


@dataclass(frozen=True)
class Lattice:
    start: int
    end: int
    arcs: tuple[Arc, ...]

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(self.arcs))

    @property
    def nodes(self) -> set[int]:
        found = {self.start, self.end}
        for arc in self.arcs:
            found.add(arc.src)
            found.add(arc.dst)
        return found


def validate(lat: Lattice) -> None:
    """Raise InvalidLattice unless the DAG invariants hold.

    Checks: finite scores, acyclicity, and that every arc lies on some
    start-to-end path.
    """
    for arc in lat.arcs:
        if not (math.isfinite(arc.am_score) and math.isfinite(arc.lm_score)):
            raise InvalidLattice(f"non-finite score on arc {arc.src}->{arc.dst}")

    order = _topological_order(lat)
    if order is None:
        raise InvalidLattice("lattice contains a cycle")

    forward = _reachable(lat, lat.start, reverse=False)
    backward = _reachable(lat, lat.end, reverse=True)
    for arc in lat.arcs:
        if arc.src not in forward or arc.dst not in backward:
            raise InvalidLattice(
                f"arc {arc.src}->{arc.dst} ({arc.word!r}) is not on any start-to-end path"
            )


def _topological_order(lat: Lattice) -> list[int] | None:
    nodes = lat.nodes
    indegree = {n: 0 for n in nodes}
    out: dict[int, list[int]] = {n: [] for n in nodes}
    for arc in lat.arcs:
        indegree[arc.dst] += 1
        out[arc.src].append(arc.dst)
    ready = sorted(n for n in nodes if indegree[n] == 0)
    order = []
    while ready:
        n = ready.pop()
        order.append(n)
        for m in out[n]:
            indegree[m] -= 1
            if indegree[m] == 0:
                ready.append(m)
    if len(order) != len(nodes):
        return None
    return order


def _reachable(lat: Lattice, origin: int, reverse: bool) -> set[int]:
    adj: dict[int, list[int]] = {}
    for arc in lat.arcs:
        a, b = (arc.dst, arc.src) if reverse else (arc.src, arc.dst)
        adj.setdefault(a, []).append(b)
    seen = {origin}
    stack = [origin]
    while stack:
        n = stack.pop()
        for m in adj.get(n, ()):
            if m not in seen:
                seen.add(m)
                stack.append(m)
    return seen


def parse_lattice(text: str) -> Lattice:
    """Parse and validate the line-based lattice format."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InvalidLattice("empty lattice file")
    header = lines[0].split()
    if len(header) != 4 or header[0] != "LAT" or header[1] != "v1":
        raise InvalidLattice(f"bad header: {lines[0]!r}")
    try:
        start = int(header[2].removeprefix("start="))
        end = int(header[3].removeprefix("end="))
    except ValueError as exc:
        raise InvalidLattice(f"bad header ids: {lines[0]!r}") from exc

    arcs = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 5:
            raise InvalidLattice(f"bad arc line: {ln!r}")
        try:
            arcs.append(Arc(int(parts[0]), int(parts[1]), parts[2], float(parts[3]), float(parts[4])))
        except ValueError as exc:
            raise InvalidLattice(f"bad arc line: {ln!r}") from exc

    lat = Lattice(start, end, tuple(arcs))
    validate(lat)
    return lat


def format_lattice(lat: Lattice) -> str:
    lines = [f"LAT v1 start={lat.start} end={lat.end}"]
    for arc in lat.arcs:
        lines.append(f"{arc.src} {arc.dst} {arc.word} {arc.am_score!r} {arc.lm_score!r}")
    return "\n".join(lines) + "\n"


def rescore_lattice(lat: Lattice, lm: NGramModel, lm_scale: float) -> Lattice:
    """Replace every arc's language score with lm_scale * log P(word | history).

    Histories are tracked exactly up to the model order by splitting nodes
    on the fly: each output node is one (input node, recent words) state,
    with all end states merged back into a single end node. Acoustic scores
    are untouched, and the result is again a valid DAG.
    """
    if lm_scale < 0:
        raise ValueError(f"lm_scale must be non-negative, got {lm_scale}")
    validate(lat)
    if not lat.arcs:
        return Lattice(0, 0 if lat.start == lat.end else 1, ())

    hist_len = lm.order - 1
    out_arcs: dict[int, list[Arc]] = {}
    for arc in lat.arcs:
        out_arcs.setdefault(arc.src, []).append(arc)

    start_state = (lat.start, (BOS,) * hist_len)
    state_ids: dict[tuple[int, tuple[str, ...]], int] = {start_state: 0}
    end_id: int | None = None
    new_arcs: list[Arc] = []
    stack = [start_state]
    seen = {start_state}
    while stack:
        node, history = stack.pop()
        src_id = state_ids[(node, history)]
        for arc in out_arcs.get(node, ()):
            lm_score = lm_scale * lm.logprob(arc.word, history) if lm_scale else 0.0
            new_history = (history + (arc.word,))[-hist_len:] if hist_len else ()
            if arc.dst == lat.end:
                if end_id is None:
                    end_id = len(state_ids)
                    state_ids[("end", ())] = end_id  # sentinel key
                dst_id = end_id
            else:
                state = (arc.dst, new_history)
                if state not in state_ids:
                    state_ids[state] = len(state_ids)
                dst_id = state_ids[state]
                if state not in seen:
                    seen.add(state)
                    stack.append(state)
            new_arcs.append(Arc(src_id, dst_id, arc.word, arc.am_score, lm_score))

    assert end_id is not None  # validated lattices reach the end
    return Lattice(0, end_id, tuple(new_arcs))


def best_path(lat: Lattice) -> list[str]:
    """Words along the path maximising the summed arc scores.

    Dynamic programming over reverse topological order; among equal-score
    paths the lexicographically smaller word sequence wins.
    """
    validate(lat)
    if lat.start == lat.end:
        return []
    order = _topological_order(lat)
    assert order is not None
    out_arcs: dict[int, list[Arc]] = {}
    for arc in lat.arcs:
        out_arcs.setdefault(arc.src, []).append(arc)

    # best suffix (score, words) from each node to the end
    suffix: dict[int, tuple[float, tuple[str, ...]]] = {lat.end: (0.0, ())}
    for node in reversed(order):
        if node == lat.end:
            continue
        best: tuple[float, tuple[str, ...]] | None = None
        for arc in out_arcs.get(node, ()):
            if arc.dst not in suffix:
                continue
            tail_score, tail_words = suffix[arc.dst]
            cand = (arc.am_score + arc.lm_score + tail_score, (arc.word,) + tail_words)
            if best is None or cand[0] > best[0] or (cand[0] == best[0] and cand[1] < best[1]):
                best = cand
        if best is not None:
            suffix[node] = best

    if lat.start not in suffix:
        raise NoPath(f"no path from {lat.start} to {lat.end}")
    return list(suffix[lat.start][1])


def path_scores(lat: Lattice) -> list[tuple[float, tuple[str, ...]]]:
    """Every start-to-end path as (score, words); scores fold from the end
    so float arithmetic matches best_path(). Intended for small lattices."""
    out_arcs: dict[int, list[Arc]] = {}
    for arc in lat.arcs:
        out_arcs.setdefault(arc.src, []).append(arc)

    results: list[tuple[float, tuple[str, ...]]] = []

    def walk(node: int, arcs_taken: list[Arc]) -> None:
        if node == lat.end:
            score = 0.0
            for arc in reversed(arcs_taken):
                score = arc.am_score + arc.lm_score + score
            results.append((score, tuple(a.word for a in arcs_taken)))
            return
        for arc in out_arcs.get(node, ()):
            walk(arc.dst, arcs_taken + [arc])

    walk(lat.start, [])
    return results
