"""Bounded search for degree-n completions of a boundary word.

The half-disk is filled region by region.  A region is a cyclic walk of
corners (vertex instances with pending edge stubs) and already-drawn edges;
the first pending stub is connected either to a matching pending stub
elsewhere in the region (splitting it in two) or to a freshly placed
interior vertex.  A region without pending stubs must be a legal
branched-cover face: read in one of the two directions its corner sequence
follows the cycle black -solid- cross -dotted- white -bold- black, with
monochrome corners passing straight through.  Interior vertices come from
the generic stratum (black valence 6, white 4, cross 2, monochrome 4);
valence budgets per essential type are 12n minus the boundary contribution.

``find_completion`` optionally refines boundary arcs first (monochrome
points, or a black-white detour in a solid arc) since a word is completable
exactly when one of its refinements bounds a generic graph.  The search is
exhaustive within its budgets; ``Unknown`` never certifies non-existence.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .dessins import (
    BOLD,
    DOTTED,
    SOLID,
    BoundaryWord,
    InconsistentWord,
    TrigonalGraph,
    validate_graph,
)


@dataclass(frozen=True)
class Unknown:
    reason: str


_BOUNDARY_FANS = {
    ("x", SOLID, DOTTED): (),
    ("x", DOTTED, SOLID): (),
    ("x", DOTTED, DOTTED): (SOLID,),
    ("x", SOLID, SOLID): (DOTTED,),
    ("w", DOTTED, DOTTED): (BOLD,),
    ("w", BOLD, BOLD): (DOTTED,),
    ("b", SOLID, BOLD): (BOLD, SOLID),
    ("b", BOLD, SOLID): (SOLID, BOLD),
    ("m", SOLID, SOLID): (SOLID,),
    ("m", DOTTED, DOTTED): (DOTTED,),
    ("m", BOLD, BOLD): (BOLD,),
}

_INTERIOR_CHOICES = {
    SOLID: (("b", (BOLD, SOLID, BOLD, SOLID, BOLD)),
            ("x", (DOTTED,))),
    DOTTED: (("w", (BOLD, DOTTED, BOLD)),
             ("x", (SOLID,))),
    BOLD: (("b", (SOLID, BOLD, SOLID, BOLD, SOLID)),
           ("w", (DOTTED, BOLD, DOTTED))),
}

_DOUBLED_VAL = {"b": 6, "w": 4, "x": 2}

_CORNER_KIND = {(SOLID, DOTTED): "x", (DOTTED, BOLD): "w",
                (BOLD, SOLID): "b"}


def _face_legal(walk):
    """walk: (kind, in_color, out_color) corners around a closed region."""
    for seq in (walk, [(k, o, i) for k, i, o in reversed(walk)]):
        if all((cin == cout if kind == "m"
                else _CORNER_KIND.get((cin, cout)) == kind)
               for kind, cin, cout in seq):
            return True
    return False


def _word_feasible(items, n):
    """Divisibility and stub-parity precheck for the generic stratum.

    The interior inventory is forced by the leftover valence budgets (one
    conjugate pair of black per 12, white per 8, cross per 4); the boundary
    stub ends plus the inventory's ends must pair up color by color.
    """
    budget = {"b": 12 * n, "w": 12 * n, "x": 12 * n}
    sides = {c: {"b": 0, "w": 0, "x": 0, "m": 0}
             for c in (SOLID, DOTTED, BOLD)}
    for i, (kind, arc_after) in enumerate(items):
        left = items[i - 1][1]
        fan = _BOUNDARY_FANS.get((kind, left, arc_after))
        if fan is None:
            return False
        if kind in budget:
            budget[kind] -= 2 + 2 * len(fan)
            if budget[kind] < 0:
                return False
        for c in fan:
            sides[c][kind] += 1
    if budget["b"] % 12 or budget["w"] % 8 or budget["x"] % 4:
        return False
    nb, nw, nx = budget["b"] // 12, budget["w"] // 8, budget["x"] // 4
    sides[BOLD]["b"] += 3 * nb
    sides[BOLD]["w"] += 2 * nw
    sides[SOLID]["b"] += 3 * nb
    sides[SOLID]["x"] += nx
    sides[DOTTED]["w"] += 2 * nw
    sides[DOTTED]["x"] += nx
    pairs = {SOLID: ("b", "x"), DOTTED: ("x", "w"), BOLD: ("w", "b")}
    for c, (k1, k2) in pairs.items():
        a, b, m = sides[c][k1], sides[c][k2], sides[c]["m"]
        if (a + b + m) % 2 or abs(a - b) > m:
            return False
    return True


class _Searcher:
    """Exhaustive filler for one refined boundary word."""

    def __init__(self, items, n, max_interior, max_mono):
        self.n = n
        self.max_interior = max_interior
        self.max_mono = max_mono
        self.kinds = [kind for kind, _ in items]
        self.n_boundary = len(items)
        self.budget = {"b": 12 * n, "w": 12 * n, "x": 12 * n}
        self.edges = []
        self.faces = []
        self.solutions = []
        region = []
        for i, (kind, arc_after) in enumerate(items):
            left = items[i - 1][1]
            fan = _BOUNDARY_FANS.get((kind, left, arc_after))
            if fan is None:
                raise InconsistentWord(
                    f"no boundary shape for {kind} between {left},{arc_after}")
            if kind in self.budget:
                self.budget[kind] -= 2 + 2 * len(fan)
                if self.budget[kind] < 0:
                    raise InconsistentWord(f"{kind} budget exceeded")
            region.append(("corner", i, tuple(fan)))
            eid = len(self.edges)
            self.edges.append((i, (i + 1) % len(items), arc_after))
            region.append(("edge", arc_after, eid))
        self.start_region = region
        self.mono_used = 0

    # -- region utilities ---------------------------------------------------

    @staticmethod
    def _first_stub(region):
        for i, item in enumerate(region):
            if item[0] == "corner" and item[2]:
                return i
        return None

    def _close_region(self, region):
        """Closed region: legal face? records the face walk if so."""
        m = len(region)
        walk = []
        edge_walk = []
        for i, item in enumerate(region):
            if item[0] == "edge":
                edge_walk.append(item[2])
                continue
            j = (i - 1) % m
            while region[j][0] != "edge":
                j = (j - 1) % m
            cin = region[j][1]
            j = (i + 1) % m
            while region[j][0] != "edge":
                j = (j + 1) % m
            cout = region[j][1]
            walk.append((self.kinds[item[1]], cin, cout))
        if not edge_walk or not _face_legal(walk):
            return None
        return edge_walk

    # -- the search -----------------------------------------------------------

    def search(self, regions, max_solutions, deadline):
        if time.monotonic() > deadline:
            raise TimeoutError
        if len(self.solutions) >= max_solutions:
            return
        if not regions:
            if all(v == 0 for v in self.budget.values()):
                self.solutions.append(
                    (tuple(self.kinds), tuple(self.edges),
                     [list(f) for f in self.faces]))
            return
        region, rest = regions[0], regions[1:]
        i = self._first_stub(region)
        if i is None:
            face = self._close_region(region)
            if face is None:
                return
            self.faces.append(face)
            self.search(rest, max_solutions, deadline)
            self.faces.pop()
            return
        # rotate the region so the active corner sits at position 0
        region = region[i:] + region[:i]
        _, v, stubs = region[0]
        color = stubs[0]
        remaining = stubs[1:]

        # (a) connect to a pending stub at another corner of this region;
        # non-monochrome endpoints must lie over distinct ends of the arc
        kv = self.kinds[v]
        for j in range(1, len(region)):
            item = region[j]
            if item[0] != "corner" or not item[2]:
                continue
            w, wstubs = item[1], item[2]
            if w == v:
                continue  # no loops in the generic stratum
            kw = self.kinds[w]
            if kv != "m" and kw != "m" and kv == kw:
                continue
            for t, c2 in enumerate(wstubs):
                if c2 != color:
                    continue
                eid = len(self.edges)
                self.edges.append((v, w, color))
                reg_a = ([("edge", color, eid),
                          ("corner", w, wstubs[t + 1:])]
                         + region[j + 1:] + [("corner", v, ())])
                reg_b = ([("corner", v, remaining)]
                         + region[1:j]
                         + [("corner", w, wstubs[:t]),
                            ("edge", color, eid)])
                self.search([reg_a, reg_b] + rest, max_solutions, deadline)
                self.edges.pop()

        # (b) connect to a new interior vertex
        if len(self.kinds) - self.n_boundary < self.max_interior:
            for kind, fan in _INTERIOR_CHOICES[color]:
                if kind == "m":
                    if self.mono_used >= self.max_mono:
                        continue
                    self.mono_used += 1
                else:
                    need = 2 * _DOUBLED_VAL[kind]
                    if self.budget[kind] < need:
                        continue
                    self.budget[kind] -= need
                w = len(self.kinds)
                self.kinds.append(kind)
                eid = len(self.edges)
                self.edges.append((v, w, color))
                new_region = ([("corner", v, ()),
                               ("edge", color, eid),
                               ("corner", w, fan),
                               ("edge", color, eid),
                               ("corner", v, remaining)]
                              + region[1:])
                self.search([new_region] + rest, max_solutions, deadline)
                self.edges.pop()
                self.kinds.pop()
                if kind == "m":
                    self.mono_used -= 1
                else:
                    self.budget[kind] += 2 * _DOUBLED_VAL[kind]


def _materialize(n, kinds, edges, faces, n_boundary):
    edge_list = [(u, v, c) for u, v, c in edges]
    boundary = list(range(n_boundary))
    G = TrigonalGraph.from_faces(n, kinds, edge_list, faces, boundary)
    return G


def _refinements(entries, extra):
    """Insert up to ``extra`` refinement motifs into arcs; yield item lists."""
    yield list(entries)
    if extra <= 0:
        return
    base = list(entries)
    k = len(base)
    for i in range(k):
        kind_i, color = base[i]
        inserts = [[("m", color)]]
        if color == SOLID:
            # the middle coefficient dipping positive, with or without
            # real zeros of the constant term inside the dip
            inserts.append([("b", BOLD), ("b", SOLID)])
            inserts.append([("b", BOLD), ("w", BOLD), ("b", SOLID)])
        if color == BOLD:
            inserts.append([("b", SOLID), ("b", BOLD)])
            inserts.append([("w", BOLD)])  # constant term touching its zero
        if color == DOTTED:
            inserts.append([("w", DOTTED)])
        for ins in inserts:
            refined = base[: i + 1] + ins + base[i + 1:]
            for more in _refinements(refined, extra - 1):
                yield more


def find_completion(word, n, budget=None, find_all=False):
    """A validated degree-n graph whose boundary is the word, or Unknown.

    ``word`` is a BoundaryWord or a list of (kind, arc color) entries.
    ``budget`` bounds the search: dict with max_interior, max_mono,
    max_refine, seconds.  Exhausted budgets give Unknown, never a wrong
    answer; an inconsistent word (e.g. valence budgets exceeded) raises
    InconsistentWord.
    """
    entries = tuple(word.entries if isinstance(word, BoundaryWord) else word)
    if not entries:
        raise InconsistentWord("empty boundary word")
    budget = dict(budget or {})
    max_interior = budget.get("max_interior", 6 * n + 2)
    max_mono = budget.get("max_mono", 2 * n)
    max_refine = budget.get("max_refine", 2)
    seconds = budget.get("seconds", 30.0)
    deadline = time.monotonic() + seconds
    # quick global consistency: crosses alone already bound the budget
    xs = sum(1 for kind, _ in entries if kind == "x")
    if 2 * xs > 12 * n:
        raise InconsistentWord(
            f"{xs} boundary crosses exceed the degree budget {12 * n}")
    budget = {"b": 12 * n, "w": 12 * n, "x": 12 * n}
    for i, (kind, arc_after) in enumerate(entries):
        left = entries[i - 1][1]
        fan = _BOUNDARY_FANS.get((kind, left, arc_after))
        if fan is None:
            raise InconsistentWord(
                f"no boundary shape for {kind} between {left},{arc_after}")
        if kind in budget:
            budget[kind] -= 2 + 2 * len(fan)
            if budget[kind] < 0:
                raise InconsistentWord(f"{kind} valence budget exceeded")
    results = []
    seen_keys = set()
    try:
        tried = set()
        for extra in range(max_refine + 1):
            for items in _refinements(entries, extra):
                key = tuple(items)
                if key in tried:
                    continue
                tried.add(key)
                if sum(1 for kind, _ in items if kind == "m") > max_mono:
                    continue
                if not _word_feasible(items, n):
                    continue
                try:
                    s = _Searcher(items, n, max_interior, max_mono)
                except InconsistentWord:
                    if extra == 0:
                        raise
                    continue
                s.search([s.start_region], 64 if find_all else 1, deadline)
                for kinds, edges, faces in s.solutions:
                    G = _materialize(n, kinds, edges, faces, len(items))
                    if validate_graph(G):
                        continue
                    key = G.canonical_key()
                    if key in seen_keys:
                        continue
                    seen_keys.add(key)
                    results.append(G)
                    if not find_all:
                        return G
    except TimeoutError:
        return results if find_all and results else Unknown("time budget")
    if find_all:
        return results
    return Unknown("search budget exhausted")
