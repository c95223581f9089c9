"""L-schemes: fiberwise wiring diagrams of curve arrangements in ruled surfaces.

An arrangement in the real part of the n-th ruled surface is stored up to
fiberwise isotopy as a cyclic word of columns.  Between columns the diagram
is a constant number of horizontal strands (slots 0,1,... bottom to top on
the fiber interval cut at the exceptional section); a column carries one
event:

  ('open', g)       two strands are born in gap g (a tangent fiber),
  ('close', s)      strands s, s+1 merge and die (a tangent fiber),
  ('cross', s)      strands s, s+1 cross transversally (a real node),
  ('solitary', g)   an isolated real double point in gap g,
  ('ecross', dir)   a strand wraps through the exceptional section:
                    'up' moves the top strand to the bottom, 'down' inverse,
  ('mark', label)   a marked fiber.

Events may carry a label (used to address nodes for elementary
transformations).  The seam glues the last column back to the first; for odd
n the gluing reverses the fiber interval (the real surface is a Klein
bottle), and an optional permutation lets wrapping components braid.

The elementary birational transformation at a real node (blow up the node,
blow down the fiber through it) moves between ambient indices n and n-1,
sends bidegree (a,b) to (a, b+a-2), reroutes the remaining intersection of
the old fiber through the new exceptional section, and reglues everything
beyond the node's fiber with a vertical flip.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


class NotANode(ValueError):
    pass


class ENIntersection(ValueError):
    pass


class BadParameters(ValueError):
    pass


@dataclass(frozen=True)
class Event:
    kind: str  # open | close | cross | solitary | ecross | mark
    arg: object = None
    label: str = ""

    def delta(self) -> int:
        return {"open": 2, "close": -2}.get(self.kind, 0)


def _mirror_event(ev: Event, count_before: int) -> Event:
    """Reflect an event across the middle of the fiber interval."""
    k = count_before
    if ev.kind == "open":
        return replace(ev, arg=k - ev.arg)
    if ev.kind in ("close", "cross"):
        return replace(ev, arg=k - 2 - ev.arg)
    if ev.kind == "solitary":
        return replace(ev, arg=k - ev.arg)
    if ev.kind == "ecross":
        return replace(ev, arg="down" if ev.arg == "up" else "up")
    return ev


@dataclass(frozen=True)
class LScheme:
    n: int  # ambient ruled surface index
    bidegree: tuple  # (a, b)
    start_count: int  # strands entering column 0
    events: tuple  # of Event
    seam_perm: tuple = None  # end slot i -> start slot seam_perm[i]; None = id

    def __post_init__(self):
        if self.seam_perm is not None and len(self.seam_perm) != self.start_count:
            raise ValueError("seam permutation size mismatch")

    # -- counts ------------------------------------------------------------

    def counts(self):
        """Strand count before each event (len(events)+1 entries, cyclic)."""
        out = [self.start_count]
        for ev in self.events:
            out.append(out[-1] + ev.delta())
        return out

    @property
    def seam_flip(self) -> bool:
        return self.n % 2 == 1

    def seam_map(self, slot: int) -> int:
        k = self.start_count
        if self.seam_flip:
            slot = k - 1 - slot
        if self.seam_perm is not None:
            slot = self.seam_perm[slot]
        return slot

    # -- validation ----------------------------------------------------------

    def violations(self):
        out = []
        counts = self.counts()
        a, b = self.bidegree
        if counts[-1] != self.start_count:
            out.append("strand count does not close up")
        for i, ev in enumerate(self.events):
            k = counts[i]
            if ev.kind == "open":
                if not 0 <= ev.arg <= k:
                    out.append(f"event {i}: open gap out of range")
            elif ev.kind in ("close", "cross"):
                if not 0 <= ev.arg <= k - 2:
                    out.append(f"event {i}: strand pair out of range")
            elif ev.kind == "solitary":
                if not 0 <= ev.arg <= k:
                    out.append(f"event {i}: gap out of range")
            elif ev.kind == "ecross":
                if ev.arg not in ("up", "down"):
                    out.append(f"event {i}: bad ecross direction")
                if k == 0:
                    out.append(f"event {i}: ecross without strands")
            elif ev.kind != "mark":
                out.append(f"event {i}: unknown kind {ev.kind}")
        for i, k in enumerate(counts):
            if k < 0 or k > a:
                out.append(f"column {i}: {k} strands outside 0..{a}")
            if (a - k) % 2 != 0:
                out.append(f"column {i}: parity (complex pairs must pair up)")
        for i, ev in enumerate(self.events):
            if ev.kind in ("open", "solitary") and counts[i] + 2 > a:
                out.append(f"event {i}: fiber degree exceeds {a}")
        if self.e_hits() % 2 != b % 2:
            out.append("exceptional-section crossings disagree with bidegree parity")
        return out

    def validate(self):
        v = self.violations()
        if v:
            raise ValueError("; ".join(v))
        return self

    # -- properties ----------------------------------------------------------

    def e_hits(self) -> int:
        return sum(1 for ev in self.events if ev.kind == "ecross")

    def is_trigonal(self) -> bool:
        a, _ = self.bidegree
        return (a == 3 and self.e_hits() == 0
                and all(k in (1, 3) for k in self.counts()))

    def is_hyperbolic(self) -> bool:
        return self.is_trigonal() and all(k == 3 for k in self.counts())

    def node_labels(self):
        return tuple(ev.label for ev in self.events
                     if ev.kind in ("cross", "solitary") and ev.label)

    # -- normalization and equality -------------------------------------------

    def normalized(self) -> "LScheme":
        """Drop marks; rotate to the lexicographically least cyclic word.

        Rotation across the seam is only canonical for trivial seams; words
        with a seam permutation or on odd n are compared as written from
        column 0 (the seam is a distinguished fiber there).
        """
        evs = tuple(ev for ev in self.events if ev.kind != "mark")
        base = replace(self, events=evs)
        if self.seam_flip or self.seam_perm is not None:
            return base
        words = []
        counts = base.counts()
        for r in range(max(1, len(evs))):
            rot = evs[r:] + evs[:r]
            words.append((tuple((e.kind, e.arg) for e in rot), counts[r], rot))
        words.sort(key=lambda w: (w[1], w[0]))
        _, start, rot = words[0]
        return LScheme(self.n, self.bidegree, start, rot, None)

    def key(self):
        s = self.normalized()
        return (s.n, s.bidegree, s.start_count,
                tuple((e.kind, e.arg) for e in s.events), s.seam_perm)

    # -- json -----------------------------------------------------------------

    def to_json(self):
        return {
            "format": "l-scheme/1",
            "n": self.n,
            "bidegree": list(self.bidegree),
            "start_count": self.start_count,
            "events": [[e.kind, e.arg, e.label] for e in self.events],
            "seam_perm": list(self.seam_perm) if self.seam_perm else None,
        }

    @staticmethod
    def from_json(data) -> "LScheme":
        return LScheme(
            n=data["n"],
            bidegree=tuple(data["bidegree"]),
            start_count=data["start_count"],
            events=tuple(Event(k, a if not isinstance(a, list) else tuple(a), lb)
                         for k, a, lb in data["events"]),
            seam_perm=tuple(data["seam_perm"]) if data.get("seam_perm") else None,
        )


def validate_lscheme(L: LScheme):
    """pass (empty list) or the list of violations."""
    return L.violations()


# ---------------------------------------------------------------------------
# component tracing


def _end_pairing(L: LScheme):
    """Pair up segment ends.

    Segment (i, s): strand at slot s on the interval left of event i.
    Ends are (i, s, side) with side 'L'/'R'.  The right end of (i, s) is
    resolved by event i into the left end of segment ((i+1) mod m, s')
    (through the seam when wrapping), except at a 'close' event where the
    two dying strands' right ends pair with each other; dually for 'open'.
    Returns (segments, pairing dict, seam_crossing end pairs).
    """
    counts = L.counts()
    m = len(L.events)
    if m == 0:
        segs = [(0, s) for s in range(L.start_count)]
        pairing = {}
        seam = set()
        for s in range(L.start_count):
            a = (0, s, "R")
            b = (0, L.seam_map(s), "L")
            pairing[a] = b
            pairing[b] = a
            seam.add(frozenset((a, b)))
        return segs, pairing, seam

    segs = [(i, s) for i in range(m) for s in range(counts[i])]
    pairing = {}
    seam = set()

    def connect(a, b, through_seam=False):
        pairing[a] = b
        pairing[b] = a
        if through_seam:
            seam.add(frozenset((a, b)))

    for i, ev in enumerate(L.events):
        k = counts[i]
        j = (i + 1) % m
        through = j == 0

        def to_next(s_from, s_to):
            s2 = L.seam_map(s_to) if through else s_to
            connect((i, s_from, "R"), (j, s2, "L"), through)

        if ev.kind == "close":
            connect((i, ev.arg, "R"), (i, ev.arg + 1, "R"))
            for s in range(k):
                if s in (ev.arg, ev.arg + 1):
                    continue
                to_next(s, s if s < ev.arg else s - 2)
        elif ev.kind == "open":
            connect((j, (L.seam_map(ev.arg) if through else ev.arg), "L"),
                    (j, (L.seam_map(ev.arg + 1) if through else ev.arg + 1), "L"))
            for s in range(k):
                to_next(s, s if s < ev.arg else s + 2)
        elif ev.kind == "cross":
            for s in range(k):
                if s == ev.arg:
                    to_next(s, s + 1)
                elif s == ev.arg + 1:
                    to_next(s, s - 1)
                else:
                    to_next(s, s)
        elif ev.kind == "ecross":
            if ev.arg == "up":
                for s in range(k):
                    to_next(s, 0 if s == k - 1 else s + 1)
            else:
                for s in range(k):
                    to_next(s, k - 1 if s == 0 else s - 1)
        else:  # solitary, mark
            for s in range(k):
                to_next(s, s)
    return segs, pairing, seam


def trace_components(L: LScheme):
    """Closed components of the diagram.

    Each component is a dict with 'wrapping' (net nonzero passage around the
    base direction) and 'segments' (list of (interval, slot) pairs).
    """
    segs, pairing, seam = _end_pairing(L)
    seen = set()
    comps = []
    for start in segs:
        if start in seen:
            continue
        comp = []
        seam_crossings = 0
        seg, side = start, "R"
        while seg not in seen:
            seen.add(seg)
            comp.append(seg)
            end = (seg[0], seg[1], side)
            partner = pairing[end]
            if frozenset((end, partner)) in seam:
                seam_crossings += 1
            seg = (partner[0], partner[1])
            # continue out of the other end of the partner segment
            side = "L" if partner[2] == "R" else "R"
        # an oval straddling the seam crosses it an even number of times
        comps.append({"wrapping": seam_crossings % 2 == 1, "segments": comp})
    return comps


def oval_count(L: LScheme) -> int:
    return sum(1 for c in trace_components(L) if not c["wrapping"])


# ---------------------------------------------------------------------------
# elementary birational transformation


def elementary_transform(L: LScheme, label: str) -> LScheme:
    """Blow up the labeled real node, blow down its fiber: n -> n-1.

    Local effect: the node disappears; the remaining real intersection of
    its fiber is rerouted through the new exceptional section (an 'ecross');
    the whole diagram beyond the node's fiber is reglued with a vertical
    flip (the regluing map of the fiber circle is a reflection).  Bidegree
    (a,b) -> (a, b+a-2).
    """
    idx = None
    for i, ev in enumerate(L.events):
        if ev.label == label:
            if ev.kind == "ecross":
                raise ENIntersection(
                    f"{label!r} lies on the exceptional section; use the"
                    " upward transformation")
            if ev.kind not in ("cross", "solitary"):
                raise NotANode(f"event {label!r} is a {ev.kind}")
            idx = i
            break
    if idx is None:
        raise NotANode(f"no node labeled {label!r}")
    counts = L.counts()
    a, b = L.bidegree
    ev = L.events[idx]
    k = counts[idx]

    # replace the node with a wrap of the remaining strand through E.
    if ev.kind == "solitary":
        if k != 1:
            raise ENIntersection(
                "solitary node with extra real strands is not supported")
        new_ev = Event("ecross", "up", ev.label and f"{ev.label}'")
    else:  # cross: the third real point is the strand not in the node
        if k != 3:
            raise NotANode("crossing node needs three real strands")
        third = [s for s in range(3) if s not in (ev.arg, ev.arg + 1)][0]
        # rotate so the third strand wraps; the crossing is resolved by the
        # flip of everything beyond the fiber.
        new_ev = Event("ecross", "up" if third == 2 else "down",
                       ev.label and f"{ev.label}'")

    # flip everything after idx (up to the seam); entering the flipped part
    # is recorded by reversing those events, and the seam flip toggles via n.
    head = list(L.events[: idx])
    tail = list(L.events[idx + 1:])
    flipped_tail = []
    c = counts[idx + 1]
    for evt in tail:
        flipped_tail.append(_mirror_event(evt, c))
        c += evt.delta()
    new_events = tuple(head + [new_ev] + flipped_tail)
    return LScheme(n=L.n - 1, bidegree=(a, b + a - 2),
                   start_count=L.start_count, events=new_events,
                   seam_perm=L.seam_perm)


def elementary_transform_up(L: LScheme, label: str) -> LScheme:
    """Inverse move at a labeled crossing of the exceptional section: n -> n+1.

    Blowing up the point where the strand meets the exceptional section and
    blowing down the fiber recreates a real double point there (solitary if
    the other fiber intersections are a complex pair, a crossing if real);
    bidegree (a,b) -> (a, b-1).  Exact inverse of ``elementary_transform``.
    """
    idx = None
    for i, ev in enumerate(L.events):
        if ev.label == label:
            if ev.kind != "ecross":
                raise NotANode(f"event {label!r} is a {ev.kind}, not an"
                               " exceptional-section crossing")
            idx = i
            break
    if idx is None:
        raise NotANode(f"no exceptional-section crossing labeled {label!r}")
    counts = L.counts()
    a, b = L.bidegree
    ev = L.events[idx]
    k = counts[idx]
    base = label[:-1] if label.endswith("'") else label + "~"
    if k == 1:
        node = Event("solitary", 1, base)
    elif k == 3:
        node = Event("cross", 0 if ev.arg == "up" else 1, base)
    else:
        raise NotANode("unsupported strand count at the crossing")
    head = list(L.events[: idx])
    tail = list(L.events[idx + 1:])
    flipped_tail = []
    c = counts[idx + 1]
    for evt in tail:
        flipped_tail.append(_mirror_event(evt, c))
        c += evt.delta()
    return LScheme(n=L.n + 1, bidegree=(a, b - 1),
                   start_count=L.start_count,
                   events=tuple(head + [node] + flipped_tail),
                   seam_perm=L.seam_perm)


# ---------------------------------------------------------------------------
# the trigonal families used by the construction toolchain


def _group(above: bool, count: int, at_count: int):
    """Oval group above or below the single strand of a 1-strand zone."""
    assert at_count == 1
    gap = 1 if above else 0
    out = []
    for _ in range(count):
        out.append(Event("open", gap))
        out.append(Event("close", gap))
    return out


def eta_two_fibers(a: int, b: int, c: int, cp: int) -> LScheme:
    """Trigonal arrangement plus two marked fibers on the 5th ruled surface.

    Oval counts: a then b above the strand, c then c' below, with the two
    marked fibers separating the (a,c) zone from the (b,c') zone.
    """
    if min(a, b, c, cp) < 0:
        raise BadParameters("negative oval count")
    evs = []
    evs += _group(True, a, 1)
    evs += _group(False, c, 1)
    evs.append(Event("mark", None, "F1"))
    evs += _group(True, b, 1)
    evs += _group(False, cp, 1)
    evs.append(Event("mark", None, "F2"))
    return LScheme(n=5, bidegree=(3, 0), start_count=1,
                   events=tuple(evs)).validate()


def eta_nodal_abcc(a: int, b: int, c: int, cp: int) -> LScheme:
    """Nodal trigonal arrangement on the 6th ruled surface (four solitary
    real double points), oval groups (a, c) and (b, c') between them."""
    if min(a, b, c, cp) < 0:
        raise BadParameters("negative oval count")
    evs = []
    evs += _group(True, c, 1)
    evs += _group(False, a, 1)
    evs.append(Event("solitary", 1, "p1"))
    evs += _group(True, cp, 1)
    evs += _group(False, b, 1)
    evs.append(Event("solitary", 1, "p2"))
    evs.append(Event("solitary", 1, "p3"))
    evs.append(Event("solitary", 1, "p4"))
    return LScheme(n=6, bidegree=(3, 0), start_count=1,
                   events=tuple(evs)).validate()


def eta_nodal_idehg(i: int, d: int, e: int, h: int, gs) -> LScheme:
    """Nodal trigonal arrangement on the 6th ruled surface with four zones:
    i, d, e, h ovals above the strand, g_1..g_4 below, solitary nodes at the
    four separating fibers."""
    gs = tuple(gs)
    if len(gs) != 4 or min((i, d, e, h) + gs) < 0:
        raise BadParameters("need i,d,e,h >= 0 and four g_j >= 0")
    evs = []
    for top, bottom, p in zip((i, d, e, h), gs, ("p1", "p2", "p3", "p4")):
        evs += _group(True, top, 1)
        evs += _group(False, bottom, 1)
        evs.append(Event("solitary", 1, p))
    return LScheme(n=6, bidegree=(3, 0), start_count=1,
                   events=tuple(evs)).validate()


def eta_nodal_hyperbolic() -> LScheme:
    """Hyperbolic nodal trigonal arrangement on the 6th ruled surface:
    three strands everywhere, four crossing nodes of adjacent strands."""
    evs = [Event("cross", 0, "p1"), Event("cross", 0, "p2"),
           Event("cross", 0, "p3"), Event("cross", 0, "p4")]
    return LScheme(n=6, bidegree=(3, 0), start_count=3,
                   events=tuple(evs)).validate()


def eta_nodal_two_groups(ap: int, bp: int) -> LScheme:
    """Nodal trigonal arrangement on the 6th ruled surface with one group of
    a' ovals above and b' ovals below the strand, four solitary nodes."""
    if min(ap, bp) < 0:
        raise BadParameters("negative oval count")
    evs = []
    evs += _group(True, ap, 1)
    evs += _group(False, bp, 1)
    for p in ("p1", "p2", "p3", "p4"):
        evs.append(Event("solitary", 1, p))
    return LScheme(n=6, bidegree=(3, 0), start_count=1,
                   events=tuple(evs)).validate()


def build_eta(family: str, **params) -> LScheme:
    """Constructor for the named arrangement families."""
    builders = {
        "two_fibers": eta_two_fibers,
        "nodal_abcc": eta_nodal_abcc,
        "nodal_idehg": eta_nodal_idehg,
        "nodal_hyperbolic": eta_nodal_hyperbolic,
        "nodal_two_groups": eta_nodal_two_groups,
    }
    if family not in builders:
        raise BadParameters(f"unknown family {family!r}")
    return builders[family](**params)


def transform_chain(L: LScheme, labels=("p4", "p3", "p2", "p1")):
    """Apply elementary transformations at the labeled nodes in order,
    returning every stage (including the input)."""
    stages = [L]
    for lb in labels:
        stages.append(elementary_transform(stages[-1], lb))
    return stages
