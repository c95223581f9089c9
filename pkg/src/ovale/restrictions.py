"""Restriction system for oval arrangements of curves of bidegree (d,d) on the ellipsoid.

For odd d the full system is: the component bound l <= g+1 with g = (d-1)^2,
the three-nest bound (total ovals in three pairwise disjoint nests <= d), the
Euler-characteristic congruences mod 8 on the halves bounded by the curve,
and for type I curves the complex-orientation formula 2(Pi+ - Pi-) = l - d^2
together with l >= d, l = g+1 mod 2 and chi = 1 mod 4.  A scheme carrying a
nest of the maximal depth d admits a totally real pencil of plane sections,
so it is additionally forced to be of type I.

``enumerate_admissible`` generates every canonical scheme surviving the
system; for d = 5 it reproduces the published classification exactly.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .schemes import RealScheme, canonicalize, euler_classes, nest_stats

TYPE_I = "I"
TYPE_II = "II"


class DEven(ValueError):
    """Congruence clauses are only available for odd bidegree."""


class DTooLarge(ValueError):
    """Enumeration is supported for odd d <= 7."""


def genus(d: int) -> int:
    return (d - 1) ** 2


@dataclass(frozen=True)
class CurveClass:
    d: int
    g: int
    l: int
    i: int  # rank index: M-i curve

    @staticmethod
    def from_scheme(s: RealScheme, d: int) -> "CurveClass":
        g = genus(d)
        if s.l > g + 1:
            raise ValueError("oval count exceeds the component bound")
        return CurveClass(d=d, g=g, l=s.l, i=g + 1 - s.l)

    @property
    def rank(self) -> str:
        return "M" if self.i == 0 else f"M-{self.i}"


@dataclass(frozen=True)
class AdmissibleRecord:
    scheme: RealScheme
    d: int
    l: int
    i: int
    types: frozenset
    trail: tuple
    partial: bool = False

    @property
    def rank(self) -> str:
        return "M" if self.i == 0 else f"M-{self.i}"

    def to_json(self):
        return {
            "scheme": self.scheme.text,
            "l": self.l,
            "rank": self.rank,
            "types": sorted(self.types),
            "trail": list(self.trail),
            **({"partial": True} if self.partial else {}),
        }


@dataclass(frozen=True)
class Rejected:
    scheme: RealScheme
    d: int
    reason: str
    trail: tuple

    def to_json(self):
        return {
            "scheme": self.scheme.text,
            "l": self.scheme.l,
            "rejected_by": self.reason,
            "trail": list(self.trail),
        }


# ---------------------------------------------------------------------------
# individual restrictions


def check_harnack(s: RealScheme, d: int) -> bool:
    """Component bound: l <= g + 1."""
    if d < 1:
        raise ValueError("d must be positive")
    return s.l <= genus(d) + 1


def check_nests(s: RealScheme, d: int) -> bool:
    """Three pairwise disjoint nests never carry more than d ovals in total.

    This subsumes the bound max nest depth <= d.
    """
    return nest_stats(s)[1] <= d


@dataclass(frozen=True)
class CongruenceVerdict:
    ok: bool
    reason: str
    forced_type_I: bool
    type_I_chi_ok: bool


def mikhalkin_filter(s: RealScheme, d: int) -> CongruenceVerdict:
    """Euler-characteristic congruences mod 8 for odd d.

    Both unions of complementary regions bounded by the curve are tested;
    because chi_even + chi_odd = 2 and all targets are symmetric about 1,
    the two verdicts always agree (asserted).
    """
    if d % 2 == 0:
        raise DEven(f"d = {d} is even")
    chi_e, chi_o = euler_classes(s)
    i = genus(d) + 1 - s.l

    def both(pred):
        a, b = pred(chi_e), pred(chi_o)
        assert a == b, f"chi choices disagree on {s} (chi={chi_e},{chi_o})"
        return a

    target = (d * d + 1) // 2
    ok, reason = True, ""
    if i == 0:
        ok = both(lambda x: (x - target) % 8 == 0)
        reason = "" if ok else "congruence-maximal"
    elif i == 1:
        ok = both(lambda x: (x - target) % 8 in (1, 7))
        reason = "" if ok else "congruence-near-maximal"
    forced = False
    if i == 2:
        forced = both(lambda x: (x - (d * d - 7) // 2) % 8 == 0)
    type_I_chi_ok = both(lambda x: x % 4 == 1)
    return CongruenceVerdict(ok=ok, reason=reason, forced_type_I=forced,
                             type_I_chi_ok=type_I_chi_ok)


@lru_cache(maxsize=None)
def _orientation_feasible_cached(forest, l: int, d: int) -> bool:
    target = l - d * d
    if target % 2 != 0:
        return False
    if l == 0:
        return target == 0
    from .schemes import _oval_relations

    _, nested = _oval_relations(forest)
    c = np.ones((l, l), dtype=np.int32)
    np.fill_diagonal(c, 0)
    for i, j in nested:
        c[i, j] = c[j, i] = -1
    # all sign vectors with first sign fixed (global flip symmetry)
    n = 2 ** (l - 1)
    bits = np.arange(n, dtype=np.uint32)
    signs = np.ones((n, l), dtype=np.int32)
    for k in range(1, l):
        signs[:, k] = ((bits >> (k - 1)) & 1).astype(np.int32) * 2 - 1
    quad = np.einsum("ij,jk,ik->i", signs, c, signs)
    return bool(np.any(quad == target))


def orientation_feasible(s: RealScheme, d: int) -> bool:
    """Is 2(Pi+ - Pi-) = l - d^2 solvable by some assignment of windings?

    Brute force over all 2^l sign vectors (vectorised; the global sign flip
    halves the search).  Pair classes are taken relative to the canonical
    base region.
    """
    s = canonicalize(s)
    return _orientation_feasible_cached(s.forest, s.l, d)


# ---------------------------------------------------------------------------
# the pipeline


def classify(s: RealScheme, d: int):
    """Run every restriction; return AdmissibleRecord or Rejected."""
    s = canonicalize(s)
    trail = []
    if not check_harnack(s, d):
        return Rejected(s, d, "harnack", ("harnack:fail",))
    trail.append("harnack:pass")
    if not check_nests(s, d):
        return Rejected(s, d, "nests", tuple(trail) + ("nests:fail",))
    trail.append("nests:pass")

    g = genus(d)
    i = g + 1 - s.l
    types = {TYPE_I, TYPE_II}

    if d % 2 == 0:
        trail.append("congruences:skipped-even-bidegree")
        return AdmissibleRecord(s, d, s.l, i, frozenset(types), tuple(trail),
                                partial=True)

    verdict = mikhalkin_filter(s, d)
    if not verdict.ok:
        return Rejected(s, d, verdict.reason,
                        tuple(trail) + (f"{verdict.reason}:fail",))
    trail.append("congruences:pass")

    if i == 0:
        types = {TYPE_I}
        trail.append("maximal:type-I")
    if verdict.forced_type_I:
        types = {TYPE_I}
        trail.append("congruence-forces-type-I")
    if nest_stats(s)[0] == d:
        # a nest of maximal depth gives a totally real pencil of sections
        types = {TYPE_I}
        trail.append("maximal-nest:type-I")

    if TYPE_I in types:
        drop = None
        if s.l < d:
            drop = "type-I-needs-l>=d"
        elif (s.l - (g + 1)) % 2 != 0:
            drop = "type-I-parity"
        elif not verdict.type_I_chi_ok:
            drop = "type-I-chi-mod-4"
        elif not orientation_feasible(s, d):
            drop = "type-I-orientation"
        if drop is not None:
            types.discard(TYPE_I)
            trail.append(f"{drop}:drop-I")
        else:
            trail.append("type-I-constraints:pass")
    if not types:
        return Rejected(s, d, "no-admissible-type", tuple(trail))
    return AdmissibleRecord(s, d, s.l, i, frozenset(types), tuple(trail))


@lru_cache(maxsize=8)
def admissible_shapes(d: int):
    """Canonical schemes passing the component and nest bounds.

    Grown one oval at a time: removing an innermost oval preserves both
    bounds, so breadth-first growth with canonical deduplication is complete.
    """
    g = genus(d)
    empty = RealScheme.from_forest(())
    seen = {empty}
    frontier = [empty]
    out = [empty]
    for _ in range(g + 1):
        nxt = []
        for s in frontier:
            for face in range(s.l + 1):
                child = s.with_extra_oval(face)
                if child in seen:
                    continue
                seen.add(child)
                if check_nests(child, d):
                    nxt.append(child)
                    out.append(child)
        frontier = nxt
    return tuple(out)


def worker_count() -> int:
    cap = os.environ.get("OVALE_THREADS")
    n = os.cpu_count() or 1
    if cap:
        n = max(1, min(n, int(cap)))
    return n


@lru_cache(maxsize=8)
def enumerate_admissible(d: int):
    """All admissible records for odd d <= 7, deterministically ordered."""
    if d % 2 == 0:
        raise DEven(f"d = {d} is even")
    if d > 7:
        raise DTooLarge(f"d = {d} exceeds the practical bound 7")
    shapes = list(admissible_shapes(d))
    records = []
    n = worker_count()
    if n > 1 and len(shapes) > 64:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=n) as pool:
            results = list(pool.map(lambda s: classify(s, d), shapes))
    else:
        results = [classify(s, d) for s in shapes]
    for r in results:
        if isinstance(r, AdmissibleRecord):
            records.append(r)
    records.sort(key=lambda r: (r.l, r.scheme.text))
    return tuple(records)
