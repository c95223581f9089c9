"""Exact model of real schemes: finite collections of disjoint ovals on the sphere.

A scheme is encoded by the classical bracket notation.  ``0`` is the empty
scheme, a positive integer ``k`` stands for ``k`` ovals with nothing inside,
``<S>`` is an oval containing the collection ``S``, and ``u`` (or the unicode
aliases) is disjoint union.  Internally a scheme is an unordered rooted forest
(ovals are nodes, children are the ovals immediately inside), but two forests
describe the same pair (S^2, ovals) whenever one is obtained from the other by
moving the base point to a different complementary region.  Equality, hashing
and printing therefore go through a canonical form that minimises over all
re-rootings of the underlying face tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence


# ---------------------------------------------------------------------------
# surface syntax


class SchemeSyntaxError(ValueError):
    """Malformed scheme text; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


class EmptyInput(SchemeSyntaxError):
    pass


class UnbalancedBracket(SchemeSyntaxError):
    pass


class UnexpectedToken(SchemeSyntaxError):
    pass


@dataclass(frozen=True)
class Bracket:
    inner: "SchemeExpr"


@dataclass(frozen=True)
class SchemeExpr:
    """Abstract syntax of the bracket notation: a union of terms.

    Terms are non-negative integers or :class:`Bracket`.  The integer ``0``
    only occurs as the sole term of its union (the empty collection).
    """

    terms: tuple

    def __post_init__(self):
        for t in self.terms:
            if isinstance(t, int):
                if t < 0:
                    raise ValueError("negative oval count")
                if t == 0 and len(self.terms) > 1:
                    raise ValueError("0 only denotes the empty scheme")
            elif not isinstance(t, Bracket):
                raise TypeError(f"bad term {t!r}")


_UNION_ALIASES = {"u", "⊔"}  # ⊔
_OPEN_ALIASES = {"<", "⟨"}  # ⟨
_CLOSE_ALIASES = {">", "⟩"}  # ⟩


def _tokenize(text: str):
    """Yield (kind, value, byte_offset) with kinds NAT/U/OPEN/CLOSE."""
    tokens = []
    offset = 0
    i = 0
    while i < len(text):
        ch = text[i]
        blen = len(ch.encode("utf-8"))
        if ch.isspace():
            i += 1
            offset += blen
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("NAT", int(text[i:j]), offset))
            offset += len(text[i:j].encode("utf-8"))
            i = j
            continue
        if ch in _UNION_ALIASES:
            tokens.append(("U", ch, offset))
        elif ch in _OPEN_ALIASES:
            tokens.append(("OPEN", ch, offset))
        elif ch in _CLOSE_ALIASES:
            tokens.append(("CLOSE", ch, offset))
        else:
            raise UnexpectedToken(f"unexpected character {ch!r}", offset)
        i += 1
        offset += blen
    return tokens


def parse_scheme(text: str) -> SchemeExpr:
    """Parse scheme notation ``expr := term ("u" term)*; term := NAT | "<" expr ">"``."""
    tokens = _tokenize(text)
    if not tokens:
        raise EmptyInput("empty scheme text", 0)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else ("EOF", None, tokens[-1][2] + 1)

    def parse_expr(closing_expected: bool) -> SchemeExpr:
        nonlocal pos
        terms = []
        while True:
            kind, value, off = peek()
            if kind == "NAT":
                pos += 1
                terms.append((value, off))
            elif kind == "OPEN":
                pos += 1
                inner = parse_expr(True)
                kind2, _, off2 = peek()
                if kind2 != "CLOSE":
                    raise UnbalancedBracket("unclosed bracket", off)
                pos += 1
                terms.append((Bracket(inner), off))
            else:
                raise UnexpectedToken(f"expected a term, found {kind}", off)
            kind, _, off = peek()
            if kind == "U":
                pos += 1
                continue
            break
        for value, off in terms:
            if value == 0 and len(terms) > 1:
                raise UnexpectedToken("0 must stand alone", off)
        return SchemeExpr(tuple(v for v, _ in terms))

    expr = parse_expr(False)
    kind, _, off = peek()
    if kind == "CLOSE":
        raise UnbalancedBracket("unmatched closing bracket", off)
    if kind != "EOF":
        raise UnexpectedToken(f"trailing {kind}", off)
    return expr


def print_expr(e: SchemeExpr) -> str:
    """Print an AST in the surface syntax (no canonicalization)."""
    if e.terms == (0,) or not e.terms:
        return "0"
    parts = []
    for t in e.terms:
        if isinstance(t, int):
            parts.append(str(t))
        else:
            parts.append("<" + print_expr(t.inner) + ">")
    return " u ".join(parts)


# ---------------------------------------------------------------------------
# canonical forests
#
# A forest is stored as a nested tuple: a node is the tuple of its children,
# a forest the tuple of its roots.  Canonical order sorts children by
# (subtree size, printed encoding); the canonical rooting of the underlying
# face tree minimises (height, printed encoding) over all base regions.


def _size(node) -> int:
    return 1 + sum(_size(c) for c in node)


def _forest_size(forest) -> int:
    return sum(_size(n) for n in forest)


def _sort_forest(forest):
    """Recursively sort a nested-tuple forest into canonical child order."""
    nodes = [_sort_forest_node(n) for n in forest]
    nodes.sort(key=lambda ns: ns[1])
    return tuple(n for n, _ in nodes)


def _sort_forest_node(node):
    children = [_sort_forest_node(c) for c in node]
    children.sort(key=lambda ns: ns[1])
    sorted_node = tuple(c for c, _ in children)
    return sorted_node, (_size(sorted_node), _node_text(sorted_node))


def _node_text(node) -> str:
    if not node:
        return "1"
    return "<" + _forest_text(node) + ">"


def _forest_text(forest) -> str:
    """Printed form of a sorted forest (leaf roots merged into one integer)."""
    k = sum(1 for n in forest if not n)
    parts = []
    if k:
        parts.append(str(k))
    for n in forest:
        if n:
            parts.append(_node_text(n))
    if not parts:
        return "0"
    return " u ".join(parts)


def _forest_height(forest) -> int:
    return max((1 + _forest_height(n) for n in forest), default=0)


def _face_tree(forest):
    """Adjacency of the face tree: faces 0..l, face 0 = base region.

    Ovals are numbered 1..l in the order they are first visited; the face
    "just inside oval i" gets index i.  Returns (adjacency list, l).
    """
    adj = {0: []}
    counter = 0

    def visit(parent_face, node):
        nonlocal counter
        counter += 1
        me = counter
        adj[me] = [parent_face]
        adj[parent_face].append(me)
        for c in node:
            visit(me, c)

    for root in forest:
        visit(0, root)
    return adj, counter


def _rooted_forest(adj, root):
    """Re-root the face tree at ``root``; edges incident to a face become ovals."""

    def build(face, parent):
        return tuple(build(nb, face) for nb in adj[face] if nb != parent)

    return _sort_forest(build(root, None))


@dataclass(frozen=True)
class RealScheme:
    """Canonical real scheme: an isotopy class of oval collections on S^2."""

    forest: tuple
    text: str
    l: int

    @staticmethod
    def from_forest(forest) -> "RealScheme":
        """Canonicalize an arbitrary nested-tuple forest."""
        forest = _sort_forest(tuple(forest))
        adj, l = _face_tree(forest)
        best = None
        for root in adj:
            cand = _rooted_forest(adj, root)
            key = (_forest_height(cand), _forest_text(cand))
            if best is None or key < best[0]:
                best = (key, cand)
        forest = best[1]
        return RealScheme(forest=forest, text=_forest_text(forest), l=l)

    @staticmethod
    def parse(text: str) -> "RealScheme":
        return to_forest(parse_scheme(text))

    def __str__(self):
        return self.text

    def __repr__(self):
        return f"RealScheme({self.text!r})"

    # -- structure ---------------------------------------------------------

    def faces(self) -> int:
        """Number of complementary regions (= candidate base points)."""
        return self.l + 1

    def with_extra_oval(self, face: int) -> "RealScheme":
        """Add one empty oval inside the given face (0 = base region)."""
        if not 0 <= face <= self.l:
            raise IndexError(face)
        counter = 0

        def rebuild(node):
            nonlocal counter
            counter += 1
            me = counter
            children = tuple(rebuild(c) for c in node)
            if me == face:
                children = children + ((),)
            return children

        roots = tuple(rebuild(n) for n in self.forest)
        if face == 0:
            roots = roots + ((),)
        return RealScheme.from_forest(roots)

    def to_json(self):
        """Nested child-list arrays, canonical order."""

        def conv(node):
            return [conv(c) for c in node]

        return [conv(n) for n in self.forest]

    @staticmethod
    def from_json(data) -> "RealScheme":
        def conv(node):
            return tuple(conv(c) for c in node)

        return RealScheme.from_forest(tuple(conv(n) for n in data))


def to_forest(e: SchemeExpr) -> RealScheme:
    """Interpret an AST as a canonical scheme (integer k = k empty ovals)."""

    def conv_expr(expr: SchemeExpr):
        nodes = []
        for t in expr.terms:
            if isinstance(t, int):
                nodes.extend([()] * t)
            else:
                nodes.append(tuple(conv_expr(t.inner)))
        return nodes

    return RealScheme.from_forest(tuple(conv_expr(e)))


def canonicalize(s: RealScheme) -> RealScheme:
    """Idempotent by construction; kept as the spec-level entry point."""
    return RealScheme.from_forest(s.forest)


# ---------------------------------------------------------------------------
# Euler characteristics of the two half-systems of complementary regions


def euler_classes(s: RealScheme) -> tuple:
    """chi of the union of faces at even / odd nesting depth.

    The base region (depth 0) is a sphere with r root ovals removed and
    contributes 2 - r; the face inside an oval with c immediate children
    contributes 1 - c.  Always chi_even + chi_odd = 2.
    """
    chi = [2 - len(s.forest), 0]

    def visit(node, depth):
        chi[depth % 2] += 1 - len(node)
        for c in node:
            visit(c, depth + 1)

    for root in s.forest:
        visit(root, 1)
    return chi[0], chi[1]


# ---------------------------------------------------------------------------
# nests


def _adjacency(s: RealScheme):
    return _face_tree(s.forest)[0]


def _directional_heights(adj):
    """h[(u,v)] = length of the longest path from u starting along edge (u,v)."""
    h = {}

    def height(u, v):
        if (u, v) in h:
            return h[(u, v)]
        h[(u, v)] = 0  # cycle guard; trees never hit it
        best = 1 + max((height(v, w) for w in adj[v] if w != u), default=0)
        h[(u, v)] = best
        return best

    import sys

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10000))
    try:
        for u in adj:
            for v in adj[u]:
                height(u, v)
    finally:
        sys.setrecursionlimit(old)
    return h


def nest_stats(s: RealScheme) -> tuple:
    """(max_depth, best_three_disjoint_nests_total).

    ``max_depth`` is the depth of the deepest nest contained in the scheme,
    i.e. the longest chain of pairwise nested ovals over all choices of base
    region (= the diameter of the face tree).  The second value maximises the
    total number of ovals over collections of at most three pairwise disjoint
    nests: nests are edge paths of the face tree, and three pairwise disjoint
    nests always reduce to at most three maximal descending paths leaving a
    common face in distinct directions.
    """
    if s.l == 0:
        return 0, 0
    adj = _adjacency(s)
    h = _directional_heights(adj)
    max_depth = 0
    best3 = 0
    for u in adj:
        outs = sorted((h[(u, v)] for v in adj[u]), reverse=True)
        max_depth = max(max_depth, outs[0])
        if len(outs) >= 2:
            max_depth = max(max_depth, outs[0] + outs[1])
        best3 = max(best3, sum(outs[:3]))
    return max_depth, best3


# ---------------------------------------------------------------------------
# oriented schemes and complex-orientation pair counts


def _oval_relations(forest):
    """DFS preorder indexing of ovals; returns (l, set of nested index pairs)."""
    nested = set()
    stack = []
    counter = [0]

    def visit(node):
        me = counter[0]
        counter[0] += 1
        for anc in stack:
            nested.add((anc, me))
        stack.append(me)
        for c in node:
            visit(c)
        stack.pop()

    for root in forest:
        visit(root)
    return counter[0], nested


@dataclass(frozen=True)
class OrientedScheme:
    """A scheme with one winding sign per oval (DFS preorder of the forest).

    The pair classification follows the convention pinned by the maximal
    nest: a nested pair realizes the same annulus class (Pi_minus) iff its
    windings agree, a non-nested pair iff its windings differ.
    """

    scheme: RealScheme
    signs: tuple

    def __post_init__(self):
        if len(self.signs) != self.scheme.l:
            raise ValueError("one sign per oval required")
        if any(x not in (-1, 1) for x in self.signs):
            raise ValueError("signs must be +-1")

    def pair_counts(self) -> tuple:
        """(Pi_plus, Pi_minus)."""
        return pair_counts(self.scheme.forest, self.signs)


def pair_counts(forest, signs: Sequence[int]) -> tuple:
    """Pair counts for an arbitrary (not necessarily canonical) rooted forest."""
    l, nested = _oval_relations(forest)
    if len(signs) != l:
        raise ValueError("one sign per oval required")
    pi_plus = pi_minus = 0
    for i in range(l):
        for j in range(i + 1, l):
            is_nested = (i, j) in nested
            same_sign = signs[i] == signs[j]
            if is_nested == same_sign:
                pi_minus += 1
            else:
                pi_plus += 1
    return pi_plus, pi_minus
