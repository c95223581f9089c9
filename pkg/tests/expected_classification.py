"""Independent expansion of the expected d=5 classification tables.

The admissible schemes and their type tags are expanded directly from the
arithmetic descriptions of the four published lists (maximal curves, curves
with one or two ovals fewer, and the remaining ranks), then canonicalized.
Nothing here is shared with the classification engine except the canonical
form used as the comparison space.

One erratum is applied: in the low-rank type-I family list, the degenerate
entries (4,1,0)/(0,5,0) and (7,0,0) describe schemes (`1 u <5>` and `9`) for
which no assignment of windings satisfies 2(Pi+ - Pi-) = l - 25, so they are
prohibited by the complex-orientation restriction that the lists summarise.
They are dropped by an independent pure-python brute force below.  (The
degenerate entry (11,0,0) -> `13` does satisfy the formula and is kept; it is
one of the explicitly constructed type-I schemes.)
"""

import itertools

from ovale.schemes import RealScheme


def _winding_formula_satisfiable(forest, d: int) -> bool:
    """Brute force over all windings, independent of the engine.

    Convention (pinned by the maximal nest): a nested pair counts to Pi-
    iff the windings agree, a non-nested pair iff they differ.
    """
    nested = set()
    counter = [0]

    def visit(node, ancestors):
        me = counter[0]
        counter[0] += 1
        for a in ancestors:
            nested.add((a, me))
        for c in node:
            visit(c, ancestors + [me])

    for root in forest:
        visit(root, [])
    l = counter[0]
    if (l - d * d) % 2:
        return False
    target = (l - d * d) // 2
    if l == 0:
        return target == 0
    pairs = [(i, j, -1 if (i, j) in nested else 1)
             for i in range(l) for j in range(i + 1, l)]
    for rest in itertools.product((1, -1), repeat=l - 1):
        signs = (1,) + rest
        if sum(c * signs[i] * signs[j] for i, j, c in pairs) == target:
            return True
    return False


def _family(alpha: int, beta: int, gamma: int) -> RealScheme:
    """alpha free ovals, one oval around beta ovals, one around gamma."""
    forest = [()] * alpha + [tuple([()] * beta), tuple([()] * gamma)]
    return RealScheme.from_forest(tuple(forest))


def _nest(depth: int) -> RealScheme:
    node = ()
    for _ in range(depth - 1):
        node = (node,)
    return RealScheme.from_forest((node,))


def expected_records():
    """dict canonical text -> (rank index i, frozenset of allowed types).

    Also returns the list of collisions: distinct list entries that describe
    the same scheme on the sphere (they merge under canonicalization).
    """
    table = {}
    collisions = []

    def add(scheme: RealScheme, i: int, t: str):
        key = scheme.text
        if key in table:
            i0, types = table[key]
            assert i0 == i, f"rank clash for {key}"
            if (i, t, key) not in collisions and t in types:
                collisions.append((i, t, key))
            table[key] = (i0, types | {t})
        else:
            table[key] = (i, frozenset({t}))

    def splits(total):
        for alpha in range(total + 1):
            for beta in range(total - alpha + 1):
                yield alpha, beta, total - alpha - beta

    # maximal curves: alpha = 1 mod 4, alpha+beta+gamma = 15, type I
    for a, b, g in splits(15):
        if a % 4 == 1:
            add(_family(a, b, g), 0, "I")
    # one oval fewer: alpha = 0 or 1 mod 4, sum 14, type II
    for a, b, g in splits(14):
        if a % 4 in (0, 1):
            add(_family(a, b, g), 1, "II")
    # two fewer: type I for alpha even, type II for alpha != 2 mod 4, sum 13
    for a, b, g in splits(13):
        if a % 2 == 0:
            add(_family(a, b, g), 2, "I")
        if a % 4 != 2:
            add(_family(a, b, g), 2, "II")
    # remaining ranks 3 <= i <= 17, type II: 0, 1 and all splits of 15 - i
    add(RealScheme.from_forest(()), 17, "II")
    add(RealScheme.from_forest(((),)), 16, "II")
    for i in range(3, 16):
        for a, b, g in splits(15 - i):
            add(_family(a, b, g), i, "II")
    # remaining ranks, type I: the maximal nest and the parity families
    add(_nest(5), 12, "I")
    for total, parity in ((5, 0), (9, 0), (7, 1), (11, 1)):
        for a, b, g in splits(total):
            if a % 2 != parity:
                continue
            scheme = _family(a, b, g)
            if (b == 0 or g == 0) and not _winding_formula_satisfiable(
                    scheme.forest, 5):
                continue  # erratum: prohibited by the orientation formula
            add(scheme, 15 - total, "I")
    return table, collisions
