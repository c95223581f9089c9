import random

import pytest

from ovale.schemes import (
    Bracket,
    EmptyInput,
    OrientedScheme,
    RealScheme,
    SchemeExpr,
    UnbalancedBracket,
    UnexpectedToken,
    canonicalize,
    euler_classes,
    nest_stats,
    pair_counts,
    parse_scheme,
    print_expr,
    to_forest,
)

# ---------------------------------------------------------------------------
# independent oracles


def _face_adjacency(scheme):
    """Face tree of a canonical scheme: face 0 = base region."""
    adj = {0: []}
    counter = [0]

    def visit(parent, node):
        counter[0] += 1
        me = counter[0]
        adj[me] = [parent]
        adj[parent].append(me)
        for c in node:
            visit(me, c)

    for root in scheme.forest:
        visit(0, root)
    return adj


def euler_oracle(scheme):
    """chi of the even/odd face classes via face degrees: chi(face) = 2 - deg."""
    adj = _face_adjacency(scheme)
    chi = [0, 0]
    depth = {0: 0}
    stack = [0]
    while stack:
        f = stack.pop()
        chi[depth[f] % 2] += 2 - len(adj[f])
        for nb in adj[f]:
            if nb not in depth:
                depth[nb] = depth[f] + 1
                stack.append(nb)
    return tuple(chi)


def _edges(adj):
    return [(u, v) for u in adj for v in adj[u] if u < v]


def _components_without(adj, removed):
    """Vertex components of the tree minus an edge set."""
    seen = set()
    comps = []
    for start in adj:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                e = (min(u, v), max(u, v))
                if e in removed or v in comp:
                    continue
                comp.add(v)
                stack.append(v)
        seen |= comp
        comps.append(comp)
    return comps


def _is_nest(adj, edge_set):
    """Literal test: every complementary region is a disc or an annulus,
    i.e. every component of the tree minus the edges meets 1 or 2 of them."""
    if not edge_set:
        return False
    for comp in _components_without(adj, edge_set):
        k = sum(1 for (u, v) in edge_set if u in comp or v in comp)
        if k > 2:
            return False
    return True


def _nest_discs(adj, edge_set):
    """The components meeting exactly one nest circle (the two discs)."""
    return [comp for comp in _components_without(adj, edge_set)
            if sum(1 for (u, v) in edge_set if u in comp or v in comp) == 1]


def _nests_disjoint(adj, n1, n2):
    if n1 & n2:
        return False

    def inside_disc(host, guest):
        return any(all(u in d and v in d for (u, v) in guest)
                   for d in _nest_discs(adj, host))

    return inside_disc(n1, n2) and inside_disc(n2, n1)


def nest_oracle_small(scheme):
    """Fully literal (exponential) oracle for small schemes."""
    adj = _face_adjacency(scheme)
    edges = _edges(adj)
    nests = []
    for mask in range(1, 2 ** len(edges)):
        es = frozenset(e for k, e in enumerate(edges) if mask >> k & 1)
        if _is_nest(adj, es):
            nests.append(es)
    max_depth = max((len(n) for n in nests), default=0)
    best = max_depth
    for i in range(len(nests)):
        for j in range(i + 1, len(nests)):
            if not _nests_disjoint(adj, nests[i], nests[j]):
                continue
            best = max(best, len(nests[i]) + len(nests[j]))
            for k in range(j + 1, len(nests)):
                if (_nests_disjoint(adj, nests[i], nests[k])
                        and _nests_disjoint(adj, nests[j], nests[k])):
                    best = max(best, len(nests[i]) + len(nests[j])
                               + len(nests[k]))
    return max_depth, best


def nest_oracle_paths(scheme):
    """Path-based oracle: nests taken as whole tree paths.

    Filling the gaps of a nest keeps disjointness and never lowers the
    total, so maximising over full paths is exact; this is cross-checked
    against the fully literal oracle on small schemes.
    """
    adj = _face_adjacency(scheme)
    verts = list(adj)
    paths = []
    for a in verts:
        prev = {a: None}
        stack = [a]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in prev:
                    prev[v] = u
                    stack.append(v)
        for b in verts:
            if b <= a:
                continue
            es = set()
            x = b
            while prev[x] is not None:
                es.add((min(x, prev[x]), max(x, prev[x])))
                x = prev[x]
            paths.append(frozenset(es))
    max_depth = max((len(p) for p in paths), default=0)
    best = max_depth
    pairs = {}
    for i in range(len(paths)):
        for j in range(i + 1, len(paths)):
            if _nests_disjoint(adj, paths[i], paths[j]):
                pairs.setdefault(i, set()).add(j)
                best = max(best, len(paths[i]) + len(paths[j]))
    for i, js in pairs.items():
        for j in js:
            for k in js & pairs.get(j, set()):
                best = max(best, len(paths[i]) + len(paths[j]) + len(paths[k]))
    return max_depth, best


def random_forest(rng, max_ovals):
    l = rng.randint(0, max_ovals)
    scheme = RealScheme.from_forest(())
    for _ in range(l):
        scheme = scheme.with_extra_oval(rng.randint(0, scheme.l))
    return scheme


# ---------------------------------------------------------------------------
# parser


def test_parse_examples():
    e = parse_scheme("1 u <4> u <10>")
    assert e == SchemeExpr((1, Bracket(SchemeExpr((4,))), Bracket(SchemeExpr((10,)))))
    assert parse_scheme("0") == SchemeExpr((0,))
    deep = parse_scheme("<<<<1>>>>")
    depth = 0
    while isinstance(deep.terms[0], Bracket):
        deep = deep.terms[0].inner
        depth += 1
    assert depth == 4 and deep == SchemeExpr((1,))


def test_parse_unicode_aliases():
    assert parse_scheme("1 ⊔ ⟨4⟩") == parse_scheme("1 u <4>")


def test_parse_errors_carry_offsets():
    with pytest.raises(EmptyInput):
        parse_scheme("   ")
    with pytest.raises(UnbalancedBracket) as ei:
        parse_scheme("1 u <4")
    assert ei.value.offset == 4
    with pytest.raises(UnbalancedBracket):
        parse_scheme("1>")
    with pytest.raises(UnexpectedToken):
        parse_scheme("1 u u 2")
    with pytest.raises(UnexpectedToken):
        parse_scheme("1 u 0")
    with pytest.raises(UnexpectedToken):
        parse_scheme("<1 u 0>")


def test_print_parse_roundtrip_on_ast():
    for text in ["0", "1", "1 u <4> u <10>", "<<<<1>>>>", "<0>", "3 u <1 u <2>> u 2"]:
        e = parse_scheme(text)
        assert parse_scheme(print_expr(e)) == e


# ---------------------------------------------------------------------------
# forests and canonical forms


def test_to_forest_examples():
    s = to_forest(parse_scheme("1 u <4> u <10>"))
    assert s.l == 17
    assert sorted(len(n) for n in s.forest) == [0, 4, 10]
    assert to_forest(parse_scheme("0")).l == 0
    assert to_forest(parse_scheme("<<1>>")).l == 3


def test_degenerate_bracket_normalizes():
    assert RealScheme.parse("<0>") == RealScheme.parse("1")


def test_two_ovals_one_sphere():
    # viewed from inside one oval, the other contains it: same sphere pair
    assert RealScheme.parse("<1>") == RealScheme.parse("2")


def test_canonicalize_idempotent():
    s = RealScheme.parse("1 u <4> u <10>")
    assert canonicalize(s) == s


def test_rerooting_five_nest_single_orbit():
    # every face of the 5-nest arrangement gives the same canonical scheme
    nest = RealScheme.parse("<<<<1>>>>")
    adj = _face_adjacency(nest)
    from ovale.schemes import _rooted_forest

    forms = {RealScheme.from_forest(_rooted_forest(adj, r)) for r in adj}
    assert forms == {nest}


def test_json_roundtrip():
    for text in ["0", "1 u <4> u <10>", "<<<<1>>>>", "<2> u <3>"]:
        s = RealScheme.parse(text)
        assert RealScheme.from_json(s.to_json()) == s


# ---------------------------------------------------------------------------
# euler classes


def test_euler_examples():
    assert euler_classes(RealScheme.parse("0")) == (2, 0)
    assert euler_classes(RealScheme.parse("1")) == (1, 1)
    assert euler_classes(RealScheme.parse("1 u <4> u <10>")) == (13, -11)


def test_euler_against_face_degree_oracle():
    rng = random.Random(7)
    for _ in range(300):
        s = random_forest(rng, 10)
        assert euler_classes(s) == euler_oracle(s)


# ---------------------------------------------------------------------------
# nests


def test_nest_examples():
    # frozen from the literal oracle (first components are intrinsic nest
    # depths: the 17-oval scheme contains a depth-4 nest through both groups)
    assert nest_stats(RealScheme.parse("<<<<1>>>>")) == (5, 5)
    assert nest_stats(RealScheme.parse("1 u <4> u <10>")) == (4, 5)
    assert nest_stats(RealScheme.parse("<<1>> u <<1>> u <<1>>")) == (6, 9)
    assert nest_stats(RealScheme.parse("0")) == (0, 0)
    # any two disjoint ovals already form a depth-2 nest (re-root inside one)
    assert nest_stats(RealScheme.parse("3")) == (2, 3)


def test_nest_oracles_agree_small():
    rng = random.Random(11)
    for _ in range(60):
        s = random_forest(rng, 6)
        lit = nest_oracle_small(s)
        via_paths = nest_oracle_paths(s)
        assert lit == via_paths, s
        assert nest_stats(s) == lit, s


def test_nest_engine_matches_path_oracle():
    rng = random.Random(13)
    for _ in range(150):
        s = random_forest(rng, 9)
        assert nest_stats(s) == nest_oracle_paths(s), s


def test_nest_spec_examples_match_path_oracle():
    for text in ["1 u <4> u <10>", "<<1>> u <<1>> u <<1>>", "<<<<1>>>>"]:
        s = RealScheme.parse(text)
        assert nest_stats(s) == nest_oracle_paths(s)


def test_depth_bounded_by_three_nest_total():
    rng = random.Random(17)
    for _ in range(200):
        s = random_forest(rng, 10)
        depth, best3 = nest_stats(s)
        assert depth <= best3


# ---------------------------------------------------------------------------
# oriented schemes


def test_five_nest_all_equal_windings():
    # the pin for the pair-class convention: all-equal windings on the
    # 5-nest rooted as a chain make every pair an agreeing (Pi-) pair
    chain = ()
    for _ in range(4):
        chain = (chain,)
    plus, minus = pair_counts((chain,), (1, 1, 1, 1, 1))
    assert (plus, minus) == (0, 10)
    assert 2 * (plus - minus) == 5 - 25


def test_oriented_scheme_invariants():
    rng = random.Random(23)
    for _ in range(100):
        s = random_forest(rng, 8)
        signs = tuple(rng.choice((1, -1)) for _ in range(s.l))
        o = OrientedScheme(s, signs)
        p, m = o.pair_counts()
        assert p + m == s.l * (s.l - 1) // 2
        flipped = OrientedScheme(s, tuple(-x for x in signs))
        assert flipped.pair_counts() == (p, m)
