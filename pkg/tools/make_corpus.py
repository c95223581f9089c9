#!/usr/bin/env python3
"""Synthesize the graph corpus fixtures from boundary words.

Each fixture is found by the bounded completion search, validated, and
written to src/ovale/fixtures/.  Run once; the fixtures are versioned data.
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from ovale.completion import find_completion
from ovale.dessins import (TrigonalGraph, boundary_word, glue, glue_type_I,
                           type_I_labelings, validate_graph)

OUT = Path(__file__).resolve().parents[1] / "src" / "ovale" / "fixtures"

WORDS = {
    # degree-1 library
    "cubic_branch_isolated": ([("x", "s"), ("b", "o"), ("w", "o"), ("b", "s")], 1),
    "cubic_branch_isolated_wide": (
        [("x", "s"), ("b", "o"), ("w", "o"), ("m", "o"), ("w", "o"),
         ("m", "o"), ("w", "o"), ("b", "s")], 1),
    "cubic_plain_branch": ([("b", "o"), ("w", "o"), ("b", "s"), ("m", "s")], 1),
    "cubic_fold": ([("x", "d"), ("w", "d"), ("x", "s"), ("m", "s")], 1),
    "cubic_oval": ([("x", "d"), ("w", "d"), ("x", "s"), ("b", "o"),
                    ("w", "o"), ("m", "o"), ("w", "o"), ("b", "s")], 1),
    "cubic_hyperbolic": ([("w", "d"), ("m", "d")], 1),
}


def pick(graphs):
    """Deterministic representative: minimal canonical key."""
    return min(graphs, key=lambda G: G.canonical_key())


def main():
    OUT.mkdir(exist_ok=True)
    lib = {}
    for name, (word, n) in WORDS.items():
        res = find_completion(word, n, find_all=True,
                              budget={"max_refine": 0, "seconds": 120})
        if not isinstance(res, list) or not res:
            raise SystemExit(f"no completion for {name}")
        G = pick(res)
        assert validate_graph(G) == [], name
        lib[name] = G
        (OUT / f"{name}.json").write_text(json.dumps(G.to_json(), indent=1))
        print(name, "V", len(G.kinds), "labelings", len(type_I_labelings(G)))

    def whites(G):
        bset = set(G.boundary)
        return [v for v in G.boundary if G.kinds[v] == "w" and v in bset]

    def monos_dotted(G):
        bset = set(G.boundary)
        return [v for v in G.boundary if G.kinds[v] == "m" and v in bset
                and G.colors[G.rot[v][0] // 2] == "d"]

    # degree 2: two isolated-double-point cubics glued at their whites
    A = lib["cubic_branch_isolated"]
    pair, tag = glue_type_I(A, whites(A)[0], A, whites(A)[0])
    assert validate_graph(pair) == [] and pair.n == 2
    (OUT / "degree2_pair.json").write_text(json.dumps(pair.to_json(), indent=1))
    print("degree2_pair", "V", len(pair.kinds), "tag", tag)

    # degree 6 chains from the wide piece (three gluing sites each)
    W = lib["cubic_branch_isolated_wide"]

    def chain(pieces):
        G = pieces[0]
        for nxt in pieces[1:]:
            site_g = whites(G)[0]
            site_n = whites(nxt)[0]
            G, _ = glue_type_I(G, site_g, nxt, site_n)
        return G

    def chain_last(pieces):
        G = pieces[0]
        for nxt in pieces[1:]:
            site_g = whites(G)[-1]
            site_n = whites(nxt)[0]
            G, _ = glue_type_I(G, site_g, nxt, site_n)
        return G

    deg6_a = chain([W, W, W, W, W, A])
    deg6_b = chain_last([W, W, W, W, W, A])
    assert deg6_a.n == 6 and deg6_b.n == 6
    assert validate_graph(deg6_a) == [] and validate_graph(deg6_b) == []
    (OUT / "degree6_isolated_chain_a.json").write_text(
        json.dumps(deg6_a.to_json(), indent=1))
    (OUT / "degree6_isolated_chain_b.json").write_text(
        json.dumps(deg6_b.to_json(), indent=1))
    print("degree6 a/b", len(deg6_a.kinds), len(deg6_b.kinds),
          "distinct:", deg6_a.canonical_key() != deg6_b.canonical_key())

    # degree 6 hyperbolic: glue six hyperbolic cubics at whites/monos
    Hc = lib["cubic_hyperbolic"]

    G = glue(Hc, whites(Hc)[0], Hc, whites(Hc)[0])
    for _ in range(4):
        G = glue(G, monos_dotted(G)[0], Hc, monos_dotted(Hc)[0])
    assert G.n == 6 and validate_graph(G) == []
    (OUT / "degree6_hyperbolic.json").write_text(json.dumps(G.to_json(), indent=1))
    print("degree6_hyperbolic V", len(G.kinds),
          "hyperbolic:", all(c == "d" for _, c in boundary_word(G).entries))


if __name__ == "__main__":
    main()
