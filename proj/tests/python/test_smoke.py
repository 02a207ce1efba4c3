"""Python smoke tests for the compiled module."""

import json
import sys

import siso


def check(cond, what):
    if not cond:
        print("FAIL:", what)
        sys.exit(1)
    print("ok:", what)


def main():
    # permutations
    p = siso.Perm("(1 2 3)", 3)
    check(p.apply(1) == 2, "cycle image")
    check((p * p * p).is_identity(), "cycle order")
    check(str(p.inverse()) == "(1 3 2)", "cycle inverse")

    # groups
    s4 = siso.Group(4, ["(1 2)", "(1 2 3 4)"])
    check(s4.order() == "24", "S4 order")
    check(s4.is_giant() == "SYM", "S4 is a giant")
    check(not s4.point_stabilizer([1]).contains("(1 2)"), "stabilizer membership")
    check(s4.setwise_stabilizer([1, 2]).order() == "4", "setwise stabilizer")

    a4 = siso.Group(4, ["(1 2 3)", "(2 3 4)"])
    check(a4.order() == "12", "A4 order")
    check(not a4.contains("(1 2)"), "odd permutation outside A4")

    # string isomorphism against the brute reference
    instance = {
        "n": 4,
        "sigma": ["a", "b"],
        "x": ["a", "a", "b", "b"],
        "y": ["a", "b", "a", "b"],
        "group": {"n": 4, "gens": ["(1 2)", "(1 2 3 4)"]},
    }
    res = siso.string_iso_dict(instance)
    check(not res["empty"], "aabb ~ abab under S4")
    check(res["aut_order"] == "4", "automorphism order")
    brute = json.loads(siso.brute_string_iso(json.dumps(instance)))
    check(brute["aut_order"] == res["aut_order"], "matches the brute filter")

    # sequence validation
    report = siso.validate_sequence_dict(instance)
    check(report["valid"], "trivial sequence is almost d-ary")

    # graphs
    c6 = (6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)])
    triangles = (6, [(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)])
    check(not siso.graph_iso_dict(c6, c6)["empty"], "C6 self-isomorphic")
    check(siso.graph_iso_dict(c6, triangles)["empty"], "C6 vs two triangles")
    check(siso.graph_aut_order(c6) == "12", "C6 automorphism order")

    # reductions keep the instance equivalent
    red = siso.reduce_dict(instance, step="both")
    check(red["n"] >= 4, "augmented domain size")
    sub = siso.string_iso_dict(red)
    check(sub["empty"] == res["empty"], "reduction preserves the answer")

    # hypergraphs
    h = {"n": 3, "edges": [[1, 2], [2, 3]]}
    out = json.loads(siso.hypergraph_iso(json.dumps(h), json.dumps(h)))
    check(not out["empty"], "hypergraph self-isomorphic")

    print("python smoke tests passed")


if __name__ == "__main__":
    main()
