"""Smoke test for the exactcat extension module.

Build with `cargo build --release -p exactcat-py` and copy
target/release/libexactcat_py.so to python/exactcat.so.
"""
import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import exactcat


def main():
    a2 = exactcat.RepCategory.linear(2)
    s1, s2 = a2.simple(0), a2.simple(1)
    p1 = a2.object([1, 1], [[[1]]])
    assert a2.hom_dim(s2, p1) == 1
    assert a2.ext_dim(s1, s2) == 1
    assert a2.ext_dim(s2, s1) == 0
    assert len(a2.indecomposables(1)) == 3
    assert a2.qhom_dim([p1], s2, s1) == 0

    spec = exactcat.Spec.from_json(exactcat.A3_FIXTURE, "a3_projinj")
    names = spec.object_names()
    code, text = spec.run("quotient")
    assert code == 0, text
    table = json.loads(text)["sections"][0]["facts"]["qhom"]["table"]
    i = names.index("S2")
    assert table[i][i] == 1
    assert sum(map(sum, table)) == 1

    code, text = exactcat.verify_paper()
    assert code == 0, text
    print("smoke test ok:", json.loads(text)["verdict"])


if __name__ == "__main__":
    main()
