"""Smoke test for the tangle_kh extension.

Build and install it first:

    cd crates/python && maturin build --release -o dist && pip install dist/*.whl
"""

import tangle_kh as tk


def main():
    trefoil = tk.fixture("3_1")
    assert tk.poincare(trefoil) == "x^-3y^-9 + x^-2y^-5 + y^-3 + y^-1"
    assert tk.euler_check(trefoil)

    assert tk.poincare(tk.Tangle("O")) == "y^-1 + y"

    clasp = tk.Tangle("B a b c d\nX+ a b c d\n")
    assert tk.betti(clasp) == {(0, -1): 1, (1, 0): 1}
    assert tk.betti(clasp.mirror()) == {(-1, -4): 1, (0, -3): 1}

    path = tk.fixture("4arcs")
    steps, p = tk.reduce(path)
    assert p == tk.simple_poincare(4, 3, 0) == "y^-1 + 3x + 3x^2y + x^3y^2"
    assert len(steps) == 4

    rows = tk.verify_tables()
    failed = [r for r in rows if r["status"] == "FAIL"]
    assert not failed, failed
    flagged = sum(r["status"] == "DISCREPANCY" for r in rows)
    print(f"{len(rows)} table rows checked, {flagged} differ from the printed table as expected")
    print("smoke test passed")


if __name__ == "__main__":
    main()
