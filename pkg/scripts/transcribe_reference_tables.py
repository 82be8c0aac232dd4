"""Regenerate the bundled reference tables (JSON fixtures).

The product lists below are transcribed once, by hand, from the published
classification statements; they are deliberately independent of the table
generator so that any disagreement between the two is auditable.  Each item
is a list of (left, right, coefficient, result) tuples meaning
[x_left, x_right] = coefficient * x_result.
"""

import pathlib
import sys

SRC = pathlib.Path(__file__).resolve().parents[1] / "src"
sys.path.insert(0, str(SRC))

from leibniz_lab.algebra import StructureConstants  # noqa: E402
from leibniz_lab.formats import algebra_to_doc, dumps_canonical  # noqa: E402
from leibniz_lab.scalars import ParameterConstraint, Scalar, b_constraint  # noqa: E402

FIXTURES = SRC / "leibniz_lab" / "fixtures"

# --- nilpotent, one-dimensional derived subalgebra ------------------------
# dims 4..7: every nonzero product of every item; coefficients in the scalar
# grammar; the result vector is always the last basis vector.

DIM4 = [
    [(1, 3, "1"), (3, 2, "1")],
    [(1, 3, "1"), (2, 2, "1"), (2, 3, "1"), (3, 1, "1"), (3, 2, "-1")],
    [(1, 2, "1"), (2, 1, "-1"), (3, 3, "1")],
    [(1, 2, "1"), (2, 1, "-1"), (2, 2, "1"), (3, 3, "1")],
    [(1, 2, "1"), (2, 1, "c"), (3, 3, "1")],
    [(1, 1, "1"), (2, 2, "1"), (3, 3, "1")],
]

DIM5 = [
    [(1, 4, "1"), (2, 3, "1"), (2, 4, "c"), (3, 2, "c"), (4, 1, "c"), (4, 2, "1")],
    [(1, 4, "1"), (2, 3, "1"), (2, 4, "1"), (3, 2, "1"), (4, 1, "1"), (4, 2, "-1")],
    [(1, 4, "1"), (2, 3, "1"), (2, 4, "1"), (3, 2, "-1"), (3, 3, "1"), (4, 1, "-1"),
     (4, 2, "1")],
    [(1, 3, "1"), (3, 2, "1"), (4, 4, "1")],
    [(1, 3, "1"), (2, 2, "1"), (2, 3, "1"), (3, 1, "1"), (3, 2, "-1"), (4, 4, "1")],
    [(1, 2, "1"), (2, 1, "-1"), (3, 4, "1"), (4, 3, "-1"), (4, 4, "1")],
    [(1, 2, "1"), (2, 1, "-1"), (3, 4, "1"), (4, 3, "c")],
    [(1, 2, "1"), (2, 1, "-1"), (2, 2, "1"), (3, 4, "1"), (4, 3, "-1"), (4, 4, "1")],
    [(1, 2, "1"), (2, 1, "-1"), (2, 2, "1"), (3, 4, "1"), (4, 3, "c")],
    [(1, 2, "1"), (2, 1, "c1"), (3, 4, "1"), (4, 3, "c2")],
    [(1, 2, "1"), (2, 1, "-1"), (3, 3, "1"), (4, 4, "1")],
    [(1, 2, "1"), (2, 1, "-1"), (2, 2, "1"), (3, 3, "1"), (4, 4, "1")],
    [(1, 2, "1"), (2, 1, "c"), (3, 3, "1"), (4, 4, "1")],
    [(1, 1, "1"), (2, 2, "1"), (3, 3, "1"), (4, 4, "1")],
]

DIM6 = [
    [(1, 4, "1"), (2, 5, "1"), (4, 2, "1"), (5, 3, "1")],
    [(1, 5, "1"), (2, 4, "1"), (2, 5, "1"), (3, 3, "1"), (3, 4, "1"), (4, 2, "1"),
     (4, 3, "-1"), (5, 1, "1"), (5, 2, "-1")],
    [(1, 4, "1"), (2, 3, "1"), (2, 4, "c"), (3, 2, "c"), (4, 1, "c"), (4, 2, "1"),
     (5, 5, "1")],
    [(1, 4, "1"), (2, 3, "1"), (2, 4, "1"), (3, 2, "1"), (4, 1, "1"), (4, 2, "-1"),
     (5, 5, "1")],
    [(1, 4, "1"), (2, 3, "1"), (2, 4, "1"), (3, 2, "-1"), (3, 3, "1"), (4, 1, "-1"),
     (4, 2, "1"), (5, 5, "1")],
    [(1, 3, "1"), (3, 2, "1"), (4, 5, "1"), (5, 4, "-1")],
    [(1, 3, "1"), (3, 2, "1"), (4, 5, "1"), (5, 4, "-1"), (5, 5, "1")],
    [(1, 3, "1"), (3, 2, "1"), (4, 5, "1"), (5, 4, "c")],
    [(1, 3, "1"), (2, 2, "1"), (2, 3, "1"), (3, 1, "1"), (3, 2, "-1"), (4, 5, "1"),
     (5, 4, "-1")],
    [(1, 3, "1"), (2, 2, "1"), (2, 3, "1"), (3, 1, "1"), (3, 2, "-1"), (4, 5, "1"),
     (5, 4, "-1"), (5, 5, "1")],
    [(1, 3, "1"), (2, 2, "1"), (2, 3, "1"), (3, 1, "1"), (3, 2, "-1"), (4, 5, "1"),
     (5, 4, "c")],
    [(1, 3, "1"), (3, 2, "1"), (4, 4, "1"), (5, 5, "1")],
    [(1, 3, "1"), (2, 2, "1"), (2, 3, "1"), (3, 1, "1"), (3, 2, "-1"), (4, 4, "1"),
     (5, 5, "1")],
    [(1, 2, "1"), (2, 1, "-1"), (3, 4, "1"), (4, 3, "-1"), (5, 5, "1")],
    [(1, 2, "1"), (2, 1, "-1"), (3, 4, "1"), (4, 3, "-1"), (4, 4, "1"), (5, 5, "1")],
    [(1, 2, "1"), (2, 1, "-1"), (3, 4, "1"), (4, 3, "c"), (5, 5, "1")],
    [(1, 2, "1"), (2, 1, "-1"), (2, 2, "1"), (3, 4, "1"), (4, 3, "-1"), (4, 4, "1"),
     (5, 5, "1")],
    [(1, 2, "1"), (2, 1, "-1"), (2, 2, "1"), (3, 4, "1"), (4, 3, "c"), (5, 5, "1")],
    [(1, 2, "1"), (2, 1, "c1"), (3, 4, "1"), (4, 3, "c2"), (5, 5, "1")],
    [(1, 2, "1"), (2, 1, "-1"), (3, 3, "1"), (4, 4, "1"), (5, 5, "1")],
    [(1, 2, "1"), (2, 1, "-1"), (2, 2, "1"), (3, 3, "1"), (4, 4, "1"), (5, 5, "1")],
    [(1, 2, "1"), (2, 1, "c"), (3, 3, "1"), (4, 4, "1"), (5, 5, "1")],
    [(1, 1, "1"), (2, 2, "1"), (3, 3, "1"), (4, 4, "1"), (5, 5, "1")],
]

DIM7 = [
    [(1, 6, "1"), (2, 5, "1"), (2, 6, "c"), (3, 4, "1"), (3, 5, "c"), (4, 3, "c"),
     (5, 2, "c"), (5, 3, "1"), (6, 1, "c"), (6, 2, "1")],
    [(1, 6, "1"), (2, 5, "1"), (2, 6, "1"), (3, 4, "1"), (3, 5, "1"), (4, 3, "-1"),
     (4, 4, "1"), (5, 2, "-1"), (5, 3, "1"), (6, 1, "-1"), (6, 2, "1")],
    [(1, 6, "1"), (2, 5, "1"), (2, 6, "1"), (3, 4, "1"), (3, 5, "1"), (4, 3, "-1"),
     (5, 2, "-1"), (5, 3, "1"), (6, 1, "-1"), (6, 2, "1")],
    [(1, 4, "1"), (2, 5, "1"), (4, 2, "1"), (5, 3, "1"), (6, 6, "1")],
    [(1, 5, "1"), (2, 4, "1"), (2, 5, "1"), (3, 3, "1"), (3, 4, "1"), (4, 2, "1"),
     (4, 3, "-1"), (5, 1, "1"), (5, 2, "-1"), (6, 6, "1")],
    [(1, 4, "1"), (2, 3, "1"), (2, 4, "c"), (3, 2, "c"), (4, 1, "c"), (4, 2, "1"),
     (5, 6, "1"), (6, 5, "-1")],
    [(1, 4, "1"), (2, 3, "1"), (2, 4, "c"), (3, 2, "c"), (4, 1, "c"), (4, 2, "1"),
     (5, 6, "1"), (6, 5, "-1"), (6, 6, "1")],
    [(1, 4, "1"), (2, 3, "1"), (2, 4, "c1"), (3, 2, "c1"), (4, 1, "c1"), (4, 2, "1"),
     (5, 6, "1"), (6, 5, "c2")],
    [(1, 4, "1"), (2, 3, "1"), (2, 4, "1"), (3, 2, "1"), (4, 1, "1"), (4, 2, "-1"),
     (5, 6, "1"), (6, 5, "-1")],
    [(1, 4, "1"), (2, 3, "1"), (2, 4, "1"), (3, 2, "1"), (4, 1, "1"), (4, 2, "-1"),
     (5, 6, "1"), (6, 5, "-1"), (6, 6, "1")],
    [(1, 4, "1"), (2, 3, "1"), (2, 4, "1"), (3, 2, "1"), (4, 1, "1"), (4, 2, "-1"),
     (5, 6, "1"), (6, 5, "c")],
    [(1, 4, "1"), (2, 3, "1"), (2, 4, "1"), (3, 2, "-1"), (3, 3, "1"), (4, 1, "-1"),
     (4, 2, "1"), (5, 6, "1"), (6, 5, "-1")],
    [(1, 4, "1"), (2, 3, "1"), (2, 4, "1"), (3, 2, "-1"), (3, 3, "1"), (4, 1, "-1"),
     (4, 2, "1"), (5, 6, "1"), (6, 5, "-1"), (6, 6, "1")],
    [(1, 4, "1"), (2, 3, "1"), (2, 4, "1"), (3, 2, "-1"), (3, 3, "1"), (4, 1, "-1"),
     (4, 2, "1"), (5, 6, "1"), (6, 5, "c")],
    [(1, 4, "1"), (2, 3, "1"), (2, 4, "c"), (3, 2, "c"), (4, 1, "c"), (4, 2, "1"),
     (5, 5, "1"), (6, 6, "1")],
    [(1, 4, "1"), (2, 3, "1"), (2, 4, "1"), (3, 2, "1"), (4, 1, "1"), (4, 2, "-1"),
     (5, 5, "1"), (6, 6, "1")],
    [(1, 4, "1"), (2, 3, "1"), (2, 4, "1"), (3, 2, "-1"), (3, 3, "1"), (4, 1, "-1"),
     (4, 2, "1"), (5, 5, "1"), (6, 6, "1")],
    [(1, 3, "1"), (3, 2, "1"), (4, 6, "1"), (6, 5, "1")],
    [(1, 3, "1"), (3, 2, "1"), (4, 6, "1"), (5, 5, "1"), (5, 6, "1"), (6, 4, "1"),
     (6, 5, "-1")],
    [(1, 3, "1"), (2, 2, "1"), (2, 3, "1"), (3, 1, "1"), (3, 2, "-1"), (4, 6, "1"),
     (5, 5, "1"), (5, 6, "1"), (6, 4, "1"), (6, 5, "-1")],
    [(1, 3, "1"), (3, 2, "1"), (4, 5, "1"), (5, 4, "-1"), (6, 6, "1")],
    [(1, 3, "1"), (3, 2, "1"), (4, 5, "1"), (5, 4, "-1"), (5, 5, "1"), (6, 6, "1")],
    [(1, 3, "1"), (3, 2, "1"), (4, 5, "1"), (5, 4, "c"), (6, 6, "1")],
    [(1, 3, "1"), (2, 2, "1"), (2, 3, "1"), (3, 1, "1"), (3, 2, "-1"), (4, 5, "1"),
     (5, 4, "-1"), (6, 6, "1")],
    [(1, 3, "1"), (2, 2, "1"), (2, 3, "1"), (3, 1, "1"), (3, 2, "-1"), (4, 5, "1"),
     (5, 4, "-1"), (5, 5, "1"), (6, 6, "1")],
    [(1, 3, "1"), (2, 2, "1"), (2, 3, "1"), (3, 1, "1"), (3, 2, "-1"), (4, 5, "1"),
     (5, 4, "c"), (6, 6, "1")],
    [(1, 3, "1"), (3, 2, "1"), (4, 4, "1"), (5, 5, "1"), (6, 6, "1")],
    [(1, 3, "1"), (2, 2, "1"), (2, 3, "1"), (3, 1, "1"), (3, 2, "-1"), (4, 4, "1"),
     (5, 5, "1"), (6, 6, "1")],
    [(1, 2, "1"), (2, 1, "-1"), (3, 4, "1"), (4, 3, "-1"), (5, 6, "1"), (6, 5, "-1"),
     (6, 6, "1")],
    [(1, 2, "1"), (2, 1, "-1"), (3, 4, "1"), (4, 3, "-1"), (5, 6, "1"), (6, 5, "c")],
    [(1, 2, "1"), (2, 1, "-1"), (3, 4, "1"), (4, 3, "-1"), (4, 4, "1"), (5, 6, "1"),
     (6, 5, "-1"), (6, 6, "1")],
    [(1, 2, "1"), (2, 1, "-1"), (3, 4, "1"), (4, 3, "-1"), (4, 4, "1"), (5, 6, "1"),
     (6, 5, "c")],
    [(1, 2, "1"), (2, 1, "-1"), (3, 4, "1"), (4, 3, "c1"), (5, 6, "1"), (6, 5, "c2")],
    [(1, 2, "1"), (2, 1, "-1"), (2, 2, "1"), (3, 4, "1"), (4, 3, "-1"), (4, 4, "1"),
     (5, 6, "1"), (6, 5, "-1"), (6, 6, "1")],
    [(1, 2, "1"), (2, 1, "-1"), (2, 2, "1"), (3, 4, "1"), (4, 3, "-1"), (4, 4, "1"),
     (5, 6, "1"), (6, 5, "c")],
    [(1, 2, "1"), (2, 1, "-1"), (2, 2, "1"), (3, 4, "1"), (4, 3, "c1"), (5, 6, "1"),
     (6, 5, "c2")],
    [(1, 2, "1"), (2, 1, "c1"), (3, 4, "1"), (4, 3, "c2"), (5, 6, "1"), (6, 5, "c3")],
    [(1, 2, "1"), (2, 1, "-1"), (3, 4, "1"), (4, 3, "-1"), (5, 5, "1"), (6, 6, "1")],
    [(1, 2, "1"), (2, 1, "-1"), (3, 4, "1"), (4, 3, "-1"), (4, 4, "1"), (5, 5, "1"),
     (6, 6, "1")],
    [(1, 2, "1"), (2, 1, "-1"), (3, 4, "1"), (4, 3, "c"), (5, 5, "1"), (6, 6, "1")],
    [(1, 2, "1"), (2, 1, "-1"), (2, 2, "1"), (3, 4, "1"), (4, 3, "-1"), (4, 4, "1"),
     (5, 5, "1"), (6, 6, "1")],
    [(1, 2, "1"), (2, 1, "-1"), (2, 2, "1"), (3, 4, "1"), (4, 3, "c"), (5, 5, "1"),
     (6, 6, "1")],
    [(1, 2, "1"), (2, 1, "c1"), (3, 4, "1"), (4, 3, "c2"), (5, 5, "1"), (6, 6, "1")],
    [(1, 2, "1"), (2, 1, "-1"), (3, 3, "1"), (4, 4, "1"), (5, 5, "1"), (6, 6, "1")],
    [(1, 2, "1"), (2, 1, "-1"), (2, 2, "1"), (3, 3, "1"), (4, 4, "1"), (5, 5, "1"),
     (6, 6, "1")],
    [(1, 2, "1"), (2, 1, "c"), (3, 3, "1"), (4, 4, "1"), (5, 5, "1"), (6, 6, "1")],
    [(1, 1, "1"), (2, 2, "1"), (3, 3, "1"), (4, 4, "1"), (5, 5, "1"), (6, 6, "1")],
]

# dim 8: the reference table lists block multisets only (74 rows)
DIM8_BLOCKS = [
    ["A7"], ["C7"],
    ["B6", "C1"], ["E6", "C1"], ["F6", "C1"],
    ["A5", "F2"], ["A5", "E2"], ["A5", "B2"],
    ["C5", "F2"], ["C5", "E2"], ["C5", "B2"],
    ["A5", "C1", "C1"], ["C5", "C1", "C1"],
    ["B4", "A3"], ["B4", "C3"], ["D4", "A3"], ["D4", "C3"], ["E4", "A3"],
    ["E4", "C3"],
    ["B4", "F2", "C1"], ["B4", "E2", "C1"], ["B4", "B2", "C1"],
    ["D4", "F2", "C1"], ["D4", "E2", "C1"], ["D4", "B2", "C1"],
    ["E4", "F2", "C1"], ["E4", "E2", "C1"], ["E4", "B2", "C1"],
    ["B4", "C1", "C1", "C1"], ["D4", "C1", "C1", "C1"], ["E4", "C1", "C1", "C1"],
    ["A3", "A3", "C1"], ["A3", "C3", "C1"], ["C3", "C3", "C1"],
    ["A3", "F2", "F2"], ["A3", "F2", "E2"], ["A3", "F2", "B2"],
    ["A3", "E2", "E2"], ["A3", "E2", "B2"], ["A3", "B2", "B2"],
    ["C3", "F2", "F2"], ["C3", "F2", "E2"], ["C3", "F2", "B2"],
    ["C3", "E2", "E2"], ["C3", "E2", "B2"], ["C3", "B2", "B2"],
    ["A3", "F2", "C1", "C1"], ["A3", "E2", "C1", "C1"], ["A3", "B2", "C1", "C1"],
    ["C3", "F2", "C1", "C1"], ["C3", "E2", "C1", "C1"], ["C3", "B2", "C1", "C1"],
    ["A3", "C1", "C1", "C1", "C1"], ["C3", "C1", "C1", "C1", "C1"],
    ["F2", "F2", "F2", "C1"], ["F2", "F2", "E2", "C1"], ["F2", "F2", "B2", "C1"],
    ["F2", "E2", "E2", "C1"], ["F2", "E2", "B2", "C1"], ["F2", "B2", "B2", "C1"],
    ["E2", "E2", "E2", "C1"], ["E2", "E2", "B2", "C1"], ["E2", "B2", "B2", "C1"],
    ["B2", "B2", "B2", "C1"],
    ["F2", "F2", "C1", "C1", "C1"], ["F2", "E2", "C1", "C1", "C1"],
    ["F2", "B2", "C1", "C1", "C1"], ["E2", "E2", "C1", "C1", "C1"],
    ["E2", "B2", "C1", "C1", "C1"], ["B2", "B2", "C1", "C1", "C1"],
    ["F2", "C1", "C1", "C1", "C1", "C1"], ["E2", "C1", "C1", "C1", "C1", "C1"],
    ["B2", "C1", "C1", "C1", "C1", "C1"],
    ["C1", "C1", "C1", "C1", "C1", "C1", "C1"],
]

# 2-dim solvable cyclic algebra
DIM2_SOLVABLE = [(1, 1, "1", 2), (1, 2, "1", 2)]

# 3-dim solvable families with two-dimensional derived subalgebra,
# basis (x, y, z) = (x1, x2, x3)
DIM3_SOLVABLE = [
    ("family1", [(1, 1, "1", 3), (1, 3, "1", 2), (1, 2, "1", 2)], []),
    ("family2", [(1, 3, "alpha", 3), (1, 2, "1", 2)], ["alpha"]),
    ("family3", [(1, 3, "1", 2), (1, 2, "-1/4", 3), (1, 2, "1", 2)], []),
    ("family4", [(1, 1, "1", 3), (1, 2, "1", 2), (2, 1, "-1", 2)], []),
    ("family5", [(1, 3, "alpha", 3), (1, 2, "1", 2), (2, 1, "-1", 2)], ["alpha"]),
    ("family6", [(1, 1, "1", 3), (1, 2, "1", 2), (2, 1, "-1", 2), (1, 3, "2", 3),
                 (2, 2, "1", 3)], []),
]


def build_nilpotent(dim, items):
    docs = []
    for k, prods in enumerate(items, start=1):
        params = sorted({c for _, _, c in prods if c.lstrip("-").startswith("c")})
        constraints = [b_constraint(p) for p in params]
        product_map = {}
        for i, j, coeff in prods:
            product_map.setdefault((i, j), []).append((dim, Scalar.parse(coeff)))
        A = StructureConstants.from_products(
            dim,
            product_map,
            constraints=constraints,
            label=f"reference-dim{dim}-item{k}",
        )
        docs.append(algebra_to_doc(A))
    return docs


def build_solvable_dim3():
    docs = []
    for name, prods, params in DIM3_SOLVABLE:
        constraints = [ParameterConstraint.of(p, 0) for p in params]
        product_map = {}
        for i, j, coeff, k in prods:
            product_map.setdefault((i, j), []).append((k, Scalar.parse(coeff)))
        A = StructureConstants.from_products(
            3,
            product_map,
            constraints=constraints,
            label=f"reference-dim3-{name}",
            basis=("x", "y", "z"),
        )
        docs.append(algebra_to_doc(A))
    return docs


def build_solvable_dim2():
    product_map = {}
    for i, j, coeff, k in DIM2_SOLVABLE:
        product_map.setdefault((i, j), []).append((k, Scalar.parse(coeff)))
    A = StructureConstants.from_products(
        2, product_map, label="reference-dim2-cyclic"
    )
    return [algebra_to_doc(A)]


def main():
    FIXTURES.mkdir(exist_ok=True)
    tables = {
        "nilpotent_dim4.json": build_nilpotent(4, DIM4),
        "nilpotent_dim5.json": build_nilpotent(5, DIM5),
        "nilpotent_dim6.json": build_nilpotent(6, DIM6),
        "nilpotent_dim7.json": build_nilpotent(7, DIM7),
        "dim8_blocks.json": DIM8_BLOCKS,
        "solvable_dim2.json": build_solvable_dim2(),
        "solvable_dim3.json": build_solvable_dim3(),
    }
    for name, payload in tables.items():
        path = FIXTURES / name
        path.write_text(dumps_canonical(payload))
        print(f"wrote {path} ({len(payload)} entries)")


if __name__ == "__main__":
    main()
