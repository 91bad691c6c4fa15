#!/usr/bin/env python3
"""Export census triangulations to the JSON gluing-table format.

Development helper only: requires SnapPy and Regina, neither of which the C++
library depends on. Writes fixtures to data/fixtures and census bases for the
retriangulation suite to data/census, and prints the Regina-side oracle facts
(strict angle structure existence, isomorphism signatures) that the tests freeze.

    python3 tools/fixtures/export_census.py
"""

import json
import os
import sys

import regina
import snappy

ROOT = os.path.normpath(os.path.join(os.path.dirname(__file__), "..", ".."))
FIXTURES = os.path.join(ROOT, "data", "fixtures")
CENSUS = os.path.join(ROOT, "data", "census")

CENSUS_NAMES = [
    "m003", "m004", "m006", "m007", "m009", "m010", "m011", "m015", "m016", "m017",
    "m019", "m022", "m023", "m026", "m029", "m030", "m032", "m033", "m034", "m035",
]


def from_snappy(manifold):
    return regina.Triangulation3.fromSnapPea(manifold._to_string())


def gluing_table(tri):
    rows = []
    for tet in tri.tetrahedra():
        row = []
        for face in range(4):
            adj = tet.adjacentSimplex(face)
            if adj is None:
                row.append(None)
                continue
            perm = tet.adjacentGluing(face)
            row.append([adj.index(), [perm[i] for i in range(4)]])
        rows.append(row)
    return rows


def write(path, name, rows):
    with open(path, "w") as out:
        json.dump({"name": name, "tets": rows}, out, separators=(",", ":"))
        out.write("\n")


def facts(name, tri):
    print(f"{name:10s} n={tri.size():2d} strict_angle_structure={tri.hasStrictAngleStructure()} "
          f"isosig={tri.isoSig()}")


def main():
    os.makedirs(FIXTURES, exist_ok=True)
    os.makedirs(CENSUS, exist_ok=True)

    fig8 = from_snappy(snappy.Manifold("m004"))
    write(os.path.join(FIXTURES, "fig8.json"), "fig8", gluing_table(fig8))
    facts("fig8", fig8)

    sister = from_snappy(snappy.Manifold("m003"))
    write(os.path.join(FIXTURES, "m003.json"), "m003", gluing_table(sister))
    facts("m003", sister)

    trefoil = snappy.Manifold("3_1")
    trefoil.simplify()
    tref = from_snappy(trefoil)
    write(os.path.join(FIXTURES, "tref.json"), "tref", gluing_table(tref))
    facts("tref", tref)

    # A 0-2 move on the figure-eight triangulation creates a degree-2 edge.
    deg2 = regina.Triangulation3(fig8)
    edge = deg2.edge(0)
    if not deg2.move02(edge.embedding(0), 3, edge.embedding(1), 2):
        sys.exit("0-2 move was refused")
    write(os.path.join(FIXTURES, "deg2.json"), "deg2", gluing_table(deg2))
    facts("deg2", deg2)
    print("  deg2 edge degrees:", sorted(e.degree() for e in deg2.edges()))

    for name in CENSUS_NAMES:
        manifold = snappy.Manifold(name)
        if manifold.num_cusps() != 1 or not manifold.is_orientable():
            continue
        tri = from_snappy(manifold)
        write(os.path.join(CENSUS, f"{name}.json"), name, gluing_table(tri))
        print(f"{name:10s} n={tri.size():2d} volume={float(manifold.volume()):.12f} "
              f"solution={manifold.solution_type()}")


if __name__ == "__main__":
    main()
