"""Regenerate the scene catalogue under scenefiles/.

Every scene the demos and acceptance checks refer to is defined here
once and written out deterministically, so the JSON files can be
inspected, edited, or rebuilt after a schema change.
"""

import argparse
import os
import sys

from steinertorelli.polyalg import monomial_index
from steinertorelli.scenes import (CompleteIntersection, MonomialVariety,
                                   P1Series, PointSet, ScrollCurve,
                                   save_scene)


def diagonal_form(nvars, degree, weights):
    """sum w_i x_i^degree as a dense coefficient vector."""
    idx = monomial_index(nvars, degree)
    v = [0] * len(idx)
    for i, w in enumerate(weights):
        m = [0] * nvars
        m[i] = degree
        v[idx[tuple(m)]] = w
    return v


def catalogue():
    yield "twisted_cubic", P1Series(3, name="twisted_cubic")
    yield "fermat_quartic", CompleteIntersection(
        2, [(4, diagonal_form(3, 4, [1, 1, 1]))], name="fermat_quartic")
    yield "diagonal_quartic_123", CompleteIntersection(
        2, [(4, diagonal_form(3, 4, [1, 2, 3]))],
        name="diagonal_quartic_123")
    a = (0, 1, 2, 3, 4)
    yield "diagonal_ci", CompleteIntersection(4, [
        (2, diagonal_form(5, 2, [1] * 5)),
        (2, diagonal_form(5, 2, list(a))),
        (2, diagonal_form(5, 2, [x * x for x in a]))], name="diagonal_ci")
    yield "scroll_member_a", ScrollCurve(
        1, 1, 2, 1, (1, 0, 0, 0, 0, 0, 0, 1, 0, 1, 1, 0),
        name="scroll_member_a")
    yield "scroll_member_b", ScrollCurve(
        1, 1, 2, 1, (0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 1, 2),
        name="scroll_member_b")
    yield "conic_monomials", MonomialVariety(
        2, 2, [(2, 0), (1, 1), (0, 2)], name="conic_monomials")
    yield "six_general_points", PointSet(3, [
        (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
        (1, 1, 1, 1), (1, 2, 3, 4)], name="six_general_points")
    yield "seven_on_twisted_cubic", PointSet(3, [
        (1, 0, 0, 0), (1, 1, 1, 1), (1, 2, 4, 8), (1, 3, 9, 27),
        (1, 4, 16, 64), (1, 5, 25, 125), (0, 0, 0, 1)],
        name="seven_on_twisted_cubic")
    # random_point_set(7, 11, seed=0) certifies this draw at seed 1
    yield "seven_general_f11", PointSet(3, [
        (1, 1, 1, 10), (1, 8, 5, 9), (0, 1, 10, 7), (1, 3, 2, 4),
        (1, 0, 9, 9), (1, 7, 3, 1), (1, 6, 5, 6)],
        name="seven_general_f11")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dest", default="scenefiles")
    args = ap.parse_args(argv)
    os.makedirs(args.dest, exist_ok=True)
    for stem, scene in catalogue():
        path = os.path.join(args.dest, f"{stem}.json")
        save_scene(scene, path)
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
