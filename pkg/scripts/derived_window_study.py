"""DESK-2: codimension of the derived window in the unit box as the source margin grows.

With margin 0 the sources are the box itself and some box monomials are
reached only through brackets of monomials just outside it, so extra
directions look missing; margin 1 leaves only the sigma line.

    python scripts/derived_window_study.py [--margins 0 1]
"""

import argparse
import time

from twistham.algebra import HamiltonianAlgebra
from twistham.closure import Window, derived_subalgebra_window
from twistham.elements import render_key
from twistham.instances import desk2


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--margins", type=int, nargs="+", default=[0, 1])
    ap.add_argument("--radius", type=int, default=1)
    args = ap.parse_args()
    alg = HamiltonianAlgebra(desk2())
    probe = Window.cube(alg.m, args.radius, 0)
    sigma = render_key((alg.sig.sigma_total, alg.zero_index()))
    print(f"sigma line: {sigma}")
    print("margin  box_dim  dim   codim  brackets  seconds  missing")
    for margin in args.margins:
        t = time.perf_counter()
        r = derived_subalgebra_window(alg, probe, margin=margin)
        dt = time.perf_counter() - t
        missing = ", ".join(render_key(k) for k in r.missing)
        print(f"{margin:6d}  {r.box_dimension:7d}  {r.dimension:4d}  {r.codimension:5d}  {r.brackets:8d}  {dt:7.1f}  {missing}")


if __name__ == "__main__":
    main()
