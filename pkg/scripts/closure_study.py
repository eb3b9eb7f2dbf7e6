"""Ideal and submodule closure runs with timing, one line per generator.

    python scripts/closure_study.py desk1 --count 5
    python scripts/closure_study.py desk2 --count 2 --margins 0 1
    python scripts/closure_study.py irreducible --count 5

For DESK-2 the ambient margin matters: with the ambient equal to the probe,
brackets that would pass through monomials just outside the box are lost
and the two neighbours sigma +- e6 look missing too.
"""

import argparse
import random
import time

from twistham.algebra import HamiltonianAlgebra, QuotientElement
from twistham.closure import Window, ideal_closure, submodule_closure, widen_shifted
from twistham.elements import render, render_key
from twistham.instances import desk1, desk1_module_irreducible, desk2
from twistham.module import ActionContext, ModuleVector
from twistham.sampling import random_from_keys


def run(kind, count, margins, seed):
    sig = desk2() if kind == "desk2" else desk1()
    alg = HamiltonianAlgebra(sig)
    probe = Window.cube(alg.m, 1, 0 if kind == "desk2" else 1)
    rng = random.Random(seed)
    sigma_key = (sig.sigma_total, alg.zero_index())
    keys = [k for k in probe.basis(alg._nat) if k != alg.center_key]
    exclude = [sigma_key] if kind == "desk2" else []
    ctx = ActionContext(sig, desk1_module_irreducible(), alg=alg) if kind == "irreducible" else None
    print("gen  margin  coverage   one    stab  iters  dim    seconds  missing")
    for k in range(count):
        g = random_from_keys(rng, probe.basis(alg._nat) if ctx else keys, exclude=exclude)
        for margin in margins:
            ambient = widen_shifted(alg, probe, margin)
            t = time.perf_counter()
            if ctx is None:
                r = ideal_closure(alg, QuotientElement(g), probe, ambient=ambient)
            else:
                r = submodule_closure(ctx, ModuleVector(g), probe, ambient=ambient)
            dt = time.perf_counter() - t
            miss = ", ".join(render_key(x) for x in r.missing[:4]) + (" ..." if len(r.missing) > 4 else "")
            print(f"{k:3d}  {margin:6d}  {str(r.window_coverage):9s}  {str(r.contains_one):5s}  "
                  f"{str(r.stabilized):5s} {r.iterations:5d}  {r.dimension:5d}  {dt:7.1f}  {miss}")
        print(f"     generator {render(g)}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("kind", choices=("desk1", "desk2", "irreducible"))
    ap.add_argument("--count", type=int, default=3)
    ap.add_argument("--margins", type=int, nargs="+", default=[0])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    run(args.kind, args.count, args.margins, args.seed)


if __name__ == "__main__":
    main()
