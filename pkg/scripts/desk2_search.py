"""Search small integer character tables for an all-POINT instance (n = 2, phi = e1^e2).

All four characters must be nonzero (every J_p is {0}), and each needs a
witness in Rad_phi killed by the other three.  Only the restrictions to
Rad_phi matter for that, so characters are drawn supported on the radical
coordinates.  For m = 5 the radical is 3-dimensional and the four
restrictions would have to be linearly independent: the search comes back
empty.  For m = 6 it finds instances, including the frozen DESK-2.

    python scripts/desk2_search.py [--limit 5]
"""

import argparse
import itertools

from twistham.instances import desk2
from twistham.lattice import AlgebraSignature, Character, SemigroupMask, SkewForm, validate_signature


def candidates(m, values=(0, 1)):
    rad = range(2, m)  # e3 .. e_m span Rad_phi for phi = e1^e2
    rows = []
    for w in itertools.product(values, repeat=len(rad)):
        if any(w):
            rows.append((0, 0) + w)
    eps = tuple(1 if k == 2 else 0 for k in range(m))
    sigmas = [s for s in itertools.product((-1, 0, 1), repeat=m - 2) if any(s)]
    for chars in itertools.product(rows, repeat=4):
        if chars[0][2] != 1 or any(c[2] for c in chars[1:]):
            continue  # phi_1(eps) = 1, the others vanish on eps = e3
        for s in sigmas:
            yield chars, (0, 0) + s, eps


def search(m, limit):
    found = []
    tried = 0
    for chars, sigma, eps in candidates(m):
        tried += 1
        try:
            sig = AlgebraSignature(2, m, SkewForm.standard_pair(m), tuple(Character(c) for c in chars),
                                   SemigroupMask.of("PPPP"), (sigma,), eps)
        except ValueError:
            continue
        if validate_signature(sig).passed:
            found.append(sig)
            if len(found) >= limit:
                break
    return tried, found


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--limit", type=int, default=5)
    args = ap.parse_args()
    for m in (5, 6):
        tried, found = search(m, args.limit)
        print(f"m = {m}: {tried} candidates tried, {len(found)} valid (stopping at {args.limit})")
        for sig in found:
            print("   chars", [c.weights for c in sig.chars], "sigma", sig.sigmas[0])
    rep = validate_signature(desk2())
    print("frozen DESK-2 validates:", rep.passed)


if __name__ == "__main__":
    main()
