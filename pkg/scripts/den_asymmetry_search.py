"""Search random coincidence maps on sublattices P Z^d for den(R) != den(R^-1).

On Z^d itself T^-1 = T^T, so both denominators agree; the search conjugates
by random integer bases. Every hit is re-checked against the divisibility
relations.
"""

from __future__ import annotations

import argparse

from csmkit import matrices as mx
from csmkit.engine import divisibility_report
from csmkit.maps import den_coincidence, inverse
from csmkit.verify import random_maps


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--count", type=int, default=600)
    ap.add_argument("--show", type=int, default=3)
    args = ap.parse_args()
    hits = []
    for label, t in random_maps(args.seed, args.count):
        a, b = den_coincidence(t), den_coincidence(inverse(t))
        if a != b:
            hits.append((max(a, b), label, t, a, b))
    hits.sort(key=lambda h: h[0])
    print(f"{len(hits)} of {args.count} maps have den(R) != den(R^-1)")
    for _, label, t, a, b in hits[: args.show]:
        rep = divisibility_report(t, label)
        print(f"{label}: den={a} den_inv={b} sigma={rep.sigma} all checks pass={rep.passed}")
        print(f"  Gram: {mx.to_str(t.module.rational_gram())}")
        print(f"  T: {mx.to_str(t.matrix)}")


if __name__ == "__main__":
    main()
