"""The η module: multiplication by η, its scale |η| and the powers of its coset."""

from __future__ import annotations

from csmkit import catalogs as cat
from csmkit import polys
from csmkit.maps import is_coincidence
from csmkit.scaling import coset_of, degree_check, multiplier_ring, unit_coset


def main() -> None:
    m = cat.eta_module()
    print(m)
    print("constant checks:", cat.validate_eta_constants())
    f = cat.multiplication_map(m, [0, 1, 0])
    print("A =", f.matrix, " s =", f.s)
    print("is coincidence:", is_coincidence(f) is not None)
    rep = degree_check(f.scale, m.rank)
    print(f"|eta|: min poly {polys.to_str(rep.min_poly)}, degree {rep.degree} <= {rep.bound}")
    print("multiplier ring rank:", multiplier_ring(m).rank)
    c, unit = coset_of(f), unit_coset(m)
    print("coset powers trivial for n=1..12:", [c**n == unit for n in range(1, 13)])


if __name__ == "__main__":
    main()
