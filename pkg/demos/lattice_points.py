"""
Vanishing coefficients and lattice points in a tetrahedron.

For each flat-connection label the coefficient C measures whether that
connection shows up in the dominant term.  Labels strictly inside the
tetrahedron sum l_j/p_j < 1 always give C = 0, and in every example the
number of vanishing labels equals the number of such lattice points.

The second half looks at the Ehrhart polynomial of the tetrahedron and
its link to the Casson invariant.

Run:  python3 demos/lattice_points.py
"""

import math

from wrtseifert.lattice import (
    c_coefficient,
    casson_ehrhart_rhs,
    conjecture_report,
    ehrhart_polynomial,
    interior_count,
    mordell_count,
    reciprocity_residuals,
)
from wrtseifert.seifert import casson_invariant, make_manifold


def main():
    for p in [(2, 3, 5), (2, 3, 7), (2, 3, 5, 7, 11), (3, 4, 5, 7, 11), (3, 7, 8, 11, 13, 17)]:
        r = conjecture_report(make_manifold(p))
        print(f"{str(p):22s} D={r.D:5d}  nonvanishing={r.gamma:5d}  D-gamma={r.D - r.gamma:3d}  lattice={r.L:3d}")
        if p == (3, 7, 8, 11, 13, 17):
            for l in r.vanishing_labels:
                print("    C = 0 at", l)

    print("\nlattice count by Dedekind sums against brute force")
    for p in [(2, 3, 7), (5, 7, 11), (3, 5, 7, 11), (7, 9, 11, 13)]:
        print(f"  {str(p):16s} mordell={mordell_count(p)}  brute={interior_count(p)}")

    print("\nEhrhart polynomials")
    for p in [(2, 3, 5), (2, 3, 7), (2, 3, 5, 7)]:
        e = ehrhart_polynomial(p)
        res = [str(r) for r in reciprocity_residuals(e)]
        print(f"  {str(p):14s} E(t) = {e.closure_poly}  reciprocity residuals {res}")
        m = make_manifold(p)
        lhs = casson_invariant(m) - c_coefficient(p) * math.factorial(m.M - 2) / 2
        print(f"  {'':14s} Casson - (M-2)!/2 c = {lhs}, closed form {casson_ehrhart_rhs(m)}")


if __name__ == "__main__":
    main()
