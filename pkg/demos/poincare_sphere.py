"""
Walk through the Poincare homology sphere Sigma(2,3,5).

Starts from the flat connections (two orbits of labels), computes the
exact invariant at a few levels, and compares it with the dominant term
and with the full expansion including the trivial-connection tail.
Finishes with the Ohtsuki coefficients, which come out of the same tail.

Run:  python3 demos/poincare_sphere.py
"""

import mpmath

from wrtseifert.asymptotics import evaluate_expansion, full_expansion, ohtsuki_series, t_series, torsion_magnitude, z_dominant
from wrtseifert.modular import c_value
from wrtseifert.seifert import casson_invariant, chern_simons, make_manifold, orbit_representatives
from wrtseifert.wrt import witten_z


def main():
    m = make_manifold((2, 3, 5))
    print(f"{m}: P={m.P}, D={m.D}, phi={m.phi}, Casson={casson_invariant(m)}")

    print("\nflat connections (orbit representatives)")
    for l in orbit_representatives(m):
        tm = mpmath.nstr(torsion_magnitude(m, l), 10)
        print(f"  {l}  CS={chern_simons(m, l)}  C={c_value(m, l)}  |torsion| C={tm}")

    print("\nexact vs dominant term vs dominant + tail (8 terms)")
    for N in (10, 50, 100, 200):
        z = witten_z(m, N)
        z0 = z_dominant(m, N)
        full = evaluate_expansion(m, full_expansion(m, N, 8))
        with mpmath.workprec(128):
            e0 = mpmath.nstr(abs(z.mpc - z0.mpc), 3)
            e1 = mpmath.nstr(abs(z.mpc - full.mpc), 3)
        print(f"  N={N:4d}  Z={z.to_string(10)}  |Z-Z0|={e0}  |Z-expansion|={e1}")

    # the tail is asymptotic: at N=100 adding terms helps up to about five
    print("\nerror against tail length at N=100")
    z = witten_z(m, 100)
    for K in range(9):
        v = evaluate_expansion(m, full_expansion(m, 100, K))
        with mpmath.workprec(128):
            print(f"  K={K}  {mpmath.nstr(abs(z.mpc - v.mpc), 4)}")

    print("\nT(k) for k=0..4:", [str(t) for t in t_series(m, 4, "both").coefficients])
    print("Ohtsuki lambda_0..3:", [str(x) for x in ohtsuki_series(m, 3).lambdas])


if __name__ == "__main__":
    main()
