#!/usr/bin/env python3
"""Independent 50-digit evaluation of the key-rate chain.

Produces the frozen reference values asserted by the C++ unit and
acceptance tests. Run from the repository root:

    python3 tests/oracle/reference_values.py > tests/oracle/reference_values.txt
"""
from mpmath import mp, mpf, sqrt, log, exp, findroot

mp.dps = 50


def G(x):
    if x == 0:
        return mpf(0)
    return (x + 1) * log(x + 1, 2) - x * log(x, 2)


def chain(v_mod, l_ac, l_bc, v_laser, eps_a=mpf("0.002"), eps_b=mpf("0.002"),
          lo_ratio=mpf(10) ** 8, beta=mpf("0.96"), loss=mpf("0.2"), mode="approx"):
    t_a = mpf(10) ** (-loss * l_ac / 10)
    t_b = mpf(10) ** (-loss * l_bc / 10)
    v = v_mod + 1
    chi_a = 1 / t_a - 1 + eps_a
    chi_b = 1 / t_b - 1 + eps_b
    g_sq = 2 * (v - 1) / (t_b * (v + 1))
    eta = g_sq * t_a / 2
    eps_c = t_b / t_a * (eps_b - 2) + eps_a + 2 / t_a
    v_prc = v_laser + (chi_a + chi_b + 2) / (lo_ratio * v_mod)
    if mode == "approx":
        eps_prc = v_mod * v_prc
    else:
        eps_prc = 2 * v_mod * (1 - exp(-v_prc / 2))
    chi_t = 1 / eta - 1 + eps_c + eps_prc
    a, b, c = v, eta * (v + chi_t), sqrt(eta * (v * v - 1))
    i_ab = log((a + 1) / (a + 1 - c * c / (b + 1)), 2)
    big_a = a * a + b * b - 2 * c * c
    big_b = a * b - c * c
    disc = sqrt(big_a * big_a - 4 * big_b * big_b)
    l1 = sqrt((big_a + disc) / 2)
    l2 = sqrt((big_a - disc) / 2)
    l3 = a - c * c / (b + 1)
    chi_be = G((l1 - 1) / 2) + G((l2 - 1) / 2) - G((l3 - 1) / 2)
    return dict(key_rate=beta * i_ab - chi_be, i_ab=i_ab, chi_be=chi_be,
                l1=l1, l2=l2, l3=l3, a=a, b=b, c=c, chi_t=chi_t, eta=eta,
                eps_c=eps_c, eps_prc=eps_prc)


def cov_quantities(a, b, c):
    i_ab = log((a + 1) / (a + 1 - c * c / (b + 1)), 2)
    big_a = a * a + b * b - 2 * c * c
    big_b = a * b - c * c
    disc = sqrt(big_a * big_a - 4 * big_b * big_b)
    l1 = sqrt((big_a + disc) / 2)
    l2 = sqrt((big_a - disc) / 2)
    l3 = a - c * c / (b + 1)
    chi_be = G((l1 - 1) / 2) + G((l2 - 1) / 2) - G((l3 - 1) / 2)
    return i_ab, l1, l2, l3, chi_be


def show(name, value):
    print(f"{name} = {mp.nstr(value, 20)}")


asym0 = chain(mpf(6), mpf(0), mpf(0), mpf("0.005"))
for k in ("key_rate", "i_ab", "chi_be", "l1", "l2", "l3", "b", "chi_t"):
    show(f"asym_d0.{k}", asym0[k])
show("asym_d0_exact.key_rate", chain(mpf(6), mpf(0), mpf(0), mpf("0.005"), mode="exact")["key_rate"])
sym0 = chain(mpf(12), mpf(0), mpf(0), mpf("0.022"))
for k in ("i_ab", "chi_be", "b", "chi_t"):
    show(f"sym_d0_vl0022.{k}", sym0[k])

# Rounded covariance triples quoted as operation examples.
for tag, (a, b, c) in {"cov_7": (mpf(7), mpf("5.5255"), mpf(6)),
                       "cov_13": (mpf(13), mpf("11.5154"), mpf(12))}.items():
    i_ab, l1, l2, l3, chi_be = cov_quantities(a, b, c)
    show(f"{tag}.i_ab", i_ab)
    show(f"{tag}.l1", l1)
    show(f"{tag}.l2", l2)
    show(f"{tag}.l3", l3)
    show(f"{tag}.chi_be", chi_be)

show("g_entropy(0.76615)", G(mpf("0.76615")))
show("eps_prc_exact(6,0.005)", 12 * (1 - exp(mpf("-0.0025"))))
t10 = mpf(10) ** mpf("-0.2")
show("t(10km)", t10)
show("eps_c_opt(t_a=10^-0.2,t_b=1)", 1 * (mpf("0.002") - 2) / t10 + mpf("0.002") + 2 / t10)

show("tolerance.asym_d0_vm6",
     findroot(lambda x: chain(mpf(6), mpf(0), mpf(0), x)["key_rate"], mpf("0.03")))
show("tolerance.sym_d0_vm12",
     findroot(lambda x: chain(mpf(12), mpf(0), mpf(0), x)["key_rate"], mpf("0.02")))
