"""Independent recomputation of the golden values frozen in the test suite.

Every expected number asserted in tests/test_*.py against a hand-derived
case is produced here by straight transcription of the governing formulas
into mpmath at 50 significant digits, with no imports from the package
under test. Run this script to regenerate the table:

    python tests/oracles/derived_values.py

Constants used (must match econofilm.core.Constants):
    R   = 1.987 cal/(mol K)
    k_B = 1.3807e-16 erg/K
    impingement coefficient = 3.513e22
    Langmuir coefficient    = 0.0583
"""

import mpmath as mp

mp.mp.dps = 50

R_CAL = mp.mpf("1.987")
K_B = mp.mpf("1.3807e-16")
IMPINGEMENT = mp.mpf("3.513e22")
LANGMUIR = mp.mpf("0.0583")


def show(name, value):
    print(f"{name:42s} = {mp.nstr(mp.mpf(value), 17)}")


# residence time: tau * exp(E_d / (R * T))
show("residence_time(1e-14, 10000, 300)",
     mp.mpf("1e-14") * mp.exp(mp.mpf(10000) / (R_CAL * 300)))

# kinetic impingement: n * v / 4
show("impingement_rate_kinetic(2.5e14, 4.74e4)",
     mp.mpf("2.5e14") * mp.mpf("4.74e4") / 4)

# mean molecular speed: 2 * sqrt(2 k_B T / (pi m)), N2 at 300 K
show("mean_speed(300, 4.65e-23)",
     2 * mp.sqrt(2 * K_B * 300 / (mp.pi * mp.mpf("4.65e-23"))))

# pressure impingement: 3.513e22 * alpha * p / sqrt(M T)
show("impingement_rate_pressure(1, 1e-6, 28, 300)",
     IMPINGEMENT * 1 * mp.mpf("1e-6") / mp.sqrt(mp.mpf(28) * 300))

# evaporation rate: 0.0583 * alpha_v * p_v * sqrt(M / T)
show("evaporation_rate(1, 1e-2, 27, 1400)",
     LANGMUIR * 1 * mp.mpf("1e-2") * mp.sqrt(mp.mpf(27) / 1400))

# thickness profile: w h / (pi rho (h^2 + x^2)^(3/2)), w = pi, rho = 1, h = 10
for x in (0, 10, 20):
    show(f"thickness_at_offset(pi, 1, 10, {x})",
         mp.pi * 10 / (mp.pi * 1 * (mp.mpf(100) + x * x) ** mp.mpf("1.5")))

# center thickness: w / (pi rho h^2)
show("thickness_center(pi, 1, 10)", mp.pi / (mp.pi * 1 * 100))

# mass flowing onto a disk of radius 100 h, from the antiderivative of the
# radial profile: integral_0^R rho d(s) 2 pi s ds = 2 w (1 - h / sqrt(h^2 + R^2))
w, h, radius = mp.pi, mp.mpf(10), mp.mpf(1000)
show("disk_mass_rate closed form (pi, 1, 10, 1000)",
     2 * w * (1 - h / mp.sqrt(h * h + radius * radius)))
show("disk mass fraction of 2w at R = 100 h",
     1 - 1 / mp.sqrt(mp.mpf(1) + 10 ** 4))

# linear transfer, K = [[0.5, 0.2], [0.1, 0.4]], M = (10, 20)
k11, k12, k21, k22 = (mp.mpf(s) for s in ("0.5", "0.2", "0.1", "0.4"))
show("forward_masses row 1", k11 * 10 + k12 * 20)
show("forward_masses row 2", k21 * 10 + k22 * 20)

# one source feeding two supports with unit coupling, targets (1, 3):
# minimize (M-1)^2 + (M-3)^2  ->  M = 2, residual sqrt(2)
show("solve_sources([[1],[1]], (1,3)) mass", mp.mpf(2))
show("solve_sources([[1],[1]], (1,3)) residual", mp.sqrt(2))

# calibration observations generated from the K above with M in
# {(1,0), (0,1), (1,1)}
for M in ((1, 0), (0, 1), (1, 1)):
    m1 = k11 * M[0] + k12 * M[1]
    m2 = k21 * M[0] + k22 * M[1]
    show(f"observation for M={M}", m1)
    show(f"               .. row2", m2)

# investment arithmetic
show("investment_value(12.5, 9.0)", mp.mpf("12.5") - mp.mpf("9.0"))
show("investment_mass(A=0.25, 80)", mp.mpf("0.25") * 80)
show("mass_from_thickness(2, pi, 1, 10)", 2 * mp.pi / (mp.pi * 1 * 100))
show("required_transfer_velocity(0.01, 100, 3)", mp.mpf("0.01") * 100 * 9)

# vapor pressure midpoint in log space between (1000, 1e-4) and (1200, 1e-2)
lo, hi = mp.log(mp.mpf("1e-4")), mp.log(mp.mpf("1e-2"))
show("vapor_pressure_at(T=1100)", mp.exp((lo + hi) / 2))

# cross-check of the two printed rate coefficients against kinetic theory,
# p in torr converted to dyn/cm^2, m = M / N_A
N_A = mp.mpf("6.02214076e23")
TORR = mp.mpf("101325") / 760 * 10  # dyn/cm^2
M_, T_ = mp.mpf(28), mp.mpf(300)
m_ = M_ / N_A
nu_theory = TORR / mp.sqrt(2 * mp.pi * m_ * K_B * T_)
nu_printed = IMPINGEMENT / mp.sqrt(M_ * T_)
show("impingement theory (p=1, M=28, T=300)", nu_theory)
show("impingement printed coefficient form", nu_printed)
show("relative gap", abs(nu_theory - nu_printed) / nu_theory)
w_theory = m_ * TORR / mp.sqrt(2 * mp.pi * m_ * K_B * T_)
w_printed = LANGMUIR * mp.sqrt(M_ / T_)
show("evaporation theory (p_v=1)", w_theory)
show("evaporation printed coefficient form", w_printed)
show("relative gap", abs(w_theory - w_printed) / w_theory)
