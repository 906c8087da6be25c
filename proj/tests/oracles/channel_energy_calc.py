#!/usr/bin/env python3
"""Independent calculator for the channel and energy formulas.

Written from the model equations with default constants typed in by hand, so
it shares no code with the C++ library. Prints the pinned regression vectors
in the format read by the formula tests:

    <formula> <arg> ... = <value>
"""
import math

C = 299792458.0

P = dict(
    ground_tx=0.5, uav_tx=10.0, uu_tx=10.0, uu_f=2.4e9, uu_noise=4e-13,
    sg_tx=20.0, sg_gain_db=42.0, us_f=3.4e9, us_tx=10.0, ss_tx=20.0,
    us_gain_db=42.0, ss_gain_db=52.0, temp=1000.0, line_loss_db=2.0,
    n0_dbm_per_mhz=-114.0, b_gu=2e6, b_uu=4e6, b_sg=80e6, ss_f=2.2e9,
    sg_f=20e9, speed=12.0, max_speed=12.0, p_max=5.0, rotor_r=0.2,
    rotors=4.0, g0=1e-4, ground_noise=1e-13, mass=2.0, rho=1.225,
    gravity=9.8, le=1.0, rain_db=0.1, us_rx=1.0, ss_rx=1.0,
    ebn0_db=10.0, s_max=2e6, kb=1.380649e-23, sat_op=10.0, e_c=50.0,
)


def lin(db):
    return 10 ** (db / 10)


def dist(a, b):
    return math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))


def shannon(b, snr):
    return b * math.log2(1 + snr)


def rate_g2u(uav, ground):
    d2 = dist(uav, ground) ** 2
    return shannon(P["b_gu"], P["ground_tx"] * P["g0"] / (P["ground_noise"] * d2))


def rate_u2g(uav, ground):
    d2 = dist(uav, ground) ** 2
    return shannon(P["b_gu"], P["uav_tx"] * P["g0"] / (P["ground_noise"] * d2))


def path_loss_u2u(d):
    return 20 * math.log10(d) + 20 * math.log10(4 * math.pi * P["uu_f"] / C)


def rate_u2u(d):
    snr = P["uu_tx"] / P["uu_noise"] * 10 ** (-path_loss_u2u(d) / 10)
    return shannon(P["b_uu"], snr)


def fsl(slant, f):
    return (C / (4 * math.pi * slant * f)) ** 2


def rate_s2g(slant):
    n0 = 10 ** ((P["n0_dbm_per_mhz"] - 30) / 10) / 1e6
    snr = (P["sg_tx"] * lin(P["sg_gain_db"]) * P["le"] * lin(-P["rain_db"]) * fsl(slant, P["sg_f"])
           / (n0 * P["b_sg"]))
    return shannon(P["b_sg"], snr)


def rate_sat(power, gain_db, f, slant):
    return (power * lin(gain_db) * fsl(slant, f) * lin(-P["line_loss_db"])
            / (lin(P["ebn0_db"]) * P["kb"] * P["temp"] * P["s_max"]))


def rate_u2s(slant):
    return rate_sat(P["us_tx"], P["us_gain_db"], P["us_f"], slant)


def rate_s2s(slant):
    return rate_sat(P["ss_tx"], P["ss_gain_db"], P["ss_f"], slant)


def hover_power():
    w = P["mass"] * P["gravity"]
    return math.sqrt(w ** 3 / (2 * math.pi * P["rho"] * P["rotor_r"] ** 2 * P["rotors"]))


def move_power(v):
    return v / P["max_speed"] * (P["p_max"] - hover_power())


def uav_path_energy(prev, nxt, tau):
    moved = dist(prev, nxt)
    travel = move_power(P["speed"]) * moved / P["speed"] if moved > 0 else 0.0
    return travel + hover_power() * tau


def uav_comm_energy(kind_power, bits, rate):
    return kind_power * bits / rate


def sat_energy(rx_bits, rx_rate, tx_bits, tx_rate, tau):
    return P["us_rx"] * rx_bits / rx_rate + P["sg_tx"] * tx_bits / tx_rate + P["sat_op"] * tau


def compute_energy(sigma):
    return sigma * P["e_c"]


def vectors():
    g = (100.0, 200.0, 0.0)
    yield "rate_g2u", (300.0, 400.0, 100.0) + g, rate_g2u((300.0, 400.0, 100.0), g)
    yield "rate_g2u", (100.0, 200.0, 100.0) + g, rate_g2u((100.0, 200.0, 100.0), g)
    yield "rate_u2g", (900.0, 50.0, 100.0) + g, rate_u2g((900.0, 50.0, 100.0), g)
    yield "rate_u2g", (120.0, 260.0, 100.0) + g, rate_u2g((120.0, 260.0, 100.0), g)
    yield "path_loss_u2u", (100.0,), path_loss_u2u(100.0)
    yield "rate_u2u", (30.0,), rate_u2u(30.0)
    yield "rate_u2u", (100.0,), rate_u2u(100.0)
    yield "rate_u2u", (480.0,), rate_u2u(480.0)
    yield "rate_s2g", (550e3,), rate_s2g(550e3)
    yield "rate_s2g", (1.2e6,), rate_s2g(1.2e6)
    yield "rate_u2s", (550e3,), rate_u2s(550e3)
    yield "rate_u2s", (900e3,), rate_u2s(900e3)
    yield "rate_s2s", (1.0e6,), rate_s2s(1.0e6)
    yield "hover_power", (), hover_power()
    yield "move_power", (6.0,), move_power(6.0)
    yield "move_power", (12.0,), move_power(12.0)
    yield "uav_path_energy", (0.0, 0.0, 100.0, 30.0, 40.0, 100.0, 5.0), \
        uav_path_energy((0.0, 0.0, 100.0), (30.0, 40.0, 100.0), 5.0)
    yield "uav_comm_energy_u2u", (4e7, rate_u2u(50.0)), uav_comm_energy(P["uu_tx"], 4e7, rate_u2u(50.0))
    yield "sat_energy", (3e8, 2e8, 3e8, 1e9, 5.0), sat_energy(3e8, 2e8, 3e8, 1e9, 5.0)
    yield "compute_energy", (1.25,), compute_energy(1.25)


if __name__ == "__main__":
    for name, args, value in vectors():
        print(name, *(repr(float(a)) for a in args), "=", repr(float(value)))
