#
# Speed-limit ratio for two qubits under phase damping.
#
# R = tau_cor / tau_un compares the Kraus speed bound of a channel where
# both qubits see the same phase flip with one where they flip
# independently. With p = phi(t) the ratio has the closed form
# R = 1 + |1 - 2p|, so it only depends on how far p is from 1/2.
#
import numpy as np

from qslnoise import RtnParams, phi, qsl_ratio_channels


def sweep_tau(t, taus):
    print(f"t = {t}")
    print("tau     phi        R          1+|1-2phi|")
    for tau in taus:
        params = RtnParams(tau, t)
        r = qsl_ratio_channels("phase-damping", params).ratio
        f = phi(params)
        print(f"{tau:<7.3f} {f:.6f}  {r:.6f}   {1 + abs(1 - 2 * f):.6f}")


def sweep_time(tau, times):
    print(f"tau = {tau}")
    for t in times:
        r = qsl_ratio_channels("phase-damping", RtnParams(tau, t)).ratio
        print(f"  t={t:<5.2f} R={r:.6f}")


if __name__ == "__main__":
    sweep_tau(0.1, np.linspace(0.01, 0.25, 9))
    print()
    # R dips to 1 where phi crosses 1/2 and climbs back as phi -> 0
    sweep_time(0.1, [0.1, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0])
