#
# Random telegraph noise as a dephasing channel.
#
# A qubit coupled to a bistable fluctuator with switching time tau loses
# coherence as phi(t). Fast switching (tau < 1/4) gives monotone decay;
# slow switching (tau > 1/4) makes phi oscillate and even change sign,
# the usual signature of memory in the environment.
#
import numpy as np

from qslnoise import RtnParams, apply_channel, phi, rtn_single_qubit
from qslnoise.matops import DensityMatrix, KET_0, KET_1, projector


def coherence_table(taus, times):
    print("t      " + "  ".join(f"tau={tau:<6g}" for tau in taus))
    for t in times:
        print(f"{t:<6.2f} " + "  ".join(f"{phi(RtnParams(tau, t)):+.6f}  " for tau in taus))


def plus_state_coherence(tau, t):
    # |+><+| has off-diagonal 1/2; the channel multiplies it by phi
    plus = DensityMatrix(projector((KET_0 + KET_1) / np.sqrt(2)))
    out = apply_channel(rtn_single_qubit(RtnParams(tau, t)), plus)
    return 2 * out.matrix[0, 1].real


if __name__ == "__main__":
    taus = [0.05, 0.25, 1.0, 5.0]
    coherence_table(taus, np.linspace(0.0, 4.0, 9))

    print()
    for tau in (0.05, 5.0):
        t = 2.0
        print(f"tau={tau}: coherence of |+> after t={t}: {plus_state_coherence(tau, t):+.6f} "
              f"(phi = {phi(RtnParams(tau, t)):+.6f})")
