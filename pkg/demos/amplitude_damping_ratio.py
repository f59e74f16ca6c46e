#
# Amplitude damping with telegraph-noise driven decay probability.
#
# Here the decay probability is p = 1 - phi^2. The correlated channel
# sends |11> to |00> in one jump, the uncorrelated one damps each qubit
# separately. The "paper-literal" variant takes the two operators
# sqrt((1 +- phi)/2) I at face value; they are multiples of the identity,
# so the channel does nothing and the ratio is exactly 1.
#
import numpy as np

from qslnoise import RtnParams, qsl_ratio_channels
from qslnoise.channels import family_channel, validate_cptp

if __name__ == "__main__":
    t = 0.1
    print(f"t = {t}")
    print("tau     R standard   R paper-literal")
    for tau in np.linspace(0.01, 0.25, 9):
        params = RtnParams(float(tau), t)
        std = qsl_ratio_channels("amplitude-damping", params).ratio
        lit = qsl_ratio_channels("amplitude-damping", params, variant="paper-literal").ratio
        print(f"{tau:<7.3f} {std:.6f}     {lit:.6f}")

    print()
    for mu in (0.0, 0.5, 1.0):
        k = family_channel("amplitude-damping", RtnParams(0.2, 0.7), mu)
        rep = validate_cptp(k)
        print(f"mu={mu}: {len(k)} Kraus operators, completeness defect {rep.completeness_defect:.1e}, "
              f"min Choi eigenvalue {rep.choi_min_eigenvalue:.1e}")
