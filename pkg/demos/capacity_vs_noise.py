"""How sender-side dephasing degrades the dense-coding capacity.

The shared photon pair starts maximally entangled.  Coupling the sender's
polarization to its own frequency distribution damps the coherence by a
Gaussian envelope, and the channel capacity follows it down from 2 bits
toward the classical 1 bit.  The capacity can be computed two ways that
must agree: from the entropies of the evolved state, or in closed form
from the coherence magnitude alone.
"""

import numpy as np

from densecoding import (
    JointSpectrum,
    capacity_pre_encoding,
    concurrence,
    decoherence_function,
    dense_coding_capacity,
    evolve_pre_encoding,
)


def main():
    spec = JointSpectrum()  # omega0=2, unit variances, k=-1, delta_n=1
    print("sender-side dephasing only (receiver idle)")
    print(f"{'t':>6} {'|kappa|':>10} {'concurrence':>12} {'C (entropy)':>12} {'C (closed)':>11}")
    for t in np.linspace(0.0, 2.5, 11):
        rho = evolve_pre_encoding(spec, t)
        kappa = abs(decoherence_function(spec, t))
        c_entropy = dense_coding_capacity(rho)
        c_closed = capacity_pre_encoding(kappa)
        print(f"{t:6.2f} {kappa:10.5f} {concurrence(rho):12.5f} "
              f"{c_entropy:12.6f} {c_closed:11.6f}")
        assert abs(c_entropy - c_closed) < 1e-10

    print()
    print("the two routes agree to 1e-10 at every point; note the capacity")
    print("stays above 1 bit even when the entanglement is nearly gone.")


if __name__ == "__main__":
    main()
