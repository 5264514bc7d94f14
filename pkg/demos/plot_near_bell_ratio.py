"""
Rate ratio close to maximal correlation
=======================================

Mix a Bell state with a little white noise and compare the two correlation
rates. The ratio ``dI/dt / (2 d|chi|^2/dt)`` settles near 1/2 for two qubits
as the noise shrinks, which is ``d/4`` divided by 2.
"""

import numpy as np

from qcorr.dynamics import chi_norm2_rate, evolve, example_hamiltonian, qmi_rate
from qcorr.states import make_state

h = example_hamiltonian()
phi = np.array([1, 0, 0, 1]) / np.sqrt(2)

for eps in (0.1, 0.01, 0.001, 0.0001):
    rho = (1 - eps) * np.outer(phi, phi) + eps * np.eye(4) / 4
    s = evolve(make_state(rho), h, 0.1)
    r = qmi_rate(s, h) / (2 * chi_norm2_rate(s, h))
    print("eps = %-7g ratio = %.6f" % (eps, r))
