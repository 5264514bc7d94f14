"""
When the two correlation measures disagree in time
==================================================

Under unitary evolution of two qubits, ``dI/dt`` and ``d|chi|^2/dt`` usually
share a sign. The scan below finds the windows where they do not.
"""

from qcorr.dynamics import discrepancy_scan, example_hamiltonian, sweep
from qcorr.lab import fixtures

h = example_hamiltonian()
traj = sweep(fixtures.example2_state(), h, t_min=4.0, t_max=8.0, dt=4e-5)
print("grid points:", len(traj))

###############################################################################
# Windows where the thresholded sign product of the two rates is -1.

intervals = discrepancy_scan(traj, zero_eps=1e-9)
for iv in intervals:
    print("  [%.4f, %.4f]" % (iv.t_start, iv.t_end))

###############################################################################
# How many of the tabulated reference windows are recovered within 0.01?

ref = fixtures.reference_intervals()
hits = sum(any(iv.matches(r, 0.01) for iv in intervals) for r in ref)
print("reference windows matched: %d / %d" % (hits, len(ref)))
