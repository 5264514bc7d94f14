"""
Two ways of measuring total correlation
=======================================

Mutual information and the Hilbert-Schmidt norm of the correlation matrix
both vanish exactly on product states, yet they can rank states differently.
"""

import numpy as np

import qcorr
from qcorr.lab import fixtures

###############################################################################
# A Bell state is maximally correlated: I = 2 ln 2 and |chi|_2 = sqrt(3)/2.

phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
bell = qcorr.make_state(np.outer(phi, phi))
print("Bell state:  I = %.6f nats   |chi|_2 = %.6f" % (qcorr.qmi(bell), qcorr.chi_norm2(bell)))

###############################################################################
# Fix the correlation matrix and move only the local populations. The norm
# of chi cannot notice, the mutual information does.

for x in (0.3, 0.5, 0.645, 0.8):
    s = fixtures.example1_state(x)
    print("x = %.3f   I = %.6f   |chi|_2 = %.6f" % (x, qcorr.qmi(s), qcorr.chi_norm2(s)))

###############################################################################
# The correlation matrix expands in the Pauli basis as a covariance table.

table = qcorr.covariance_table(bell, qcorr.pauli_basis(), qcorr.pauli_basis())
print(np.round(table.coefficients, 3))
print("reconstruction error:", np.max(np.abs(table.reconstruct() - (bell.matrix - bell.product))))
