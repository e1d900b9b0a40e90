# # Schatten norms and the polar decomposition
#
# A matrix on C^n is trace class automatically; the interesting part is how
# its norms compare and how |T| and the partial isometry W fit together.

import numpy as np

from traceclass import abs_op, hs_norm, operator_norm, polar, schatten_norm, trace_norm

rng = np.random.default_rng(0)
t = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))

# ## The norm chain
#
# ||T|| <= ||T||_2 <= ||T||_1, and every p in between interpolates.

for p in (1, 1.5, 2, 4, np.inf):
    print(f"p={p:<4}  ||T||_p = {schatten_norm(t, p):.6f}")
print("operator <= HS <= trace:", operator_norm(t) <= hs_norm(t) <= trace_norm(t))

# ## |T| and the polar factors
#
# |T| is the positive square root of T*T, and T = W|T| with W a partial isometry.

a = abs_op(t)
print("|T|^2 - T*T:", np.linalg.norm(a @ a - t.conj().T @ t))

w, p = polar(t)
print("W|T| - T:   ", np.linalg.norm(w @ p - t))

# ## A rank-deficient case
#
# For the nilpotent shift the polar factor W is only a partial isometry.

n = np.array([[0, 1], [0, 0]], dtype=complex)
w, p = polar(n)
print("W =\n", w.real)
print("|N| =\n", p.real)
print("W*W is the projection onto the support of |N|:\n", (w.conj().T @ w).real)
