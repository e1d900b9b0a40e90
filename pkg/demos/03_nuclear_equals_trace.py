# # Nuclear norm equals trace norm
#
# A nuclear representation writes T x = sum_k <x, z_k> y_k.  The infimum of
# sum ||z_k|| ||y_k|| over all representations is the trace norm, and the SVD
# attains it.

import numpy as np

from traceclass import (
    TensorElement,
    adjoint_rep,
    k_map,
    nuclear_norm,
    optimal_rep,
    projective_norm,
    rep_cost,
    to_matrix,
    trace_norm,
)

rng = np.random.default_rng(2)
t = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))

rep = optimal_rep(t)
print("terms:", len(rep))
print("rep reproduces T:", np.allclose(to_matrix(rep), t))
print("cost of SVD rep :", rep_cost(rep))
print("trace norm      :", trace_norm(t))
print("nuclear norm    :", nuclear_norm(t))

# ## Adjoints swap the roles of z and y

print("adjoint rep gives T*:", np.allclose(to_matrix(adjoint_rep(rep)), t.conj().T))

# ## From X* (x) Y to operators
#
# Functionals are stored through their Riesz vectors, so f(x) = <x, z>.  The
# trace norm of the induced operator equals the projective norm.

f = TensorElement(5, 5, rng.standard_normal((3, 5)) + 1j * rng.standard_normal((3, 5)),
                  rng.standard_normal((3, 5)), riesz=True)
print("\n||K(F)||_1 =", trace_norm(k_map(f)), "  ||F||_pi =", projective_norm(f))
