# # Projective and injective norms on X (x) Y
#
# A tensor element is a finite sum of pairs.  Its projective norm is the
# cheapest way to write it down; its injective norm is its size as a form.

import numpy as np

from traceclass import (
    TensorElement,
    injective_norm,
    mix_representation,
    projective_norm,
    representation_cost,
    single_tensor,
)

rng = np.random.default_rng(1)

# ## Elementary tensors are crossnorms

x, y = rng.standard_normal(3), rng.standard_normal(4)
u = single_tensor(x, y)
print("||x|| ||y||       ", np.linalg.norm(x) * np.linalg.norm(y))
print("projective, injective", projective_norm(u), injective_norm(u))

# ## Rewriting an element never changes it, only its cost

f = TensorElement(3, 3, rng.standard_normal((5, 3)), rng.standard_normal((5, 3)))
print("\ncost of the stored pairs:", representation_cost(f))
print("projective norm (the infimum):", projective_norm(f))
for k in range(3):
    g = rng.standard_normal((5, 5)) + 2 * np.eye(5)
    print(f"  mix {k}: cost {representation_cost(mix_representation(f, g)):.4f}")

# ## The sandwich
#
# injective <= projective <= cost of any representation.

print("\ninjective", injective_norm(f), "<= projective", projective_norm(f))
