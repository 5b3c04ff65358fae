"""Tour of the Schatten layer: indices, conjugates, norms, brackets.

Run as a script; every step prints what it checks.
"""

import numpy as np

from herzkit import INF, NormBracket, as_index, conjugate_index, random_matrix, schatten_norm

print("== Schatten indices ==")
for raw in (1, 1.5, 2, 3, "inf"):
    p = as_index(None if raw == "inf" else raw)
    q = conjugate_index(p)
    print(f"  p = {p!r:22} conjugate = {q!r}")

print()
print("== norms of one 4x4 sample ==")
A = random_matrix(4, ensemble="gaussian", seed=7)
svals = np.linalg.svd(A, compute_uv=False)
print(f"  singular values: {np.round(svals, 4)}")
for p in (1, 1.5, 2, 3, INF):
    print(f"  ||A||_{str(p):4} = {schatten_norm(A, p):.6f}")

print()
print("== the norms decrease in p ==")
vals = [schatten_norm(A, p) for p in (1, 1.2, 1.5, 2, 4, INF)]
drops = all(vals[i] >= vals[i + 1] - 1e-12 for i in range(len(vals) - 1))
print(f"  {np.round(vals, 4)} monotone: {drops}")

print()
print("== certified brackets are ordered intervals ==")
b = NormBracket(lower=2.0, upper=2.5,
                lower_certificate={"kind": "demo"},
                upper_certificate={"kind": "demo"})
print(f"  bracket [{b.lower}, {b.upper}] width {b.width:.2f} contains 2.2: "
      f"{b.contains(2.2)}")
