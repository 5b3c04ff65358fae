"""Which Schur multipliers preserve the S_p norm, and what to do about it.

Away from p=2 the answer is rigid: exactly the rank-one symbols with
unimodular entries.  The toolkit classifies, hunts deviation witnesses,
and rewrites any symbol as a combination of isometric ones.
"""

import numpy as np

from herzkit import (
    AscentOptions,
    classify_isometric,
    dft_decompose,
    isometry_forward_check,
    isometry_witness_search,
    sign_average_entry,
)

print("== a rank-one unimodular symbol passes ==")
a = np.exp(2j * np.pi * np.array([0.05, 0.3, 0.8]))
b = np.exp(2j * np.pi * np.array([0.1, 0.45, 0.75]))
v = classify_isometric(np.outer(a, b), 3)
print(f"  verdict: {v.is_isometric} ({v.reason})")
fwd = isometry_forward_check(v.a, v.b, 3, trials=12)
print(f"  forward check on extracted factors: max ratio deviation "
      f"{fwd.max_ratio_deviation:.1e}")

print()
print("== the sign matrix fails away from p=2 ==")
H = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex)
v4 = classify_isometric(H, 4)
print(f"  p=4 verdict: {v4.is_isometric} ({v4.reason})")
w = isometry_witness_search(H, 4, AscentOptions(restarts=8, seed=0))
print(f"  witness mode {w.mode!r}: ratio {w.ratio:.8f}, deviation "
      f"{w.deviation:.8f} (2^(1/4) - 1 = {2 ** 0.25 - 1:.8f})")
v2 = classify_isometric(H, 2)
print(f"  p=2 verdict: {v2.is_isometric} ({v2.reason})")

print()
print("== every symbol splits into isometric pieces ==")
rng = np.random.default_rng(4)
C = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
terms = dft_decompose(C)
rebuilt = sum(t.coefficient * np.outer(t.a, t.b) for t in terms)
print(f"  {len(terms)} character terms, rebuild defect "
      f"{np.max(np.abs(rebuilt - C)):.1e}")
largest = max(terms, key=lambda t: abs(t.coefficient))
print(f"  largest coefficient at (k, l) = ({largest.k}, {largest.l}): "
      f"{abs(largest.coefficient):.6f}")

print()
print("== four sign flips isolate one entry ==")
s = np.array([1, -1, 1], dtype=complex)
t = np.array([-1, 1, 1], dtype=complex)
got = sign_average_entry(C, s, t, 1, 2)
print(f"  recovered C[1, 2] = {got:.6f} (true {C[1, 2]:.6f})")
