"""Factorization-norm brackets come with re-checkable certificates.

The upper bound is a PSD block certificate; the lower bound is a witness
matrix whose norm ratio anyone can recompute.  Tampering is detected.
"""

from dataclasses import replace

import numpy as np

from herzkit import check_certificate, gamma2, random_matrix

A = random_matrix(4, ensemble="gaussian", seed=11)
bracket, cert = gamma2(A, tol=1e-5)

print("== solve ==")
print(f"  bracket  [{bracket.lower:.8f}, {bracket.upper:.8f}]")
print(f"  width    {bracket.width:.2e}  converged: {bracket.converged}")

print()
print("== certificate contents ==")
print(f"  t (certified cap)  {cert.t:.8f}")
print(f"  P diag max         {np.max(np.diag(cert.P).real):.8f}")
print(f"  Q diag max         {np.max(np.diag(cert.Q).real):.8f}")
print(f"  reported min eig   {cert.min_eig:.2e}")

rep = check_certificate(A, cert)
print(f"  independent check  ok={rep.ok}")

print()
print("== a tampered certificate fails ==")
forged = replace(cert, t=cert.t * 0.5)
rep2 = check_certificate(A, forged)
print(f"  halve the cap: ok={rep2.ok} reasons={rep2.reasons}")

forged3 = replace(cert, min_eig=-1.0)
rep3 = check_certificate(A, forged3)
print(f"  lie about the spectrum: ok={rep3.ok} reasons={rep3.reasons}")
