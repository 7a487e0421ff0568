"""
Traces in a finite Schwartz space
=================================

GSp4 zeta elements at p = 2, computed on functions of four p-adic coordinates.
"""
from heckezeta.schwartz import (box, gsp4_zeta_verdict, h_tau1_action, hecke_act, phi_bar,
                                psi_direct, trace, trace_check, trace_preimage)

p = 2
phi = box(0, 0, 0, 0, p)

# the spinor operator spreads phi over four boxes
lhs = hecke_act((1, 1, 1), phi)
rhs = phi_bar(1, 1, 1, 1, p) + p * (phi_bar(1, 1, 0, 0, p) + phi_bar(0, 0, 1, 1, p)) + p * p * phi
print(lhs == rhs)

# psi is supported on pairs whose 2x2 matrix lies in varpi^-1 GL2(O)
psi = psi_direct(p)
print(len(psi.support()))

# psi is a trace from the kernel V of the determinant character
W = h_tau1_action(p)
print(trace_check(psi, W))
xi, witness = trace_preimage(psi, W)
print(trace(xi, W) == psi, witness)

print(gsp4_zeta_verdict(1, p).overall)
