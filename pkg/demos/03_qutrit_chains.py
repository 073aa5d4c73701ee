"""Qutrits: ladder operators turn the condition into a chain criterion.

With the lowering ladder on subsystems a and c and the raising ladder on b,
the composite operator walks the chain |002> -> |111> -> |220>.  On

    psi = c0|002> + c1|111> + c2|220>

the condition reads |c1* c0 + c2* c1| > |c1|; for real positive coefficients
that is simply c0 + c2 > 1, which carves out a genuinely tripartite
entangled region with c1^2 < 1/2.
"""

import numpy as np

from gmekit import qutrit_lower, qutrit_raise, superposition, tripartite_dagger

OPS = (qutrit_lower(), qutrit_raise(), qutrit_lower())

print("Real positive chain states c0|002> + c1|111> + c2|220>:")
print(f"{'c0':>6} {'c2':>6} {'c0+c2':>7} {'margin':>9}  verdict")
for c0 in (0.40, 0.55, 0.60, 0.65, 0.70):
    c2 = c0
    c1 = np.sqrt(1 - c0**2 - c2**2)
    psi = superposition((3, 3, 3), [(c0, (0, 0, 2)), (c1, (1, 1, 1)), (c2, (2, 2, 0))])
    r = tripartite_dagger(psi, *OPS)
    verdict = "genuinely tripartite entangled" if r.violated else "not detected"
    print(f"{c0:6.2f} {c2:6.2f} {c0 + c2:7.2f} {r.margin:+9.4f}  {verdict}")

print()
print("Adding any state annihilated by all three rhs operators changes nothing:")
base = [(0.6, (0, 0, 2)), (np.sqrt(0.28), (1, 1, 1)), (0.6, (2, 2, 0))]
plain = tripartite_dagger(superposition((3, 3, 3), base), *OPS)
padded_terms = [(0.9 * c, occ) for c, occ in base] + [(np.sqrt(1 - 0.81), (0, 1, 0))]
padded = tripartite_dagger(superposition((3, 3, 3), padded_terms), *OPS)
print(f"  plain margin  = {plain.margin:+.4f}")
print(f"  padded with |010> weight: margin = {padded.margin:+.4f} (still positive)")
