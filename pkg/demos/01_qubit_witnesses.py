"""Qubit warm-up: which three-qubit states do the conditions catch?

Two families with lowering operators (sigma-minus) on every qubit:

* the GHZ family  cos(t)|000> + sin(t)|111>, caught by the product-form
  condition exactly when the |000> weight dominates, and
* the flip-pair family  c0|011> + c1|100>, caught by the dagger-form
  condition for every nonzero coefficient pair because all three rhs
  expectation values vanish identically.
"""

import numpy as np

from gmekit import sigma_minus, superposition, tripartite_dagger, tripartite_product

SM = sigma_minus()

print("GHZ family cos(t)|000> + sin(t)|111>, product-form condition")
print(f"{'theta/pi':>10} {'lhs':>10} {'rhs_max':>10} {'margin':>10}  verdict")
for theta in np.linspace(0.05, 0.45, 9) * np.pi:
    psi = superposition((2, 2, 2), [(np.cos(theta), (0, 0, 0)), (np.sin(theta), (1, 1, 1))])
    r = tripartite_product(psi, SM, SM, SM)
    verdict = "genuinely tripartite entangled" if r.violated else "not detected"
    print(f"{theta / np.pi:10.3f} {r.lhs:10.4f} {r.rhs_max:10.4f} {r.margin:10.4f}  {verdict}")

print()
print("Flip-pair family c0|011> + c1|100>, dagger-form condition")
rng = np.random.default_rng(1)
for _ in range(5):
    c = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    c /= np.linalg.norm(c)
    psi = superposition((2, 2, 2), [(c[0], (0, 1, 1)), (c[1], (1, 0, 0))])
    r = tripartite_dagger(psi, SM, SM, SM)
    print(f"  |c0|={abs(c[0]):.3f} |c1|={abs(c[1]):.3f}  ->  lhs={r.lhs:.4f}, "
          f"rhs_max={r.rhs_max:.1f}, violated={r.violated}")

print()
print("The flip-pair detection never fails: the dagger-form rhs operators are")
print("projectors onto |101>, |110>, |111>, all orthogonal to the family.")
