"""Todd classes and twisted Euler characteristics on closed-form models.

Everything here is exact rational arithmetic: the Todd polynomials come out
of the universal series x/(1 - e^-x), and chi(M, L^m) lands on integers for
every integer twist, which the implementation checks on every call.

Run:  python3 demos/05_riemann_roch.py
"""

from chernforms import (
    euler_characteristic,
    kodaira_leading,
    line_class,
    parse_model,
    rr_polynomial,
    todd_polynomials,
)

print("== universal Todd polynomials ==")
for i, td in enumerate(todd_polynomials(4)):
    print(f"  td_{i} = {td}")

print("\n== chi(CP^2, O(m)) ==")
cp2 = parse_model("CP2")
hyper = line_class(cp2, "O(1)")
row = ", ".join(f"m={m}: {euler_characteristic(cp2, hyper, m)}" for m in range(-3, 4))
print(f"  {row}")
print("  (the quadratic (m+1)(m+2)/2, negative twists included)")

print("\n== canonical-bundle growth chi(M, K^m) ==")
for name in ("CP1", "CP2", "CP3", "T2", "CP1xCP1"):
    model = parse_model(name)
    coeffs = rr_polynomial(model, line_class(model, "K"))
    poly = " + ".join(f"({a})m^{j}" for j, a in enumerate(coeffs) if a)
    print(f"  {name}: chi = {poly or '0'}")
    print(f"       leading coefficient = {kodaira_leading(model)} "
          f"(= (-1)^n c_1^n[M] / n!)")
