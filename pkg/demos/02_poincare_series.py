"""Generating functions of the dimensions and the Legendre-integral formula."""

from killtensors.exactnum import series_coeffs
from killtensors.series import conjectured_H, g_numerator, h_numerator, one_minus_t_form, papoulis, verify_poincare

# numerators over (1-t)^(2n-1): the Catalan triangle
for n in range(2, 8):
    print("G", n, g_numerator(n).format())

# numerators over (1-t)^(4n-1) for CP_n
for n in range(1, 7):
    print("H", n, h_numerator(n).format())

for k in range(3):
    print(f"P_{2 * k + 1}(w) =", papoulis(k).format("w"))

# H_n rebuilt from the Papoulis polynomial, then expanded
num, e = one_minus_t_form(conjectured_H(3))
print(num.format(), "/ (1-t)^%d" % e)
print([int(c) for c in series_coeffs(conjectured_H(3), 6)])

for n in range(1, 5):
    print(n, verify_poincare(n, 200).summary())
