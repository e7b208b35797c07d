# Extraction error bounds at realistic parameters
from fractions import Fraction

from cnozk.params import coefficient_merkle, coefficient_ordinary, eps_ex_merkle, eps_ex_ordinary, eps_mppu, eps_unruh
from cnozk.params import table1_compare

q, n = 2 ** 40, 256
for ell in (8, 64, 512):
    # p_triv small enough that the q^3 term shows
    o = eps_ex_ordinary(ell, q, n, Fraction(1, 2 ** 256))
    m = eps_ex_merkle(ell, q, n, Fraction(1, 2 ** 256))
    print(f"l={ell:4d}  ordinary 2^{o.log2:7.2f}  merkle 2^{m.log2:7.2f}  "
          f"coefficients {coefficient_ordinary(ell)} / {coefficient_merkle(ell)}")

# Unruh at 128-bit soundness with binary challenges
for r in (128, 160, 192):
    u, mp = eps_unruh(2, r, q, n, Fraction(1, 2)), eps_mppu(2, r, q, n, Fraction(1, 2))
    print(f"r={r}: unruh 2^{u.log2:.2f}, merkle-unruh 2^{mp.log2:.2f}")

# guarantees for a prover that succeeds with probability 2^-10 after 2^40 queries
for row in table1_compare(Fraction(1, 2 ** 10), 2 ** 40, 256, 384, 2):
    print(f"{row.name:38s} 2^{row.log2:8.2f}{'  vacuous' if row.vacuous else ''}")
