"""Build the three-spin XOR Hamiltonian, exponentiate it and print the result.

    python scripts/reproduce_xor.py
"""

import numpy as np

from spinxor import (assemble, basis_label, canonical_xor_unitary, unitary_exponential, verify_gate,
                     write_file, xor_gate_spec, xor_hamiltonian)


def main():
    h = xor_hamiltonian()
    print(write_file(h))
    u = unitary_exponential(assemble(h), 1.0)
    np.set_printoptions(precision=3, suppress=True, linewidth=120)
    print(u.real)
    print(f"max |U - reference| = {np.abs(u - canonical_xor_unitary()).max():.2e}")
    report = verify_gate(u, xor_gate_spec())
    print(f"XOR into C: passed={report.passed}, max leakage={report.max_leakage:.1e}")
    for j, (i, p) in enumerate(zip(report.induced_map.image, report.induced_map.phase)):
        sign = "+" if p.real > 0 else "-"
        print(f"  {basis_label(j, 3)} -> {sign}{basis_label(i, 3)}")


if __name__ == "__main__":
    main()
