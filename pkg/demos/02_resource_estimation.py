"""Circuit resource scaling of the cluster ansatz and its compact variant.

Tabulates CNOT and parameter counts for CO2-, H2CO- and HCOOH-sized mode
counts at 2..10 modals per mode, counting by constructing the actual
circuits, and closes with the 90-qubit arithmetic for a seven-atom
molecule at 6 modals per mode.
"""

from vibriq import (QubitLayout, build_chc, build_heuristic, build_uvcc,
                    count_resources, excitation_list, reference_circuit)

MOLECULES = [("CO2-like", 4), ("H2CO-like", 6), ("HCOOH-like", 9)]

print(f"{'molecule':<11} {'modals':>6} {'qubits':>6} {'CX UVCC':>9} "
      f"{'CX CHC':>8} {'params':>7}")
for name, modes in MOLECULES:
    for modals in (2, 4, 6, 8, 10):
        layout = QubitLayout((modals,) * modes)
        excitations = excitation_list(layout)
        uvcc = count_resources(build_uvcc(layout, excitations))
        chc = count_resources(build_chc(layout, excitations))
        print(f"{name:<11} {modals:>6} {uvcc['qubits']:>6} {uvcc['cx']:>9} "
              f"{chc['cx']:>8} {uvcc['params']:>7}")
    print()

# Closed forms behind the table: with S singles and D doubles the cluster
# circuit costs 4S + 48D CNOTs, its compact variant 2S + 6D, both S + D
# parameters.
layout = QubitLayout((2, 2))
print("smallest case, 2 modes x 2 modals:",
      count_resources(build_uvcc(layout, excitation_list(layout))))

# Heuristic circuits by depth on the same 4 qubits.
for depth in (1, 2, 3):
    swaprz = count_resources(build_heuristic("swaprz", 4, depth))
    print(f"swaprz depth {depth}: {swaprz['cx']} CX, "
          f"{swaprz['params']} parameters")

# A seven-atom molecule has 15 modes; 6 modals per mode lands at 90 qubits.
big = QubitLayout((6,) * 15)
print("\n15 modes x 6 modals:",
      count_resources(reference_circuit(big))["qubits"], "qubits")
