"""Show which output-splitter convention turns twin-Fock parity into P_N(cos 2 phi)."""

from parity_metrology.metrology import pinned_twin_fock_config, probe_twin_fock_bs2

if __name__ == "__main__":
    for conv, err in probe_twin_fock_bs2(n_values=range(1, 16)).items():
        print(f"bs2={conv.value:16s} max |<Pi_b> - P_N(cos 2phi)| = {err:.3e}")
    config = pinned_twin_fock_config()
    print(f"pinned: bs1={config.bs1.value} bs2={config.bs2.value}")
