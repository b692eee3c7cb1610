"""Linear algebra, Hilbert space and Hamiltonian construction."""
