"""Data file outputs for CatSim."""
