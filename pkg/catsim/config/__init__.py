"""Configuration for CatSim."""
