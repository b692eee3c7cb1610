"""Command-line surface for CatSim scenarios."""
