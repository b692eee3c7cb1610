"""CatSim package."""
