"""Multi-seed trend and oracle acceptance checks."""
